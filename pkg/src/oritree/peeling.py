"""Pseudo-semidegree peeling and the dense-antidirected-tree pipeline.

Peeling repeatedly removes all out-arcs of any vertex whose positive
outdegree is below the threshold d (and symmetrically for in-arcs).  Side
degrees only ever shrink, so each (vertex, side) fires at most once and
removes fewer than d arcs; with threshold d = k/2 this is why any digraph
with more than (k-1)n arcs keeps a nonempty arc set whose pseudo-
semidegree is at least k/2.  Thresholds may be half-integral and are
compared exactly (Fraction), never through floats.

The pipeline checks the dense-host conditions for an antidirected tree,
peels the host to threshold k/2, and embeds in antidirected mode; arcs
are only ever removed, so the embedding lifts to the original host as-is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digraph import Digraph, build_digraph, degree_profile
from .embedder import EmbedMode, EmbedOptions, EmbedReport, embed_tree
from .errors import BadParams, ConditionFailed
from .cycles import CycleMode, find_forbidden_cycle
from .trees import OrientedTree, is_antidirected


@dataclass(frozen=True)
class PeelEvent:
    vertex: int
    side: str        # "out" | "in"
    arcs_removed: tuple

    def to_json(self):
        return {"vertex": self.vertex, "side": self.side,
                "arcs_removed": [list(a) for a in self.arcs_removed]}


@dataclass(frozen=True)
class PeelTrace:
    threshold: Fraction
    events: tuple
    result: Digraph

    @property
    def arcs_removed(self) -> int:
        return sum(len(e.arcs_removed) for e in self.events)

    def to_json(self):
        return {"threshold": str(self.threshold),
                "events": [e.to_json() for e in self.events],
                "result_arcs": len(self.result.arcs)}


def peel_to_pseudo_semidegree(D: Digraph, d) -> tuple:
    """Peel until no vertex has a positive side-degree below d.

    Returns (subdigraph, trace).  The result keeps the vertex set and a
    subset of the arcs; it has pseudo-semidegree >= ceil(d) or no arcs at
    all.  If D has more than (2d-1)*n arcs the result is nonempty (checked
    on every run).
    """
    d = Fraction(d)
    if d < 1:
        raise BadParams("threshold must be >= 1")
    out = [set(D.out_adj[v]) for v in range(D.n)]
    inn = [set(D.in_adj[v]) for v in range(D.n)]
    events = []
    changed = True
    while changed:
        changed = False
        for v in range(D.n):
            if 0 < len(out[v]) < d:
                removed = tuple((v, w) for w in sorted(out[v]))
                for w in sorted(out[v]):
                    inn[w].discard(v)
                out[v].clear()
                events.append(PeelEvent(v, "out", removed))
                changed = True
            if 0 < len(inn[v]) < d:
                removed = tuple((w, v) for w in sorted(inn[v]))
                for w in sorted(inn[v]):
                    out[w].discard(v)
                inn[v].clear()
                events.append(PeelEvent(v, "in", removed))
                changed = True
    arcs = [(u, v) for u in range(D.n) for v in sorted(out[u])]
    sub = build_digraph(D.n, arcs)
    prof = degree_profile(sub)
    assert sub.m == 0 or prof.pseudo_delta_zero >= d, "peel fixed point broken"
    if D.m > (2 * d - 1) * D.n:
        assert sub.m > 0, "arc-count guarantee violated by peeling"
    return sub, PeelTrace(threshold=d, events=tuple(events), result=sub)


def corollary6_pipeline(D: Digraph, T: OrientedTree,
                        options: EmbedOptions = None) -> EmbedReport:
    """Embed an antidirected tree into a dense host with only directed 4-cycles.

    Checks: T antidirected with max total degree <= k/2, D has more than
    (k-1)*n arcs and every 4-cycle of D is directed.  Then peels D to
    pseudo-semidegree k/2 and runs the antidirected embedder on the peeled
    subdigraph; the embedding is valid in D unchanged.
    """
    if not is_antidirected(T):
        raise ConditionFailed("antidirected")
    k = T.k
    max_tot = max(T.deg(v) for v in range(T.n))
    if 2 * max_tot > k:
        raise ConditionFailed("max_total_degree",
                              f"Delta_tot(T)={max_tot} > k/2={k}/2")
    if D.m <= (k - 1) * D.n:
        raise ConditionFailed("arc_count",
                              f"m={D.m} <= (k-1)*n={(k - 1) * D.n}")
    witness = find_forbidden_cycle(D, CycleMode.NonDirectedC4)
    if witness is not None:
        raise ConditionFailed("c4_star_free", witness.render())
    sub, _trace = peel_to_pseudo_semidegree(D, Fraction(k, 2))
    return embed_tree(T, sub, EmbedMode.Antidirected, options)
