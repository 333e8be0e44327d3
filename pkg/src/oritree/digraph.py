"""Digraph representation and degree statistics.

Vertices are dense integers 0..n-1.  Adjacency is kept both as sorted
tuples (for deterministic iteration) and as per-vertex bitmasks, which are
the source of truth for intersection tests in the embedding engine.
Digons (a pair of opposite arcs) are allowed; loops and duplicate arcs are
not.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import DuplicateArc, ParseError, SelfLoop, VertexOutOfRange


class Digraph:
    """Immutable digraph with out/in/underlying adjacency.

    `_kernel_cache` memoizes the flattened-array views handed to the
    compiled kernels; it never affects equality or hashing.
    """

    __slots__ = ("n", "arcs", "out_adj", "in_adj", "und_adj",
                 "out_mask", "in_mask", "und_mask", "_kernel_cache")

    def __init__(self, n, arcs, out_adj, in_adj, und_adj,
                 out_mask, in_mask, und_mask):
        self.n = n
        self.arcs = arcs
        self.out_adj = out_adj
        self.in_adj = in_adj
        self.und_adj = und_adj
        self.out_mask = out_mask
        self.in_mask = in_mask
        self.und_mask = und_mask
        self._kernel_cache = {}

    @property
    def m(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_mask[u] >> v & 1)

    def deg_plus(self, v: int) -> int:
        return len(self.out_adj[v])

    def deg_minus(self, v: int) -> int:
        return len(self.in_adj[v])

    def deg(self, v: int) -> int:
        return len(self.und_adj[v])

    def __eq__(self, other):
        return (isinstance(other, Digraph)
                and self.n == other.n and self.arcs == other.arcs)

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeProfile:
    """All degree statistics a hypothesis check can quantify over."""

    delta_plus: int
    delta_minus: int
    delta_zero: int
    pseudo_delta_zero: int
    Delta_plus: int
    Delta_minus: int
    Delta_tot: int
    Delta_pm: int

    def __post_init__(self):
        assert self.delta_zero == min(self.delta_plus, self.delta_minus)
        assert self.Delta_pm == min(self.Delta_plus, self.Delta_minus)
        assert self.Delta_tot <= self.Delta_plus + self.Delta_minus

    def swap_sides(self) -> "DegreeProfile":
        """Profile of the arc-reversed digraph."""
        return DegreeProfile(
            delta_plus=self.delta_minus,
            delta_minus=self.delta_plus,
            delta_zero=self.delta_zero,
            pseudo_delta_zero=self.pseudo_delta_zero,
            Delta_plus=self.Delta_minus,
            Delta_minus=self.Delta_plus,
            Delta_tot=self.Delta_tot,
            Delta_pm=self.Delta_pm,
        )


def build_digraph(n, arcs) -> Digraph:
    """Validate an arc list and derive all adjacency structures."""
    seen = set()
    for u, v in arcs:
        if not (0 <= u < n) or not (0 <= v < n):
            raise VertexOutOfRange(u if not 0 <= u < n else v, n)
        if u == v:
            raise SelfLoop(u)
        if (u, v) in seen:
            raise DuplicateArc(u, v)
        seen.add((u, v))

    arcs = tuple(sorted(seen))
    out_sets = [set() for _ in range(n)]
    in_sets = [set() for _ in range(n)]
    for u, v in arcs:
        out_sets[u].add(v)
        in_sets[v].add(u)

    out_adj = tuple(tuple(sorted(s)) for s in out_sets)
    in_adj = tuple(tuple(sorted(s)) for s in in_sets)
    und_adj = tuple(tuple(sorted(out_sets[v] | in_sets[v])) for v in range(n))
    out_mask = tuple(_mask(s) for s in out_adj)
    in_mask = tuple(_mask(s) for s in in_adj)
    und_mask = tuple(o | i for o, i in zip(out_mask, in_mask))
    return Digraph(n, arcs, out_adj, in_adj, und_adj,
                   out_mask, in_mask, und_mask)


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def degree_profile(D: Digraph) -> DegreeProfile:
    """Compute the eight degree statistics.  An empty digraph is all-zero."""
    if D.n == 0:
        return DegreeProfile(0, 0, 0, 0, 0, 0, 0, 0)
    outs = [D.deg_plus(v) for v in range(D.n)]
    ins = [D.deg_minus(v) for v in range(D.n)]
    positive_sides = [d for d in outs + ins if d > 0]
    Dp, Dm = max(outs), max(ins)
    return DegreeProfile(
        delta_plus=min(outs),
        delta_minus=min(ins),
        delta_zero=min(min(outs), min(ins)),
        pseudo_delta_zero=min(positive_sides) if positive_sides else 0,
        Delta_plus=Dp,
        Delta_minus=Dm,
        Delta_tot=max(D.deg(v) for v in range(D.n)),
        Delta_pm=min(Dp, Dm),
    )


def reverse(D: Digraph) -> Digraph:
    """Digraph with every arc flipped; an involution."""
    return Digraph(D.n, tuple(sorted((v, u) for u, v in D.arcs)),
                   D.in_adj, D.out_adj, D.und_adj,
                   D.in_mask, D.out_mask, D.und_mask)


def is_oriented(D: Digraph) -> bool:
    """True iff the digraph has no digon."""
    return all(not (D.out_mask[v] & D.in_mask[v]) for v in range(D.n))


def underlying_distance(D: Digraph, u: int, v: int):
    """Shortest path length ignoring orientation, or None if unreachable."""
    if not (0 <= u < D.n) or not (0 <= v < D.n):
        raise VertexOutOfRange(u if not 0 <= u < D.n else v, D.n)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in D.und_adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    return None


def save_digraph(D: Digraph, header_comment=None) -> str:
    """Render the text format: 'n m' then one 'u v' line per arc, sorted."""
    lines = []
    if header_comment:
        lines.append(f"# {header_comment}")
    lines.append(f"{D.n} {D.m}")
    lines.extend(f"{u} {v}" for u, v in D.arcs)
    return "\n".join(lines) + "\n"


def load_digraph(text: str) -> Digraph:
    """Parse the text format; raises ParseError with the offending line."""
    header = None
    arcs = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"expected two integers, got {raw!r}")
        if header is None:
            header = (a, b, line_no)
        else:
            arcs.append((a, b, line_no))
    if header is None:
        raise ParseError(1, "missing 'n m' header line")
    n, m, hline = header
    if n < 0 or m < 0:
        raise ParseError(hline, "negative n or m")
    if len(arcs) != m:
        raise ParseError(hline, f"header promises {m} arcs, found {len(arcs)}")
    try:
        return build_digraph(n, [(u, v) for u, v, _ in arcs])
    except (SelfLoop, DuplicateArc, VertexOutOfRange) as exc:
        bad = arcs[0][2] if arcs else hline
        for u, v, line_no in arcs:
            if (getattr(exc, "u", None) == u
                    and getattr(exc, "v", v) in (v, None)):
                bad = line_no
                break
        raise ParseError(bad, str(exc))
