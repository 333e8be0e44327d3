"""Constructive tree-embedding engine with certificates.

The engine mirrors the structure of the existence proofs it executes:

* embed the diameter-<=4 core around the anchor greedily (the degree and
  4-cycle conditions guarantee room at every step, so no backtracking is
  needed there);
* walk the stripping sequence and re-attach each stripped leaf set with a
  direct extension move; when that fails, the two repair moves fire -- a
  far-penultimate relocation when exactly two candidate images remain
  (case A) and an image swap when one remains (case B);
* if the constructive moves are exhausted, fall back to a bounded
  exhaustive search, which also supplies oracle-confirmed negative
  answers.

A run that fails constructively *and* exhaustively while all hypotheses
hold is reported as HypothesisViolation: either a counterexample or an
engine bug, never silently absorbed.

Everything is deterministic: candidates are scanned in ascending host id,
and the only randomness in the package lives in the instance generators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .cycles import CycleMode, CycleWitness, find_forbidden_cycle
from .digraph import Digraph, degree_profile, is_oriented, reverse
from .errors import CoreStepStuck, ModeMismatch
from .oracle import DEFAULT_BUDGET, oracle_embed
from .trees import (OrientedTree, anchor_vertex, core_subtree,
                    distances_from, is_antidirected, is_out_arborescence,
                    reverse_tree, stripping_sequence, tree_path,
                    _sub_leaves, _sub_penultimates)

OUT, IN = 1, -1


class EmbedMode(enum.Enum):
    GeneralOriented = "general"
    Antidirected = "antidirected"
    Arborescence = "arborescence"


class EmbedStatus(enum.Enum):
    Embedded = "Embedded"
    NotEmbeddable = "NotEmbeddable"
    FallbackExhausted = "FallbackExhausted"
    HypothesisViolation = "HypothesisViolation"


@dataclass(frozen=True)
class Embedding:
    """Injective arc-preserving partial map, tree vertex -> host vertex."""

    pairs: tuple  # sorted (tree_vertex, host_vertex) pairs

    @staticmethod
    def from_dict(mapping) -> "Embedding":
        return Embedding(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def image(self) -> frozenset:
        return frozenset(h for _, h in self.pairs)

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class Move:
    kind: str  # CoreStep | Direct | CaseA | CaseB | Backtrack
    data: dict

    def to_json(self):
        out = {"move": self.kind}
        out.update(self.data)
        return out


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    detail: str
    witness: Optional[CycleWitness] = None

    def to_json(self):
        out = {"name": self.name, "holds": self.holds, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = {
                "type": self.witness.type.label,
                "vertices": list(self.witness.vertices),
                "arcs": [list(a) for a in self.witness.arcs],
            }
        return out


@dataclass(frozen=True)
class HypothesisReport:
    mode: EmbedMode
    k: int
    host_oriented: bool
    conditions: tuple

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.conditions)

    def condition(self, name) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {
            "mode": self.mode.value,
            "k": self.k,
            "host_oriented": self.host_oriented,
            "all_hold": self.all_hold,
            "conditions": [c.to_json() for c in self.conditions],
        }


@dataclass(frozen=True)
class EmbedReport:
    status: EmbedStatus
    embedding: Optional[Embedding]
    moves: tuple
    hypotheses: HypothesisReport
    seed: int
    mirrored: bool
    fallback_budget: int
    oracle_nodes: Optional[int] = None
    diagnostics: tuple = ()

    @property
    def backtrack_count(self) -> int:
        return sum(1 for m in self.moves if m.kind == "Backtrack")

    def to_json(self):
        return {
            "status": self.status.value,
            "embedding": ([list(p) for p in self.embedding.pairs]
                          if self.embedding else None),
            "moves": [m.to_json() for m in self.moves],
            "hypotheses": self.hypotheses.to_json(),
            "seed": self.seed,
            "mirrored": self.mirrored,
            "fallback_budget": self.fallback_budget,
            "oracle_nodes": self.oracle_nodes,
            "diagnostics": list(self.diagnostics),
        }


@dataclass
class EmbedOptions:
    fallback_budget: int = DEFAULT_BUDGET
    assert_constructive: bool = False
    seed: int = 0


def validate_embedding(T: OrientedTree, D: Digraph, f):
    """Check totality, range, injectivity and arc preservation.

    Returns (True, None) or (False, first_violation_label).
    """
    if isinstance(f, Embedding):
        f = f.as_dict()
    if any(v not in f for v in range(T.n)):
        return False, "Totality"
    if any(not (0 <= f[v] < D.n) for v in range(T.n)):
        return False, "Range"
    if len({f[v] for v in range(T.n)}) != T.n:
        return False, "Injectivity"
    for x, y in T.arcs:
        if not D.has_arc(f[x], f[y]):
            return False, "ArcDirection"
    return True, None


def _partial_valid(T, D, fmap, verts):
    imgs = [fmap[v] for v in verts]
    if len(set(imgs)) != len(imgs):
        return False
    for x, y in T.arcs:
        if x in verts and y in verts and not D.has_arc(fmap[x], fmap[y]):
            return False
    return True


def check_mode_structure(T: OrientedTree, mode: EmbedMode):
    """Raise ModeMismatch when T violates the mode's structural premise."""
    if mode is EmbedMode.Antidirected and not is_antidirected(T):
        raise ModeMismatch("tree is not antidirected")
    if mode is EmbedMode.Arborescence:
        root = is_out_arborescence(T)
        if root is None:
            raise ModeMismatch("tree is not an out-arborescence")
        if T.deg(root) != max(T.deg(v) for v in range(T.n)):
            raise ModeMismatch(
                "arborescence root does not have maximum total degree")


def check_hypotheses(T: OrientedTree, D: Digraph,
                     mode: EmbedMode) -> HypothesisReport:
    """Evaluate the mode's degree, maximum-degree and cycle conditions."""
    mode = EmbedMode(mode)
    check_mode_structure(T, mode)
    k = T.k
    prof = degree_profile(D)
    tree_max_tot = max(T.deg(v) for v in range(T.n))
    tree_max_out = max(T.deg_plus(v) for v in range(T.n))
    oriented = is_oriented(D)

    if mode is EmbedMode.GeneralOriented:
        degree = Condition(
            "degree", 2 * prof.delta_zero >= k,
            f"delta0={prof.delta_zero} vs k/2={k}/2")
        delta = Condition(
            "delta", prof.Delta_pm > tree_max_tot,
            f"Delta_pm={prof.Delta_pm} vs Delta_tot(T)={tree_max_tot}")
        witness = find_forbidden_cycle(D, CycleMode.AllC4)
        cycle = Condition("cycle", witness is None, "c4_free", witness)
    elif mode is EmbedMode.Antidirected:
        degree = Condition(
            "degree", 2 * prof.pseudo_delta_zero >= k,
            f"pseudo_delta0={prof.pseudo_delta_zero} vs k/2={k}/2")
        delta = Condition(
            "delta", prof.Delta_pm > tree_max_tot,
            f"Delta_pm={prof.Delta_pm} vs Delta_tot(T)={tree_max_tot}")
        witness = find_forbidden_cycle(D, CycleMode.NonDirectedC4)
        cycle = Condition("cycle", witness is None, "c4_star_free", witness)
    else:
        plain = 2 * prof.delta_plus >= k
        relaxed = (oriented and 2 * prof.delta_plus >= k - 2
                   and 2 * prof.Delta_plus >= k)
        degree = Condition(
            "degree", plain or relaxed,
            f"delta_plus={prof.delta_plus}, Delta_plus={prof.Delta_plus}, "
            f"oriented={oriented}, k={k}")
        delta = Condition(
            "delta", prof.Delta_plus > tree_max_out,
            f"Delta_plus={prof.Delta_plus} vs Delta_plus(T)={tree_max_out}")
        witness = find_forbidden_cycle(D, CycleMode.AllC4)
        cycle = Condition("cycle", witness is None, "c4_free", witness)
    return HypothesisReport(mode=mode, k=k, host_oriented=oriented,
                            conditions=(degree, delta, cycle))


class EmbedState:
    """Mutable workspace for one embedding attempt."""

    def __init__(self, T, D, mode, mapping=None, monitor=None):
        self.T = T
        self.D = D
        self.mode = EmbedMode(mode)
        self.f = [-1] * T.n
        self.used_mask = 0
        self.occupant = {}
        self.moves = []
        self.diagnostics = []
        self.monitor = monitor
        self._last_step = None
        if mapping:
            for tv, hv in sorted(mapping.items()):
                self.place(tv, hv)

    # -- host adjacency, routed for the access-discipline instrumentation --
    def host_side(self, h, sign):
        if self.monitor is not None:
            self.monitor("out" if sign == OUT else "in", h,
                         self.occupant.get(h))
        return self.D.out_adj[h] if sign == OUT else self.D.in_adj[h]

    def place(self, tv, hv):
        assert self.f[tv] < 0 and not (self.used_mask >> hv) & 1
        self.f[tv] = hv
        self.used_mask |= 1 << hv
        self.occupant[hv] = tv

    def unplace(self, tv):
        hv = self.f[tv]
        assert hv >= 0
        self.f[tv] = -1
        self.used_mask &= ~(1 << hv)
        del self.occupant[hv]

    def placed_vertices(self):
        return [v for v in range(self.T.n) if self.f[v] >= 0]

    def mapping_dict(self):
        return {v: self.f[v] for v in range(self.T.n) if self.f[v] >= 0}

    @property
    def embedding(self) -> Embedding:
        return Embedding.from_dict(self.mapping_dict())

    def snapshot(self):
        return (list(self.f), self.used_mask, dict(self.occupant),
                len(self.moves), len(self.diagnostics))

    def restore(self, snap):
        self.f = list(snap[0])
        self.used_mask = snap[1]
        self.occupant = dict(snap[2])
        del self.moves[snap[3]:]
        del self.diagnostics[snap[4]:]


def _split_assign(state, center_host, out_ids, in_ids, forbidden_mask):
    """Hosts for out_ids in N+(center) and in_ids in N-(center), disjointly.

    Vertices available on both sides (digon neighbours) are spent on the
    out side only as needed, so the assignment exists whenever any
    assignment exists.  Returns sorted (tree_vertex, host) pairs or None.
    """
    need_o, need_i = len(out_ids), len(in_ids)
    if need_o == 0 and need_i == 0:
        return []
    pool_o = []
    pool_i = []
    if need_o:
        pool_o = [h for h in state.host_side(center_host, OUT)
                  if not (forbidden_mask >> h) & 1]
    if need_i:
        pool_i = [h for h in state.host_side(center_host, IN)
                  if not (forbidden_mask >> h) & 1]
    if need_o and need_i:
        iset = set(pool_i)
        oset = set(pool_o)
        o_only = [h for h in pool_o if h not in iset]
        shared = [h for h in pool_o if h in iset]
        i_only = [h for h in pool_i if h not in oset]
        take_o = o_only[:need_o]
        spill = need_o - len(take_o)
        if spill > len(shared):
            return None
        take_o += shared[:spill]
        shared_left = shared[spill:]
        take_i = i_only[:need_i]
        spill_i = need_i - len(take_i)
        if spill_i > len(shared_left):
            return None
        take_i += shared_left[:spill_i]
    else:
        if len(pool_o) < need_o or len(pool_i) < need_i:
            return None
        take_o = pool_o[:need_o]
        take_i = pool_i[:need_i]
    pairs = list(zip(sorted(out_ids), take_o)) + \
        list(zip(sorted(in_ids), take_i))
    return sorted(pairs)


# ---------------------------------------------------------------------------
# Core: embedding the diameter-<=4 subtree around the anchor
# ---------------------------------------------------------------------------

def _core_target_vertex(state):
    """Host vertex of maximum outdegree (smallest id)."""
    D = state.D
    best = max(D.deg_plus(v) for v in range(D.n))
    return min(v for v in range(D.n) if D.deg_plus(v) == best)


def _tprime_candidates(state, t):
    """Order in which neighbours of the anchor are tried as t'."""
    T = state.T
    nbrs = T.und_adj[t]
    non_leaf = [x for x in nbrs if T.deg(x) > 1]
    leaf = [x for x in nbrs if T.deg(x) == 1]

    def key(x):
        # in-neighbours first: the host in-side is the scarcer pool
        return (0 if T.has_arc(x, t) else 1, x)

    return sorted(non_leaf, key=key) + sorted(leaf, key=key)


def _around(state, center, skip, ball):
    T = state.T
    out_ids = sorted(x for x in T.out_adj[center]
                     if x != skip and x in ball and state.f[x] < 0)
    in_ids = sorted(x for x in T.in_adj[center]
                    if x != skip and x in ball and state.f[x] < 0)
    pairs = _split_assign(state, state.f[center], out_ids, in_ids,
                          state.used_mask)
    if pairs is None:
        return False
    for tv, hv in pairs:
        state.place(tv, hv)
    if pairs:
        state.moves.append(Move("CoreStep", {
            "center": center, "host": state.f[center],
            "placed": [[tv, hv] for tv, hv in pairs]}))
    return True


def _core_attempt(state, t, t_prime, a, ball):
    T = state.T
    state.place(t, a)
    state.moves.append(Move("CoreStep", {"center": t, "host": a,
                                         "placed": [[t, a]]}))
    sign = OUT if T.has_arc(t, t_prime) else IN
    pool = [h for h in state.host_side(a, sign)
            if not (state.used_mask >> h) & 1]
    if not pool:
        return False
    b = pool[0]
    state.place(t_prime, b)
    state.moves.append(Move("CoreStep", {"center": t_prime, "host": b,
                                         "placed": [[t_prime, b]]}))
    if not _around(state, t_prime, t, ball):
        return False
    if not _around(state, t, t_prime, ball):
        return False
    for u in sorted(x for x in T.und_adj[t]
                    if x != t_prime and T.deg(x) > 1):
        if not _around(state, u, t, ball):
            return False
    return True


def _embed_core(state, anchor, ball):
    """Embed the radius-2 core; raises CoreStepStuck when no choice works."""
    a = _core_target_vertex(state)
    for t_prime in _tprime_candidates(state, anchor):
        snap = state.snapshot()
        if _core_attempt(state, anchor, t_prime, a, ball):
            return
        state.restore(snap)
    raise CoreStepStuck(anchor)


def embed_core(T: OrientedTree, D: Digraph, mode, seed: int = 0) -> Embedding:
    """Embed the diameter-<=4 core subtree around the anchor.

    The anchor goes to a host vertex of maximum outdegree, then a chosen
    neighbour and its neighbours, then the rest of the anchor's
    neighbourhood, then the remaining radius-2 vertices.  `seed` is
    accepted for interface symmetry but unused: the engine is
    deterministic.  Raises CoreStepStuck when greedy placement fails,
    which the hypotheses rule out.
    """
    del seed
    mode = EmbedMode(mode)
    check_mode_structure(T, mode)
    if mode is EmbedMode.Arborescence:
        anchor = is_out_arborescence(T)
    else:
        anchor = anchor_vertex(T)
    state = EmbedState(T, D, mode)
    _embed_core(state, anchor, core_subtree(T, anchor))
    return state.embedding


# ---------------------------------------------------------------------------
# Extension along the stripping sequence
# ---------------------------------------------------------------------------

@dataclass
class _StepInfo:
    u: int
    v: int
    diamond: int
    out_leaves: tuple
    in_leaves: tuple
    next_set: frozenset
    Q: tuple = ()
    fail_side: dict = field(default_factory=dict)

    @property
    def d_u(self):
        return len(self.out_leaves) + len(self.in_leaves)


def _step_info(state, u) -> _StepInfo:
    T = state.T
    placed = [x for x in T.und_adj[u] if state.f[x] >= 0]
    missing = [x for x in T.und_adj[u] if state.f[x] < 0]
    assert state.f[u] >= 0, "strip vertex must already be embedded"
    assert len(placed) == 1, "strip vertex must have one embedded neighbour"
    assert missing, "nothing to extend"
    v = placed[0]
    diamond = OUT if T.has_arc(v, u) else IN
    out_leaves = tuple(sorted(x for x in missing if T.has_arc(u, x)))
    in_leaves = tuple(sorted(x for x in missing if T.has_arc(x, u)))
    next_set = frozenset(state.placed_vertices()) | frozenset(missing)
    return _StepInfo(u=u, v=v, diamond=diamond, out_leaves=out_leaves,
                     in_leaves=in_leaves, next_set=next_set)


def _fail_side(state, info, a, tprime_mask):
    """The neighbourhood side blamed for a failed direct extension at a."""
    if state.mode is EmbedMode.Antidirected or not info.in_leaves:
        return OUT if info.out_leaves else IN
    if not info.out_leaves:
        # failure with only in-leaves and both pools in play
        avail_o = sum(1 for h in state.host_side(a, OUT)
                      if not (tprime_mask >> h) & 1 and h != a)
        return OUT if avail_o < info.d_u else IN
    avail_o = sum(1 for h in state.host_side(a, OUT)
                  if not (tprime_mask >> h) & 1 and h != a)
    return OUT if avail_o < info.d_u else IN


def extend_direct(state: EmbedState, u: int) -> Optional[Embedding]:
    """Re-house u anywhere in Q and place its stripped leaves greedily.

    Q is the unused part of the embedded neighbour's relevant host
    neighbourhood (it always contains u's current image).  Candidates are
    tried in ascending host id; the first that leaves disjoint room for
    the out- and in-leaves wins.  Returns the extended embedding, or None
    with the failure analysis cached for the repair moves.
    """
    info = _step_info(state, u)
    u_img = state.f[u]
    v_img = state.f[info.v]
    tprime_mask = state.used_mask & ~(1 << u_img)
    Q = tuple(c for c in state.host_side(v_img, info.diamond)
              if not (tprime_mask >> c) & 1)
    info.Q = Q
    for a in Q:
        pairs = _split_assign(state, a, info.out_leaves, info.in_leaves,
                              tprime_mask | (1 << a))
        if pairs is not None:
            if a != u_img:
                state.unplace(u)
                state.place(u, a)
            for tv, hv in pairs:
                state.place(tv, hv)
            state.moves.append(Move("Direct", {
                "u": u, "host": a, "rehoused": a != u_img,
                "placed": [[tv, hv] for tv, hv in pairs]}))
            state._last_step = info
            return state.embedding
        info.fail_side[a] = _fail_side(state, info, a, tprime_mask)
    state._last_step = info
    return None


def _cached_info(state, u):
    info = state._last_step
    if info is None or info.u != u:
        if extend_direct(state, u) is not None:
            raise AssertionError("repair invoked but direct extension works")
        info = state._last_step
    return info


def _far_penultimate(state, info):
    """Penultimate vertex of the next subtree, embedded, farthest from v."""
    T = state.T
    cur = frozenset(state.placed_vertices())
    leaf = _sub_leaves(T, info.next_set)
    cands = [x for x in _sub_penultimates(T, info.next_set, leaf)
             if x in cur and x != info.u]
    if not cands:
        return None, ()
    dist = distances_from(T, info.v)
    cands.sort(key=lambda x: (-dist[x], x))
    w = cands[0]
    W = tuple(sorted(x for x in T.und_adj[w]
                     if x in info.next_set and x in leaf))
    return w, W


def repair_case_a(state: EmbedState, u: int) -> Optional[Embedding]:
    """Relocation repair for q = 2.

    A leaf w1 of the farthest penultimate vertex w sits in the blamed
    neighbourhood of u's image; u's subtree minus one leaf h (matching
    that side) is re-embedded around u, w1 moves to a fresh neighbour of
    w's image, and h takes w1's old place.
    """
    info = _cached_info(state, u)
    if len(info.Q) != 2:
        return None
    T, D = state.T, state.D
    u_img = state.f[u]
    s_u = info.fail_side.get(u_img)
    if s_u is None:
        return None
    w, W = _far_penultimate(state, info)
    if w is None or not W:
        return None
    n_u = set(state.host_side(u_img, s_u))
    w1 = next((x for x in W if state.f[x] in n_u), None)
    if w1 is None:
        state.diagnostics.append(
            {"event": "case_a_no_w1", "u": u, "w": w})
        return None
    side_leaves = info.out_leaves if s_u == OUT else info.in_leaves
    if not side_leaves:
        return None
    h = side_leaves[0]
    rest_out = tuple(x for x in info.out_leaves if x != h)
    rest_in = tuple(x for x in info.in_leaves if x != h)
    pairs = _split_assign(state, u_img, rest_out, rest_in, state.used_mask)
    if pairs is None:
        return None
    g_used = state.used_mask
    for _, hv in pairs:
        g_used |= 1 << hv
    s_w = OUT if T.has_arc(w, w1) else IN
    target = next((c for c in state.host_side(state.f[w], s_w)
                   if not (g_used >> c) & 1), None)
    if target is None:
        return None
    cand = list(state.f)
    for tv, hv in pairs:
        cand[tv] = hv
    old_w1 = cand[w1]
    cand[w1] = target
    cand[h] = old_w1
    if not _partial_valid(T, D, cand, info.next_set):
        state.diagnostics.append({"event": "case_a_invalid", "u": u})
        return None
    _commit(state, cand, info.next_set)
    state.moves.append(Move("CaseA", {
        "u": u, "h": h, "w": w, "w1": w1, "w1_to": target,
        "h_to": old_w1, "placed": [[tv, hv] for tv, hv in sorted(pairs)]}))
    return state.embedding


def repair_case_b(state: EmbedState, u: int) -> Optional[Embedding]:
    """Swap repair for q = 1.

    The unique embedded x whose image lies in both blamed neighbourhoods
    (an out/in-neighbour of v on the tree side, distinct from the path
    vertex v1) trades images with u, and u's leaves are placed around
    x's old image.  Candidates failing local validation are skipped.
    """
    info = _cached_info(state, u)
    if len(info.Q) != 1:
        return None
    T, D = state.T, state.D
    u_img = state.f[u]
    v_img = state.f[info.v]
    s_u = info.fail_side.get(u_img)
    if s_u is None:
        return None
    n_u = set(state.host_side(u_img, s_u))
    n_v = set(state.host_side(v_img, info.diamond))
    common = n_u & n_v
    w, _ = _far_penultimate(state, info)
    v1 = None
    if w is not None and w != info.v:
        v1 = tree_path(T, info.v, w)[1]
    cands = []
    for x in state.placed_vertices():
        if x in (u, info.v) or state.f[x] not in common:
            continue
        if info.diamond == OUT and not T.has_arc(info.v, x):
            continue
        if info.diamond == IN and not T.has_arc(x, info.v):
            continue
        if v1 is not None and x == v1:
            continue
        cands.append(x)
    cands.sort(key=lambda x: state.f[x])
    for x in cands:
        x_img = state.f[x]
        pairs = _split_assign(state, x_img, info.out_leaves, info.in_leaves,
                              state.used_mask)
        if pairs is None:
            continue
        cand = list(state.f)
        cand[u] = x_img
        cand[x] = u_img
        for tv, hv in pairs:
            cand[tv] = hv
        if not _partial_valid(T, D, cand, info.next_set):
            continue
        _commit(state, cand, info.next_set)
        state.moves.append(Move("CaseB", {
            "u": u, "x": x, "u_host": x_img, "x_host": u_img,
            "placed": [[tv, hv] for tv, hv in sorted(pairs)]}))
        return state.embedding
    return None


def _commit(state, cand, verts):
    state.f = list(cand)
    mask = 0
    occupant = {}
    for v in verts:
        mask |= 1 << cand[v]
        occupant[cand[v]] = v
    state.used_mask = mask
    state.occupant = occupant
    state._last_step = None


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------

def _mirror_decision(T: OrientedTree, mode: EmbedMode) -> bool:
    """Antisymmetric choice so exactly one of (T,D), (rev T, rev D) runs."""
    if mode is EmbedMode.Arborescence:
        return False
    best = max(T.deg(v) for v in range(T.n))
    t_star = min(v for v in range(T.n) if T.deg(v) == best)
    dp, dm = T.deg_plus(t_star), T.deg_minus(t_star)
    if mode is EmbedMode.Antidirected:
        return dp == 0
    if dp != dm:
        return dm > dp
    return min(T.in_adj[t_star]) < min(T.out_adj[t_star])


def _constructive(state, strip):
    try:
        _embed_core(state, strip.anchor, strip.subtrees[0])
    except CoreStepStuck:
        return False
    for step in strip.steps:
        emb = extend_direct(state, step.u)
        if emb is None:
            q = len(state._last_step.Q)
            if q == 2:
                emb = repair_case_a(state, step.u)
            if emb is None and q == 1:
                emb = repair_case_b(state, step.u)
        if emb is None:
            return False
    return True


def embed_tree(T: OrientedTree, D: Digraph, mode,
               options: EmbedOptions = None,
               monitor=None) -> EmbedReport:
    """Embed T into D: mirror reduction, core, extension moves, fallback.

    Every Embedded result is re-validated by the independent checker.  A
    NotEmbeddable status is always oracle-confirmed (exhaustive search);
    FallbackExhausted means the node budget ran out first.
    """
    mode = EmbedMode(mode)
    options = options or EmbedOptions()
    check_mode_structure(T, mode)
    hyp = check_hypotheses(T, D, mode)
    mirrored = _mirror_decision(T, mode)
    Tw = reverse_tree(T) if mirrored else T
    Dw = reverse(D) if mirrored else D
    if mode is EmbedMode.Arborescence:
        anchor = is_out_arborescence(Tw)
    else:
        anchor = anchor_vertex(Tw)
    strip = stripping_sequence(Tw, anchor=anchor)
    state = EmbedState(Tw, Dw, mode, monitor=monitor)

    if Tw.n <= Dw.n and _constructive(state, strip):
        f = state.mapping_dict()
        ok, violation = validate_embedding(Tw, Dw, f)
        if not ok:
            raise AssertionError(f"constructive embedding invalid: {violation}")
        return EmbedReport(EmbedStatus.Embedded, Embedding.from_dict(f),
                           tuple(state.moves), hyp, options.seed, mirrored,
                           options.fallback_budget,
                           diagnostics=tuple(state.diagnostics))

    if options.assert_constructive and hyp.all_hold:
        return EmbedReport(EmbedStatus.HypothesisViolation, None,
                           tuple(state.moves), hyp, options.seed, mirrored,
                           options.fallback_budget,
                           diagnostics=tuple(state.diagnostics))

    res = oracle_embed(Tw, Dw, options.fallback_budget)
    moves = tuple(state.moves) + (
        Move("Backtrack", {"nodes": res.nodes_expanded}),)
    if res.is_yes:
        ok, violation = validate_embedding(Tw, Dw, res.embedding)
        if not ok:
            raise AssertionError(f"oracle embedding invalid: {violation}")
        return EmbedReport(EmbedStatus.Embedded,
                           Embedding.from_dict(res.embedding), moves, hyp,
                           options.seed, mirrored, options.fallback_budget,
                           oracle_nodes=res.nodes_expanded,
                           diagnostics=tuple(state.diagnostics))
    if res.is_no:
        status = (EmbedStatus.HypothesisViolation if hyp.all_hold
                  else EmbedStatus.NotEmbeddable)
        return EmbedReport(status, None, moves, hyp, options.seed, mirrored,
                           options.fallback_budget,
                           oracle_nodes=res.nodes_expanded,
                           diagnostics=tuple(state.diagnostics))
    return EmbedReport(EmbedStatus.FallbackExhausted, None, moves, hyp,
                       options.seed, mirrored, options.fallback_budget,
                       oracle_nodes=res.nodes_expanded,
                       diagnostics=tuple(state.diagnostics))
