"""Oriented trees: structure, predicates and the stripping sequence.

An oriented tree on n = k+1 vertices is stored like a digraph but with the
tree invariants enforced at construction.  The stripping sequence is the
chain T_1 < T_2 < ... < T_r = T used by the embedding engine: each step
removes the leaf neighbours of one penultimate vertex, and the chain
bottoms out at the diameter-<=4 core around the anchor (the radius-2 ball,
per the design decision on core_subtree).

Subtrees are represented as frozensets of vertex ids of the parent tree,
so host-side bookkeeping never needs relabelling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph, build_digraph, save_digraph, load_digraph
from .errors import EmptyTree, HasCycle, NotConnected, ParseError


class OrientedTree(Digraph):
    """A connected, acyclic oriented graph; vertices 0..k."""

    __slots__ = ()

    @property
    def k(self) -> int:
        return self.m

    def __repr__(self):
        return f"OrientedTree(k={self.k})"


def build_tree(arcs) -> OrientedTree:
    """Validate an arc list as an oriented tree on vertices 0..k."""
    arcs = list(arcs)
    if not arcs:
        raise EmptyTree("a tree needs at least one arc")
    n = max(max(u, v) for u, v in arcs) + 1
    if len(arcs) > n - 1:
        raise HasCycle(f"{len(arcs)} arcs on {n} vertices")
    und_edges = {frozenset(a) for a in arcs}
    if len(und_edges) < len(arcs):
        raise HasCycle("digon or duplicate underlying edge")
    D = build_digraph(n, arcs)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in D.und_adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) < n:
        raise NotConnected(f"only {len(seen)} of {n} vertices reachable")
    return OrientedTree(D.n, D.arcs, D.out_adj, D.in_adj, D.und_adj,
                        D.out_mask, D.in_mask, D.und_mask)


def reverse_tree(T: OrientedTree) -> OrientedTree:
    return OrientedTree(T.n, tuple(sorted((v, u) for u, v in T.arcs)),
                        T.in_adj, T.out_adj, T.und_adj,
                        T.in_mask, T.out_mask, T.und_mask)


def is_antidirected(T: OrientedTree) -> bool:
    """Every vertex is a source or a sink."""
    return all(T.deg_plus(v) == 0 or T.deg_minus(v) == 0 for v in range(T.n))


def is_out_arborescence(T: OrientedTree) -> Optional[int]:
    """The root if all arcs point away from a single vertex, else None."""
    roots = [v for v in range(T.n) if T.deg_minus(v) == 0]
    if len(roots) != 1:
        return None
    if all(T.deg_minus(v) == 1 for v in range(T.n) if v != roots[0]):
        return roots[0]
    return None


def leaves(T: OrientedTree) -> frozenset:
    return frozenset(v for v in range(T.n) if T.deg(v) == 1)


def penultimate_vertices(T: OrientedTree) -> frozenset:
    """Non-leaves whose neighbours, except at most one, are leaves."""
    leaf = leaves(T)
    out = set()
    for v in range(T.n):
        if v in leaf:
            continue
        non_leaf_nbrs = sum(1 for w in T.und_adj[v] if w not in leaf)
        if non_leaf_nbrs <= 1:
            out.add(v)
    return frozenset(out)


def partition_classes(T: OrientedTree):
    """The two colour classes of the underlying tree, as frozensets."""
    colour = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in T.und_adj[x]:
            if y not in colour:
                colour[y] = 1 - colour[x]
                queue.append(y)
    a = frozenset(v for v, c in colour.items() if c == 0)
    b = frozenset(v for v, c in colour.items() if c == 1)
    return a, b


def distances_from(T: OrientedTree, start: int) -> list:
    dist = [-1] * T.n
    dist[start] = 0
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in T.und_adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def tree_path(T: OrientedTree, a: int, b: int) -> tuple:
    """The unique underlying path from a to b, inclusive."""
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in T.und_adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def diameter(T: OrientedTree) -> int:
    # double-BFS: farthest vertex from 0, then farthest from that
    d0 = distances_from(T, 0)
    a = max(range(T.n), key=lambda v: (d0[v], -v))
    return max(distances_from(T, a))


def anchor_vertex(T: OrientedTree) -> int:
    """A max-total-degree vertex; prefer outdegree >= indegree, then id."""
    best_deg = max(T.deg(v) for v in range(T.n))
    cands = [v for v in range(T.n) if T.deg(v) == best_deg]
    preferred = [v for v in cands if T.deg_plus(v) >= T.deg_minus(v)]
    return min(preferred) if preferred else min(cands)


def core_subtree(T: OrientedTree, t: int) -> frozenset:
    """The radius-2 ball around t: a diameter-<=4 subtree holding t and N(t)."""
    dist = distances_from(T, t)
    return frozenset(v for v in range(T.n) if dist[v] <= 2)


@dataclass(frozen=True)
class StripStep:
    """One stripping event: `u` is penultimate in the larger subtree."""
    u: int
    removed_leaves: frozenset


@dataclass(frozen=True)
class StrippingSequence:
    tree: OrientedTree
    anchor: int
    subtrees: tuple   # frozensets, smallest (T_1) first, full tree last
    steps: tuple      # steps[i] turns subtrees[i+1] into subtrees[i]

    def __len__(self):
        return len(self.subtrees)


def _sub_deg(T, verts, v):
    return sum(1 for w in T.und_adj[v] if w in verts)


def _sub_leaves(T, verts):
    return {v for v in verts if _sub_deg(T, verts, v) == 1}


def _sub_penultimates(T, verts, leaf):
    out = []
    for v in verts:
        if v in leaf:
            continue
        non_leaf = sum(1 for w in T.und_adj[v] if w in verts and w not in leaf)
        if non_leaf <= 1:
            out.append(v)
    return out


def stripping_sequence(T: OrientedTree, anchor=None) -> StrippingSequence:
    """Chain from the whole tree down to the radius-2 core around the anchor.

    At each step a penultimate vertex is stripped of its leaf neighbours.
    Only penultimate vertices whose leaf neighbours all lie outside the
    core ball are eligible; among those the one of minimum degree is taken
    (ties: maximum distance to the anchor, then smallest id).  This keeps
    every subtree a superset of the core and makes the chain deterministic.
    """
    t = anchor_vertex(T) if anchor is None else anchor
    ball = core_subtree(T, t)
    dist = distances_from(T, t)
    cur = frozenset(range(T.n))
    chain = [cur]
    step_list = []
    while cur != ball:
        leaf = _sub_leaves(T, cur)
        eligible = []
        for v in _sub_penultimates(T, cur, leaf):
            leaf_nbrs = [w for w in T.und_adj[v] if w in cur and w in leaf]
            if leaf_nbrs and all(w not in ball for w in leaf_nbrs):
                eligible.append((v, leaf_nbrs))
        assert eligible, "no eligible penultimate vertex above the core"
        eligible.sort(key=lambda it: (_sub_deg(T, cur, it[0]),
                                      -dist[it[0]], it[0]))
        u, leaf_nbrs = eligible[0]
        removed = frozenset(leaf_nbrs)
        step_list.append(StripStep(u=u, removed_leaves=removed))
        cur = cur - removed
        chain.append(cur)
    chain.reverse()
    step_list.reverse()
    return StrippingSequence(tree=T, anchor=t,
                             subtrees=tuple(chain), steps=tuple(step_list))


TREE_HEADER = "tree"


def save_tree(T: OrientedTree) -> str:
    return save_digraph(T, header_comment=TREE_HEADER)


def load_tree(text: str) -> OrientedTree:
    D = load_digraph(text)
    try:
        return build_tree(list(D.arcs))
    except (EmptyTree, HasCycle, NotConnected) as exc:
        raise ParseError(1, f"not a tree: {exc}")
