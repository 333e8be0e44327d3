"""Brute-force embedding oracle.

Exhaustive backtracking over all injective, arc-preserving placements of
an oriented tree into a host digraph.  Tree vertices are placed in
breadth-first order from the anchor, so each new vertex has exactly one
already-placed neighbour and candidates can be read off that neighbour's
adjacency list.  Candidates are additionally filtered by degree dominance
(the host image must have at least the tree vertex's out- and indegree).

A "No" answer is exhaustive; "Unknown" is returned only when the node
budget runs out.  Given identical inputs the search is deterministic, and
its node count is identical between the compiled and pure-python kernels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import _native
from .digraph import Digraph
from .trees import OrientedTree, anchor_vertex

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class OracleResult:
    decision: str  # "yes" | "no" | "unknown"
    embedding: Optional[dict]
    nodes_expanded: int
    budget: int

    @property
    def is_yes(self):
        return self.decision == "yes"

    @property
    def is_no(self):
        return self.decision == "no"


def _bfs_order(T: OrientedTree, start: int):
    """BFS vertex order plus, per slot, the parent slot and arc direction."""
    order = [start]
    slot_of = {start: 0}
    parent_slot = [-1]
    par_dir = [0]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in T.und_adj[x]:
            if y in slot_of:
                continue
            slot_of[y] = len(order)
            order.append(y)
            parent_slot.append(slot_of[x])
            par_dir.append(1 if T.has_arc(x, y) else -1)
            queue.append(y)
    return order, parent_slot, par_dir


def oracle_embed(T: OrientedTree, D: Digraph,
                 budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Decide whether T embeds in D by exhaustive search."""
    if budget is None:
        budget = DEFAULT_BUDGET
    if T.n > D.n:
        return OracleResult("no", None, 0, budget)
    order, parent_slot, par_dir = _bfs_order(T, anchor_vertex(T))
    need_out = [T.deg_plus(v) for v in order]
    need_in = [T.deg_minus(v) for v in order]
    status, nodes, mapping = _native.oracle_search_digraph(
        T.n, D, parent_slot, par_dir, need_out, need_in, budget)
    if status == 1:
        f = {order[i]: mapping[i] for i in range(T.n)}
        return OracleResult("yes", f, nodes, budget)
    if status == 2:
        return OracleResult("unknown", None, nodes, budget)
    return OracleResult("no", None, nodes, budget)


def _py_oracle_search(n_tree, n_host, parent_slot, par_dir,
                      need_out, need_in, host_out, host_in, budget):
    """Pure-python twin of the compiled search kernel."""
    fmap = [-1] * n_tree
    used = [False] * n_host
    hdeg_out = [len(row) for row in host_out]
    hdeg_in = [len(row) for row in host_in]
    nodes = 0
    overrun = False

    def rec(i):
        nonlocal nodes, overrun
        if i == n_tree:
            return True
        if i == 0:
            cands = range(n_host)
        else:
            p = fmap[parent_slot[i]]
            cands = host_out[p] if par_dir[i] > 0 else host_in[p]
        for c in cands:
            if used[c]:
                continue
            if hdeg_out[c] < need_out[i] or hdeg_in[c] < need_in[i]:
                continue
            nodes += 1
            if nodes > budget:
                overrun = True
                return False
            used[c] = True
            fmap[i] = c
            if rec(i + 1):
                return True
            used[c] = False
            fmap[i] = -1
            if overrun:
                return False
        return False

    found = rec(0)
    if found:
        return 1, nodes, list(fmap)
    if overrun:
        return 2, nodes, None
    return 0, nodes, None
