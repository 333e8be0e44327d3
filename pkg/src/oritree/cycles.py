"""Detection and classification of oriented 4-cycles.

Up to rotation and reflection there are exactly four orientations of the
4-cycle, keyed by the forward/backward pattern along the cyclic order:
FFFF (directed), FFFB, FFBB and FBFB.  A digraph is "c4-free" when no
orientation of a 4-cycle occurs at all, and "c4-star-free" when every
4-cycle that occurs is the directed one.

The scan walks canonical vertex tuples (v1, v2, v3, v4) with v1 minimal
and v2 < v4, in lexicographic order, so witnesses are deterministic.
Underlying 4-cycles are found by common-neighbour closing; with digons a
single vertex tuple can realize several orientation types, in which case
the smallest type in the order Directed < ThreeOne < TwoTwoBlock <
Alternating is reported.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from itertools import product

from . import _native
from .digraph import Digraph


class FourCycleType(enum.IntEnum):
    Directed = 0
    ThreeOne = 1
    TwoTwoBlock = 2
    Alternating = 3

    @property
    def label(self) -> str:
        return self.name


class CycleMode(enum.Enum):
    AllC4 = "AllC4"
    NonDirectedC4 = "NonDirectedC4"


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple  # cyclic 4-tuple, v1 minimal, v2 < v4
    arcs: tuple      # the 4 realizing arcs in cyclic order
    type: FourCycleType

    def render(self) -> str:
        return " ".join([self.type.label] + [str(v) for v in self.vertices])


def classify_cycle(pattern) -> FourCycleType:
    """Classify a forward/backward pattern along the cyclic order.

    `pattern` is a sequence of 4 booleans, True meaning the arc follows the
    traversal direction.  The result is invariant under rotation and
    reflection of the cycle.
    """
    pattern = tuple(bool(b) for b in pattern)
    if len(pattern) != 4:
        raise ValueError("pattern must have exactly 4 entries")
    forwards = sum(pattern)
    if forwards in (0, 4):
        return FourCycleType.Directed
    if forwards in (1, 3):
        return FourCycleType.ThreeOne
    i, j = (p for p in range(4) if pattern[p])
    return (FourCycleType.Alternating if j - i == 2
            else FourCycleType.TwoTwoBlock)


def _edge_realizations(D: Digraph, x: int, y: int):
    """Available directions for the underlying edge {x, y}: True = x->y."""
    dirs = []
    if D.has_arc(x, y):
        dirs.append(True)
    if D.has_arc(y, x):
        dirs.append(False)
    return dirs


def _tuple_realizations(D: Digraph, quad):
    """All (pattern, type) pairs realizable on the cyclic tuple `quad`."""
    v1, v2, v3, v4 = quad
    edges = ((v1, v2), (v2, v3), (v3, v4), (v4, v1))
    choices = [_edge_realizations(D, x, y) for x, y in edges]
    if any(not c for c in choices):
        return []
    out = []
    for pattern in product(*choices):
        out.append((pattern, classify_cycle(pattern)))
    return out


def _canonical_quads(D: Digraph):
    """Canonical cyclic 4-tuples of distinct vertices, lexicographically."""
    und = D.und_adj
    und_mask = D.und_mask
    for v1 in range(D.n):
        for v2 in und[v1]:
            if v2 <= v1:
                continue
            for v3 in und[v2]:
                if v3 <= v1 or v3 == v2:
                    continue
                for v4 in und[v3]:
                    if v4 <= v2 or v4 == v3:
                        continue
                    if und_mask[v1] >> v4 & 1:
                        yield (v1, v2, v3, v4)


def _forbidden_types(mode: CycleMode):
    if mode is CycleMode.AllC4:
        return set(FourCycleType)
    return {t for t in FourCycleType if t is not FourCycleType.Directed}


def find_forbidden_cycle(D: Digraph, mode: CycleMode = CycleMode.AllC4):
    """First 4-cycle witness forbidden under `mode`, or None.

    Mode AllC4 reports any oriented 4-cycle (None certifies c4-freeness);
    mode NonDirectedC4 reports only non-directed ones (None certifies that
    every 4-cycle is directed).
    """
    mode = CycleMode(mode)
    forbidden = _forbidden_types(mode)
    quad = _native.first_forbidden_quad(D, mode is CycleMode.AllC4)
    if quad is None:
        return None
    best = None
    for pattern, ctype in _tuple_realizations(D, quad):
        if ctype in forbidden and (best is None or ctype < best[1]):
            best = (pattern, ctype)
    assert best is not None, "native/pure scan disagreement on quad"
    pattern, ctype = best
    v1, v2, v3, v4 = quad
    edges = ((v1, v2), (v2, v3), (v3, v4), (v4, v1))
    arcs = tuple((x, y) if fwd else (y, x)
                 for (x, y), fwd in zip(edges, pattern))
    return CycleWitness(vertices=quad, arcs=arcs, type=ctype)


def _py_first_forbidden_quad(D: Digraph, include_directed: bool):
    """Pure-python twin of the native quad scan."""
    for quad in _canonical_quads(D):
        for _, ctype in _tuple_realizations(D, quad):
            if include_directed or ctype is not FourCycleType.Directed:
                return quad
    return None


def is_c4_free(D: Digraph) -> bool:
    return find_forbidden_cycle(D, CycleMode.AllC4) is None


def is_c4_star_free(D: Digraph) -> bool:
    return find_forbidden_cycle(D, CycleMode.NonDirectedC4) is None


def cycle_type_counts(D: Digraph) -> dict:
    """Number of canonical 4-tuples realizing each orientation type."""
    counts = {t: 0 for t in FourCycleType}
    for quad in _canonical_quads(D):
        seen = {ctype for _, ctype in _tuple_realizations(D, quad)}
        for t in seen:
            counts[t] += 1
    return counts


def cycle_types_present(D: Digraph) -> frozenset:
    return frozenset(t for t, c in cycle_type_counts(D).items() if c > 0)


def underlying_girth(D: Digraph):
    """Girth of the underlying simple graph (test support), None if a forest."""
    best = None
    for start in range(D.n):
        dist = {start: 0}
        parent = {start: -1}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            if best is not None and dist[x] * 2 >= best:
                break
            for y in D.und_adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    cand = dist[x] + dist[y] + 1
                    if best is None or cand < best:
                        best = cand
    return best
