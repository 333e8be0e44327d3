"""Instance generators: the paper-style extremal hosts and random families.

Everything is deterministic given (parameters, seed).  Child generators
derive their seeds by hashing, so adding a new sampling site never shifts
the stream of an existing one.  Structural claims about generator output
(girth, regularity, freeness) are re-verified by the independent
predicates in tests, never trusted by construction.
"""

from __future__ import annotations

import hashlib
import random
from collections import deque
from itertools import product

from .cycles import FourCycleType, classify_cycle
from .digraph import Digraph, build_digraph
from .errors import (BadKind, BadParams, InfeasibleAfterRetries, KTooSmall,
                     UnsupportedOrder)
from .trees import OrientedTree, build_tree

# Perfect difference sets realizing the point-line incidence of the
# projective planes of orders 2, 3 and 4 (point i lies on line j iff
# (i - j) mod (q^2+q+1) is in the set).  The resulting bipartite graphs
# are (q+1)-regular with girth 6.
_DIFFERENCE_SETS = {
    2: (1, 2, 4),
    3: (0, 1, 3, 9),
    4: (0, 1, 4, 14, 16),
}

_ORIENTED_ORDERS = (3, 5, 7)  # odd primes: incidence built arithmetically


def derive_seed(seed, *tags) -> int:
    """Stable child seed from a parent seed and a label path."""
    text = repr((int(seed),) + tuple(tags)).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


def gen_two_clique_host(k: int) -> Digraph:
    """Two cliques on ceil(k/2) vertices joined by a universal vertex.

    Every underlying edge becomes a digon.  The host satisfies the degree
    conditions of the oriented-tree theorem (semidegree ceil(k/2) >= k/2,
    a vertex of in- and outdegree 2*ceil(k/2) >= k) yet contains every
    orientation type of the 4-cycle, so trees with three roughly equal
    branches cannot embed.
    """
    if k < 4:
        raise KTooSmall("two-clique host needs k >= 4")
    size = (k + 1) // 2
    a = list(range(size))
    b = list(range(size, 2 * size))
    u = 2 * size
    edges = []
    for grp in (a, b):
        edges.extend((x, y) for i, x in enumerate(grp) for y in grp[i + 1:])
    edges.extend((x, u) for x in a + b)
    arcs = []
    for x, y in edges:
        arcs.append((x, y))
        arcs.append((y, x))
    return build_digraph(u + 1, arcs)


def gen_blowup_cycle(length: int, s: int) -> Digraph:
    """Directed cycle with every vertex blown up into an independent s-set."""
    if length < 3 or s < 1:
        raise BadParams("blow-up needs cycle length >= 3 and class size >= 1")
    n = length * s
    arcs = []
    for i in range(length):
        j = (i + 1) % length
        for x in range(i * s, (i + 1) * s):
            for y in range(j * s, (j + 1) * s):
                arcs.append((x, y))
    return build_digraph(n, arcs)


def gen_girth6_digon_host(q: int) -> Digraph:
    """Point-line incidence graph of the order-q projective plane, digonised.

    Bipartite, (q+1)-regular, underlying girth 6, so free of all oriented
    4-cycles while having semidegree q+1.
    """
    if q not in _DIFFERENCE_SETS:
        raise UnsupportedOrder(f"no stored incidence data for order {q}")
    dset = _DIFFERENCE_SETS[q]
    half = q * q + q + 1
    arcs = []
    for i in range(half):
        for d in dset:
            j = (i - d) % half
            arcs.append((i, half + j))
            arcs.append((half + j, i))
    return build_digraph(2 * half, arcs)


def _prime_plane_edges(q: int):
    """Incidence edges of PG(2, q) for prime q, by homogeneous coordinates."""
    pts = ([(1, y, z) for y in range(q) for z in range(q)]
           + [(0, 1, z) for z in range(q)]
           + [(0, 0, 1)])
    half = len(pts)
    edges = []
    for i, p in enumerate(pts):
        for j, l in enumerate(pts):
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0:
                edges.append((i, half + j))
    return 2 * half, edges


def _euler_orientation(n: int, edges):
    """Orient a connected even-degree graph along an Eulerian circuit."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for row in adj:
        row.sort()
    used = set()
    ptr = [0] * n
    stack = [0]
    walk = []
    while stack:
        v = stack[-1]
        while ptr[v] < len(adj[v]) and frozenset((v, adj[v][ptr[v]])) in used:
            ptr[v] += 1
        if ptr[v] == len(adj[v]):
            walk.append(stack.pop())
        else:
            w = adj[v][ptr[v]]
            used.add(frozenset((v, w)))
            stack.append(w)
    walk.reverse()
    assert len(walk) == len(edges) + 1, "graph not Eulerian-connected"
    return [(walk[i], walk[i + 1]) for i in range(len(walk) - 1)]


def gen_oriented_girth6_host(q: int) -> Digraph:
    """Oriented girth-6 host with one high-outdegree hub.

    The PG(2, q) incidence graph (odd prime q, so (q+1)-regular with q+1
    even) is oriented along an Eulerian circuit, giving out- and indegree
    (q+1)/2 everywhere; then every in-arc of vertex 0 is flipped outward.
    Result: an oriented graph of underlying girth 6 with minimum outdegree
    (q-1)/2 and a hub of outdegree q+1.
    """
    if q not in _ORIENTED_ORDERS:
        raise UnsupportedOrder(f"oriented host supports q in {_ORIENTED_ORDERS}")
    n, edges = _prime_plane_edges(q)
    arcs = _euler_orientation(n, edges)
    hub = 0
    arcs = [(hub, u) if v == hub else (u, v) for u, v in arcs]
    return build_digraph(n, arcs)


def _prufer_tree(seq, n):
    """Decode a Pruefer sequence into tree edges on 0..n-1."""
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaf_heap = sorted(v for v in range(n) if degree[v] == 1)
    import heapq
    heapq.heapify(leaf_heap)
    for v in seq:
        leaf = heapq.heappop(leaf_heap)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaf_heap, v)
    a = heapq.heappop(leaf_heap)
    b = heapq.heappop(leaf_heap)
    edges.append((a, b))
    return edges


def _random_und_tree(k, rng):
    n = k + 1
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return _prufer_tree(seq, n)


def _orient_away(edges, n, root):
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    arcs = []
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                arcs.append((x, y))
                queue.append(y)
    return arcs


def gen_random_tree(k: int, kind: str, seed: int) -> OrientedTree:
    """Random oriented tree of the requested kind; deterministic per seed."""
    if k < 1:
        raise BadParams("k must be >= 1")
    rng = random.Random(derive_seed(seed, "tree", kind, k))
    if kind == "any":
        edges = _random_und_tree(k, rng)
        arcs = [(b, a) if rng.random() < 0.5 else (a, b) for a, b in edges]
    elif kind == "antidirected":
        edges = _random_und_tree(k, rng)
        n = k + 1
        colour = _two_colouring(edges, n)
        src = rng.randrange(2)
        arcs = [(a, b) if colour[a] == src else (b, a) for a, b in edges]
    elif kind == "out_arborescence":
        edges = _random_und_tree(k, rng)
        n = k + 1
        deg = [0] * n
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        root = min(v for v in range(n) if deg[v] == max(deg))
        arcs = _orient_away(edges, n, root)
    elif kind == "path":
        arcs = [(i, i + 1) if rng.random() < 0.5 else (i + 1, i)
                for i in range(k)]
    elif kind == "spider":
        if k < 3:
            raise BadParams("spider needs k >= 3")
        lens = [(k + 2) // 3, (k + 1) // 3, k // 3]
        arcs = []
        nxt = 1
        for ln in lens:
            prev = 0
            for _ in range(ln):
                arcs.append((prev, nxt))
                prev = nxt
                nxt += 1
        assert nxt == k + 1
    else:
        raise BadKind(f"unknown tree kind {kind!r}")
    return build_tree(arcs)


def _two_colouring(edges, n):
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    colour = [-1] * n
    colour[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if colour[y] < 0:
                colour[y] = 1 - colour[x]
                queue.append(y)
    return colour


_CONSTRAINTS = ("none", "c4_free", "c4_star_free")


def _arc_would_violate(und, out, u, v, constraint):
    """Does adding arc (u, v) create a forbidden 4-cycle through {u, v}?"""
    fresh_edge = v not in und[u]
    out[u].add(v)
    if fresh_edge:
        und[u].add(v)
        und[v].add(u)
    try:
        for x in und[v]:
            if x == u:
                continue
            for y in und[u]:
                if y == v or y == x:
                    continue
                if x not in und[y]:
                    continue
                # underlying cycle u - v - x - y - u
                quad_edges = ((u, v), (v, x), (x, y), (y, u))
                choices = []
                for a, b in quad_edges:
                    dirs = []
                    if b in out[a]:
                        dirs.append(True)
                    if a in out[b]:
                        dirs.append(False)
                    choices.append(dirs)
                if _any_forbidden(choices, constraint):
                    return True
        return False
    finally:
        out[u].discard(v)
        if fresh_edge:
            und[u].discard(v)
            und[v].discard(u)


def _any_forbidden(choices, constraint):
    for pattern in product(*choices):
        ctype = classify_cycle(pattern)
        if isinstance(constraint, frozenset):
            if ctype in constraint:
                return True
        elif constraint == "c4_free" or ctype is not FourCycleType.Directed:
            return True
    return False


def gen_random_digraph(n: int, m: int, constraint, seed: int,
                       retries: int = 20) -> Digraph:
    """Random n-vertex, m-arc digraph under an optional 4-cycle constraint.

    `constraint` is one of "none", "c4_free", "c4_star_free", or a
    frozenset of FourCycleType values to forbid.  Arcs are drawn in
    shuffled order and kept only if they do not close a forbidden 4-cycle
    (best-effort rejection; no uniformity guarantee).  The finished
    digraph is re-verified with the real predicates.
    """
    if not isinstance(constraint, frozenset) and constraint not in _CONSTRAINTS:
        raise BadParams(f"constraint must be one of {_CONSTRAINTS} "
                        f"or a frozenset of cycle types")
    if n < 0 or m < 0 or m > n * (n - 1):
        raise BadParams("infeasible n/m")
    tag = (tuple(sorted(t.value for t in constraint))
           if isinstance(constraint, frozenset) else constraint)
    universe = [(u, v) for u in range(n) for v in range(n) if u != v]
    for attempt in range(retries):
        rng = random.Random(derive_seed(seed, "digraph", n, m, tag, attempt))
        rng.shuffle(universe)
        out = [set() for _ in range(n)]
        und = [set() for _ in range(n)]
        arcs = []
        for u, v in universe:
            if len(arcs) == m:
                break
            if constraint != "none" and _arc_would_violate(und, out, u, v,
                                                           constraint):
                continue
            out[u].add(v)
            und[u].add(v)
            und[v].add(u)
            arcs.append((u, v))
        if len(arcs) == m:
            D = build_digraph(n, arcs)
            _verify_constraint(D, constraint)
            return D
    raise InfeasibleAfterRetries(
        f"could not place {m} arcs on {n} vertices under {constraint}")


def _verify_constraint(D, constraint):
    from .cycles import cycle_types_present, is_c4_free, is_c4_star_free
    if isinstance(constraint, frozenset):
        assert not (cycle_types_present(D) & constraint), \
            "generator produced a forbidden 4-cycle type"
    elif constraint == "c4_free":
        assert is_c4_free(D), "generator produced a forbidden 4-cycle"
    elif constraint == "c4_star_free":
        assert is_c4_star_free(D), "generator produced a non-directed 4-cycle"
