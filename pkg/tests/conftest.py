"""Shared fixtures and independent reference implementations.

The reference code here deliberately avoids the library's fast paths:
4-cycles are found by enumerating all 4-subsets and all three cyclic
pairings, and tree isomorphism is decided by trying every vertex
bijection.  Tests use these to cross-check the production algorithms.
"""

from itertools import combinations, permutations, product

import pytest

import oritree as ot


def brute_forbidden_types(D):
    """All 4-cycle orientation types present, by 4-subset enumeration."""
    found = set()
    for quad in combinations(range(D.n), 4):
        a, b, c, d = quad
        for order in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            edges = [(order[i], order[(i + 1) % 4]) for i in range(4)]
            choices = []
            for x, y in edges:
                dirs = []
                if D.has_arc(x, y):
                    dirs.append(True)
                if D.has_arc(y, x):
                    dirs.append(False)
                choices.append(dirs)
            if any(not ch for ch in choices):
                continue
            for pattern in product(*choices):
                found.add(ot.classify_cycle(pattern))
    return found


def brute_has_underlying_c4(D):
    for quad in combinations(range(D.n), 4):
        a, b, c, d = quad
        for order in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            if all(D.und_mask[order[i]] >> order[(i + 1) % 4] & 1
                   for i in range(4)):
                return True
    return False


def trees_isomorphic(T1, T2):
    """Directed-tree isomorphism by brute-force bijection."""
    if T1.n != T2.n:
        return False
    a1 = set(T1.arcs)
    for perm in permutations(range(T2.n)):
        if {(perm[u], perm[v]) for u, v in a1} == set(T2.arcs):
            return True
    return False


def brute_oriented_trees(k):
    """Independent enumeration: all labelled trees, permutation rejection."""
    n = k + 1
    reps = []
    for edges in _labelled_trees(n):
        for signs in product((False, True), repeat=k):
            arcs = [(b, a) if s else (a, b) for (a, b), s in zip(edges, signs)]
            T = ot.build_tree(arcs)
            if not any(trees_isomorphic(T, R) for R in reps):
                reps.append(T)
    return reps


def all_labelled_oriented_trees(k):
    """Every labelled oriented tree on 0..k (no isomorphism rejection)."""
    for edges in _labelled_trees(k + 1):
        for signs in product((False, True), repeat=k):
            yield ot.build_tree([(b, a) if s else (a, b)
                                 for (a, b), s in zip(edges, signs)])


def _tree_centers(T):
    """Centre vertex/vertices of the underlying tree (leaf pruning)."""
    deg = {v: T.deg(v) for v in range(T.n)}
    alive = set(deg)
    layer = [v for v in alive if deg[v] <= 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for w in T.und_adj[v]:
                if w in alive:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(alive)


def _rooted_code(T, v, parent):
    subs = sorted(("F" if T.has_arc(v, w) else "B", _rooted_code(T, w, v))
                  for w in T.und_adj[v] if w != parent)
    return tuple(subs)


def center_canonical(T):
    """Centre-rooted canonical form: an independent isomorphism invariant."""
    centers = _tree_centers(T)
    if len(centers) == 1:
        return ("c", _rooted_code(T, centers[0], -1))
    c1, c2 = centers
    lab = "F" if T.has_arc(c1, c2) else "B"
    flip = {"F": "B", "B": "F"}[lab]
    a = (lab, _rooted_code(T, c1, c2), _rooted_code(T, c2, c1))
    b = (flip, _rooted_code(T, c2, c1), _rooted_code(T, c1, c2))
    return ("e",) + min(a, b)


def _labelled_trees(n):
    """All labelled trees on 0..n-1 via Pruefer sequences."""
    if n == 1:
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in product(range(n), repeat=n - 2):
        yield _decode_pruefer(list(seq), n)


def _decode_pruefer(seq, n):
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    import heapq
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for v in seq:
        leaf = heapq.heappop(heap)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(heap, v)
    a = heapq.heappop(heap)
    b = heapq.heappop(heap)
    edges.append((min(a, b), max(a, b)))
    return edges


@pytest.fixture(scope="session")
def heawood():
    return ot.gen_girth6_digon_host(2)


@pytest.fixture(scope="session")
def girth6_q3():
    return ot.gen_girth6_digon_host(3)


@pytest.fixture(scope="session")
def girth6_q4():
    return ot.gen_girth6_digon_host(4)


@pytest.fixture(scope="session")
def catalog6():
    return ot.enumerate_oriented_trees(6)


def directed_cycle(n):
    return ot.build_digraph(n, [(i, (i + 1) % n) for i in range(n)])
