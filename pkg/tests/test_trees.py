import pytest

import oritree as ot
from oritree.errors import EmptyTree, HasCycle, NotConnected, ParseError
from oritree.trees import diameter, distances_from, tree_path


def star(k, out=True):
    return ot.build_tree([(0, i) if out else (i, 0) for i in range(1, k + 1)])


def test_build_directed_path():
    T = ot.build_tree([(0, 1), (1, 2)])
    assert max(T.deg(v) for v in range(3)) == 2
    assert T.k == 2


def test_build_in_star_antidirected():
    T = ot.build_tree([(0, 1), (2, 1)])
    assert ot.is_antidirected(T)


def test_build_rejects_cycle():
    with pytest.raises(HasCycle):
        ot.build_tree([(0, 1), (1, 2), (2, 0)])
    with pytest.raises(HasCycle):
        ot.build_tree([(0, 1), (1, 0)])


def test_build_rejects_disconnected_and_empty():
    with pytest.raises(NotConnected):
        ot.build_tree([(0, 1), (2, 3), (1, 2), (0, 3)][0:1] + [(2, 3)])
    with pytest.raises(EmptyTree):
        ot.build_tree([])


def test_is_antidirected():
    assert ot.is_antidirected(ot.build_tree(
        [(0, 1), (2, 1), (2, 3), (4, 3)]))  # alternating 4-arc path
    assert not ot.is_antidirected(ot.build_tree([(0, 1), (1, 2)]))
    assert ot.is_antidirected(star(4))


def test_is_out_arborescence():
    assert ot.is_out_arborescence(ot.build_tree([(0, 1), (1, 2)])) == 0
    assert ot.is_out_arborescence(star(3, out=False)) is None
    assert ot.is_out_arborescence(star(3)) == 0


def test_penultimate_path():
    T = ot.build_tree([(0, 1), (1, 2), (2, 3)])
    assert ot.penultimate_vertices(T) == frozenset({1, 2})


def test_penultimate_star():
    assert ot.penultimate_vertices(star(4)) == frozenset({0})


def test_penultimate_spider():
    T = ot.gen_random_tree(6, "spider", 0)
    # legs 0-1-2, 0-3-4, 0-5-6: the mid-leg vertices, not the centre
    assert ot.penultimate_vertices(T) == frozenset({1, 3, 5})


def test_anchor_star_and_path():
    assert ot.anchor_vertex(star(4)) == 0
    T = ot.build_tree([(0, 1), (1, 2), (2, 3), (3, 4)])
    assert ot.anchor_vertex(T) == 1  # smallest interior with out >= in


def test_anchor_balanced_double_star_prefers_outdegree():
    # centres 0 and 1; 0 has two out-leaves, 1 has one out- and one in-leaf
    T = ot.build_tree([(0, 1), (0, 2), (0, 3), (1, 4), (5, 1)])
    assert T.deg(0) == T.deg(1) == 3
    assert ot.anchor_vertex(T) == 0
    # mirrored: 1 becomes the only centre with out >= in
    R = ot.reverse_tree(T)
    assert ot.anchor_vertex(R) == 1


def test_core_subtree_small_diameter():
    # star and double star: whole tree
    T = star(4)
    assert ot.core_subtree(T, 0) == frozenset(range(5))
    dbl = ot.build_tree([(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    assert ot.core_subtree(dbl, 0) == frozenset(range(6))


def test_core_subtree_path_radius_two():
    T = ot.build_tree([(i, i + 1) for i in range(6)])
    # a central interior vertex: the 5-vertex sub-path around it
    assert ot.core_subtree(T, 3) == frozenset({1, 2, 3, 4, 5})
    # the anchor tie-break picks the smallest interior vertex; its ball is
    # the radius-2 prefix
    t = ot.anchor_vertex(T)
    assert t == 1
    assert ot.core_subtree(T, t) == frozenset({0, 1, 2, 3})


def test_core_subtree_diameter_and_coverage():
    for seed in range(30):
        T = ot.gen_random_tree(9, "any", seed)
        t = ot.anchor_vertex(T)
        ball = ot.core_subtree(T, t)
        assert {t} | set(T.und_adj[t]) <= ball
        dist = distances_from(T, t)
        assert ball == frozenset(v for v in range(T.n) if dist[v] <= 2)
        # induced ball has diameter <= 4: any two members meet through t
        for a in ball:
            for b in ball:
                p = tree_path(T, a, b)
                assert set(p) <= ball and len(p) - 1 <= 4


def test_stripping_star_single_element():
    seq = ot.stripping_sequence(star(5))
    assert len(seq.subtrees) == 1
    assert seq.steps == ()


def test_stripping_spider_core_is_whole_tree():
    # diameter 4: the radius-2 ball around the centre is the whole spider,
    # so the chain is a single subtree
    T = ot.gen_random_tree(6, "spider", 0)
    seq = ot.stripping_sequence(T)
    assert seq.subtrees[0] == frozenset(range(7))
    assert len(seq.subtrees) == 1


def test_stripping_long_path():
    T = ot.build_tree([(i, i + 1) for i in range(6)])
    seq = ot.stripping_sequence(T)
    assert seq.subtrees[-1] == frozenset(range(7))
    assert seq.subtrees[0] == ot.core_subtree(T, seq.anchor)
    # anchor 1, 4-vertex core, one leaf stripped per step
    assert len(seq.subtrees) == 4
    assert [s.u for s in seq.steps] == [3, 4, 5]


def _check_sequence_invariants(T, seq):
    t = seq.anchor
    ball = ot.core_subtree(T, t)
    assert seq.subtrees[0] == ball
    assert seq.subtrees[-1] == frozenset(range(T.n))
    core_protect = {t} | set(T.und_adj[t])
    dist = distances_from(T, t)
    for i, step in enumerate(seq.steps):
        small, big = seq.subtrees[i], seq.subtrees[i + 1]
        assert small | step.removed_leaves == big
        assert small & step.removed_leaves == frozenset()
        assert core_protect <= small
        # u is penultimate in the bigger subtree and its removed neighbours
        # are leaves there, outside the core ball
        from oritree.trees import _sub_leaves, _sub_penultimates
        leaves_big = _sub_leaves(T, big)
        assert step.u in _sub_penultimates(T, big, leaves_big)
        for x in step.removed_leaves:
            assert x in leaves_big
            assert x not in ball
            assert x in T.und_adj[step.u]
        # connectivity of the smaller subtree
        seen = {t}
        frontier = [t]
        while frontier:
            x = frontier.pop()
            for y in T.und_adj[x]:
                if y in small and y not in seen:
                    seen.add(y)
                    frontier.append(y)
        assert seen == set(small)


@pytest.mark.parametrize("seed", range(25))
def test_stripping_invariants_random(seed):
    T = ot.gen_random_tree(9, "any", seed)
    _check_sequence_invariants(T, ot.stripping_sequence(T))


@pytest.mark.parametrize("seed", range(10))
def test_min_degree_monotonicity(seed):
    # the stripped vertex has minimum leaf-degree among eligible ones;
    # check d_w >= d_u for the far penultimate w used by the repair moves
    T = ot.gen_random_tree(10, "any", 100 + seed)
    seq = ot.stripping_sequence(T)
    from oritree.trees import _sub_leaves, _sub_penultimates
    for i, step in enumerate(seq.steps):
        big = seq.subtrees[i + 1]
        leaves_big = _sub_leaves(T, big)
        d_u = len(step.removed_leaves)
        for w in _sub_penultimates(T, big, leaves_big):
            if w == step.u or w in leaves_big:
                continue
            w_leaves = [x for x in T.und_adj[w] if x in leaves_big]
            eligible = w_leaves and all(
                x not in seq.subtrees[0] for x in w_leaves)
            if eligible:
                assert len(w_leaves) >= d_u


def test_caterpillar_core_size():
    # caterpillar of diameter 5: spine 0-1-2-3-4-5 plus legs
    T = ot.build_tree([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                       (2, 6), (3, 7)])
    seq = ot.stripping_sequence(T)
    t = seq.anchor
    assert all(isinstance(s, frozenset) for s in seq.subtrees)
    assert len(seq.subtrees[0]) >= 1 + T.deg(t)


def test_reverse_tree_predicates():
    for seed in range(10):
        T = ot.gen_random_tree(7, "antidirected", seed)
        assert ot.is_antidirected(ot.reverse_tree(T))
    T = ot.gen_random_tree(7, "out_arborescence", 3)
    root = ot.is_out_arborescence(T)
    assert root is not None
    R = ot.reverse_tree(T)
    assert ot.is_out_arborescence(R) is None
    # reversed arborescence is an in-arborescence: unique sink, outdegs 1
    assert R.deg_plus(root) == 0
    assert all(R.deg_plus(v) == 1 for v in range(R.n) if v != root)


def test_tree_text_roundtrip():
    T = ot.gen_random_tree(6, "any", 9)
    text = ot.save_tree(T)
    assert text.splitlines()[0] == "# tree"
    assert ot.load_tree(text) == T


def test_load_tree_rejects_non_tree():
    bad = ot.save_digraph(ot.build_digraph(3, [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(ParseError):
        ot.load_tree(bad)


def test_diameter_helper():
    assert diameter(ot.build_tree([(i, i + 1) for i in range(6)])) == 6
    assert diameter(star(4)) == 2
