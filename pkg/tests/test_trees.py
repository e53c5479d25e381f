"""Stable trees: validation, gluing, stabilization, enumeration, quartets.

The enumeration count oracle is an independent dynamic program: rooting
an unrooted tree at the neighbor of the last marking identifies the types
with hierarchies (rooted trees whose internal vertices have at least two
children), counted by a block-partition recurrence.
"""

import itertools
import random
from functools import lru_cache
from math import comb

import pytest

from stablecurves.errors import (
    InvalidPartition,
    InvalidTree,
    OutOfRange,
    OverlappingMarkingSets,
    TooFewMarkings,
)
from stablecurves.projline import INFINITY, ONE, ZERO, pp
from stablecurves.sampling import DefaultGenerator
from stablecurves.trees import (
    DecoratedStableTree,
    M04Point,
    StableTree,
    component_configuration,
    edge_splits,
    enumerate_stable_trees,
    glue,
    m04_point_of,
    make_decorated,
    make_tree,
    one_vertex_tree,
    quartet_split,
    relabel,
    relabel_m04,
    separates_markings,
    separating_node_exists,
    stabilize,
    validate,
)


@lru_cache(maxsize=None)
def _partition_sum(m: int) -> int:
    """Sum over set partitions of [m] of the product of h(block size)."""
    if m == 0:
        return 1
    return sum(
        comb(m - 1, j - 1) * _hierarchies(j) * _partition_sum(m - j)
        for j in range(1, m + 1)
    )


@lru_cache(maxsize=None)
def _hierarchies(k: int) -> int:
    """Rooted trees on k labeled leaves, every internal vertex >= 2 children."""
    if k == 1:
        return 1
    return sum(
        comb(k - 1, j - 1) * _hierarchies(j) * _partition_sum(k - j)
        for j in range(1, k)
    )


def independent_tree_count(n: int) -> int:
    return _hierarchies(n - 1)


def random_order_stabilize(t, keep, rng):
    """Apply the contraction rules in a random order (confluence oracle)."""
    keep = frozenset(keep)
    marks = {
        v: {m: t.mark_pos[m] for m in ms if m in keep}
        for v, ms in enumerate(t.tree.vertex_marks)
    }
    adj = {v: {} for v in range(t.tree.num_vertices)}
    for v, w in t.tree.edges:
        pv, pw = t.edge_pos[(v, w)]
        adj[v][w] = pv
        adj[w][v] = pw
    alive = set(range(t.tree.num_vertices))
    while True:
        unstable = [
            v for v in sorted(alive) if adj[v] and len(adj[v]) + len(marks[v]) < 3
        ]
        if not unstable:
            break
        v = rng.choice(unstable)
        if len(adj[v]) == 1:
            (w,) = adj[v]
            landing = adj[w][v]
            del adj[w][v]
            for m in marks[v]:
                marks[w][m] = landing
        else:
            w1, w2 = adj[v]
            q1, q2 = adj[w1][v], adj[w2][v]
            del adj[w1][v]
            del adj[w2][v]
            adj[w1][w2] = q1
            adj[w2][w1] = q2
        del adj[v]
        del marks[v]
        alive.remove(v)
    verts = sorted(alive)
    idx = {v: i for i, v in enumerate(verts)}
    vm = [marks[v] for v in verts]
    edges = [
        (idx[v], idx[w], adj[v][w], adj[w][v])
        for v in verts
        for w in adj[v]
        if v < w
    ]
    return make_decorated(vm, edges)


class TestValidate:
    def test_minimal_stable_curve(self):
        assert validate(make_tree([{1, 2, 3}], [])) == []

    def test_two_vertex_ok(self, bare_two_vertex_22):
        assert validate(bare_two_vertex_22) == []

    def test_stability_bound_violated(self):
        t = StableTree((frozenset({1}), frozenset({2, 3, 4})), ((0, 1),))
        report = validate(t)
        assert report and "vertex 0" in report[0]

    def test_disconnected_reported(self):
        t = StableTree((frozenset({1, 2, 3}), frozenset({4, 5, 6})), ())
        assert any("not a tree" in msg or "connected" in msg for msg in validate(t))

    def test_cycle_reported(self):
        t = StableTree(
            (frozenset({1}), frozenset({2}), frozenset({3})),
            ((0, 1), (1, 2), (0, 2)),
        )
        assert validate(t) != []

    def test_repeated_marking_reported(self):
        t = StableTree((frozenset({1, 2, 3}), frozenset({3, 4, 5})), ((0, 1),))
        assert any("more than one vertex" in msg for msg in validate(t))

    def test_decorated_coincident_points_reported(self):
        bad = DecoratedStableTree(
            make_tree([{1, 2, 3}], []),
            {1: ZERO, 2: ZERO, 3: ONE},
            {},
        )
        assert any("coincident" in msg for msg in validate(bad))


class TestCanonicalForm:
    def test_vertex_order_independent(self):
        a = make_tree([{3, 4, 5}, {1, 2}], [(0, 1)])
        b = make_tree([{1, 2}, {3, 4, 5}], [(0, 1)])
        assert a == b

    def test_caterpillar_order_independent(self):
        a = make_tree([{1, 2}, {3}, {4, 5}], [(0, 1), (1, 2)])
        b = make_tree([{4, 5}, {3}, {1, 2}], [(1, 0), (2, 1)])
        assert a == b

    def test_hashable_and_distinct(self):
        a = make_tree([{1, 2}, {3, 4}], [(0, 1)])
        b = make_tree([{1, 3}, {2, 4}], [(0, 1)])
        assert len({a, b}) == 2


class TestGlue:
    def test_smallest_gluing(self, bare_two_vertex_22):
        tk = make_tree([{1, 2, "*"}], [])
        tl = make_tree([{3, 4, "*"}], [])
        assert glue(tk, tl) == bare_two_vertex_22

    def test_two_three_gluing(self, bare_two_vertex_23):
        tk = make_tree([{1, 2, "*"}], [])
        tl = make_tree([{3, 4, 5, "*"}], [])
        glued = glue(tk, tl)
        assert glued == bare_two_vertex_23
        assert glued.num_vertices == tk.num_vertices + tl.num_vertices

    def test_overlap_rejected(self):
        tk = make_tree([{1, 2, "*"}], [])
        tl = make_tree([{2, 3, "*"}], [])
        with pytest.raises(OverlappingMarkingSets):
            glue(tk, tl)

    def test_associativity_of_two_orders(self):
        a = make_tree([{1, 2, "x"}], [])
        b = make_tree([{"y", 3, 4, "z"}], [])
        c = make_tree([{5, 6, "w"}], [])
        left_first = glue(glue(a, b, "x", "y"), c, "z", "w")
        right_first = glue(a, glue(b, c, "z", "w"), "x", "y")
        expected = make_tree([{1, 2}, {3, 4}, {5, 6}], [(0, 1), (1, 2)])
        assert left_first == right_first == expected

    def test_decorated_gluing_keeps_positions(self, two_vertex_23):
        tk = make_decorated([{1: ZERO, 2: ONE, "*": INFINITY}], [])
        tl = make_decorated([{3: ZERO, 4: ONE, 5: INFINITY, "*": pp(7)}], [])
        assert glue(tk, tl) == two_vertex_23


class TestStabilize:
    def test_contract_to_point(self, bare_two_vertex_23):
        assert stabilize(bare_two_vertex_23, {1, 2, 3}) == make_tree([{1, 2, 3}], [])

    def test_boundary_type_preserved(self, bare_two_vertex_23):
        expected = make_tree([{1, 2}, {3, 4}], [(0, 1)])
        assert stabilize(bare_two_vertex_23, {1, 2, 3, 4}) == expected

    def test_contracted_marking_lands_on_node(self, two_vertex_23):
        reduced = stabilize(two_vertex_23, {1, 3, 4, 5})
        # the first component contracts; marking 1 inherits the node's
        # position on the surviving chart
        expected = one_vertex_tree({1: pp(7), 3: ZERO, 4: ONE, 5: INFINITY})
        assert reduced == expected

    def test_pass_through_vertex(self):
        # middle component keeps only the node: positions pass through
        t = make_decorated(
            [
                {1: ZERO, 2: ONE},
                {3: pp(5)},
                {4: ZERO, 5: ONE},
            ],
            [(0, 1, INFINITY, ZERO), (1, 2, ONE, INFINITY)],
        )
        reduced = stabilize(t, {1, 2, 4, 5})
        expected = make_decorated(
            [{1: ZERO, 2: ONE}, {4: ZERO, 5: ONE}],
            [(0, 1, INFINITY, INFINITY)],
        )
        assert reduced == expected

    def test_functor_law(self):
        gen = DefaultGenerator(17)
        for _ in range(40):
            n = gen.rng.randint(5, 7)
            t = gen.decorated_tree(range(1, n + 1))
            labels = list(range(1, n + 1))
            J = set(gen.rng.sample(labels, gen.rng.randint(4, n)))
            I = set(gen.rng.sample(sorted(J), gen.rng.randint(3, len(J))))
            assert stabilize(stabilize(t, J), I) == stabilize(t, I)

    def test_contraction_is_confluent(self):
        # contracting unstable vertices in random order reaches the same
        # canonical result as the library's deterministic order
        gen = DefaultGenerator(23)
        for _ in range(30):
            t = gen.decorated_tree(range(1, 8))
            keep = set(gen.rng.sample(range(1, 8), 4))
            assert random_order_stabilize(t, keep, gen.rng) == stabilize(t, keep)

    def test_too_few_markings(self, bare_two_vertex_23):
        with pytest.raises(TooFewMarkings):
            stabilize(bare_two_vertex_23, {1, 2})

    def test_bare_matches_decorated_shape(self, two_vertex_23):
        keep = {1, 3, 4, 5}
        bare = stabilize(two_vertex_23.tree, keep)
        decorated = stabilize(two_vertex_23, keep)
        assert decorated.tree == bare


class TestComponentConfiguration:
    def test_one_vertex_identity(self, smooth5):
        assert component_configuration(smooth5, 0) == tuple(
            smooth5.mark_pos[m] for m in (1, 2, 3, 4, 5)
        )

    def test_two_vertex_retraction(self, two_vertex_23):
        # on the {1,2} chart: own positions, then the node three times
        k_vertex = two_vertex_23.vertex_of(1)
        node = two_vertex_23.edge_pos[(0, 1)][k_vertex]
        config = component_configuration(two_vertex_23, k_vertex)
        assert config == (ZERO, ONE, node, node, node)

    def test_caterpillar_middle_sees_two_nodes(self):
        t = make_decorated(
            [
                {1: ZERO, 2: ONE},
                {3: pp(5)},
                {4: ZERO, 5: ONE},
            ],
            [(0, 1, INFINITY, ZERO), (1, 2, ONE, INFINITY)],
        )
        middle = t.vertex_of(3)
        config = component_configuration(t, middle)
        assert config == (ZERO, ZERO, pp(5), ONE, ONE)

    def test_at_least_three_distinct(self):
        gen = DefaultGenerator(31)
        for _ in range(30):
            t = gen.decorated_tree(range(1, 7))
            for v in range(t.tree.num_vertices):
                assert len(set(component_configuration(t, v))) >= 3


class TestSeparatingNodes:
    def test_unique_edge_separates(self, bare_two_vertex_22):
        assert separating_node_exists(bare_two_vertex_22, {1, 2}, {3, 4})

    def test_cross_partition_fails(self, bare_two_vertex_22):
        assert not separating_node_exists(bare_two_vertex_22, {1, 3}, {2, 4})

    def test_invalid_partition_rejected(self, bare_two_vertex_22):
        with pytest.raises(InvalidPartition):
            separating_node_exists(bare_two_vertex_22, {1}, {2, 3, 4})
        with pytest.raises(InvalidPartition):
            separating_node_exists(bare_two_vertex_22, {1, 2}, {2, 3, 4})

    def test_pair_separation_variant(self, bare_two_vertex_23):
        assert separates_markings(bare_two_vertex_23, {1, 2}, {3, 4})
        assert separates_markings(bare_two_vertex_23, {1, 2}, {4, 5})
        assert not separates_markings(bare_two_vertex_23, {1, 3}, {2, 4})

    def test_node_criterion_equivalence_small(self):
        # exhaustive check of the 2-subset reduction for n <= 6
        for n in range(4, 7):
            for t in enumerate_stable_trees(n):
                splits = edge_splits(t)
                labels = list(range(1, n + 1))
                for r in range(2, n - 1):
                    for K in itertools.combinations(labels, r):
                        K = frozenset(K)
                        if 1 not in K:
                            continue
                        L = frozenset(labels) - K
                        if len(L) < 2:
                            continue
                        lhs = separating_node_exists(t, K, L)
                        rhs = all(
                            separates_markings(t, I, J)
                            for I in itertools.combinations(sorted(K), 2)
                            for J in itertools.combinations(sorted(L), 2)
                        )
                        assert lhs == rhs, (t, K, L)


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(3, 1), (4, 4), (5, 26)])
    def test_known_counts(self, n, count):
        assert len(enumerate_stable_trees(n)) == count

    def test_counts_match_independent_recursion(self):
        for n in range(3, 8):
            assert len(enumerate_stable_trees(n)) == independent_tree_count(n)

    def test_all_valid_and_distinct(self):
        for n in (4, 5, 6):
            trees = enumerate_stable_trees(n)
            assert len(set(trees)) == len(trees)
            for t in trees:
                assert validate(t) == []
                assert t.markings == frozenset(range(1, n + 1))

    def test_counts_monotone(self):
        counts = [len(enumerate_stable_trees(n)) for n in range(3, 8)]
        assert counts == sorted(counts)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            enumerate_stable_trees(2)
        with pytest.raises(OutOfRange):
            enumerate_stable_trees(9)

    def test_n4_shapes(self):
        trees = enumerate_stable_trees(4)
        smooth = [t for t in trees if t.num_vertices == 1]
        boundary = [t for t in trees if t.num_vertices == 2]
        assert len(smooth) == 1 and len(boundary) == 3


class TestM04Point:
    def test_interior_from_positions(self):
        t = one_vertex_tree({1: ZERO, 2: ONE, 3: INFINITY, 4: pp(2)})
        assert m04_point_of(t) == M04Point.interior_point(pp(2))

    def test_interior_integer_example(self):
        t = one_vertex_tree({1: pp(1), 2: pp(2), 3: pp(3), 4: pp(4)})
        assert m04_point_of(t) == M04Point.interior_point(pp(-3))

    def test_boundary_split(self):
        t = make_decorated(
            [{1: ZERO, 2: ONE}, {3: ZERO, 4: ONE}],
            [(0, 1, INFINITY, INFINITY)],
        )
        assert m04_point_of(t) == M04Point.boundary_split({1, 2}, {3, 4})

    def test_excluded_interior_values(self):
        with pytest.raises(InvalidTree):
            M04Point.interior_point(ZERO)

    def test_quartet_split_shadow(self, bare_two_vertex_23):
        assert quartet_split(bare_two_vertex_23, {1, 2, 3, 4}) == frozenset(
            {frozenset({1, 2}), frozenset({3, 4})}
        )
        assert quartet_split(bare_two_vertex_23, {1, 3, 4, 5}) is None

    def test_relabel_interior_reorders_cross_ratio(self):
        # chart 1->0, 2->1, 9->inf, *->2; renaming * to 3 moves it before 9
        point = M04Point.interior_point(pp(2))
        moved = relabel_m04(point, {"*": 3}, [1, 2, 9, "*"])
        assert moved == M04Point.interior_point(pp(-1))

    def test_relabel_boundary(self):
        point = M04Point.boundary_split({1, "*"}, {2, 9})
        moved = relabel_m04(point, {"*": 3}, [1, 2, 9, "*"])
        assert moved == M04Point.boundary_split({1, 3}, {2, 9})


class TestRelabel:
    def test_relabel_round_trip(self, bare_two_vertex_23):
        mapping = {1: 10, 2: 20, 3: 30, 4: 40, 5: 50}
        back = {v: k for k, v in mapping.items()}
        assert relabel(relabel(bare_two_vertex_23, mapping), back) == bare_two_vertex_23

    def test_relabel_decorated(self, two_vertex_23):
        moved = relabel(two_vertex_23, {1: 7})
        assert moved.tree.markings == frozenset({7, 2, 3, 4, 5})
        assert moved.mark_pos[7] == two_vertex_23.mark_pos[1]

    def test_non_injective_rejected(self, bare_two_vertex_23):
        with pytest.raises(OverlappingMarkingSets):
            relabel(bare_two_vertex_23, {1: 2})
