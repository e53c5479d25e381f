"""Stable n-marked genus-0 curves as decorated trees.

A stable tree has vertices (irreducible components) carrying disjoint
marking sets and edges (nodes); every vertex supports at least three
special points (markings plus incident edges).  A decorated tree
additionally fixes, per vertex, an exact position on the projective line
for each marking and each incident edge; positions on different vertices
live in unrelated charts and are only ever compared through retraction.

Canonical form: root at the vertex holding the least marking, order the
children of every vertex by the least marking in their subtree, and
relabel vertices in preorder.  Two trees are equal exactly when their
canonical forms coincide structurally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .configurations import cross_ratio
from .errors import (
    InvalidPartition,
    InvalidTree,
    OutOfRange,
    OverlappingMarkingSets,
    TooFewMarkings,
    UnknownMarking,
)
from .labels import STAR, label_key, sort_labels
from .projline import INFINITY, ONE, ZERO, Configuration, ProjPoint


@dataclass(frozen=True)
class StableTree:
    """Combinatorial type of a stable marked tree.

    Construct through ``make_tree`` (which canonicalizes and checks the
    graph structure); the raw constructor exists so that ``validate`` can
    report on arbitrary candidate data.
    """

    vertex_marks: Tuple[frozenset, ...]
    edges: Tuple[Tuple[int, int], ...]

    @property
    def markings(self) -> frozenset:
        if not self.vertex_marks:
            return frozenset()
        return frozenset().union(*self.vertex_marks)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_marks)

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in range(self.num_vertices)}
        for v, w in self.edges:
            adj[v].append(w)
            adj[w].append(v)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges for u in e if u == v)

    def __str__(self) -> str:
        chunks = []
        for ms in self.vertex_marks:
            chunks.append("{" + ",".join(str(m) for m in sort_labels(ms)) + "}")
        return "|".join(chunks) + " edges=" + str(list(self.edges))


def _structural_violations(
    vertex_marks: Sequence[frozenset], edges: Sequence[Tuple[int, int]]
) -> List[str]:
    problems: List[str] = []
    nv = len(vertex_marks)
    if nv == 0:
        return ["tree has no vertices"]
    seen: set = set()
    for i, ms in enumerate(vertex_marks):
        overlap = seen & set(ms)
        if overlap:
            problems.append(f"marking(s) {sorted(overlap, key=label_key)} appear on more than one vertex")
        seen |= set(ms)
    for v, w in edges:
        if not (0 <= v < nv and 0 <= w < nv):
            problems.append(f"edge ({v},{w}) references a missing vertex")
            return problems
        if v == w:
            problems.append(f"loop edge at vertex {v}")
            return problems
    if len(set(tuple(sorted(e)) for e in edges)) != len(edges):
        problems.append("repeated edge")
        return problems
    if len(edges) != nv - 1:
        problems.append(f"{len(edges)} edges on {nv} vertices: not a tree")
        return problems
    # connectivity (acyclicity follows from the edge count)
    adj: Dict[int, List[int]] = {v: [] for v in range(nv)}
    for v, w in edges:
        adj[v].append(w)
        adj[w].append(v)
    reached = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != nv:
        problems.append("graph is not connected")
    return problems


def _canonical_permutation(
    vertex_marks: Sequence[frozenset], edges: Sequence[Tuple[int, int]]
) -> List[int]:
    """Preorder listing of old vertex indices in canonical traversal order."""
    nv = len(vertex_marks)
    adj: Dict[int, List[int]] = {v: [] for v in range(nv)}
    for v, w in edges:
        adj[v].append(w)
        adj[w].append(v)
    all_marks = frozenset().union(*vertex_marks)
    if not all_marks:
        raise InvalidTree("tree carries no markings")
    least = min(all_marks, key=label_key)
    root = next(i for i, ms in enumerate(vertex_marks) if least in ms)

    parent: Dict[int, Optional[int]] = {root: None}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
                stack.append(w)
    sub_min: Dict[int, object] = {}
    for v in reversed(order):
        cands = [min(vertex_marks[v], key=label_key)] if vertex_marks[v] else []
        cands += [sub_min[w] for w in adj[v] if parent.get(w) == v]
        if not cands:
            raise InvalidTree("subtree without markings cannot be ordered")
        sub_min[v] = min(cands, key=label_key)

    perm: List[int] = []

    def visit(v: int) -> None:
        perm.append(v)
        children = sorted(
            (w for w in adj[v] if parent.get(w) == v),
            key=lambda w: label_key(sub_min[w]),
        )
        for w in children:
            visit(w)

    visit(root)
    return perm


def make_tree(
    vertex_marks: Iterable[Iterable], edges: Iterable[Tuple[int, int]]
) -> StableTree:
    """Build a StableTree in canonical form; raises InvalidTree on broken
    graph structure (stability is checked by ``validate``, not here)."""
    vm = [frozenset(ms) for ms in vertex_marks]
    ed = [tuple(e) for e in edges]
    problems = _structural_violations(vm, ed)
    if problems:
        raise InvalidTree(problems[0])
    perm = _canonical_permutation(vm, ed)
    new_index = {old: new for new, old in enumerate(perm)}
    new_marks = tuple(vm[old] for old in perm)
    new_edges = tuple(
        sorted(tuple(sorted((new_index[v], new_index[w]))) for v, w in ed)
    )
    return StableTree(new_marks, new_edges)


def validate(tree) -> List[str]:
    """Check all stable-tree invariants; empty list means valid.

    Accepts a StableTree or a DecoratedStableTree; the first entry of the
    report names the first failure found.
    """
    if isinstance(tree, DecoratedStableTree):
        problems = validate(tree.tree)
        if problems:
            return problems
        return _decoration_violations(tree)
    problems = _structural_violations(tree.vertex_marks, tree.edges)
    if problems:
        return problems
    for v, ms in enumerate(tree.vertex_marks):
        special = len(ms) + tree.degree(v)
        if special < 3:
            problems.append(
                f"vertex {v} has {len(ms)} marking(s) and {tree.degree(v)} node(s): "
                f"{special} < 3 special points"
            )
    return problems


@dataclass(frozen=True, eq=True)
class DecoratedStableTree:
    """A stable tree with exact positions: a point of the moduli space.

    ``mark_pos`` maps each marking to its position on its component's
    chart; ``edge_pos`` maps each canonical edge (v, w), v < w, to the
    node's positions (on v's chart, on w's chart).
    """

    tree: StableTree
    mark_pos: Dict[object, ProjPoint]
    edge_pos: Dict[Tuple[int, int], Tuple[ProjPoint, ProjPoint]]

    def vertex_of(self, marking) -> int:
        for v, ms in enumerate(self.tree.vertex_marks):
            if marking in ms:
                return v
        raise UnknownMarking(f"marking {marking!r} not in tree")

    def special_points(self, v: int) -> List[ProjPoint]:
        points = [self.mark_pos[m] for m in self.tree.vertex_marks[v]]
        for (a, b), (pa, pb) in self.edge_pos.items():
            if a == v:
                points.append(pa)
            elif b == v:
                points.append(pb)
        return points


def _decoration_violations(t: DecoratedStableTree) -> List[str]:
    problems: List[str] = []
    missing = t.tree.markings - set(t.mark_pos)
    if missing:
        problems.append(f"markings without positions: {sort_labels(missing)}")
        return problems
    canonical_edges = set(t.tree.edges)
    if set(t.edge_pos) != canonical_edges:
        problems.append("edge positions do not match the edge set")
        return problems
    for v in range(t.tree.num_vertices):
        points = t.special_points(v)
        if len(set(points)) != len(points):
            problems.append(f"vertex {v} has coincident special points")
    return problems


def make_decorated(
    vertex_marks: Sequence[Mapping],
    edges: Sequence[Tuple[int, int, ProjPoint, ProjPoint]],
) -> DecoratedStableTree:
    """Build a decorated tree from per-vertex {marking: position} maps and
    edges (v, w, position on v, position on w); canonicalizes and checks
    that special points are pairwise distinct on every vertex."""
    vm = [frozenset(d.keys()) for d in vertex_marks]
    ed = [(e[0], e[1]) for e in edges]
    problems = _structural_violations(vm, ed)
    if problems:
        raise InvalidTree(problems[0])
    perm = _canonical_permutation(vm, ed)
    new_index = {old: new for new, old in enumerate(perm)}
    tree = StableTree(
        tuple(vm[old] for old in perm),
        tuple(sorted(tuple(sorted((new_index[v], new_index[w]))) for v, w in ed)),
    )
    mark_pos: Dict[object, ProjPoint] = {}
    for d in vertex_marks:
        mark_pos.update(d)
    edge_pos: Dict[Tuple[int, int], Tuple[ProjPoint, ProjPoint]] = {}
    for v, w, pv, pw in edges:
        nv, nw = new_index[v], new_index[w]
        if nv < nw:
            edge_pos[(nv, nw)] = (pv, pw)
        else:
            edge_pos[(nw, nv)] = (pw, pv)
    result = DecoratedStableTree(tree, mark_pos, edge_pos)
    problems = _decoration_violations(result)
    if problems:
        raise InvalidTree(problems[0])
    return result


def one_vertex_tree(marks: Mapping) -> DecoratedStableTree:
    """A smooth marked curve: a single component with the given positions."""
    return make_decorated([dict(marks)], [])


def strip_decorations(t) -> StableTree:
    return t.tree if isinstance(t, DecoratedStableTree) else t


# ---------------------------------------------------------------------------
# Relabeling
# ---------------------------------------------------------------------------


def _checked_mapping(markings: frozenset, mapping: Mapping) -> Dict:
    full = {m: mapping.get(m, m) for m in markings}
    if len(set(full.values())) != len(full):
        raise OverlappingMarkingSets("relabeling is not injective")
    return full


def relabel(tree, mapping: Mapping):
    """Rename markings through an injective map (labels absent from the
    mapping stay fixed).  Works on bare and decorated trees."""
    if isinstance(tree, DecoratedStableTree):
        full = _checked_mapping(tree.tree.markings, mapping)
        vm = [
            {full[m]: tree.mark_pos[m] for m in ms}
            for ms in tree.tree.vertex_marks
        ]
        ed = [(v, w, tree.edge_pos[(v, w)][0], tree.edge_pos[(v, w)][1]) for v, w in tree.tree.edges]
        return make_decorated(vm, ed)
    full = _checked_mapping(tree.markings, mapping)
    return make_tree(
        [frozenset(full[m] for m in ms) for ms in tree.vertex_marks], tree.edges
    )


# ---------------------------------------------------------------------------
# Gluing
# ---------------------------------------------------------------------------


def glue(tk, tl, star_k=STAR, star_l=STAR):
    """Join two marked trees at their starred legs.

    The two legs become a single new node; on decorated trees the node
    inherits the legs' positions.  The non-star marking sets must be
    disjoint.  Returns the same kind (bare or decorated) as the inputs.
    """
    decorated = isinstance(tk, DecoratedStableTree)
    if decorated != isinstance(tl, DecoratedStableTree):
        raise InvalidTree("cannot glue a bare tree to a decorated tree")
    bk, bl = strip_decorations(tk), strip_decorations(tl)
    if star_k not in bk.markings:
        raise UnknownMarking(f"left tree has no marking {star_k!r}")
    if star_l not in bl.markings:
        raise UnknownMarking(f"right tree has no marking {star_l!r}")
    k_marks = bk.markings - {star_k}
    l_marks = bl.markings - {star_l}
    overlap = k_marks & l_marks
    if overlap:
        raise OverlappingMarkingSets(
            f"marking sets share {sort_labels(overlap)}"
        )
    off = bk.num_vertices
    vk = next(v for v, ms in enumerate(bk.vertex_marks) if star_k in ms)
    vl = next(v for v, ms in enumerate(bl.vertex_marks) if star_l in ms)
    vm = [ms - {star_k} for ms in bk.vertex_marks] + [
        ms - {star_l} for ms in bl.vertex_marks
    ]
    edges = list(bk.edges) + [(v + off, w + off) for v, w in bl.edges]
    edges.append((vk, vl + off))
    if not decorated:
        return make_tree(vm, edges)

    marks = [dict() for _ in vm]
    for m in k_marks:
        marks[_vertex_index(bk, m)][m] = tk.mark_pos[m]
    for m in l_marks:
        marks[_vertex_index(bl, m) + off][m] = tl.mark_pos[m]
    ed = [(v, w, tk.edge_pos[(v, w)][0], tk.edge_pos[(v, w)][1]) for v, w in bk.edges]
    ed += [
        (v + off, w + off, tl.edge_pos[(v, w)][0], tl.edge_pos[(v, w)][1])
        for v, w in bl.edges
    ]
    ed.append((vk, vl + off, tk.mark_pos[star_k], tl.mark_pos[star_l]))
    return make_decorated(marks, ed)


def _vertex_index(tree: StableTree, marking) -> int:
    for v, ms in enumerate(tree.vertex_marks):
        if marking in ms:
            return v
    raise UnknownMarking(f"marking {marking!r} not in tree")


# ---------------------------------------------------------------------------
# Stabilization
# ---------------------------------------------------------------------------


def stabilize(tree, keep: Iterable):
    """Forget the markings outside ``keep`` and contract unstable vertices.

    Contraction repeats until every vertex is stable: a bare two-edge
    vertex passes its node positions through to a direct edge between its
    neighbors, and a leaf vertex with at most one marking merges into its
    neighbor, the marking landing at the node's position there.  Satisfies
    stabilize(stabilize(t, J), I) = stabilize(t, I) for I inside J.
    """
    keep = frozenset(keep)
    if len(keep) < 3:
        raise TooFewMarkings(f"cannot stabilize onto {len(keep)} marking(s)")
    decorated = isinstance(tree, DecoratedStableTree)
    base = strip_decorations(tree)
    unknown = keep - base.markings
    if unknown:
        raise UnknownMarking(f"markings {sort_labels(unknown)} not in tree")

    marks: Dict[int, set] = {
        v: set(ms & keep) for v, ms in enumerate(base.vertex_marks)
    }
    # adj[v][w] = node position on v's chart (None on bare trees)
    adj: Dict[int, Dict[int, Optional[ProjPoint]]] = {
        v: {} for v in range(base.num_vertices)
    }
    for v, w in base.edges:
        pv, pw = tree.edge_pos[(v, w)] if decorated else (None, None)
        adj[v][w] = pv
        adj[w][v] = pw
    pos: Dict[object, ProjPoint] = (
        {m: tree.mark_pos[m] for m in keep} if decorated else {}
    )

    alive = set(range(base.num_vertices))
    while True:
        unstable = None
        for v in sorted(alive):
            deg = len(adj[v])
            if deg > 0 and deg + len(marks[v]) < 3:
                unstable = v
                break
        if unstable is None:
            break
        v = unstable
        if len(adj[v]) == 1:
            (w,) = adj[v]
            landing = adj[w][v]
            del adj[w][v]
            for m in marks[v]:
                marks[w].add(m)
                if decorated:
                    pos[m] = landing
        else:  # two bare edges: splice the neighbors together
            w1, w2 = adj[v]
            q1, q2 = adj[w1][v], adj[w2][v]
            del adj[w1][v]
            del adj[w2][v]
            adj[w1][w2] = q1
            adj[w2][w1] = q2
        del adj[v]
        del marks[v]
        alive.remove(v)

    order = sorted(alive)
    new_index = {old: new for new, old in enumerate(order)}
    if not decorated:
        vm = [frozenset(marks[v]) for v in order]
        edges = sorted(
            tuple(sorted((new_index[v], new_index[w])))
            for v in alive
            for w in adj[v]
            if v < w
        )
        return make_tree(vm, edges)
    vm_maps = [{m: pos[m] for m in marks[v]} for v in order]
    edges_dec = [
        (new_index[v], new_index[w], adj[v][w], adj[w][v])
        for v in alive
        for w in adj[v]
        if v < w
    ]
    return make_decorated(vm_maps, edges_dec)


# ---------------------------------------------------------------------------
# Retraction and separation
# ---------------------------------------------------------------------------


def component_configuration(t: DecoratedStableTree, v: int) -> Configuration:
    """Retract the whole curve onto component v: markings on v keep their
    positions, markings elsewhere land on the node leading toward them.
    Coordinates are ordered by sorted marking label."""
    if not 0 <= v < t.tree.num_vertices:
        raise InvalidTree(f"no vertex {v}")
    where: Dict[object, ProjPoint] = {m: t.mark_pos[m] for m in t.tree.vertex_marks[v]}
    adj = t.tree.adjacency()
    for w in adj[v]:
        edge = (v, w) if v < w else (w, v)
        node_pos = t.edge_pos[edge][0] if edge[0] == v else t.edge_pos[edge][1]
        # collect markings in w's component after cutting (v, w)
        comp = {w}
        stack = [w]
        while stack:
            u = stack.pop()
            for z in adj[u]:
                if z != v and z not in comp:
                    comp.add(z)
                    stack.append(z)
        for u in comp:
            for m in t.tree.vertex_marks[u]:
                where[m] = node_pos
    return tuple(where[m] for m in sort_labels(t.tree.markings))


def edge_splits(t: StableTree) -> List[Tuple[frozenset, frozenset]]:
    """For each edge, the two marking sets separated by removing it."""
    adj = t.tree.adjacency() if isinstance(t, DecoratedStableTree) else t.adjacency()
    base = strip_decorations(t)
    splits = []
    for v, w in base.edges:
        comp = {w}
        stack = [w]
        while stack:
            u = stack.pop()
            for z in adj[u]:
                if not (u == w and z == v) and z not in comp:
                    comp.add(z)
                    stack.append(z)
        side = frozenset().union(*(base.vertex_marks[u] for u in comp))
        splits.append((base.markings - side, side))
    return splits


def separating_node_exists(t: StableTree, K: Iterable, L: Iterable) -> bool:
    """Is there a node whose removal splits the markings exactly into K | L?

    K and L must partition the marking set with both sides of size >= 2.
    """
    K, L = frozenset(K), frozenset(L)
    base = strip_decorations(t)
    if K & L or (K | L) != base.markings or len(K) < 2 or len(L) < 2:
        raise InvalidPartition("K, L must partition the markings with |K|,|L| >= 2")
    return any(side == K or side == L for _, side in edge_splits(base))


def separates_markings(t: StableTree, A: Iterable, B: Iterable) -> bool:
    """Is there a node with all of A on one side and all of B on the
    other?  A and B are disjoint nonempty sets of markings (they need not
    cover the marking set)."""
    A, B = frozenset(A), frozenset(B)
    base = strip_decorations(t)
    if not A or not B or A & B or not (A | B) <= base.markings:
        raise InvalidPartition("A, B must be disjoint nonempty marking sets")
    for left, right in edge_splits(base):
        if (A <= left and B <= right) or (A <= right and B <= left):
            return True
    return False


# ---------------------------------------------------------------------------
# Enumeration of combinatorial types
# ---------------------------------------------------------------------------


def _tree_sort_key(t: StableTree):
    return (
        t.num_vertices,
        tuple(tuple(sort_labels(ms)) for ms in t.vertex_marks),
        t.edges,
    )


def _insertions(t: StableTree, m: int) -> List[StableTree]:
    out = []
    # onto an existing component
    for v in range(t.num_vertices):
        vm = list(t.vertex_marks)
        vm[v] = vm[v] | {m}
        out.append(make_tree(vm, t.edges))
    # on a new component subdividing a node
    for v, w in t.edges:
        vm = list(t.vertex_marks) + [frozenset([m])]
        u = len(t.vertex_marks)
        edges = [e for e in t.edges if e != (v, w)] + [(v, u), (u, w)]
        out.append(make_tree(vm, edges))
    # on a new component splitting off an existing marking
    for v in range(t.num_vertices):
        for mk in t.vertex_marks[v]:
            vm = list(t.vertex_marks)
            vm[v] = vm[v] - {mk}
            vm.append(frozenset([mk, m]))
            out.append(make_tree(vm, list(t.edges) + [(v, len(t.vertex_marks))]))
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> Tuple[StableTree, ...]:
    if n == 3:
        return (make_tree([{1, 2, 3}], []),)
    seen = set()
    for t in _enumerate_cached(n - 1):
        for candidate in _insertions(t, n):
            seen.add(candidate)
    return tuple(sorted(seen, key=_tree_sort_key))


def enumerate_stable_trees(n: int) -> List[StableTree]:
    """All combinatorial types of stable trees on markings 1..n.

    Exhaustive and duplicate-free under canonical equality; bounded to
    3 <= n <= 8 since the counts grow superexponentially.
    """
    if not 3 <= n <= 8:
        raise OutOfRange(f"tree enumeration supports 3 <= n <= 8, got {n}")
    return list(_enumerate_cached(n))


# ---------------------------------------------------------------------------
# Points of the four-marked moduli space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class M04Point:
    """A point of the moduli of four marked points: an interior
    cross-ratio (never 0, 1, or inf) or one of the three boundary
    splittings of the labels into 2 + 2."""

    interior: Optional[ProjPoint] = None
    split: Optional[frozenset] = None

    def __post_init__(self):
        if (self.interior is None) == (self.split is None):
            raise InvalidTree("an M04 point is interior or boundary, not both")
        if self.interior is not None and self.interior in (ZERO, ONE, INFINITY):
            raise InvalidTree(f"interior value {self.interior} is excluded")

    @classmethod
    def interior_point(cls, value: ProjPoint) -> "M04Point":
        return cls(interior=value)

    @classmethod
    def boundary_split(cls, first: Iterable, second: Iterable) -> "M04Point":
        return cls(split=frozenset({frozenset(first), frozenset(second)}))

    @property
    def is_interior(self) -> bool:
        return self.interior is not None

    def __str__(self) -> str:
        if self.is_interior:
            return f"interior {self.interior}"
        a, b = sorted(self.split, key=lambda p: label_key(min(p, key=label_key)))
        fmt = lambda part: ",".join(str(m) for m in sort_labels(part))
        return f"boundary {fmt(a)}|{fmt(b)}"


def m04_point_of(t: DecoratedStableTree) -> M04Point:
    """The moduli point of a stable tree on four markings."""
    labels = sort_labels(t.tree.markings)
    if len(labels) != 4:
        raise TooFewMarkings("m04_point_of needs exactly four markings")
    if t.tree.num_vertices == 1:
        x = tuple(t.mark_pos[m] for m in labels)
        return M04Point.interior_point(cross_ratio(x))
    if t.tree.num_vertices == 2:
        return M04Point.boundary_split(*t.tree.vertex_marks)
    raise InvalidTree("a stable tree on four markings has at most two vertices")


def quartet_split(t: StableTree, subset: Iterable) -> Optional[frozenset]:
    """Boundary split seen by four markings, or None when they see a
    smooth curve; the combinatorial shadow of stabilizing to the subset."""
    subset = frozenset(subset)
    if len(subset) != 4:
        raise TooFewMarkings("quartets have four markings")
    reduced = stabilize(strip_decorations(t), subset)
    if reduced.num_vertices == 1:
        return None
    return frozenset(reduced.vertex_marks)


def relabel_m04(point: M04Point, mapping: Mapping, old_labels: Iterable) -> M04Point:
    """Transport an M04 point through a relabeling of its four markings.

    Boundary splits rename directly; interior cross-ratios are recomputed
    because their value is tied to the sorted order of the labels.
    """
    old = sort_labels(old_labels)
    if len(old) != 4:
        raise TooFewMarkings("m04 relabeling needs four labels")
    full = {m: mapping.get(m, m) for m in old}
    if not point.is_interior:
        return M04Point.boundary_split(
            *(frozenset(full[m] for m in part) for part in point.split)
        )
    # positions of the old sorted labels in a normalized chart
    chart = {old[0]: ZERO, old[1]: ONE, old[2]: INFINITY, old[3]: point.interior}
    new_order = sort_labels(full.values())
    inverse = {full[m]: m for m in old}
    x = tuple(chart[inverse[label]] for label in new_order)
    return M04Point.interior_point(cross_ratio(x))
