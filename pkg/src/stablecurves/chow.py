"""Cycle classes in a product of projective lines.

The group of classes has a basis H_I indexed by coordinate subsets, with
H_I the class of a fiber that is free exactly in the I coordinates.  The
class of a 3-dimensional orbit closure depends only on the configuration
type; pushforwards along projections, diagonal embeddings, and node
gluings act on the basis by the explicit rules below, and the pairing
H_I . H_J is 1 exactly for complementary subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .configurations import SetPartition
from .errors import GradeMismatch, TooDegenerateType
from .labels import STAR, label_key, sort_labels
from .trees import StableTree, strip_decorations


@dataclass(frozen=True)
class ChowClass:
    """An integer combination of basis classes H_I of a single grade."""

    labels: frozenset
    terms: Tuple[Tuple[frozenset, int], ...]

    def __post_init__(self):
        cleaned: Dict[frozenset, int] = {}
        grade: Optional[int] = None
        for subset, coeff in self.terms:
            subset = frozenset(subset)
            if not subset <= frozenset(self.labels):
                raise GradeMismatch(f"subset {set(subset)} outside ambient labels")
            if coeff == 0:
                continue
            if grade is None:
                grade = len(subset)
            elif len(subset) != grade:
                raise GradeMismatch("mixed-dimension class")
            cleaned[subset] = cleaned.get(subset, 0) + coeff
        ordered = tuple(
            (s, c)
            for s, c in sorted(
                ((s, c) for s, c in cleaned.items() if c != 0),
                key=lambda item: [label_key(v) for v in sort_labels(item[0])],
            )
        )
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "terms", ordered)

    @property
    def grade(self) -> Optional[int]:
        return len(self.terms[0][0]) if self.terms else None

    def coeff(self, subset: Iterable) -> int:
        target = frozenset(subset)
        for s, c in self.terms:
            if s == target:
                return c
        return 0

    def term_map(self) -> Dict[frozenset, int]:
        return dict(self.terms)

    def __add__(self, other: "ChowClass") -> "ChowClass":
        merged = dict(self.terms)
        for s, c in other.terms:
            merged[s] = merged.get(s, 0) + c
        return ChowClass(self.labels | other.labels, tuple(merged.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*H{{{','.join(str(v) for v in sort_labels(s))}}}" for s, c in self.terms
        )


def chow_class(labels: Iterable, coeffs: Mapping) -> ChowClass:
    return ChowClass(frozenset(labels), tuple((frozenset(s), c) for s, c in coeffs.items()))


def basis_class(labels: Iterable, subset: Iterable) -> ChowClass:
    return chow_class(labels, {frozenset(subset): 1})


def generic_orbit_class(labels) -> ChowClass:
    """Class of a generic orbit closure: coefficient one on every
    3-subset of the coordinates."""
    labs = sort_labels(labels) if not isinstance(labels, int) else list(range(1, labels + 1))
    if len(labs) < 3:
        raise TooDegenerateType("need at least three coordinates")
    return chow_class(labs, {frozenset(s): 1 for s in itertools.combinations(labs, 3)})


def orbit_class_of_type(P: SetPartition) -> ChowClass:
    """Class of the orbit closure of a configuration of the given type:
    coefficient one exactly on 3-subsets meeting every part at most once."""
    if len(P.parts) < 3:
        raise TooDegenerateType("type must have at least three parts")
    labs = sort_labels(P.ground_set)
    coeffs = {}
    for s in itertools.combinations(labs, 3):
        if all(len(frozenset(s) & part) <= 1 for part in P.parts):
            coeffs[frozenset(s)] = 1
    return chow_class(labs, coeffs)


def intersection_number(c1: ChowClass, c2: ChowClass) -> int:
    """Pairing of complementary grades: sum of c1(I) * c2(complement of I)."""
    if c1.labels != c2.labels:
        raise GradeMismatch("classes live on different ambient coordinates")
    if not c1.terms or not c2.terms:
        return 0
    n = len(c1.labels)
    if c1.grade + c2.grade != n:
        raise GradeMismatch(
            f"grades {c1.grade} + {c2.grade} do not sum to the dimension {n}"
        )
    other = c2.term_map()
    total = 0
    for subset, coeff in c1.terms:
        total += coeff * other.get(c1.labels - subset, 0)
    return total


def pushforward_projection(c: ChowClass, J: Iterable) -> ChowClass:
    """Pushforward along the projection onto the J coordinates: H_I
    survives exactly when I is contained in J (otherwise the dimension
    drops and the class dies)."""
    J = frozenset(J)
    return chow_class(J, {s: coeff for s, coeff in c.terms if s <= J})


def pushforward_diagonal(c: ChowClass, P: SetPartition) -> ChowClass:
    """Pushforward along the diagonal embedding of a partition.

    The class lives on part indices 1..l; each H_J expands into the sum of
    H over all ways of picking one target coordinate from each part in J
    (a coordinate class of a small diagonal is the sum of the single
    coordinate classes)."""
    l = len(P.parts)
    expected = frozenset(range(1, l + 1))
    if c.labels != expected:
        raise GradeMismatch(f"class must use part indices 1..{l}")
    target = frozenset().union(*P.parts)
    out: Dict[frozenset, int] = {}
    for subset, coeff in c.terms:
        choices = [sort_labels(P.parts[j - 1]) for j in sorted(subset)]
        for pick in itertools.product(*choices):
            key = frozenset(pick)
            out[key] = out.get(key, 0) + coeff
    return chow_class(target, out)


def pushforward_glue(
    ck: ChowClass, cl: ChowClass, star=STAR
) -> ChowClass:
    """Sum of the pushforwards of two classes along the node embeddings.

    ``ck`` lives on K + {star}: its star coordinate becomes the small
    diagonal across L (H_I with the star maps to the sum over replacing
    the star by each L coordinate); symmetrically for ``cl``.
    """
    K = ck.labels - {star}
    L = cl.labels - {star}
    if K & L:
        raise GradeMismatch("glue sides share coordinates")
    target = K | L
    out: Dict[frozenset, int] = {}

    def push(c: ChowClass, other_side: frozenset) -> None:
        for subset, coeff in c.terms:
            if star not in subset:
                out[subset] = out.get(subset, 0) + coeff
            else:
                base = subset - {star}
                for j in sort_labels(other_side):
                    key = base | {j}
                    out[key] = out.get(key, 0) + coeff

    push(ck, L)
    push(cl, K)
    return chow_class(target, out)


def component_type(tree: StableTree, v: int) -> SetPartition:
    """Type of the component configuration at vertex v: markings on v are
    singletons, and all markings behind one node coincide there."""
    base = strip_decorations(tree)
    parts = [frozenset([m]) for m in base.vertex_marks[v]]
    adj = base.adjacency()
    for w in adj[v]:
        comp = {w}
        stack = [w]
        while stack:
            u = stack.pop()
            for z in adj[u]:
                if not (u == w and z == v) and z not in comp:
                    comp.add(z)
                    stack.append(z)
        parts.append(frozenset().union(*(base.vertex_marks[u] for u in comp)))
    return SetPartition(tuple(parts))


def tree_cycle_class(tree: StableTree) -> ChowClass:
    """Cycle class of the union of component orbit closures of a stable
    tree: the sum over vertices of the diagonal pushforward of a generic
    orbit class; equal to the generic class for every stable tree."""
    base = strip_decorations(tree)
    total = ChowClass(base.markings, ())
    for v in range(base.num_vertices):
        P = component_type(base, v)
        total = total + pushforward_diagonal(generic_orbit_class(len(P.parts)), P)
    return total
