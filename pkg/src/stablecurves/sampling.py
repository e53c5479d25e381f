"""Seeded random instances: points, maps, trees, signatures, classes.

Everything draws from one ``random.Random`` so that identical seeds give
identical sweeps.  ``DefaultGenerator`` is the instance source consumed by
the operad axiom checker and the verification suites.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, List

from .chow import ChowClass, chow_class
from .labels import sort_labels
from .operads import Signature, signature
from .projline import INFINITY, ONE, ZERO, Configuration, Mobius, ProjPoint
from .trees import (
    DecoratedStableTree,
    M04Point,
    StableTree,
    enumerate_stable_trees,
    make_decorated,
    relabel,
)


class DefaultGenerator:
    """Deterministic random source for axiom sweeps and sampling oracles."""

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    # -- points and maps -----------------------------------------------------

    def projpoint(self, allow_infinity: bool = True) -> ProjPoint:
        if allow_infinity and self.rng.random() < 0.08:
            return INFINITY
        num = self.rng.randint(-12, 12)
        den = self.rng.randint(1, 6)
        return ProjPoint(num, den)

    def distinct_points(self, count: int, avoid: Iterable = ()) -> List[ProjPoint]:
        points: List[ProjPoint] = []
        taken = set(avoid)
        while len(points) < count:
            p = self.projpoint()
            if p not in taken:
                taken.add(p)
                points.append(p)
        return points

    def mobius(self) -> Mobius:
        while True:
            a, b, c, d = (self.rng.randint(-9, 9) for _ in range(4))
            if a * d - b * c != 0:
                return Mobius(((a, b), (c, d)))

    def configuration(self, n: int, distinct: bool = True) -> Configuration:
        if distinct:
            return tuple(self.distinct_points(n))
        return tuple(self.projpoint() for _ in range(n))

    # -- trees ----------------------------------------------------------------

    def tree_shape(self, labels: Iterable) -> StableTree:
        labs = sort_labels(labels)
        shapes = enumerate_stable_trees(len(labs))
        shape = self.rng.choice(shapes)
        return relabel(shape, {i + 1: labs[i] for i in range(len(labs))})

    def decorate(self, shape: StableTree) -> DecoratedStableTree:
        vertex_maps = []
        edge_points = {}
        for v in range(shape.num_vertices):
            incident = [e for e in shape.edges if v in e]
            needed = len(shape.vertex_marks[v]) + len(incident)
            points = self.distinct_points(needed)
            marks = {}
            for m in sort_labels(shape.vertex_marks[v]):
                marks[m] = points.pop()
            vertex_maps.append(marks)
            for e in incident:
                edge_points[(e, v)] = points.pop()
        edges = [
            (v, w, edge_points[((v, w), v)], edge_points[((v, w), w)])
            for v, w in shape.edges
        ]
        return make_decorated(vertex_maps, edges)

    def decorated_tree(self, labels: Iterable) -> DecoratedStableTree:
        return self.decorate(self.tree_shape(labels))

    def smooth_curve(self, labels: Iterable) -> DecoratedStableTree:
        labs = sort_labels(labels)
        points = self.distinct_points(len(labs))
        return make_decorated([dict(zip(labs, points))], [])

    # -- operad instances ------------------------------------------------------

    def m04_point(self, labels: Iterable) -> M04Point:
        labs = sort_labels(labels)
        if self.rng.random() < 0.5:
            value = self.projpoint()
            while value in (ZERO, ONE, INFINITY):
                value = self.projpoint()
            return M04Point.interior_point(value)
        others = labs[1:]
        partner = self.rng.choice(others)
        first = {labs[0], partner}
        return M04Point.boundary_split(first, set(labs) - first)

    def signature(self, labels: Iterable) -> Signature:
        labs = sort_labels(labels)
        values = {
            frozenset(sub): self.m04_point(sub)
            for sub in itertools.combinations(labs, 4)
        }
        return signature(labs, values)

    def chow_class3(self, labels: Iterable) -> ChowClass:
        labs = sort_labels(labels)
        coeffs = {}
        for sub in itertools.combinations(labs, 3):
            if self.rng.random() < 0.6:
                c = self.rng.randint(-3, 3)
                if c:
                    coeffs[frozenset(sub)] = c
        if not coeffs:
            coeffs[frozenset(labs[:3])] = 1
        return chow_class(labs, coeffs)
