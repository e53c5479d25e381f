"""Verification suites comparing formulas against independent oracles.

Each suite returns a JSON-ready dict with a ``violations`` count; all are
deterministic for a fixed seed.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence

from .chow import (
    basis_class,
    generic_orbit_class,
    intersection_number,
    orbit_class_of_type,
    pushforward_diagonal,
    tree_cycle_class,
)
from .configurations import iter_set_partitions, type_of
from .errors import OutOfRange
from .hilbert import generic_orbit_hilbert
from .labels import sort_labels
from .operads import check_procyclic_axioms
from .oracles import (
    DEFAULT_PRIME,
    boundary_membership_check,
    degeneration_fiber_check,
    hilbert_function_rank,
    unique_transport_count,
)
from .projline import INFINITY, ONE, ZERO, Configuration, ProjPoint
from .sampling import DefaultGenerator
from .trees import enumerate_stable_trees


def standard_configuration(n: int) -> Configuration:
    """(0, 1, inf, 2, 3, ...): a fixed configuration of n distinct points."""
    if n < 3:
        raise OutOfRange("need at least three coordinates")
    tail = tuple(ProjPoint(k, 1) for k in range(2, n - 1))
    return (ZERO, ONE, INFINITY) + tail


def verify_hilbert(
    n: int = 4,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    max_entry: int = 2,
) -> Dict:
    """Rank oracle versus the generic-orbit polynomial on all multidegrees
    with entries from 1..max_entry."""
    if not 3 <= n <= 6:
        raise OutOfRange("rank sweep supports 3 <= n <= 6")
    x = standard_configuration(n)
    poly = generic_orbit_hilbert(n)
    comparisons: List[Dict] = []
    violations = 0
    for t in itertools.product(range(1, max_entry + 1), repeat=n):
        expected = poly.evaluate({i + 1: t[i] for i in range(n)})
        rank = hilbert_function_rank(x, t, prime=prime, seed=seed)
        agree = rank == expected
        if not agree:
            violations += 1
        comparisons.append(
            {"t": list(t), "rank": rank, "expected": expected, "agree": agree}
        )
    return {
        "suite": "hilbert",
        "n": n,
        "prime": prime,
        "seed": seed,
        "checks": len(comparisons),
        "violations": violations,
        "comparisons": comparisons,
    }


def verify_chow(n: int = 5, seed: int = 0) -> Dict:
    """Class-formula sweep: diagonal pushforwards and transport counts
    reproduce the orbit class of every type, the intersection pairing is
    dual on the basis, and every stable tree carries the generic class."""
    if not 3 <= n <= 7:
        raise OutOfRange("chow sweep supports 3 <= n <= 7")
    gen = DefaultGenerator(seed)
    labels = list(range(1, n + 1))
    violations = 0
    checks = 0

    y = standard_configuration(n)
    for P in iter_set_partitions(labels):
        if len(P.parts) < 3:
            continue
        cls = orbit_class_of_type(P)
        pushed = pushforward_diagonal(generic_orbit_class(len(P.parts)), P)
        checks += 1
        if cls != pushed:
            violations += 1
        # build a configuration of this exact type and count transports
        values = gen.distinct_points(len(P.parts))
        position = {}
        for part, value in zip(P.parts, values):
            for idx in part:
                position[idx] = value
        x = tuple(position[idx] for idx in labels)
        assert type_of(x) == P
        for I in itertools.combinations(labels, 3):
            checks += 1
            if unique_transport_count(x, y, I) != cls.coeff(I):
                violations += 1

    for size in range(0, n + 1):
        for I in itertools.combinations(labels, size):
            for J in itertools.combinations(labels, n - size):
                checks += 1
                pairing = intersection_number(
                    basis_class(labels, I), basis_class(labels, J)
                )
                expected = 1 if frozenset(J) == frozenset(labels) - frozenset(I) else 0
                if pairing != expected:
                    violations += 1

    beta = generic_orbit_class(n)
    for tree in enumerate_stable_trees(n):
        checks += 1
        if tree_cycle_class(tree) != beta:
            violations += 1

    return {
        "suite": "chow",
        "n": n,
        "seed": seed,
        "checks": checks,
        "violations": violations,
    }


def verify_degeneration(
    n: int = 5, seed: int = 0, samples: int = 200, index: Optional[int] = None
) -> Dict:
    """Point-sampling check of the two-component special fibers."""
    if n < 4:
        raise OutOfRange("degeneration needs n >= 4")
    x = standard_configuration(n)
    indices = [index] if index else list(range(1, n))
    reports = [
        degeneration_fiber_check(n, x, i, samples=samples, seed=seed + i)
        for i in indices
    ]
    return {
        "suite": "degeneration",
        "n": n,
        "seed": seed,
        "checks": sum(r.on_locus_checked + r.off_locus_checked for r in reports),
        "violations": sum(
            r.on_locus_failures + r.off_locus_failures for r in reports
        ),
        "fibers": [r.to_dict() for r in reports],
    }


def verify_boundary(n: int = 5, seed: int = 0, samples: int = 200) -> Dict:
    """Point-sampling check of orbit-closure boundary membership."""
    if n < 4:
        raise OutOfRange("boundary check needs n >= 4")
    report = boundary_membership_check(standard_configuration(n), samples=samples, seed=seed)
    return {
        "suite": "boundary",
        "n": n,
        "seed": seed,
        "checks": report.on_locus_checked + report.off_locus_checked,
        "violations": report.on_locus_failures + report.off_locus_failures,
        "report": report.to_dict(),
    }


def verify_operads(max_n: int = 6, seed: int = 0) -> Dict:
    """Procyclic-axiom sweep over all label sets up to max_n."""
    if not 4 <= max_n <= 7:
        raise OutOfRange("operad sweep supports 4 <= max_n <= 7")
    report = check_procyclic_axioms(DefaultGenerator(seed), max_n=max_n)
    return {
        "suite": "operads",
        "max_n": max_n,
        "seed": seed,
        "checks": report.checks,
        "violations": len(report.violations),
        "failures": report.violations[:20],
    }


SUITES = {
    "hilbert": verify_hilbert,
    "chow": verify_chow,
    "degeneration": verify_degeneration,
    "boundary": verify_boundary,
    "operads": verify_operads,
}
