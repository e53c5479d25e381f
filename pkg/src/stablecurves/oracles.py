"""Brute-force verifiers independent of the polynomial and class formulas.

The rank oracle evaluates every monomial of a multidegree at random orbit
samples over a prime field and row-reduces; its rank is the multigraded
Hilbert function of the orbit closure, to be compared against polynomial
evaluation.  Transport counting realizes intersection numbers by solving
for the unique map matching three coordinates.  The sampling checks probe
the two-component degenerate fiber and the boundary of an orbit closure
pointwise with exact arithmetic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .configurations import (
    cross_ratio,
    in_orbit_closure,
    orbit_ideal_forms,
    type_of,
)
from .errors import InsufficientSamples, TooDegenerateType
from .hilbert import generic_orbit_hilbert
from .labels import sort_labels
from .projline import (
    Configuration,
    Mobius,
    ProjPoint,
    apply_mod,
    mobius_from_triples,
    random_mobius_mod,
    reduce_configuration,
)

DEFAULT_PRIME = 32003
SECOND_PRIME = 65537
RANK_MARGIN = 10


def rank_mod_p(rows: Sequence[Sequence[int]], prime: int) -> int:
    """Rank of an integer matrix over F_p by vectorized elimination."""
    if not rows:
        return 0
    m = np.array(rows, dtype=np.int64) % prime
    n_rows, n_cols = m.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = None
        for r in range(rank, n_rows):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, col]), -1, prime)
        m[rank] = (m[rank] * inv) % prime
        column = m[:, col].copy()
        column[rank] = 0
        m = (m - np.outer(column, m[rank])) % prime
        rank += 1
    return rank


def _monomial_exponents(t: Sequence[int]) -> List[Tuple[int, ...]]:
    return list(itertools.product(*(range(ti + 1) for ti in t)))


def hilbert_function_rank(
    x: Configuration,
    t: Sequence[int],
    prime: int = DEFAULT_PRIME,
    samples: Optional[int] = None,
    seed: int = 0,
) -> int:
    """Multigraded Hilbert function of the orbit closure of x at degree t.

    Rows are random orbit points of x mod the prime, columns all monomials
    of multidegree t; the rank over F_p is deterministic given the seed.
    The default number of samples is the generic polynomial value plus a
    margin; extra rows are cheap and rank can only be underestimated with
    too few.
    """
    n = len(x)
    if len(t) != n:
        raise InsufficientSamples(f"multidegree needs {n} entries")
    if len(type_of(x)) < 3:
        raise TooDegenerateType("orbit of x is not three-dimensional")
    bound = generic_orbit_hilbert(n).evaluate({i + 1: t[i] for i in range(n)})
    if samples is None:
        samples = bound + RANK_MARGIN
    elif samples < bound + RANK_MARGIN:
        raise InsufficientSamples(
            f"{samples} samples below bound {bound} + {RANK_MARGIN}"
        )
    reduced = reduce_configuration(x, prime)
    exponents = _monomial_exponents(t)
    rng = random.Random(seed)
    rows = []
    for _ in range(samples):
        g = random_mobius_mod(rng, prime)
        point = [apply_mod(g, coord, prime) for coord in reduced]
        row = []
        for expo in exponents:
            value = 1
            for i in range(n):
                a, b = point[i]
                value = value * pow(a, expo[i], prime) % prime
                value = value * pow(b, t[i] - expo[i], prime) % prime
            row.append(value)
        rows.append(row)
    return rank_mod_p(rows, prime)


def unique_transport_count(x: Configuration, y: Configuration, I: Iterable) -> int:
    """Number of orbit points of x matching y on the three coordinates I.

    One when the I coordinates of x are pairwise distinct (the matching
    map exists and is unique), zero otherwise; when it exists the
    transport is constructed and checked exactly.
    """
    idx = sorted(I)
    if len(idx) != 3:
        raise TooDegenerateType("transport counting needs a 3-subset")
    src = tuple(x[i - 1] for i in idx)
    dst = tuple(y[i - 1] for i in idx)
    if len(set(src)) != 3:
        return 0
    g = mobius_from_triples(src, dst)
    moved = g.apply_configuration(x)
    assert all(moved[i - 1] == y[i - 1] for i in idx)
    return 1


# ---------------------------------------------------------------------------
# Exact sampling reports
# ---------------------------------------------------------------------------


@dataclass
class SampleReport:
    """Counts from an exact point-sampling run; passed means no stray
    vanishing behavior in either direction."""

    description: str
    on_locus_checked: int = 0
    on_locus_failures: int = 0
    off_locus_checked: int = 0
    off_locus_failures: int = 0
    details: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.on_locus_failures == 0 and self.off_locus_failures == 0

    def to_dict(self) -> Dict:
        return {
            "description": self.description,
            "on_locus": {"checked": self.on_locus_checked, "failures": self.on_locus_failures},
            "off_locus": {"checked": self.off_locus_checked, "failures": self.off_locus_failures},
            "passed": self.passed,
        }


def _random_point(rng: random.Random) -> ProjPoint:
    if rng.random() < 0.05:
        return ProjPoint(1, 0)
    return ProjPoint(rng.randint(-30, 30), rng.randint(1, 7))


def _random_mobius_q(rng: random.Random) -> Mobius:
    while True:
        a, b, c, d = (rng.randint(-9, 9) for _ in range(4))
        if a * d - b * c != 0:
            return Mobius(((a, b), (c, d)))


def degeneration_fiber_check(
    n: int,
    x: Configuration,
    i: int,
    samples: int = 200,
    seed: int = 0,
) -> SampleReport:
    """Probe the special fiber where the last coordinate collides with the
    i-th one.

    The fiber is cut out by the quartet forms of (x', x_i) with x' the
    first n-1 coordinates of x.  Points of both components (the orbit
    closure of x' doubled into coordinates i and n, and the locus with
    free i and n coordinates and all others equal) and of their
    intersection must satisfy every form; random ambient points off the
    union must violate at least one.
    """
    if len(x) != n or len(set(x)) != n:
        raise TooDegenerateType("x must have n pairwise-distinct coordinates")
    if not 1 <= i <= n - 1:
        raise TooDegenerateType(f"need 1 <= i <= {n - 1}")
    rng = random.Random(seed)
    x_prime = x[: n - 1]
    degenerate = x_prime + (x[i - 1],)
    forms = orbit_ideal_forms(degenerate)
    report = SampleReport(f"degenerate fiber n={n} i={i}")

    def satisfies_all(z: Configuration) -> bool:
        return all(
            form.vanishes_at(tuple(z[j - 1] for j in subset))
            for subset, form in forms.items()
        )

    def z_double_prime(u: ProjPoint, v: ProjPoint, w: ProjPoint) -> Configuration:
        coords = []
        for j in range(1, n + 1):
            coords.append(u if j == i else v if j == n else w)
        return tuple(coords)

    for _ in range(samples):
        # first component: an orbit point of x' doubled into slots i and n
        g = _random_mobius_q(rng)
        moved = g.apply_configuration(x_prime)
        z1 = moved + (moved[i - 1],)
        report.on_locus_checked += 1
        if not satisfies_all(z1):
            report.on_locus_failures += 1
            report.details.append(f"component-one point violated a form: {z1}")

        # second component: free coordinates at i and n, shared elsewhere
        u, v, w = (_random_point(rng) for _ in range(3))
        z2 = z_double_prime(u, v, w)
        report.on_locus_checked += 1
        if not satisfies_all(z2):
            report.on_locus_failures += 1
            report.details.append(f"component-two point violated a form: {z2}")

        # intersection locus: coordinates i and n agree, all others share one value
        u, w = (_random_point(rng) for _ in range(2))
        z3 = z_double_prime(u, u, w)
        report.on_locus_checked += 1
        if not satisfies_all(z3):
            report.on_locus_failures += 1
            report.details.append(f"intersection point violated a form: {z3}")

    made = 0
    while made < samples:
        z = tuple(_random_point(rng) for _ in range(n))
        others = {z[j - 1] for j in range(1, n) if j != i}
        on_second = len(others) == 1
        on_first = z[i - 1] == z[n - 1] and in_orbit_closure(x_prime, z[: n - 1])
        if on_second or on_first:
            continue
        made += 1
        report.off_locus_checked += 1
        if satisfies_all(z):
            report.off_locus_failures += 1
            report.details.append(f"ambient point satisfied every form: {z}")
    return report


def boundary_membership_check(
    x: Configuration, samples: int = 200, seed: int = 0
) -> SampleReport:
    """Probe the boundary of the orbit closure of a generic configuration.

    Every point with one free coordinate and the rest coincident must lie
    in the closure; generic points whose leading quartet has a different
    cross-ratio must not.
    """
    n = len(x)
    if len(set(x)) != n or n < 4:
        raise TooDegenerateType("x must have at least four distinct coordinates")
    rng = random.Random(seed)
    report = SampleReport(f"boundary membership n={n}")
    per_pattern = max(1, samples // n)
    for i in range(1, n + 1):
        for _ in range(per_pattern):
            free = _random_point(rng)
            shared = _random_point(rng)
            while shared == free:
                shared = _random_point(rng)
            z = tuple(free if j == i else shared for j in range(1, n + 1))
            report.on_locus_checked += 1
            if not in_orbit_closure(x, z):
                report.on_locus_failures += 1
                report.details.append(f"boundary point rejected: pattern {i}")

    reference = cross_ratio(x[:4])
    made = 0
    while made < samples:
        z = tuple(_random_point(rng) for _ in range(n))
        if len(set(z)) != n or cross_ratio(z[:4]) == reference:
            continue
        made += 1
        report.off_locus_checked += 1
        if in_orbit_closure(x, z):
            report.off_locus_failures += 1
            report.details.append("point with wrong cross-ratio accepted")
    return report
