"""Types of point configurations, cross-ratios, and orbit-closure forms.

A configuration of n points on the line has a *type*: the partition of
{1..n} grouping coincident coordinates.  Four points in general position
have a cross-ratio, normalized so that t(0, 1, inf, t) = t, and every
configuration of four points with at most two coincident determines a
multihomogeneous (1,1,1,1)-form whose zero locus is the orbit closure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Tuple

from .errors import (
    CoincidentPoints,
    DegenerateConfiguration,
    ParseError,
    TooDegenerateType,
)
from .labels import label_key
from .projline import Configuration, ProjPoint, bracket


@dataclass(frozen=True)
class SetPartition:
    """A partition of a finite label set, parts ordered by least element."""

    parts: Tuple[frozenset, ...]

    def __post_init__(self):
        seen = set()
        for part in self.parts:
            if not part:
                raise ParseError("empty part in partition")
            if seen & part:
                raise ParseError("parts are not disjoint")
            seen |= part
        ordered = tuple(
            sorted((frozenset(p) for p in self.parts), key=lambda p: label_key(min(p, key=label_key)))
        )
        object.__setattr__(self, "parts", ordered)

    @property
    def ground_set(self) -> frozenset:
        return frozenset().union(*self.parts) if self.parts else frozenset()

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "|".join(",".join(str(i) for i in sorted(p, key=label_key)) for p in self.parts)

    @classmethod
    def from_string(cls, text: str) -> "SetPartition":
        """Parse "1,2|3|4,5" with integer labels."""
        try:
            parts = [
                frozenset(int(tok) for tok in chunk.split(","))
                for chunk in text.split("|")
                if chunk.strip() != ""
            ]
        except ValueError as exc:
            raise ParseError(f"cannot parse partition {text!r}") from exc
        if not parts:
            raise ParseError("empty partition")
        return cls(tuple(parts))


def partition(parts: Iterable[Iterable]) -> SetPartition:
    return SetPartition(tuple(frozenset(p) for p in parts))


def iter_set_partitions(labels: Iterable) -> Iterator[SetPartition]:
    """All set partitions of the given labels, in a deterministic order."""
    items = sorted(labels, key=label_key)

    def rec(rest: List) -> Iterator[List[List]]:
        if not rest:
            yield []
            return
        head, tail = rest[0], rest[1:]
        for sub in rec(tail):
            for i in range(len(sub)):
                yield sub[:i] + [[head] + sub[i]] + sub[i + 1 :]
            yield [[head]] + sub

    for blocks in rec(items):
        yield partition(blocks)


def type_of(x: Configuration) -> SetPartition:
    """The partition of {1..n} grouping equal coordinates of x."""
    groups: Dict[ProjPoint, List[int]] = {}
    for i, p in enumerate(x, start=1):
        groups.setdefault(p, []).append(i)
    return partition(groups.values())


def cross_ratio(x: Configuration) -> ProjPoint:
    """Cross-ratio of four pairwise-distinct points, with t(0,1,inf,t) = t.

    Computed homogeneously from brackets, so infinite coordinates need no
    special casing.  The value is PGL2-invariant and never lands in
    {0, 1, inf}.
    """
    if len(x) != 4:
        raise CoincidentPoints("cross-ratio needs exactly four points")
    if len(set(x)) != 4:
        raise CoincidentPoints("cross-ratio needs pairwise-distinct points")
    p1, p2, p3, p4 = x
    num = bracket(p1, p4) * bracket(p3, p2)
    den = bracket(p1, p2) * bracket(p3, p4)
    return ProjPoint(num, den)


# ---------------------------------------------------------------------------
# Orbit-closure forms
# ---------------------------------------------------------------------------

#: coefficient patterns of the two bracket products in the cutting form,
#: as {subset bitmask: coefficient}; bit i set <=> a_{i+1} in the monomial.
_Z12_Z34 = {0b0101: 1, 0b1001: -1, 0b0110: -1, 0b1010: 1}
_Z14_Z32 = {0b0101: 1, 0b0011: -1, 0b1100: -1, 0b1010: 1}


@dataclass(frozen=True)
class SectionForm:
    """An integer multihomogeneous form of degree (1,1,1,1) on (P^1)^4.

    Coefficient slot S (a bitmask over the four points) multiplies the
    monomial prod_{i in S} a_i * prod_{i not in S} b_i.  Stored primitive
    with the first nonzero coefficient positive, so projective equality is
    structural.
    """

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != 16:
            raise ParseError("a section form has 16 coefficient slots")
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        if g == 0:
            raise ParseError("the zero form is not a section form")
        coeffs = [c // g for c in self.coeffs]
        for c in coeffs:
            if c != 0:
                if c < 0:
                    coeffs = [-v for v in coeffs]
                break
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def evaluate(self, z: Configuration) -> int:
        """Exact value at four points (well-defined up to a nonzero scale)."""
        if len(z) != 4:
            raise CoincidentPoints("section forms evaluate on four points")
        total = 0
        for mask, c in enumerate(self.coeffs):
            if c == 0:
                continue
            prod = c
            for i in range(4):
                prod *= z[i].a if (mask >> i) & 1 else z[i].b
            total += prod
        return total

    def vanishes_at(self, z: Configuration) -> bool:
        return self.evaluate(z) == 0

    def coeff_map(self) -> Dict[int, int]:
        return {mask: c for mask, c in enumerate(self.coeffs) if c != 0}


def _form_from_terms(a_coef: int, b_coef: int) -> SectionForm:
    coeffs = [0] * 16
    for mask, c in _Z12_Z34.items():
        coeffs[mask] += a_coef * c
    for mask, c in _Z14_Z32.items():
        coeffs[mask] -= b_coef * c
    return SectionForm(tuple(coeffs))


def orbit_form(x: Configuration) -> SectionForm:
    """The (1,1,1,1)-form cutting out the orbit closure of x in (P^1)^4.

    Defined whenever at most two of the four coordinates coincide.  For x
    with all coordinates distinct the zero locus is the orbit closure; for
    x with one coincident pair it is the union of the two matching
    diagonal hypersurfaces.
    """
    if len(x) != 4:
        raise DegenerateConfiguration("orbit forms live on four points")
    if max(len(part) for part in type_of(x).parts) >= 3:
        raise DegenerateConfiguration(
            "three or more coincident coordinates: the form degenerates to zero"
        )
    p1, p2, p3, p4 = x
    a_coef = bracket(p1, p4) * bracket(p3, p2)
    b_coef = bracket(p1, p2) * bracket(p3, p4)
    return _form_from_terms(a_coef, b_coef)


def orbit_ideal_forms(x: Configuration) -> Dict[Tuple[int, ...], SectionForm]:
    """Cutting forms of all four-point projections of x.

    Keyed by the sorted 4-subset of coordinate indices (1-based).  Subsets
    whose projection has three or more coincident points are omitted; the
    configuration type must have at least three parts.
    """
    n = len(x)
    if n < 4:
        raise TooDegenerateType("need at least four coordinates")
    if len(type_of(x)) < 3:
        raise TooDegenerateType("configuration type has fewer than three parts")
    forms: Dict[Tuple[int, ...], SectionForm] = {}
    for subset in itertools.combinations(range(1, n + 1), 4):
        proj = tuple(x[i - 1] for i in subset)
        if max(len(part) for part in type_of(proj).parts) >= 3:
            continue
        forms[subset] = orbit_form(proj)
    return forms


def in_orbit_closure(x: Configuration, z: Configuration) -> bool:
    """Set-theoretic membership of z in the orbit closure of x.

    For x with pairwise-distinct coordinates the projections' cutting
    forms cut out the orbit closure, so z belongs exactly when every form
    vanishes at the matching projection of z.
    """
    if len(z) != len(x):
        raise CoincidentPoints("configurations must have equal length")
    if len(x) == 3:
        if len(type_of(x)) < 3:
            raise TooDegenerateType("configuration type has fewer than three parts")
        return True  # three distinct points have a dense orbit
    for subset, form in orbit_ideal_forms(x).items():
        if not form.vanishes_at(tuple(z[i - 1] for i in subset)):
            return False
    return True
