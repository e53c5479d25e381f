"""Exact arithmetic on the projective line over Q and over prime fields.

Points are primitive integer pairs [a : b]; fractional-linear maps are
primitive integer 2x2 matrices acting on homogeneous coordinates.  All
values are immutable and normalized on construction, so equality and
hashing are structural.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple

from .errors import BadReduction, CoincidentPoints, ParseError


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1(Q) in normalized homogeneous coordinates [a : b].

    Invariants: gcd(|a|, |b|) = 1 and b > 0, or b = 0 and a = 1.  Infinity
    is [1:0], zero is [0:1], one is [1:1].
    """

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a == 0 and b == 0:
            raise ParseError("[0:0] is not a projective point")
        g = gcd(abs(a), abs(b))
        a, b = a // g, b // g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    @classmethod
    def from_rational(cls, value) -> "ProjPoint":
        q = Fraction(value)
        return cls(q.numerator, q.denominator)

    @classmethod
    def from_string(cls, text: str) -> "ProjPoint":
        text = text.strip()
        if text in ("inf", "Inf", "INF", "oo"):
            return INFINITY
        try:
            return cls.from_rational(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse point {text!r}") from exc

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        if self.b == 1:
            return str(self.a)
        return f"{self.a}/{self.b}"

    def __repr__(self) -> str:
        return f"ProjPoint({self.a}, {self.b})"


INFINITY = ProjPoint(1, 0)
ZERO = ProjPoint(0, 1)
ONE = ProjPoint(1, 1)


def pp(value) -> ProjPoint:
    """Coerce an int, Fraction, string, or ProjPoint to a ProjPoint."""
    if isinstance(value, ProjPoint):
        return value
    if isinstance(value, str):
        return ProjPoint.from_string(value)
    return ProjPoint.from_rational(value)


def bracket(p: ProjPoint, q: ProjPoint) -> int:
    """[pq] := a_p b_q - a_q b_p, the fixed homogeneous lift of (x_q - x_p)
    up to sign; zero exactly when p = q."""
    return p.a * q.b - q.a * p.b


@dataclass(frozen=True)
class Mobius:
    """A fractional-linear map as a primitive-integer 2x2 matrix.

    The matrix is stored with entry gcd 1 and its first nonzero entry
    positive, so projective equality is structural equality.  Acts on
    [a : b] by (m00 a + m01 b : m10 a + m11 b); z -> (m00 z + m01)/(m10 z + m11).
    """

    m: Tuple[Tuple[int, int], Tuple[int, int]]

    def __post_init__(self):
        (a, b), (c, d) = self.m
        if a * d - b * c == 0:
            raise ParseError("matrix is singular")
        g = gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d)))
        entries = [a // g, b // g, c // g, d // g]
        for e in entries:
            if e != 0:
                if e < 0:
                    entries = [-x for x in entries]
                break
        object.__setattr__(self, "m", ((entries[0], entries[1]), (entries[2], entries[3])))

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def from_rows(cls, a, b, c, d) -> "Mobius":
        return cls(((a, b), (c, d)))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.m
        return a * d - b * c

    def apply(self, p: ProjPoint) -> ProjPoint:
        (a, b), (c, d) = self.m
        return ProjPoint(a * p.a + b * p.b, c * p.a + d * p.b)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other (matrix product self.m @ other.m)."""
        (a, b), (c, d) = self.m
        (e, f), (g, h) = other.m
        return Mobius(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))

    def inverse(self) -> "Mobius":
        (a, b), (c, d) = self.m
        return Mobius(((d, -b), (-c, a)))

    def apply_configuration(self, x: "Configuration") -> "Configuration":
        return tuple(self.apply(p) for p in x)


Configuration = Tuple[ProjPoint, ...]


def configuration(values: Iterable) -> Configuration:
    return tuple(pp(v) for v in values)


def parse_configuration(text: str) -> Configuration:
    """Parse "0,1,inf,2/3" into a Configuration."""
    parts = [s for s in text.split(",") if s.strip() != ""]
    if not parts:
        raise ParseError("empty configuration")
    return tuple(ProjPoint.from_string(s) for s in parts)


def format_configuration(x: Configuration) -> str:
    return ",".join(str(p) for p in x)


def _basis_to(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> Mobius:
    """The unique map with 0 -> p1, 1 -> p2, inf -> p3."""
    lam = bracket(p1, p2)
    mu = bracket(p2, p3)
    return Mobius(((lam * p3.a, mu * p1.a), (lam * p3.b, mu * p1.b)))


def mobius_from_triples(src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> Mobius:
    """The unique g in PGL2 with g(src[i]) = dst[i] for i = 0, 1, 2.

    Existence and uniqueness is the simple transitivity of the action on
    triples of distinct points; both triples must be pairwise distinct.
    """
    if len(src) != 3 or len(dst) != 3:
        raise CoincidentPoints("need exactly three source and three target points")
    if len(set(src)) != 3:
        raise CoincidentPoints(f"source triple has a repeat: {[str(p) for p in src]}")
    if len(set(dst)) != 3:
        raise CoincidentPoints(f"target triple has a repeat: {[str(p) for p in dst]}")
    return _basis_to(*dst).compose(_basis_to(*src).inverse())


# ---------------------------------------------------------------------------
# Prime-field reductions, used by the evaluation-matrix rank oracle.  Points
# of P^1(F_p) are normalized to (t, 1) for finite t and (1, 0) for infinity.
# ---------------------------------------------------------------------------


def reduce_point(p: ProjPoint, prime: int) -> Tuple[int, int]:
    a, b = p.a % prime, p.b % prime
    if b == 0:
        if a == 0:
            raise BadReduction(f"point {p} degenerates mod {prime}")
        return (1, 0)
    return (a * pow(b, -1, prime)) % prime, 1


def reduce_configuration(x: Configuration, prime: int) -> Tuple[Tuple[int, int], ...]:
    """Reduce all coordinates mod prime, requiring the coincidence pattern
    to survive: points distinct over Q must stay distinct mod p."""
    reduced = tuple(reduce_point(p, prime) for p in x)
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            if (x[i] == x[j]) != (reduced[i] == reduced[j]):
                raise BadReduction(
                    f"coordinates {i + 1} and {j + 1} collide mod {prime}"
                )
    return reduced


def random_mobius_mod(rng: random.Random, prime: int) -> Tuple[int, int, int, int]:
    """A uniformly random invertible 2x2 matrix mod prime."""
    while True:
        a, b, c, d = (rng.randrange(prime) for _ in range(4))
        if (a * d - b * c) % prime != 0:
            return a, b, c, d


def apply_mod(
    g: Tuple[int, int, int, int], point: Tuple[int, int], prime: int
) -> Tuple[int, int]:
    a, b, c, d = g
    u, v = point
    x, y = (a * u + b * v) % prime, (c * u + d * v) % prime
    if y == 0:
        return (1, 0)
    return (x * pow(y, -1, prime)) % prime, 1
