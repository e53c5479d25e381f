"""Integer polynomials of degree at most one in every variable.

Terms are indexed by subsets of the variable set, so the representation
itself enforces multilinearity; operations that would push a variable to
degree two fail loudly instead of reducing.  Every Hilbert polynomial in
this package lives in this class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

from .errors import MissingVariable, NotMultilinear
from .labels import label_key, sort_labels


@dataclass(frozen=True)
class MultilinearPoly:
    """A sparse multilinear polynomial: map from variable subsets to ints."""

    variables: frozenset
    terms: Tuple[Tuple[frozenset, int], ...]

    def __post_init__(self):
        cleaned: Dict[frozenset, int] = {}
        for subset, coeff in self.terms:
            subset = frozenset(subset)
            if not subset <= self.variables:
                raise MissingVariable(
                    f"term variables {set(subset)} outside variable set"
                )
            if coeff:
                cleaned[subset] = cleaned.get(subset, 0) + coeff
        ordered = tuple(
            (s, c)
            for s, c in sorted(
                ((s, c) for s, c in cleaned.items() if c != 0),
                key=lambda item: (len(item[0]), [label_key(v) for v in sort_labels(item[0])]),
            )
        )
        object.__setattr__(self, "variables", frozenset(self.variables))
        object.__setattr__(self, "terms", ordered)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_map(cls, variables: Iterable, coeffs: Mapping) -> "MultilinearPoly":
        return cls(frozenset(variables), tuple((frozenset(s), c) for s, c in coeffs.items()))

    @classmethod
    def zero(cls, variables: Iterable = ()) -> "MultilinearPoly":
        return cls(frozenset(variables), ())

    @classmethod
    def constant(cls, value: int, variables: Iterable = ()) -> "MultilinearPoly":
        return cls(frozenset(variables), ((frozenset(), value),))

    @classmethod
    def var(cls, v) -> "MultilinearPoly":
        return cls(frozenset([v]), ((frozenset([v]), 1),))

    # -- ring structure ------------------------------------------------------

    def coeff(self, subset: Iterable) -> int:
        target = frozenset(subset)
        for s, c in self.terms:
            if s == target:
                return c
        return 0

    def term_map(self) -> Dict[frozenset, int]:
        return dict(self.terms)

    def with_variables(self, extra: Iterable) -> "MultilinearPoly":
        return MultilinearPoly(self.variables | frozenset(extra), self.terms)

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        merged = dict(self.terms)
        for s, c in other.terms:
            merged[s] = merged.get(s, 0) + c
        return MultilinearPoly(self.variables | other.variables, tuple(merged.items()))

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        merged = dict(self.terms)
        for s, c in other.terms:
            merged[s] = merged.get(s, 0) - c
        return MultilinearPoly(self.variables | other.variables, tuple(merged.items()))

    def __neg__(self) -> "MultilinearPoly":
        return MultilinearPoly(self.variables, tuple((s, -c) for s, c in self.terms))

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        """Exact product; raises NotMultilinear if any term pair overlaps."""
        out: Dict[frozenset, int] = {}
        for s1, c1 in self.terms:
            for s2, c2 in other.terms:
                if s1 & s2:
                    raise NotMultilinear(
                        f"product repeats variables {set(s1 & s2)}"
                    )
                key = s1 | s2
                out[key] = out.get(key, 0) + c1 * c2
        return MultilinearPoly(self.variables | other.variables, tuple(out.items()))

    def substitute_sum(self, v, replacement: Iterable) -> "MultilinearPoly":
        """Replace t_v by the sum of the variables in `replacement`.

        The result stays multilinear as long as no term of the polynomial
        already contains a replacement variable alongside v.
        """
        repl = sort_labels(frozenset(replacement))
        out: Dict[frozenset, int] = {}
        for subset, coeff in self.terms:
            if v not in subset:
                out[subset] = out.get(subset, 0) + coeff
                continue
            base = subset - {v}
            for s in repl:
                if s in base:
                    raise NotMultilinear(
                        f"substituting {v} -> sum would square variable {s}"
                    )
                key = base | {s}
                out[key] = out.get(key, 0) + coeff
        new_vars = (self.variables - {v}) | frozenset(repl)
        return MultilinearPoly(new_vars, tuple(out.items()))

    def evaluate(self, assignment: Mapping) -> int:
        """Exact integer value; the assignment must cover every variable."""
        missing = self.variables - set(assignment)
        if missing:
            raise MissingVariable(f"no value for variables {set(missing)}")
        total = 0
        for subset, coeff in self.terms:
            prod = coeff
            for v in subset:
                prod *= assignment[v]
            total += prod
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for subset, coeff in self.terms:
            mono = "*".join(f"t{v}" for v in sort_labels(subset)) or "1"
            chunks.append(f"{coeff}*{mono}" if mono != "1" else str(coeff))
        return " + ".join(chunks)


def product(polys: Iterable[MultilinearPoly]) -> MultilinearPoly:
    result = MultilinearPoly.constant(1)
    for p in polys:
        result = result * p
    return result
