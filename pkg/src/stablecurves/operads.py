"""Quartet signatures and the operad structure they carry.

A signature on a label set records, for every four-element subset, a point
of the four-marked moduli space: an interior cross-ratio or a boundary
splitting.  Signatures restrict along label inclusions and compose along
starred legs by an explicit five-case rule; decorated stable trees map to
signatures by stabilizing to each quartet, and that map intertwines glue
with composition.  ``check_procyclic_axioms`` exercises all of the
compatibility diagrams, for signatures, for trees, and for cycle classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Tuple

from .chow import ChowClass, chow_class, pushforward_glue, pushforward_projection, tree_cycle_class
from .errors import OverlappingLabels, TooFewMarkings
from .labels import STAR, label_key, sort_labels
from .trees import (
    DecoratedStableTree,
    M04Point,
    glue,
    m04_point_of,
    quartet_split,
    relabel,
    relabel_m04,
    stabilize,
    strip_decorations,
)


@dataclass(frozen=True)
class Signature:
    """A total assignment of M04 points to the four-element label subsets.

    Label sets of size three are allowed and carry the empty (trivial)
    signature, matching the fact that three marked points have no moduli.
    """

    labels: frozenset
    values: Tuple[Tuple[frozenset, M04Point], ...]

    def __post_init__(self):
        labels = frozenset(self.labels)
        if len(labels) < 3:
            raise TooFewMarkings("signatures need at least three labels")
        value_map = {frozenset(s): v for s, v in self.values}
        expected = {frozenset(s) for s in itertools.combinations(sort_labels(labels), 4)}
        if set(value_map) != expected:
            raise TooFewMarkings("signature must cover every four-element subset")
        ordered = tuple(
            (s, value_map[s])
            for s in sorted(expected, key=lambda s: [label_key(v) for v in sort_labels(s)])
        )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", ordered)

    def value_at(self, subset: Iterable) -> M04Point:
        target = frozenset(subset)
        for s, v in self.values:
            if s == target:
                return v
        raise TooFewMarkings(f"{set(subset)} is not a four-element subset of the labels")

    def value_map(self) -> Dict[frozenset, M04Point]:
        return dict(self.values)


def signature(labels: Iterable, values: Mapping) -> Signature:
    return Signature(frozenset(labels), tuple((frozenset(s), v) for s, v in values.items()))


def signature_of(t: DecoratedStableTree) -> Signature:
    """Quartet-by-quartet stabilization of a decorated tree."""
    labels = strip_decorations(t).markings
    if len(labels) < 3:
        raise TooFewMarkings("signatures need at least three markings")
    values = {}
    for subset in itertools.combinations(sort_labels(labels), 4):
        values[frozenset(subset)] = m04_point_of(stabilize(t, subset))
    return signature(labels, values)


def p_project(s: Signature, K: Iterable) -> Signature:
    """Restriction of a signature to the four-element subsets of K."""
    K = frozenset(K)
    if len(K) < 3:
        raise TooFewMarkings("projection target needs at least three labels")
    if not K <= s.labels:
        raise TooFewMarkings("projection target is not a subset of the labels")
    return signature(K, {sub: v for sub, v in s.values if sub <= K})


def relabel_signature(s: Signature, mapping: Mapping) -> Signature:
    full = {m: mapping.get(m, m) for m in s.labels}
    if len(set(full.values())) != len(full):
        raise OverlappingLabels("signature relabeling is not injective")
    values = {
        frozenset(full[m] for m in sub): relabel_m04(v, full, sub)
        for sub, v in s.values
    }
    return signature(full.values(), values)


def p_compose(x: Signature, y: Signature, star_x=STAR, star_y=STAR) -> Signature:
    """Composition along the starred legs.

    With I and J the non-star labels, the value on a four-subset S is: the
    matching value of x or y when S sits inside one side; the value at
    three labels plus the star, relabeled, when S crosses with a 3-1
    split; and the boundary splitting S into its two halves when it
    crosses 2-2 (four markings seeing a reducible curve).
    """
    if star_x not in x.labels:
        raise TooFewMarkings(f"left signature has no label {star_x!r}")
    if star_y not in y.labels:
        raise TooFewMarkings(f"right signature has no label {star_y!r}")
    I = x.labels - {star_x}
    J = y.labels - {star_y}
    if I & J:
        raise OverlappingLabels(f"label sets share {sort_labels(I & J)}")
    values: Dict[frozenset, M04Point] = {}
    for subset in itertools.combinations(sort_labels(I | J), 4):
        S = frozenset(subset)
        SI, SJ = S & I, S & J
        if not SJ:
            values[S] = x.value_at(S)
        elif not SI:
            values[S] = y.value_at(S)
        elif len(SI) == 3:
            base = SI | {star_x}
            (extra,) = SJ
            values[S] = relabel_m04(x.value_at(base), {star_x: extra}, base)
        elif len(SJ) == 3:
            base = SJ | {star_y}
            (extra,) = SI
            values[S] = relabel_m04(y.value_at(base), {star_y: extra}, base)
        else:
            values[S] = M04Point.boundary_split(SI, SJ)
    return signature(I | J, values)


# ---------------------------------------------------------------------------
# Axiom sweep
# ---------------------------------------------------------------------------


@dataclass
class AxiomReport:
    """Outcome of a procyclic-axiom sweep; empty violations means pass."""

    checks: int = 0
    violations: List[str] = field(default_factory=list)

    def record(self, ok: bool, description: str) -> None:
        self.checks += 1
        if not ok:
            self.violations.append(description)

    def to_dict(self) -> Dict:
        return {"checks": self.checks, "violations": len(self.violations),
                "failures": self.violations[:20]}


def _partitions_two_sided(labels: List) -> List[Tuple[frozenset, frozenset]]:
    out = []
    rest = labels[1:]
    for r in range(1, len(labels) - 1):
        for chosen in itertools.combinations(rest, r):
            K = frozenset((labels[0],) + chosen)
            L = frozenset(labels) - K
            if len(K) >= 2 and len(L) >= 2:
                out.append((K, L))
    return out


def check_procyclic_axioms(generator, max_n: int = 6, samples_per_case: int = 1) -> AxiomReport:
    """Verify the compatibility diagrams on finite instances.

    For every label set [n] with 4 <= n <= max_n, every two-sided
    partition K + L and every subset I of size >= 3 (>= 4 where a
    signature value exists), check the three projection/composition
    diagrams for the signature operad, the tree operad, and the cycle
    class operad, plus projection functoriality and both morphism squares
    (quartet signatures and cycle classes).  Instances come from the
    supplied generator; the report lists every violation.
    """
    report = AxiomReport()
    for n in range(4, max_n + 1):
        labels = list(range(1, n + 1))
        _check_projection_functoriality(generator, labels, report)
        for K, L in _partitions_two_sided(labels):
            for _ in range(samples_per_case):
                _check_diagrams_once(generator, labels, K, L, report)
    return report


def _check_projection_functoriality(generator, labels, report: AxiomReport) -> None:
    s = generator.signature(labels)
    t = generator.decorated_tree(labels)
    n = len(labels)
    for mid in itertools.combinations(labels, max(3, n - 1)):
        for small in itertools.combinations(mid, 3):
            lhs = p_project(p_project(s, mid), small)
            rhs = p_project(s, small)
            report.record(lhs == rhs, f"signature projection chain {small} via {mid}")
            t_lhs = stabilize(stabilize(t, mid), small)
            t_rhs = stabilize(t, small)
            report.record(t_lhs == t_rhs, f"stabilize chain {small} via {mid}")


def _check_diagrams_once(generator, labels, K: frozenset, L: frozenset, report) -> None:
    n = len(labels)
    x = generator.signature(sort_labels(K) + [STAR])
    y = generator.signature(sort_labels(L) + [STAR])
    tk = generator.decorated_tree(sort_labels(K) + [STAR])
    tl = generator.decorated_tree(sort_labels(L) + [STAR])
    ck = generator.chow_class3(sort_labels(K) + [STAR])
    cl = generator.chow_class3(sort_labels(L) + [STAR])

    s_glued = p_compose(x, y)
    t_glued = glue(tk, tl)
    c_glued = pushforward_glue(ck, cl)

    # morphism squares: signatures and cycle classes through glue
    sig_square = p_compose(signature_of(tk), signature_of(tl)) == signature_of(t_glued)
    report.record(sig_square, f"signature morphism square K={set(K)} L={set(L)}")
    chow_square = pushforward_glue(
        tree_cycle_class(strip_decorations(tk)), tree_cycle_class(strip_decorations(tl))
    ) == tree_cycle_class(strip_decorations(t_glued))
    report.record(chow_square, f"cycle-class morphism square K={set(K)} L={set(L)}")

    for size in range(3, n + 1):
        for subset in itertools.combinations(labels, size):
            I = frozenset(subset)
            IK, IL = I & K, I & L

            # tree operad: all three diagram shapes
            lhs_tree = stabilize(t_glued, I)
            if len(IK) >= 2 and len(IL) >= 2:
                rhs_tree = glue(
                    stabilize(tk, IK | {STAR}), stabilize(tl, IL | {STAR})
                )
            elif not IL:
                rhs_tree = stabilize(tk, I)
            elif len(IL) == 1 and len(IK) >= 2:
                (l0,) = IL
                rhs_tree = relabel(stabilize(tk, IK | {STAR}), {STAR: l0})
            elif not IK:
                rhs_tree = stabilize(tl, I)
            else:  # len(IK) == 1
                (k0,) = IK
                rhs_tree = relabel(stabilize(tl, IL | {STAR}), {STAR: k0})
            report.record(
                lhs_tree == rhs_tree,
                f"tree diagram K={set(K)} L={set(L)} I={set(subset)}",
            )

            # signature operad: projections need >= 3 labels on each piece
            lhs_sig = p_project(s_glued, I)
            rhs_sig = None
            if len(IK) >= 2 and len(IL) >= 2:
                rhs_sig = p_compose(
                    p_project(x, IK | {STAR}), p_project(y, IL | {STAR})
                )
            elif not IL:
                rhs_sig = p_project(x, I)
            elif len(IL) == 1 and len(IK) >= 2:
                (l0,) = IL
                rhs_sig = relabel_signature(p_project(x, IK | {STAR}), {STAR: l0})
            elif not IK:
                rhs_sig = p_project(y, I)
            elif len(IK) == 1 and len(IL) >= 2:
                (k0,) = IK
                rhs_sig = relabel_signature(p_project(y, IL | {STAR}), {STAR: k0})
            if rhs_sig is not None:
                report.record(
                    lhs_sig == rhs_sig,
                    f"signature diagram K={set(K)} L={set(L)} I={set(subset)}",
                )

            # cycle-class operad: same three shapes on grade-3 classes
            lhs_chow = pushforward_projection(c_glued, I)
            if len(IK) >= 2 and len(IL) >= 2:
                rhs_chow = pushforward_glue(
                    pushforward_projection(ck, IK | {STAR}),
                    pushforward_projection(cl, IL | {STAR}),
                )
            elif not IL:
                rhs_chow = pushforward_projection(ck, I)
            elif len(IL) == 1 and len(IK) >= 2:
                (l0,) = IL
                rhs_chow = relabel_chow(
                    pushforward_projection(ck, IK | {STAR}), {STAR: l0}
                )
            elif not IK:
                rhs_chow = pushforward_projection(cl, I)
            else:
                (k0,) = IK
                rhs_chow = relabel_chow(
                    pushforward_projection(cl, IL | {STAR}), {STAR: k0}
                )
            report.record(
                lhs_chow == rhs_chow,
                f"cycle-class diagram K={set(K)} L={set(L)} I={set(subset)}",
            )

    # naturality of the signature morphism under projections
    t_full = generator.decorated_tree(labels)
    for subset in itertools.combinations(labels, max(3, n - 1)):
        lhs = p_project(signature_of(t_full), subset)
        rhs = signature_of(stabilize(t_full, subset))
        report.record(lhs == rhs, f"signature naturality I={set(subset)}")
        lhs_c = pushforward_projection(tree_cycle_class(strip_decorations(t_full)), subset)
        rhs_c = tree_cycle_class(stabilize(strip_decorations(t_full), subset))
        report.record(lhs_c == rhs_c, f"cycle-class naturality I={set(subset)}")


def relabel_chow(c: ChowClass, mapping: Mapping) -> ChowClass:
    """Rename ambient coordinates of a class through an injective map."""
    full = {m: mapping.get(m, m) for m in c.labels}
    if len(set(full.values())) != len(full):
        raise OverlappingLabels("class relabeling is not injective")
    return chow_class(
        full.values(), {frozenset(full[v] for v in s): coeff for s, coeff in c.terms}
    )


def boundary_pattern(tree) -> Tuple[Tuple[frozenset, object], ...]:
    """The combinatorial shadow of a signature: for each quartet, either
    None (interior) or its boundary split.  Distinct combinatorial types
    have distinct patterns."""
    base = strip_decorations(tree)
    labels = sort_labels(base.markings)
    return tuple(
        (frozenset(sub), quartet_split(base, sub))
        for sub in itertools.combinations(labels, 4)
    )
