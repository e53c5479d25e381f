"""Multigraded Hilbert polynomials of orbit closures and nodal unions.

Everything here is exact multilinear arithmetic: the ambient product of
lines, the generic 3-dimensional orbit closure, the three-term gluing rule
for a union along a node, the recursion over a stable tree (whose output
is the generic polynomial for every tree), diagonal pushforwards, and the
two-component degeneration identity.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, Tuple, Union

from .configurations import SetPartition
from .errors import IndexOutOfRange, MissingVariable
from .labels import STAR, sort_labels
from .multilinear import MultilinearPoly, product
from .trees import StableTree, make_tree, strip_decorations

Labels = Union[int, Iterable]


def _as_labels(spec: Labels) -> list:
    if isinstance(spec, int):
        if spec < 1:
            raise IndexOutOfRange(f"need at least one coordinate, got {spec}")
        return list(range(1, spec + 1))
    return sort_labels(spec)


def ambient_hilbert(labels: Labels) -> MultilinearPoly:
    """Hilbert polynomial of the full product of lines: prod_i (1 + t_i)."""
    labs = _as_labels(labels)
    one = MultilinearPoly.constant(1)
    return product(one + MultilinearPoly.var(v) for v in labs)


def generic_orbit_hilbert(labels: Labels) -> MultilinearPoly:
    """Hilbert polynomial of a generic orbit closure: the sum of all
    square-free monomials in at most three of the variables.  For three
    coordinates this equals the ambient polynomial (the closure fills the
    whole space)."""
    labs = _as_labels(labels)
    if len(labs) < 3:
        raise IndexOutOfRange("a 3-dimensional orbit needs at least 3 coordinates")
    coeffs: Dict[frozenset, int] = {}
    for r in range(4):
        for subset in itertools.combinations(labs, r):
            coeffs[frozenset(subset)] = 1
    return MultilinearPoly.from_map(labs, coeffs)


def _sum_of_vars(labels: Iterable) -> MultilinearPoly:
    poly = MultilinearPoly.zero(labels)
    for v in labels:
        poly = poly + MultilinearPoly.var(v)
    return poly


def glued_hilbert(
    pk: MultilinearPoly,
    pl: MultilinearPoly,
    K: Iterable,
    L: Iterable,
    star=STAR,
) -> MultilinearPoly:
    """Hilbert polynomial of a union glued along a node.

    ``pk`` lives on K + {star}, ``pl`` on L + {star}; the result on K + L
    is pk(t_K, sum_L t) + pl(t_L, sum_K t) - (1 + sum_K t)(1 + sum_L t).
    """
    K, L = frozenset(K), frozenset(L)
    if pk.variables != K | {star}:
        raise MissingVariable("left polynomial must use variables K + {star}")
    if pl.variables != L | {star}:
        raise MissingVariable("right polynomial must use variables L + {star}")
    one = MultilinearPoly.constant(1)
    left = pk.substitute_sum(star, L)
    right = pl.substitute_sum(star, K)
    correction = (one + _sum_of_vars(K)) * (one + _sum_of_vars(L))
    return (left + right - correction).with_variables(K | L)


def tree_hilbert(tree: StableTree) -> MultilinearPoly:
    """Hilbert polynomial of the union of component orbit closures of a
    stable tree, by recursion over a leaf component; the result is always
    the generic polynomial, and any split gives the same answer."""
    tree = strip_decorations(tree)
    if tree.num_vertices == 1:
        return generic_orbit_hilbert(tree.markings)
    leaf = next(v for v in range(tree.num_vertices) if tree.degree(v) == 1)
    neighbor = next(w for e in tree.edges for w, u in (e, e[::-1]) if u == leaf)
    K = tree.vertex_marks[leaf]
    L = tree.markings - K
    star = STAR
    while star in tree.markings:  # nested recursion levels need fresh stars
        star += STAR
    pk = generic_orbit_hilbert(K | {star})
    # the remaining tree, with the node replaced by a star marking
    order = [v for v in range(tree.num_vertices) if v != leaf]
    new_index = {old: new for new, old in enumerate(order)}
    vm = []
    for old in order:
        ms = tree.vertex_marks[old]
        vm.append(ms | {star} if old == neighbor else ms)
    edges = [
        (new_index[v], new_index[w])
        for v, w in tree.edges
        if leaf not in (v, w)
    ]
    rest = make_tree(vm, edges)
    return glued_hilbert(pk, tree_hilbert(rest), K, L, star=star)


def push_hilbert_along_partition(
    q: MultilinearPoly, P: SetPartition
) -> MultilinearPoly:
    """Hilbert polynomial of the image under the diagonal embedding of a
    partition: substitute, for the j-th part, t_j -> sum of the part's
    variables.  ``q`` must use the part indices 1..l as variables."""
    l = len(P.parts)
    expected = frozenset(range(1, l + 1))
    if q.variables != expected:
        raise MissingVariable(
            f"polynomial must use variables 1..{l} matching the parts"
        )
    target = sort_labels(frozenset().union(*P.parts))
    out: Dict[frozenset, int] = {}
    for subset, coeff in q.terms:
        choices = [sort_labels(P.parts[j - 1]) for j in sorted(subset)]
        for pick in itertools.product(*choices):
            key = frozenset(pick)
            out[key] = out.get(key, 0) + coeff
    return MultilinearPoly.from_map(target, out)


def degeneration_pieces(
    n: int, i: int
) -> Tuple[MultilinearPoly, MultilinearPoly, MultilinearPoly]:
    """The three polynomials of the two-component degenerate fiber.

    Returns (p', p'', p_delta): the generic closure of the first n-1
    coordinates pushed into the diagonal {t_i = t_n}, the triple-diagonal
    component, and their intersection; p' + p'' - p_delta equals the
    generic polynomial on n coordinates exactly.
    """
    if n < 4:
        raise IndexOutOfRange("degeneration needs at least four coordinates")
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"index i must satisfy 1 <= i <= {n - 1}")
    one = MultilinearPoly.constant(1)
    others = [j for j in range(1, n) if j != i]
    q = generic_orbit_hilbert(n - 1)
    p_prime = q.substitute_sum(i, {i, n})
    p_double = (
        (one + MultilinearPoly.var(i))
        * (one + MultilinearPoly.var(n))
        * (one + _sum_of_vars(others))
    )
    p_delta = (one + MultilinearPoly.var(i) + MultilinearPoly.var(n)) * (
        one + _sum_of_vars(others)
    )
    return p_prime, p_double, p_delta
