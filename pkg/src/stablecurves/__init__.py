"""Exact invariants of stable rational curves and orbit closures in (P^1)^n.

Core layers: exact projective-line arithmetic (`projline`), decorated
stable trees (`trees`), configuration types and orbit-closure forms
(`configurations`), multilinear Hilbert polynomials (`multilinear`,
`hilbert`), cycle classes (`chow`), quartet signatures and operad checks
(`operads`), brute-force oracles (`oracles`), and verification suites
(`verify`).  The FastAPI service lives in `stablecurves.service`; the CLI
(`stablecurves`) is a thin client for it.
"""

from .projline import INFINITY, ONE, ZERO, Configuration, Mobius, ProjPoint, mobius_from_triples
from .configurations import SetPartition, SectionForm, cross_ratio, orbit_form, type_of
from .multilinear import MultilinearPoly
from .trees import (
    DecoratedStableTree,
    M04Point,
    StableTree,
    enumerate_stable_trees,
    glue,
    m04_point_of,
    make_decorated,
    make_tree,
    stabilize,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "ONE",
    "ZERO",
    "Configuration",
    "Mobius",
    "ProjPoint",
    "mobius_from_triples",
    "SetPartition",
    "SectionForm",
    "cross_ratio",
    "orbit_form",
    "type_of",
    "MultilinearPoly",
    "DecoratedStableTree",
    "M04Point",
    "StableTree",
    "enumerate_stable_trees",
    "glue",
    "m04_point_of",
    "make_decorated",
    "make_tree",
    "stabilize",
    "__version__",
]
