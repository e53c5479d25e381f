"""JSON encodings of trees, polynomials, forms, and classes.

These are the wire formats of the service and the CLI; every encoder has
a decoder and round-trips exactly.  Positions are encoded as "a/b" point
literals ("inf" for the point at infinity); bare combinatorial trees
carry null positions.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Union

from .chow import ChowClass, chow_class
from .errors import ParseError
from .labels import parse_label, sort_labels
from .multilinear import MultilinearPoly
from .operads import Signature
from .configurations import SectionForm, SetPartition
from .projline import ProjPoint
from .trees import (
    DecoratedStableTree,
    StableTree,
    make_decorated,
    make_tree,
    strip_decorations,
)

Tree = Union[StableTree, DecoratedStableTree]


def _encode_pos(p: Optional[ProjPoint]) -> Optional[str]:
    return None if p is None else str(p)


def tree_to_json(tree: Tree) -> Dict:
    base = strip_decorations(tree)
    decorated = isinstance(tree, DecoratedStableTree)
    vertices = []
    for v, ms in enumerate(base.vertex_marks):
        marks = {
            str(m): _encode_pos(tree.mark_pos[m] if decorated else None)
            for m in sort_labels(ms)
        }
        vertices.append({"id": v, "marks": marks})
    edges = []
    for v, w in base.edges:
        pv, pw = tree.edge_pos[(v, w)] if decorated else (None, None)
        edges.append(
            {"v": v, "w": w, "pos_v": _encode_pos(pv), "pos_w": _encode_pos(pw)}
        )
    return {
        "markings": sort_labels(base.markings),
        "vertices": vertices,
        "edges": edges,
    }


def tree_from_json(data: Dict) -> Tree:
    try:
        vertices = data["vertices"]
        edges = data.get("edges", [])
    except (TypeError, KeyError) as exc:
        raise ParseError("tree JSON needs 'vertices' and 'edges'") from exc
    ids = [v["id"] for v in vertices]
    if sorted(ids) != list(range(len(ids))):
        raise ParseError("vertex ids must be 0..k-1")
    index = {v["id"]: v for v in vertices}

    position_values: List[Optional[str]] = []
    for v in vertices:
        position_values.extend(v.get("marks", {}).values())
    for e in edges:
        position_values.extend([e.get("pos_v"), e.get("pos_w")])
    has_positions = [p is not None for p in position_values]
    if any(has_positions) and not all(has_positions):
        raise ParseError("positions must be given everywhere or nowhere")
    decorated = bool(position_values) and all(has_positions)

    if not decorated:
        vm = [
            frozenset(parse_label(m) for m in index[i].get("marks", {}))
            for i in range(len(ids))
        ]
        return make_tree(vm, [(e["v"], e["w"]) for e in edges])
    vm_maps = []
    for i in range(len(ids)):
        vm_maps.append(
            {
                parse_label(m): ProjPoint.from_string(pos)
                for m, pos in index[i].get("marks", {}).items()
            }
        )
    edge_data = [
        (
            e["v"],
            e["w"],
            ProjPoint.from_string(e["pos_v"]),
            ProjPoint.from_string(e["pos_w"]),
        )
        for e in edges
    ]
    return make_decorated(vm_maps, edge_data)


def poly_to_json(p: MultilinearPoly) -> Dict:
    return {
        "vars": sort_labels(p.variables),
        "terms": [
            {"subset": sort_labels(s), "coeff": c} for s, c in p.terms
        ],
    }


def poly_from_json(data: Dict) -> MultilinearPoly:
    try:
        variables = data["vars"]
        terms = {
            frozenset(t["subset"]): t["coeff"] for t in data.get("terms", [])
        }
    except (TypeError, KeyError) as exc:
        raise ParseError("polynomial JSON needs 'vars' and 'terms'") from exc
    return MultilinearPoly.from_map(variables, terms)


def form_to_json(f: SectionForm) -> Dict:
    return {"coeffs": {str(mask): c for mask, c in f.coeff_map().items()}}


def form_from_json(data: Dict) -> SectionForm:
    coeffs = [0] * 16
    try:
        for mask, c in data["coeffs"].items():
            coeffs[int(mask)] = c
    except (TypeError, KeyError, ValueError, IndexError) as exc:
        raise ParseError("form JSON needs 'coeffs' keyed by bitmask 0..15") from exc
    return SectionForm(tuple(coeffs))


def chow_to_json(c: ChowClass) -> Dict:
    return {
        "labels": sort_labels(c.labels),
        "grade": c.grade,
        "terms": [
            {"subset": sort_labels(s), "coeff": coeff} for s, coeff in c.terms
        ],
    }


def chow_from_json(data: Dict) -> ChowClass:
    try:
        return chow_class(
            data["labels"],
            {frozenset(t["subset"]): t["coeff"] for t in data.get("terms", [])},
        )
    except (TypeError, KeyError) as exc:
        raise ParseError("class JSON needs 'labels' and 'terms'") from exc


def partition_to_json(P: SetPartition) -> List[List]:
    return [sort_labels(part) for part in P.parts]


def signature_to_json(s: Signature) -> Dict[str, str]:
    return {
        ",".join(str(m) for m in sort_labels(subset)): str(value)
        for subset, value in s.values
    }
