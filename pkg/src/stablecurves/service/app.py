"""HTTP front door: every computation and verification suite as an endpoint.

All endpoints are stateless and deterministic for fixed inputs and seeds;
domain errors map to 400 with the error-class name as the machine code.
Run with: uvicorn stablecurves.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..chow import orbit_class_of_type, tree_cycle_class
from ..configurations import SetPartition, cross_ratio, orbit_form, type_of
from ..errors import DomainError, OutOfRange, ParseError
from ..hilbert import tree_hilbert
from ..labels import sort_labels
from ..operads import signature_of
from ..oracles import DEFAULT_PRIME
from ..projline import ProjPoint
from ..serialization import (
    chow_to_json,
    form_to_json,
    partition_to_json,
    poly_to_json,
    signature_to_json,
    tree_from_json,
    tree_to_json,
)
from ..trees import DecoratedStableTree, enumerate_stable_trees, glue, stabilize
from ..verify import SUITES
from . import schemas

app = FastAPI(
    title="stablecurves",
    description=(
        "Exact invariants of stable rational curves and orbit closures in a "
        "product of projective lines."
    ),
)


@app.exception_handler(DomainError)
async def domain_error_handler(request: Request, exc: DomainError):
    return JSONResponse(status_code=400, content={"error": exc.code, "detail": str(exc)})


def _points(req: schemas.PointsRequest):
    return tuple(ProjPoint.from_string(s) for s in req.points)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/type-of", response_model=schemas.TypeResponse)
def type_of_endpoint(req: schemas.PointsRequest):
    return {"parts": partition_to_json(type_of(_points(req)))}


@app.post("/cross-ratio", response_model=schemas.ValueResponse)
def cross_ratio_endpoint(req: schemas.PointsRequest):
    return {"value": str(cross_ratio(_points(req)))}


@app.post("/orbit-form", response_model=schemas.FormResponse)
def orbit_form_endpoint(req: schemas.PointsRequest):
    return form_to_json(orbit_form(_points(req)))


@app.post("/stabilize", response_model=schemas.TreeResponse)
def stabilize_endpoint(req: schemas.StabilizeRequest):
    tree = tree_from_json(req.tree.model_dump())
    return {"tree": tree_to_json(stabilize(tree, req.keep))}


@app.post("/glue", response_model=schemas.TreeResponse)
def glue_endpoint(req: schemas.GlueRequest):
    tk = tree_from_json(req.tree_k.model_dump())
    tl = tree_from_json(req.tree_l.model_dump())
    return {"tree": tree_to_json(glue(tk, tl, req.star_k, req.star_l))}


@app.post("/enumerate-trees", response_model=schemas.EnumerateResponse)
def enumerate_endpoint(req: schemas.EnumerateRequest):
    trees = enumerate_stable_trees(req.n)
    return {
        "n": req.n,
        "count": len(trees),
        "trees": [tree_to_json(t) for t in trees],
    }


@app.post("/hilbert-poly", response_model=schemas.HilbertResponse)
def hilbert_endpoint(req: schemas.HilbertRequest):
    tree = tree_from_json(req.tree.model_dump())
    poly = tree_hilbert(tree)
    payload = {"poly": poly_to_json(poly), "value": None}
    if req.eval is not None:
        labels = sort_labels(poly.variables)
        if len(req.eval) != len(labels):
            raise ParseError(
                f"evaluation needs {len(labels)} integers, got {len(req.eval)}"
            )
        payload["value"] = poly.evaluate(dict(zip(labels, req.eval)))
    return payload


@app.post("/chow-class", response_model=schemas.ChowResponse)
def chow_endpoint(req: schemas.ChowRequest):
    if (req.type is None) == (req.tree is None):
        raise ParseError("provide exactly one of 'type' or 'tree'")
    if req.type is not None:
        cls = orbit_class_of_type(SetPartition.from_string(req.type))
    else:
        cls = tree_cycle_class(tree_from_json(req.tree.model_dump()))
    return chow_to_json(cls)


@app.post("/signature", response_model=schemas.SignatureResponse)
def signature_endpoint(req: schemas.SignatureRequest):
    tree = tree_from_json(req.tree.model_dump())
    if not isinstance(tree, DecoratedStableTree):
        raise ParseError("signatures need a decorated tree (positions everywhere)")
    return {"values": signature_to_json(signature_of(tree))}


@app.post("/verify/{suite}")
def verify_endpoint(suite: str, req: schemas.VerifyRequest):
    if suite not in SUITES:
        raise OutOfRange(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    kwargs = {"seed": req.seed}
    if suite == "hilbert":
        kwargs["n"] = req.n or 4
        kwargs["prime"] = req.prime or DEFAULT_PRIME
    elif suite == "chow":
        kwargs["n"] = req.n or 5
    elif suite in ("degeneration", "boundary"):
        kwargs["n"] = req.n or 5
        if req.samples:
            kwargs["samples"] = req.samples
    elif suite == "operads":
        kwargs["max_n"] = req.max_n or 6
    return SUITES[suite](**kwargs)
