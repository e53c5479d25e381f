"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

Label = Union[int, str]


class TreeVertexModel(BaseModel):
    id: int
    marks: Dict[str, Optional[str]] = Field(default_factory=dict)


class TreeEdgeModel(BaseModel):
    v: int
    w: int
    pos_v: Optional[str] = None
    pos_w: Optional[str] = None


class TreeModel(BaseModel):
    markings: List[Label] = Field(default_factory=list)
    vertices: List[TreeVertexModel]
    edges: List[TreeEdgeModel] = Field(default_factory=list)


class PointsRequest(BaseModel):
    points: List[str]


class ValueResponse(BaseModel):
    value: str


class TypeResponse(BaseModel):
    parts: List[List[int]]


class FormResponse(BaseModel):
    coeffs: Dict[str, int]


class StabilizeRequest(BaseModel):
    tree: TreeModel
    keep: List[Label]


class GlueRequest(BaseModel):
    tree_k: TreeModel
    tree_l: TreeModel
    star_k: Label = "*"
    star_l: Label = "*"


class TreeResponse(BaseModel):
    tree: TreeModel


class EnumerateRequest(BaseModel):
    n: int


class EnumerateResponse(BaseModel):
    n: int
    count: int
    trees: List[TreeModel]


class PolyTermModel(BaseModel):
    subset: List[Label]
    coeff: int


class PolyModel(BaseModel):
    vars: List[Label]
    terms: List[PolyTermModel]


class HilbertRequest(BaseModel):
    tree: TreeModel
    eval: Optional[List[int]] = None


class HilbertResponse(BaseModel):
    poly: PolyModel
    value: Optional[int] = None


class ChowRequest(BaseModel):
    type: Optional[str] = None
    tree: Optional[TreeModel] = None


class ChowTermModel(BaseModel):
    subset: List[Label]
    coeff: int


class ChowResponse(BaseModel):
    labels: List[Label]
    grade: Optional[int]
    terms: List[ChowTermModel]


class SignatureRequest(BaseModel):
    tree: TreeModel


class SignatureResponse(BaseModel):
    values: Dict[str, str]


class VerifyRequest(BaseModel):
    n: Optional[int] = None
    seed: int = 0
    prime: Optional[int] = None
    max_n: Optional[int] = None
    samples: Optional[int] = None


class ErrorResponse(BaseModel):
    error: str
    detail: str
