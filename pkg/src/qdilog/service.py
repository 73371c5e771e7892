"""Stateless JSON-over-HTTP facade for the mutation explorer.

Every request carries the full framed quiver and sequence history, so
identical requests yield identical responses and the server holds no
session state. Malformed bodies get HTTP 400; domain errors (frozen
vertex, guard or depth limits, sign-coherence violations) get HTTP 422
with a machine-readable error code.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import service_depth_cap
from .errors import (
    FrozenVertexError,
    GuardError,
    QdilogError,
    SignCoherenceError,
    TruncationError,
    TwoCycleError,
)
from .quiver import (
    FramedQuiver,
    c_vector,
    frame,
    frozen_iso,
    green_search,
    is_all_red,
    mutate,
    quiver_from_json,
    replay,
    tropical_E,
    vertex_colors,
)

app = FastAPI(title="qdilog service")

app.add_middleware(
    CORSMiddleware,
    allow_origin_regex=r"http://(localhost|127\.0\.0\.1)(:\d+)?",
    allow_methods=["*"],
    allow_headers=["*"],
)


class QuiverModel(BaseModel):
    n: int
    arrows: list[list[int]] = []


class FramedModel(BaseModel):
    n: int
    b: list[list[int]]


class FrameRequest(BaseModel):
    quiver: QuiverModel


class MutateRequest(BaseModel):
    framed: FramedModel
    k: int  # 1-based mutable vertex


class MutateResponse(BaseModel):
    framed: FramedModel
    beta: list[int]
    eps: int
    colors: list[str]
    maximal: bool


class SeriesTermModel(BaseModel):
    exp: list[int]
    coeff: str


class SeriesModel(BaseModel):
    offset: list[int]
    D: int
    terms: list[SeriesTermModel]


class EvalRequest(BaseModel):
    quiver: QuiverModel
    seq: list[int]  # 1-based vertices
    D: int = 6


class CompareRequest(BaseModel):
    quiver: QuiverModel
    seq1: list[int]
    seq2: list[int]
    D: int = 6


class FirstDiffModel(BaseModel):
    monomial: list[int]
    left: str
    right: str


class CompareResponse(BaseModel):
    frozen_iso: bool
    equal_series: bool
    first_diff: FirstDiffModel | None = None


class StepModel(BaseModel):
    beta: list[int]
    eps: int


class GreenSeqModel(BaseModel):
    seq: list[int]
    steps: list[StepModel]


class SearchRequest(BaseModel):
    framed: FramedModel
    max_len: int
    maximal_only: bool = False


class SearchResponse(BaseModel):
    sequences: list[GreenSeqModel]


class DomainError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


@app.exception_handler(RequestValidationError)
async def malformed(request: Request, exc: RequestValidationError):
    return JSONResponse(status_code=400, content={"code": "malformed", "message": str(exc)})


@app.exception_handler(DomainError)
async def domain_error(request: Request, exc: DomainError):
    return JSONResponse(
        status_code=422, content={"code": exc.code, "message": exc.message}
    )


_ERROR_CODES = [
    (FrozenVertexError, "frozen_vertex"),
    (TwoCycleError, "two_cycle"),
    (SignCoherenceError, "sign_coherence"),
    (GuardError, "guard_exceeded"),
    (TruncationError, "depth_cap"),
]


def _domain(exc: Exception) -> DomainError:
    for etype, code in _ERROR_CODES:
        if isinstance(exc, etype):
            return DomainError(code, str(exc))
    if isinstance(exc, (QdilogError, ValueError)):
        return DomainError("bad_input", str(exc))
    raise exc


def _check_depth(d: int):
    cap = service_depth_cap()
    if d < 0 or d > cap:
        raise DomainError("depth_cap", f"truncation depth must be in 0..{cap}")


def _quiver_of(model: QuiverModel):
    try:
        return quiver_from_json(model.model_dump())
    except Exception as exc:  # noqa: BLE001 - mapped to a structured error
        raise _domain(exc)


def _framed_of(model: FramedModel) -> FramedQuiver:
    try:
        return FramedQuiver.from_json(model.model_dump())
    except Exception as exc:  # noqa: BLE001
        raise _domain(exc)


@app.post("/frame", response_model=FramedModel)
def frame_endpoint(req: FrameRequest):
    return frame(_quiver_of(req.quiver)).to_json()


@app.post("/mutate", response_model=MutateResponse)
def mutate_endpoint(req: MutateRequest):
    f = _framed_of(req.framed)
    try:
        new = mutate(f, req.k - 1)  # rejects frozen vertices first
        beta, eps = c_vector(f, req.k - 1)
    except Exception as exc:  # noqa: BLE001
        raise _domain(exc)
    return MutateResponse(
        framed=FramedModel(**new.to_json()),
        beta=list(beta),
        eps=eps,
        colors=vertex_colors(new),
        maximal=is_all_red(new),
    )


@app.post("/eval", response_model=SeriesModel)
def eval_endpoint(req: EvalRequest):
    _check_depth(req.D)
    q = _quiver_of(req.quiver)
    try:
        series = tropical_E([k - 1 for k in req.seq], frame(q), req.D)
    except Exception as exc:  # noqa: BLE001
        raise _domain(exc)
    return series.to_json()


@app.post("/compare", response_model=CompareResponse)
def compare_endpoint(req: CompareRequest):
    _check_depth(req.D)
    q = _quiver_of(req.quiver)
    f0 = frame(q)
    try:
        end1 = replay(f0, [k - 1 for k in req.seq1]).final
        end2 = replay(f0, [k - 1 for k in req.seq2]).final
        iso = frozen_iso(end1, end2)
        s1 = tropical_E([k - 1 for k in req.seq1], f0, req.D)
        s2 = tropical_E([k - 1 for k in req.seq2], f0, req.D)
        diff = s1.first_difference(s2)
    except Exception as exc:  # noqa: BLE001
        raise _domain(exc)
    from .coeffs import qrat_to_text

    return CompareResponse(
        frozen_iso=iso is not None,
        equal_series=diff is None,
        first_diff=None
        if diff is None
        else FirstDiffModel(
            monomial=list(diff[0]),
            left=qrat_to_text(diff[1]),
            right=qrat_to_text(diff[2]),
        ),
    )


@app.post("/search", response_model=SearchResponse)
def search_endpoint(req: SearchRequest):
    f = _framed_of(req.framed)
    try:
        seqs = green_search(f, req.max_len, maximal_only=req.maximal_only)
    except Exception as exc:  # noqa: BLE001
        raise _domain(exc)
    return SearchResponse(
        sequences=[GreenSeqModel(**gs.to_json()) for gs in seqs]
    )
