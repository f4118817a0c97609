"""HTTP session service for the interactive explorer.

One mutation session per process: load a band or grid seed, mutate
vertices, undo, and read the exchange log.  All algebra stays server-side;
clients only render the JSON they are given.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, model_validator

from .gridseeds import IncomparableExchangeError, TrackedSeed, initial_seed, mutate_tracked
from .heights import HeightFunction
from .quiver import FrozenVertexError
from .verify import band_seed

app = FastAPI(title="hlcluster explorer backend")


class LoadRequest(BaseModel):
    xi: Optional[list[int]] = None
    n: Optional[int] = None
    ell: Optional[int] = None
    r: int = 1

    @model_validator(mode="after")
    def _one_of(self):
        if (self.xi is None) == (self.n is None or self.ell is None):
            raise ValueError("provide either xi (band seed) or n and ell (grid seed)")
        return self


class MutateRequest(BaseModel):
    vertex: str


class SeedResponse(BaseModel):
    kind: str
    quiver: dict
    labels: dict[str, list[list[int]]]
    steps: int


class RecordResponse(BaseModel):
    vertex: str
    old: list[list[int]]
    p_in: list[list[int]]
    p_out: list[list[int]]
    chosen: str
    new: list[list[int]]


class Session:
    def __init__(self):
        self.kind: Optional[str] = None
        self.stack: list[TrackedSeed] = []

    @property
    def seed(self) -> TrackedSeed:
        if not self.stack:
            raise HTTPException(status_code=409, detail="no seed loaded")
        return self.stack[-1]

    def load(self, req: LoadRequest) -> None:
        if req.xi is not None:
            seed = band_seed(HeightFunction(tuple(req.xi)), req.r)
            self.kind = "band"
        else:
            seed = initial_seed(req.n, req.ell)
            self.kind = "grid"
        self.stack = [seed]


session = Session()


def _seed_response() -> SeedResponse:
    seed = session.seed
    return SeedResponse(
        kind=session.kind,
        quiver=seed.quiver.to_json(),
        labels={v: m.to_json() for v, m in sorted(seed.labels.items())},
        steps=len(session.stack) - 1,
    )


@app.post("/load", response_model=SeedResponse)
def load(req: LoadRequest):
    try:
        session.load(req)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return _seed_response()


@app.get("/seed", response_model=SeedResponse)
def get_seed():
    return _seed_response()


@app.post("/mutate", response_model=SeedResponse)
def mutate(req: MutateRequest):
    seed = session.seed
    if not seed.quiver.has_vertex(req.vertex):
        raise HTTPException(status_code=404, detail=f"no vertex {req.vertex!r}")
    try:
        new_seed, _ = mutate_tracked(seed, req.vertex)
    except FrozenVertexError as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    except IncomparableExchangeError as exc:
        raise HTTPException(
            status_code=409,
            detail={"error": "incomparable exchange", "record": exc.record.to_json()},
        )
    session.stack.append(new_seed)
    return _seed_response()


@app.post("/undo", response_model=SeedResponse)
def undo():
    if len(session.stack) <= 1:
        raise HTTPException(status_code=409, detail="nothing to undo")
    session.stack.pop()
    return _seed_response()


@app.get("/log", response_model=list[RecordResponse])
def get_log():
    return [RecordResponse(**rec.to_json()) for rec in session.seed.log]
