"""FastAPI service wrapping the core package.

Run with:  uvicorn formreduce.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import ops
from ..errors import (
    FormReduceError,
    MalformedInput,
    NoConvergence,
    NonConvergentRoots,
)
from ..serialization import form_from_dict
from .schemas import (
    BoundsRequest,
    BoundsResponse,
    ClassifyRequest,
    ClassifyResponse,
    CovariantRequest,
    CovariantResponse,
    ReduceRequest,
    ReduceResponse,
    SelftestRequest,
    SelftestResponse,
)


def _form(spec):
    try:
        return form_from_dict(spec.to_payload())
    except MalformedInput as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except FormReduceError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app():
    app = FastAPI(
        title="formreduce",
        description="Covariant points, reduction, and bound verification "
                    "for real binary forms.",
        version="0.1.0",
    )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/covariant", response_model=CovariantResponse)
    def covariant(req: CovariantRequest):
        form = _form(req.form)
        try:
            return ops.run_covariant(form, tol=req.tol, max_iter=req.max_iter)
        except (NoConvergence, NonConvergentRoots) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except FormReduceError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/reduce", response_model=ReduceResponse)
    def reduce_form(req: ReduceRequest):
        form = _form(req.form)
        try:
            return ops.run_reduce(
                form,
                eps=req.eps,
                max_steps=req.max_steps,
                classic=req.classic,
                tol=req.tol,
            )
        except (NoConvergence, NonConvergentRoots) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except FormReduceError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/classify", response_model=ClassifyResponse)
    def classify_form(req: ClassifyRequest):
        form = _form(req.form)
        try:
            return ops.run_classify(form, eps=req.eps)
        except FormReduceError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/bounds", response_model=BoundsResponse)
    def bounds_form(req: BoundsRequest):
        form = _form(req.form)
        try:
            return ops.run_bounds(form, eps=req.eps)
        except FormReduceError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/selftest", response_model=SelftestResponse)
    def selftest(req: SelftestRequest):
        return ops.run_sweep(req.count, req.seed)

    return app


app = create_app()
