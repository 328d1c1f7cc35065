"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator


class FormSpec(BaseModel):
    """A form: either coefficients, or roots plus a leading coefficient."""

    coeffs: Optional[list[float]] = None
    roots: Optional[list[tuple[float, float]]] = None
    leading: Optional[float] = None

    @model_validator(mode="after")
    def _one_encoding(self):
        if (self.coeffs is None) == (self.roots is None):
            raise ValueError('give exactly one of "coeffs" or "roots"')
        return self

    def to_payload(self):
        if self.coeffs is not None:
            return {"coeffs": self.coeffs}
        return {"roots": [list(p) for p in self.roots],
                "leading": 1.0 if self.leading is None else self.leading}


class CovariantRequest(BaseModel):
    form: FormSpec
    tol: float = Field(default=1e-11, gt=0)
    max_iter: int = Field(default=100, ge=1, le=10_000)


class PointOut(BaseModel):
    t: float
    u: float


class CovariantResponse(BaseModel):
    point: PointOut
    residual_mass: float
    residual_balance: list[float]
    tangent_norm: float


class ReduceRequest(BaseModel):
    form: FormSpec
    eps: Optional[float] = Field(default=None, gt=0)
    max_steps: int = Field(default=64, ge=1, le=4096)
    classic: bool = False
    tol: float = Field(default=1e-11, gt=0)


class ReduceResponse(BaseModel):
    form: dict[str, Any]
    matrix: dict[str, int]
    trace: dict[str, Any]
    final_z: PointOut


class ClassifyRequest(BaseModel):
    form: FormSpec
    eps: Optional[float] = Field(default=None, gt=0)


class ClassifyResponse(BaseModel):
    label: str
    fires: bool
    quantities: dict[str, Any]
    point: PointOut
    eps: float
    required_growth: Optional[float] = None
    needs_u_check: bool = False
    center: Optional[list[float]] = None
    disk: Optional[dict[str, Any]] = None
    split: Optional[dict[str, Any]] = None


class BoundsRequest(BaseModel):
    form: FormSpec
    eps: Optional[float] = Field(default=None, gt=0)


class BoundsResponse(BaseModel):
    label: Optional[str]
    eps: float
    reports: list[dict[str, Any]]
    all_hold: bool


class SelftestRequest(BaseModel):
    count: int = Field(default=1000, ge=1, le=100_000)
    seed: int = 42


class SelftestResponse(BaseModel):
    count: int
    seed: int
    ok: bool
    violations: list[dict[str, Any]]
    violation_names: list[str]
    label_counts: dict[str, int]
    reports_evaluated: int
    solver_failures: int
    elapsed_seconds: float
