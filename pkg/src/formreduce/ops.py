"""Operation handlers shared by the CLI and the HTTP service.

Each handler takes already-parsed domain objects plus scalar options and
returns a JSON-ready dict.
"""

from __future__ import annotations

import math

from .bounds import thresholds
from .covariant import covariant_point, residuals, tangent_sum
from .reduction import classic_reduce, classify, cluster_reduce
from .serialization import (
    classification_to_dict,
    form_to_dict,
    matrix_to_dict,
    point_to_dict,
    trace_to_dict,
)
from .sweep import evaluate_instance, run_selftest


def default_eps(degree):
    return thresholds(degree).minimum()


def run_covariant(form, tol=1e-11, max_iter=100):
    z = covariant_point(form.roots, tol=tol, max_newton=max_iter)
    r_mass, r_bal = residuals(form.roots, z.t, z.u)
    tangent = tangent_sum(form.roots, z)
    return {
        "point": point_to_dict(z),
        "residual_mass": r_mass,
        "residual_balance": [r_bal.real, r_bal.imag],
        "tangent_norm": float(math.hypot(*tangent)),
    }


def run_reduce(form, eps=None, max_steps=64, classic=False, tol=1e-11):
    if classic:
        reduced, trace = classic_reduce(form, max_steps=max_steps, tol=tol)
    else:
        reduced, trace = cluster_reduce(
            form, eps=eps, max_steps=max_steps, tol=tol
        )
    return {
        "form": form_to_dict(reduced),
        "matrix": matrix_to_dict(trace.total),
        "trace": trace_to_dict(trace),
        "final_z": point_to_dict(trace.final_z),
    }


def run_classify(form, eps=None):
    if eps is None:
        eps = default_eps(form.degree)
    z = covariant_point(form.roots)
    cls = classify(form, z, eps)
    out = classification_to_dict(cls)
    out["point"] = point_to_dict(z)
    out["eps"] = eps
    return out


def run_bounds(form, eps=None):
    if eps is None:
        eps = default_eps(form.degree)
    label, reports = evaluate_instance(form.roots, eps)
    return {
        "label": label.value,
        "eps": eps,
        "reports": [r.to_dict() for r in reports],
        "all_hold": all(r.holds for r in reports),
    }


def run_sweep(count, seed):
    return run_selftest(count, seed).to_dict()
