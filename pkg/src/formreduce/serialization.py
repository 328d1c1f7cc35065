"""JSON encodings for forms, points, traces, and reports.

A form is either {"coeffs": [...]} (n+1 reals, descending powers) or
{"roots": [[re, im], ...], "leading": a0}.  Root input is checked for
conjugate closure within 1e-9 and then symmetrized to exact pairs.
"""

from __future__ import annotations

import json

from .errors import MalformedInput
from .forms import BinaryForm, from_coeffs, symmetrize_roots

_PARSE_CONJ_TOL = 1e-9


def form_to_dict(form):
    return {
        "roots": [[r.real, r.imag] for r in form.roots],
        "leading": form.leading,
    }


def form_from_dict(data):
    """Build a form from its JSON dict encoding."""
    if not isinstance(data, dict):
        raise MalformedInput(f"expected an object, got {type(data).__name__}")
    has_coeffs = "coeffs" in data
    has_roots = "roots" in data
    if has_coeffs == has_roots:
        raise MalformedInput('give exactly one of "coeffs" or "roots"')
    if has_coeffs:
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list) or not all(
            isinstance(x, (int, float)) for x in coeffs
        ):
            raise MalformedInput('"coeffs" must be a list of numbers')
        return from_coeffs(coeffs)
    roots = data["roots"]
    leading = data.get("leading", 1.0)
    if not isinstance(leading, (int, float)) or leading == 0:
        raise MalformedInput('"leading" must be a nonzero number')
    try:
        parsed = [complex(float(p[0]), float(p[1])) for p in roots]
    except (TypeError, IndexError, ValueError) as exc:
        raise MalformedInput('"roots" must be a list of [re, im] pairs') from exc
    symmetrized = symmetrize_roots(parsed, tol=_PARSE_CONJ_TOL)
    return BinaryForm(leading=float(leading), roots=symmetrized)


def parse_form(text):
    """Parse a JSON form specification string."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    return form_from_dict(data)


def point_to_dict(z):
    return {"t": z.t, "u": z.u}


def matrix_to_dict(g):
    return {"a": g.a, "b": g.b, "c": g.c, "d": g.d}


def disk_to_dict(disk):
    return {
        "center": [disk.center.real, disk.center.imag],
        "radius": disk.radius,
    }


def split_to_dict(split):
    return {
        "cluster_indices": list(split.cluster_indices),
        "disk1": disk_to_dict(split.disk1),
        "disk2": disk_to_dict(split.disk2),
        "d1": split.d1,
        "d2": split.d2,
    }


def classification_to_dict(cls):
    out = {
        "label": cls.label.value,
        "fires": cls.fires,
        "quantities": dict(cls.quantities),
        "required_growth": cls.required_growth,
        "needs_u_check": cls.needs_u_check,
    }
    if cls.center is not None:
        out["center"] = [cls.center.real, cls.center.imag]
    if cls.disk is not None:
        out["disk"] = disk_to_dict(cls.disk)
    if cls.split is not None:
        out["split"] = split_to_dict(cls.split)
    return out


def trace_to_dict(trace):
    return trace.to_dict()


def report_to_dict(report):
    return report.to_dict()


__all__ = [
    "form_to_dict",
    "form_from_dict",
    "parse_form",
    "point_to_dict",
    "matrix_to_dict",
    "disk_to_dict",
    "split_to_dict",
    "classification_to_dict",
    "trace_to_dict",
    "report_to_dict",
]
