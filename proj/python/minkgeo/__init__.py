"""Gauges, weak Minkowski norms, and projective metrics on convex bodies.

Thin convenience layer over the compiled module: report-producing calls
return parsed dictionaries instead of JSON strings.
"""

import json as _json

from _minkgeo import (  # noqa: F401
    Body,
    GeometryError,
    dist,
    euclidean_sandwich,
    funk,
    hilbert,
    render_svg,
    simplex_hilbert,
    simplex_to_minkowski,
    variation_norm_value,
)
import _minkgeo as _raw

__all__ = [
    "Body",
    "GeometryError",
    "check",
    "check_pathological",
    "classify",
    "dist",
    "euclidean_sandwich",
    "funk",
    "hilbert",
    "is_euclidean",
    "mvee",
    "render_svg",
    "simplex_hilbert",
    "simplex_to_minkowski",
    "tensor",
    "variation_norm_value",
]


def classify(body, **kwargs):
    return _json.loads(_raw.classify(body, **kwargs))


def check(body, **kwargs):
    passed, report = _raw.check(body, **kwargs)
    return passed, _json.loads(report)


def check_pathological(name, **kwargs):
    passed, report = _raw.check_pathological(name, **kwargs)
    return passed, _json.loads(report)


def tensor(body, at, step=0.0):
    return _json.loads(_raw.tensor(body, at, step))


def mvee(points, eps=1e-7):
    return _json.loads(_raw.mvee(points, eps))


def is_euclidean(body, **kwargs):
    return _json.loads(_raw.is_euclidean(body, **kwargs))
