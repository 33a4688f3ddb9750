"""Exact cones, fans, toric charts and essential-dimension bounds."""

import json
from fractions import Fraction

from . import _conefort
from ._conefort import (
    DimensionMismatch,
    Error,
    HypothesisViolated,
    InvalidLevel,
    InvalidRank,
    NotPrime,
    ParseError,
    UnsupportedFamily,
    base_dimension,
    bound_table_tsv,
    ed_lower_bound,
    gl2_chart,
    siegel_u1_dimension_by_rank,
    torus_cover_ed,
    twisted_coordinate,
    u1_dimension,
)

__all__ = [
    "DimensionMismatch",
    "Error",
    "HypothesisViolated",
    "InvalidLevel",
    "InvalidRank",
    "NotPrime",
    "ParseError",
    "UnsupportedFamily",
    "base_dimension",
    "bound_table_tsv",
    "cone_dual",
    "cone_faces",
    "cone_is_smooth",
    "ed_lower_bound",
    "fan_is_valid",
    "gl2_chart",
    "quotient_invariant_factors",
    "siegel_u1_dimension_by_rank",
    "torus_cover_ed",
    "twisted_coordinate",
    "u1_dimension",
    "verify",
]


def _exact(value):
    if isinstance(value, list):
        return [_exact(v) for v in value]
    return Fraction(value)


def _cone(record):
    return {
        "ambient_rank": record["ambient_rank"],
        "twist": record["twist"],
        "dimension": record["dimension"],
        **{key: _exact(record[key]) for key in ("rays", "lineality", "halfspaces", "equations")},
    }


def cone_dual(cone):
    """Dual of a cone record such as {"ambient_rank": 2, "rays": [[1, 0], [0, 1]]}."""
    return _cone(json.loads(_conefort.cone_dual_json(json.dumps(cone))))


def cone_faces(cone):
    return [_cone(f) for f in json.loads(_conefort.cone_faces_json(json.dumps(cone)))]


def cone_is_smooth(cone):
    return _conefort.cone_is_smooth(json.dumps(cone))


def fan_is_valid(fan):
    return _conefort.fan_is_valid(json.dumps(fan))


def quotient_invariant_factors(ambient, sub):
    return [int(f) for f in _conefort.quotient_invariant_factors(ambient, sub)]


def verify(target, **options):
    """Run a built-in verifier: gl2, kuga, polydisc or fundamental. Returns report dicts."""
    runners = {
        "gl2": _conefort.verify_gl2,
        "kuga": _conefort.verify_kuga,
        "polydisc": _conefort.verify_polydisc,
    }
    if target == "fundamental":
        return [json.loads(r) for r in _conefort.verify_fundamental(**options)]
    if target not in runners:
        raise ValueError(f"unknown verifier {target!r}")
    return json.loads(runners[target](**options))
