"""Exact densities of primes at which a subgroup of Q(zeta_w)^x reduces to
a group of order prime to ell, plus an empirical prime-ideal sweep."""

import json
from fractions import Fraction

from ._rdens import (
    DependenceError,
    DomainError,
    Element,
    Field,
    ParseError,
    RdensError,
    ResourceError,
    UnsupportedError,
    kummer_degree,
    lth_root,
    power_depth,
)
from . import _rdens

__all__ = [
    "DependenceError", "DomainError", "Element", "Field", "ParseError", "RdensError",
    "ResourceError", "UnsupportedError", "bracket", "density", "estimate",
    "extract_parameters", "kummer_degree", "lth_root", "power_depth",
]

_FRACTION_KEYS = {"density", "density_k4", "lower", "upper", "width", "observed", "exact"}


def _fractions(obj):
    if isinstance(obj, dict):
        return {k: Fraction(v) if k in _FRACTION_KEYS and isinstance(v, str) else _fractions(v)
                for k, v in obj.items()}
    if isinstance(obj, list):
        return [_fractions(v) for v in obj]
    return obj


def _gens(gens):
    return [gens] if isinstance(gens, str) else [str(g) for g in gens]


def extract_parameters(conductor, ell, gens, **kw):
    return json.loads(_rdens.params_json(conductor, ell, _gens(gens), **kw))


def density(conductor, ell, gens, **kw):
    return _fractions(json.loads(_rdens.density_json(conductor, ell, _gens(gens), **kw)))


def bracket(conductor, ell, gens, terms, **kw):
    return _fractions(json.loads(_rdens.bracket_json(conductor, ell, _gens(gens), terms, **kw)))


def estimate(conductor, ell, gens, bound, **kw):
    return _fractions(json.loads(_rdens.estimate_json(conductor, ell, _gens(gens), bound, **kw)))
