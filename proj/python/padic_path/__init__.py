"""Exact p-adic arithmetic, measures and path-integral propagators."""

import json

from ._core import (
    ConvergenceError,
    DomainError,
    PadicError,
    PadicNumber,
    PrecisionError,
    agree,
    char_a,
    character_phase,
    complete_square_step,
    exp_p,
    fractional_part,
    haar_unboundedness_witness,
    line_integral,
)
from . import _core

__all__ = [
    "ConvergenceError",
    "DomainError",
    "PadicError",
    "PadicNumber",
    "PrecisionError",
    "agree",
    "char_a",
    "character_phase",
    "complete_square_step",
    "exp_p",
    "fractional_part",
    "haar_unboundedness_witness",
    "integrate",
    "line_integral",
    "propagator",
]


def integrate(f, measure, prime, precision=20, level=6, target=None):
    """Riemann (bounded measures) or Volkenborn (haar) integral of a polynomial.

    ``measure`` is "dirac:D", "mu-1" or "haar".  Returns the report as a dict.
    """
    if target is None:
        target = max(1, level - 2)
    return json.loads(_core.integrate_json(f, measure, prime, precision, level, target))


def propagator(request):
    """Evaluate a propagator request dict; see the README for its keys."""
    return json.loads(_core.propagator_json(json.dumps(request)))
