"""Bitangents of a genus-3 plane quartic from its period matrix, via Weber's formula."""

import json as _json

from . import _core

from ._core import (
    Characteristic,
    InputError,
    SingularSystemError,
    SpecialLocusError,
    TruncationError,
    all_characteristics,
    aronhold_systems,
    grad_theta0,
    is_aronhold,
    random_tau,
    special_locus_scan,
    theta,
    theta_const,
    validate_tau,
)


def bitangents(tau, system_index=None, eps=(1, 1, 1), tol=1e-6):
    """Run the full pipeline and return the report as a dict.

    Keys: aronhold, eps, a, bitangents, quartic, xi, k, lambda, verify.
    Complex numbers are {"re": x, "im": y}.
    """
    return _json.loads(_core._bitangents_json(tau, system_index, list(eps), tol))



__all__ = [
    "Characteristic",
    "InputError",
    "SingularSystemError",
    "SpecialLocusError",
    "TruncationError",
    "all_characteristics",
    "aronhold_systems",
    "bitangents",
    "grad_theta0",
    "is_aronhold",
    "random_tau",
    "special_locus_scan",
    "theta",
    "theta_const",
    "validate_tau",
]
