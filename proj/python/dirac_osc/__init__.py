"""Dirac oscillator on truncated Fock spaces.

Reports come back from the C++ core as JSON and are returned here as plain dicts.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    Registry,
    algebra_names,
    analytic_spectrum_1d,
    default_n_max,
    dirac_representation,
    spin_matrices,
    theorem_energy,
)

__all__ = [
    "ConfigError",
    "Registry",
    "algebra_names",
    "analytic_spectrum_1d",
    "default_n_max",
    "dirac_representation",
    "fock_basis",
    "jacobi",
    "parastat_audit",
    "residual",
    "spec",
    "spectrum_report",
    "spin_matrices",
    "theorem_energy",
    "verify_algebra",
    "verify_spec",
]


def residual(registry, lhs, rhs, min_depth=0):
    return json.loads(_core.residual(registry, lhs, rhs, min_depth))


def spec(name):
    return json.loads(_core.spec_json(name))


def verify_algebra(registry, name, printed=False, tol=1e-10):
    return json.loads(_core.verify_algebra(registry, name, printed, tol))


def verify_spec(registry, spec_doc, tol=1e-10):
    if not isinstance(spec_doc, str):
        spec_doc = json.dumps(spec_doc)
    return json.loads(_core.verify_spec_json(registry, spec_doc, tol))


def jacobi(registry, name, tol=1e-10):
    return json.loads(_core.jacobi(registry, name, tol))


def parastat_audit(registry, dim, tol=1e-10):
    return json.loads(_core.parastat_audit(registry, dim, tol))


def spectrum_report(dim, mass=1.0, omega=1.0, n_max=-1, tol=1e-8, edge_tol=1e-8):
    return json.loads(_core.spectrum_report(dim, mass, omega, n_max, tol, edge_tol))


def fock_basis(registry, n_build, seed=20240601):
    return json.loads(_core.fock_basis(registry, n_build, seed))
