"""Numerical and symbolic toolkit for a modular spectral triple on 2D kappa-Minkowski space."""

from .algebra import (
    GridSpec,
    PartialFourierFunction,
    involution,
    modular_flow,
    star_product,
    unitary_U,
    weight_omega,
)
from .config import RunConfig, VerificationReport
from .hopf import HopfElement, classify_twisted_primitives, solve_dirac_uniqueness
from .operators import Spinor, dirac_apply, twisted_commutator_apply
from .real import j_real, real_structure_suite
from .suites import run_verification
from .zeta import ZetaParams, c_closed_form, c_quadrature, phi_residue

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "PartialFourierFunction",
    "star_product",
    "involution",
    "modular_flow",
    "unitary_U",
    "weight_omega",
    "HopfElement",
    "classify_twisted_primitives",
    "solve_dirac_uniqueness",
    "Spinor",
    "dirac_apply",
    "twisted_commutator_apply",
    "j_real",
    "real_structure_suite",
    "ZetaParams",
    "c_closed_form",
    "c_quadrature",
    "phi_residue",
    "RunConfig",
    "VerificationReport",
    "run_verification",
]
