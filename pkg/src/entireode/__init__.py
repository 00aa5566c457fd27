"""Decide, exactly, whether a system dz_i/dt = z_i * p_i(z) of Laurent-polynomial
ODEs has only entire solutions, emitting a machine-checkable normal-form
certificate or a concrete witness of failure, with numeric cross-validation.
"""

__version__ = "0.1.0"

from .rationals import GaussianRational
from .laurent import (
    LaurentPoly,
    OdeSystem,
    ParseError,
    ZeroAtNegativeExponentError,
    format_laurent,
    log_divergence,
    parse_laurent,
    rewrite_in_basis,
    substitute_monomials,
    support,
)
from .lattice import (
    HnfBasis,
    IntMatrix,
    NoSolutionError,
    NotInLatticeError,
    complete_to_rank,
    coordinates,
    hnf,
    kernel_rational,
    matrix_chain_product,
    solve_preimage,
)
from .reduction import (
    Entire,
    FullRank,
    NotEntire,
    ReductionStep,
    Verdict,
    Witness,
    decide,
    decision_trace,
    reduce_step,
)
from .certificate import (
    Certificate,
    ProportionalityError,
    VerifyReport,
    build,
    expand,
    is_volume_preserving,
    monomial_level_exponents,
    random_certificate,
    verify,
)
from .numeric import (
    Blowup,
    Completed,
    DiscScanResult,
    NearZero,
    RaySpec,
    UnitCheckReport,
    disc_scan,
    estimate_m,
    integrate_ray,
    unit_check,
)
from .cli import format_system, parse_system

__all__ = [
    "GaussianRational",
    "LaurentPoly",
    "OdeSystem",
    "ParseError",
    "ZeroAtNegativeExponentError",
    "format_laurent",
    "log_divergence",
    "parse_laurent",
    "rewrite_in_basis",
    "substitute_monomials",
    "support",
    "HnfBasis",
    "IntMatrix",
    "NoSolutionError",
    "NotInLatticeError",
    "complete_to_rank",
    "coordinates",
    "hnf",
    "kernel_rational",
    "matrix_chain_product",
    "solve_preimage",
    "Entire",
    "FullRank",
    "NotEntire",
    "ReductionStep",
    "Verdict",
    "Witness",
    "decide",
    "decision_trace",
    "reduce_step",
    "Certificate",
    "ProportionalityError",
    "VerifyReport",
    "build",
    "expand",
    "is_volume_preserving",
    "monomial_level_exponents",
    "random_certificate",
    "verify",
    "Blowup",
    "Completed",
    "DiscScanResult",
    "NearZero",
    "RaySpec",
    "UnitCheckReport",
    "disc_scan",
    "estimate_m",
    "integrate_ray",
    "unit_check",
    "format_system",
    "parse_system",
    "__version__",
]
