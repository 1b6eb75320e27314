"""Half-order time calculus, fractional seminorms and p-parabolic solvers."""

from ._core import (
    DecayViolation,
    FluxAuditFailure,
    HalfwaveError,
    InvalidArgument,
    NonConvergence,
    audit_flux,
    gagliardo_seminorm_sq,
    gl_derivative,
    half_derivative_energy,
    hardy_term,
    hilbert_transform,
    run_suite,
    solve,
    spectral_derivative,
    suite_names,
    version,
)

__version__ = version()
