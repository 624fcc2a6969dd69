"""Interior transmission eigenvalues of the half-line and the ball."""

from ._itespec import (
    ComplexIte,
    Contrast,
    CountMode,
    CountReport,
    DimensionConfig,
    DomainError,
    NumericalError,
    PreconditionError,
    RealIte,
    RootKind,
    amplitude_entry,
    bessel_j,
    bessel_zeros,
    count_1d,
    count_nd,
    enumerate_complex_ites,
    enumerate_ites_for_nu,
    enumerate_nd,
    enumerate_real_ites_1d,
    f_1d,
    f_nu,
    hankel1,
    multiplicity_mu,
    s_matrix_entry,
    strip_bound,
    verify_ite_te_coincidence,
    weyl_coefficient,
    weyl_report,
    winding_count,
)

__version__ = "0.1.0"
