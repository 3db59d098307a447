"""Exact truncated power and Laurent series with Lagrange inversion.

The package exposes a small core: series types with rational or
polynomial coefficients, the inversion machinery (all coefficient forms,
reversion, residues), a catalog of named identity checks, and
brute-force combinatorial oracles for the tree models behind them.
"""

from .errors import (
    BadConstantTerm,
    BadSequence,
    DegreeViolation,
    DivisionByNonUnit,
    DivisionByZeroSeries,
    FormAUndefined,
    InadmissibleComposition,
    InsufficientRange,
    InvalidCode,
    LagrangeKitError,
    NonIntegrableResidue,
    NotATree,
    NotReversible,
    OrderMismatch,
    OutOfPrecision,
    ParseError,
    SizeLimit,
    UnguardedCoefficient,
    UnknownIdentity,
)
from .identities import (
    IDENTITY_CATALOG,
    IdentityReport,
    catalan_series,
    fuss_catalan_series,
    identity_names,
    run_all,
    run_identity,
    tree_function,
    weighted_stirling,
)
from .lagrange import (
    FormValues,
    cauchy_convolution_check,
    coeff_all_forms,
    coefficient_form_a,
    constant_term_supplement,
    derivative_form,
    explicit_coefficient,
    explicit_from_inverse,
    inversion_form_sweep,
    log_f_over_x,
    raney_coefficient,
    schur_jabotinsky_check,
    schur_jabotinsky_pair,
    schur_jabotinsky_window,
    solve_indeterminate,
    solve_xR,
)
from .scalars import (
    MultiPoly,
    PolyRing,
    binomial,
    format_rational,
    int_binomial,
    multinomial,
    parse_rational,
    polynomial_from_points,
)
from .series import (
    LaurentSeries,
    PowerSeries,
    TruncationContext,
    compose,
    series_from_json,
    series_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "BadConstantTerm",
    "BadSequence",
    "DegreeViolation",
    "DivisionByNonUnit",
    "DivisionByZeroSeries",
    "FormAUndefined",
    "FormValues",
    "IDENTITY_CATALOG",
    "IdentityReport",
    "InadmissibleComposition",
    "InsufficientRange",
    "InvalidCode",
    "LagrangeKitError",
    "LaurentSeries",
    "MultiPoly",
    "NonIntegrableResidue",
    "NotATree",
    "NotReversible",
    "OrderMismatch",
    "OutOfPrecision",
    "ParseError",
    "PolyRing",
    "PowerSeries",
    "SizeLimit",
    "TruncationContext",
    "UnguardedCoefficient",
    "UnknownIdentity",
    "binomial",
    "catalan_series",
    "cauchy_convolution_check",
    "coeff_all_forms",
    "coefficient_form_a",
    "compose",
    "constant_term_supplement",
    "derivative_form",
    "explicit_coefficient",
    "explicit_from_inverse",
    "format_rational",
    "fuss_catalan_series",
    "identity_names",
    "int_binomial",
    "inversion_form_sweep",
    "log_f_over_x",
    "multinomial",
    "parse_rational",
    "polynomial_from_points",
    "raney_coefficient",
    "run_all",
    "run_identity",
    "schur_jabotinsky_check",
    "schur_jabotinsky_pair",
    "schur_jabotinsky_window",
    "series_from_json",
    "series_to_json",
    "solve_indeterminate",
    "solve_xR",
    "tree_function",
    "weighted_stirling",
]
