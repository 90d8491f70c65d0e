"""Discrete fractional operators, Muckenhoupt weight scans and an
inequality verification harness on the integer lattice."""

from .covering import CenteredFamily, Selection, overlap_profile, select_cover
from .families import InputFamily
from .functionals import (
    MeasureSpec,
    bmo_norm,
    exp_functional,
    interval_mean,
    llogl_functional,
    log_plus,
    lp_norm,
    normalize_for_exp,
    oscillation,
    superlevel_measure,
    weak_norm,
)
from .lattice import (
    Constant,
    Exponents,
    FiniteSequence,
    IntegerInterval,
    Power,
    ShiftedPower,
    SymmetricInterval,
    Tabulated,
    Weight,
    conjugate_exponent,
    csum,
    dilate,
    weight_eval,
    weight_sum,
)
from .operators import (
    OperatorKind,
    OperatorResult,
    calpha_constant,
    maximal_centered,
    maximal_noncentral,
    maximal_oracle,
    operator_profile,
    pointwise_bound_check,
    pointwise_bound_general,
    riesz,
)
from .weights import (
    BracketSpec,
    ConstantEstimate,
    ScanRange,
    ap_bracket,
    apq_bracket,
    duality_identity_check,
    exponent_segment,
    reverse_holder_exponent,
    rh_bracket,
    scan_constant,
)

__version__ = "0.1.0"
