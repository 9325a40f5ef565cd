"""Enclosed evaluation and exact certification for ratios of hypergeometric functions."""

from hyperratio.errors import (
    DomainError,
    HyperRatioError,
    LengthMismatchError,
    PrecisionError,
    PreconditionError,
)
from hyperratio.exp_sections import (
    e_power_bounds,
    exp_enclosure,
    ramanujan_theta,
    ratio_f,
    ratio_g,
    remainder,
    section,
)
from hyperratio.hyper_series import (
    HyperParams,
    Precision,
    SeriesValue,
    coeff,
    eval_1f1,
    eval_pfq,
    pochhammer,
    term_ratio,
    to_rational,
)
from hyperratio.ratio_kernel import (
    Certificate,
    CoeffSeq,
    cauchy_product_coeffs,
    certify_coeff_monotone,
    prefix_ratio_monotone,
    theorem1_w,
    theorem1_w_ratio,
    theorem2_w_ratio,
)
from hyperratio.turan_suite import (
    AbcParams,
    AbcVecParams,
    MonotoneReport,
    Target,
    check_theorem1_conditions,
    check_theorem2_conditions,
    default_grid,
    grid_monotone_check,
    h_kummer,
    h_pfq,
    turan_check,
)

__version__ = "0.1.0"
