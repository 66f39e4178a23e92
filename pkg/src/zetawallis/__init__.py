"""Generalized Euler transformation, zeta continuation and Wallis-type products."""

from zetawallis.constants import get
from zetawallis.diffcore import (
    Modulus,
    WeightVector,
    apply_delta,
    coefficient_a,
    delta_power,
    pochhammer,
    tail_bound,
    weight_vector,
)
from zetawallis.exact import bernoulli_oracle, sondow_neg_int, zeta_neg_int
from zetawallis.products import (
    CATALOGUE,
    ProductReport,
    product_log_stream,
    product_log_stream_continued,
    verify_identity,
)
from zetawallis.transform import classic_transform, sum_blocked, telescope_check, transform
from zetawallis.zeta import (
    EvalPlan,
    PoleError,
    RegionError,
    SeriesEvaluation,
    plan_heuristic,
    zeta,
    zeta_c,
    zeta_c_derivative,
    zeta_c_derivative_k1,
    zeta_c_derivative_series,
)

__version__ = "0.1.0"
