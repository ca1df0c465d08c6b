"""Two-sided basic estimates for optimal constants in discrete weighted
Hardy inequalities under four boundary regimes."""

from .core import (
    BoundaryError,
    BoundaryRule,
    Case,
    DegenerateError,
    Exponents,
    HardyError,
    Sequence,
    WeightedInterval,
    backward_energy,
    decreasing_rearrange,
    forward_energy,
    hardy_H,
    hardy_Hstar,
    inner,
    lq_norm,
    signed_pow,
)
from .special import FactorKqp, KqpRegime, beta, k_qp, min_split_gamma, min_split_power
from .bounds import (
    BoundsReport,
    b_dd_lower,
    b_dd_upper,
    b_dn,
    b_nd,
    b_nn_lower,
    b_nn_upper,
    b_opic,
    bounds_report,
)
from .splitting import (
    SplitPoint,
    SplitWeights,
    dd_b_curves,
    dd_find_crossing,
    dd_split_sequences,
    dd_split_weights,
    dd_witness,
    nn_b_curves,
    nn_find_crossing_C,
    nn_split_sequences,
    nn_split_weights,
    nn_witness,
)
from .meanzero import MeanResult, check_min_property, f_eval, solve_m
from .variational import (
    EstimateConfig,
    EstimateResult,
    characteristic_residual,
    eigen_oracle,
    estimate_A,
    ratio,
)
from .families import (
    PowerClassification,
    classify_power_family,
    geometric_family,
    geometric_nn_closed,
    power_family,
    power_threshold,
    power_upper_constant,
    telescoping_family,
    telescoping_suffix,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
