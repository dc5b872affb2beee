"""Numerical laboratory for synthesis-type estimates.

Capabilities, bottom to top:

* point clouds with Euclidean or torus metrics; box-counting metric
  order, balanced coverings, neighborhood measure (``pointcloud``,
  ``dimension``);
* polynomial bump mollifiers with dual-route Fourier coefficients
  (Gauss-Jacobi quadrature vs a calibrated Bessel closed form) and
  weighted square-sum asymptotics (``bessel``, ``mollifier``);
* weighted Fourier algebra norms, pseudomeasures, mollified pairings and
  the distance-power decay experiment (``fourier``);
* Schur multipliers on weighted discrete spaces, masked bimodules, and
  the Hilbert-Schmidt smoothing bound (``schur``);
* elementary operators, kernel chains and ascent, joint spectra of
  commuting families, growth orders, functional calculus
  (``ascent``);
* deterministic generators, configuration-driven experiments, CLI
  (``generators``, ``experiments``, ``cli``).
"""

from .ascent import (
    AscentBoundReport,
    AscentReport,
    CommutingFamily,
    ElementaryOperator,
    JointSpectrum,
    OrderEstimate,
    apply_single_variable,
    ascent_bound_check,
    build_elementary,
    coordinate_sum_poly,
    expm,
    functional_calculus,
    jordan_block,
    joint_spectrum,
    kernel_chain,
    order_estimate,
    periodic_cutoff,
    verify_root_equals_kernel_power,
)
from .bessel import BesselEvaluator, bessel_j, decay_constant
from .dimension import (
    BalancedCovering,
    DimensionReport,
    balanced_covering,
    box_count,
    metric_order,
    neighborhood_measure,
)
from .errors import (
    AccuracyError,
    CoveringError,
    NotGeneralizedScalarError,
    NumericError,
    PreconditionError,
    ResourceError,
    SynthlabError,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    load_config,
    parse_config,
    random_normal_commuting_pair,
    run_experiment,
)
from .fourier import (
    BpDecayReport,
    PseudoMeasure,
    TrigPolynomial,
    WeightAlpha,
    a_alpha_norm,
    add,
    atomic_pseudomeasure,
    bp_decay_experiment,
    distance_power_function,
    evaluate_bivariate,
    l2_norm,
    mollify,
    multiply,
    pairing,
    pm_alpha_norm,
    varopoulos_m,
    varopoulos_p,
)
from .generators import GeneratorSpec, generate
from .mollifier import (
    CoefficientTable,
    Mollifier,
    WeightedTailSums,
    build_table,
    coeff_bessel,
    coeff_quadrature,
    save_table_csv,
    weighted_l2_sum,
)
from .pointcloud import PointCloud, load_cloud_csv, save_cloud_csv
from .schur import (
    DiscreteSpace,
    HsBoundReport,
    MaskedBimodule,
    SymbolGrid,
    block_projection,
    decay_check,
    distance_power_symbol,
    hs_bound_experiment,
    kernel_of_schur,
    neighborhood_relation,
    operator_norm,
    s2_norm,
    schur_apply,
    section_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
