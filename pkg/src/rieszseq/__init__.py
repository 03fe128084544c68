"""Numerical Riesz bounds for finite exponential systems on arc unions of the
circle, with the adversarial-set and progression-block constructions."""

from . import constructions, errors, numtheory, spectral, torus
from .constructions import (
    BlockSpec,
    DeltaSchedule,
    LambdaBuild,
    ScanConfig,
    block,
    build_adversarial_set,
    build_lambda_thm2,
    build_lambda_thm3,
    delta_schedule,
    good_n_search,
    select_shift,
    step_search_alpha,
    theorem1_demo,
    verify_build,
)
from .spectral import (
    FrequencySet,
    GramMatrix,
    RieszReport,
    arithmetic_progression,
    cross_block_bound,
    cs_lower_bound,
    dirichlet_tail,
    dirichlet_tail_bound,
    extreme_eigs,
    frequency_set,
    gram,
    rayleigh,
    riesz_report,
    uniform_rayleigh_ap,
)
from .torus import (
    Arc,
    CoefficientTable,
    IntervalSet,
    complement,
    contains,
    fourier_coeff,
    fourier_table,
    load_set,
    normalize,
    quadrature_coeff,
    save_set,
    scale_periodize,
)

__version__ = "0.1.0"
