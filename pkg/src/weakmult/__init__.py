"""Desk-scale numerical laboratory for weak-type Fourier multipliers:
periodization of compactly supported symbols, transference couples,
lattice-preserving symbol transforms, and staircase extensions, with
exactly checkable identities and empirical norm reports."""

__version__ = "0.1.0"

from .fourier import (
    convolve_periodic,
    evaluate_spectrum,
    fejer_coefficient,
    fejer_kernel,
    forward_transform,
    inverse_transform,
    spectrum_from_coefficients,
    symbol_to_kernel,
)
from .grids import (
    GridFunction,
    LineModel,
    Spectrum,
    TorusGrid,
    build_line_model,
    build_torus_grid,
)
from .kernels import (
    KernelSpec,
    affine_image,
    indicator_kernel,
    kernel_from_json,
    kernel_to_json,
    linear_image,
    load_kernel,
    save_kernel,
    table_kernel,
    tent_b,
    tent_kernel,
    translate_kernel,
    triangle_kernel,
    triangle_kernel_spec,
)
from .lattice import (
    IntertwiningReport,
    LatticeTransform,
    average_operator_W,
    compose_kernel_with_lattice,
    coset_representatives,
    dilate_operator_S,
    downsample_symbol,
    fundamental_domain_measure,
    in_fundamental_domain,
    reduce_support_affine,
    refined_lattice_points,
    tiling_translate_counts,
    upsample_symbol,
    verify_symbol_intertwining,
)
from .multipliers import (
    apply_discrete_symbol,
    apply_kernel_symbol,
    discrete_multiplier,
    kernel_multiplier,
)
from .staircase import (
    ConvergenceReport,
    convergence_monitor,
    fejer_truncate_symbol,
    staircase_extension,
)
from .symbols import (
    DiscreteSymbol,
    constant_symbol,
    delta_symbol,
    load_symbol,
    random_symbol,
    sample_kernel_symbol,
    save_symbol,
    symbol_from_json,
    symbol_to_json,
)
from .transference import (
    BETA_MAJORANT_SUM_1D,
    TransferCoupleConfig,
    apply_S_spatial,
    beta_check,
    beta_majorant,
    beta_majorant_sum_1d,
    modulated_symbol,
    periodize,
    periodize_to_kernel,
    transfer_family_S,
    transfer_family_T,
    transferred_operator_Hk,
)
from .verification import CHECKS, CheckResult, SuiteConfig, build_norm_table, run_check, run_suite
from .weaklp import (
    DEFAULT_SEED,
    CorpusSpec,
    WeakNormReport,
    build_corpus,
    corpus_id,
    distribution_function,
    estimate_operator_strong_norm,
    estimate_operator_weak_norm,
    lp_norm,
    sup_norm,
    weak_quasinorm,
    weak_star_norm,
)
