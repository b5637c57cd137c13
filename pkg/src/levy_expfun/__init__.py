"""Inference on subordinator characteristics from samples of the
exponential functional: Laplace exponent estimation via complex moments,
closed-form drift / jump-mass recovery, and kernel-regularized Fourier
inversion of the jump density."""

from .backends import BACKEND
from .core import (
    FrequencyGrid,
    LaplaceExponentTable,
    RateParameters,
    SampleSet,
    WeightFunction,
    build_grid,
    select_v_max,
)
from .errors import (
    AccuracyRegionExceededError,
    DegenerateDenominatorError,
    LevyExpFunError,
    MomentOverflowError,
    NonDecayingMomentsError,
    PoleError,
    TruncationCapError,
    ZeroDenominatorError,
)
from .harness import (
    ExperimentConfig,
    ExperimentReport,
    fit_mellin_decay,
    rate_diagnostic,
    rate_factor,
    run_levy_recovery,
    run_parameter_experiment,
    run_psi_curve,
)
from .mellin import (
    empirical_complex_moment,
    estimate_laplace_exponent,
    moment_identity_residual,
)
from .models import ExpJumpSubordinator, GeometricCompoundPoisson, complex_erf
from .triplet import (
    KernelSpec,
    LevyDensityEstimate,
    TiltedFourierTable,
    TripletEstimate,
    estimate_drift,
    estimate_jump_mass,
    estimate_tilted_fourier,
    estimate_triplet,
    flat_top_kernel,
    invert_levy_density,
)

__version__ = "0.1.0"
