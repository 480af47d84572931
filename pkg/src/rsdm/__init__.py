"""Self-adaptive evolutionary programming with recorded-step directional mutation."""

from .core import (
    SIGMA_FLOOR,
    VARIANT_NAMES,
    ConfigurationError,
    EvaluationError,
    Individual,
    MutationState,
    RandomStream,
    ValidationError,
    VariantConfig,
    new_individual,
    variant_name,
)
from .evolution import ConvergenceCurve, RunConfig, init_population, run, step_generation
from .objectives import F1, F6, F9, Objective, registry

__version__ = "0.1.0"
