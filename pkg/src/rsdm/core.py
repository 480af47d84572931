"""Domain types shared by every module: individuals, variant flags, randomness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

ParameterVector = Tuple[float, ...]

#: Lower clamp applied to every mutation rate. Far below any reported fitness,
#: it only keeps a lineage from freezing at exactly zero.
SIGMA_FLOOR = 1e-300

VARIANT_NAMES = ("MEP", "MEP+RS", "MEP+DM", "MEP+RS+DM")


class ConfigurationError(ValueError):
    """Inconsistent shapes or settings."""


class ValidationError(ValueError):
    """Non-finite or out-of-range input values."""


class EvaluationError(RuntimeError):
    """The objective returned NaN for some individual."""


def as_vector(values: Iterable[float], name: str = "vector") -> ParameterVector:
    """Copy ``values`` into an immutable vector, rejecting NaN/Inf and empties."""
    vec = tuple(float(v) for v in values)
    if not vec:
        raise ConfigurationError(f"{name} must have at least one entry")
    if not all(math.isfinite(v) for v in vec):
        raise ValidationError(f"{name} has non-finite entries: {vec}")
    return vec


@dataclass(frozen=True)
class MutationState:
    """Heritable mutation parameters: isotropic rate and direction record."""

    sigma: float
    k: ParameterVector


@dataclass(frozen=True)
class Individual:
    x: ParameterVector
    mut: MutationState
    fitness: Optional[float] = None

    @property
    def sigma(self) -> float:
        return self.mut.sigma

    @property
    def k(self) -> ParameterVector:
        return self.mut.k

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None

    def with_fitness(self, fitness: float) -> "Individual":
        return Individual(self.x, self.mut, float(fitness))


def new_individual(
    x: Iterable[float], sigma0: float, k0: Iterable[float]
) -> Individual:
    """Build an unevaluated individual from copies of the given values.

    Raises:
        ConfigurationError: if ``x`` and ``k0`` differ in length.
        ValidationError: on non-finite entries or a negative ``sigma0``.
    """
    xv = as_vector(x, "x")
    kv = as_vector(k0, "k0")
    if len(xv) != len(kv):
        raise ConfigurationError(
            f"dimension mismatch: len(x)={len(xv)} but len(k0)={len(kv)}"
        )
    sigma0 = float(sigma0)
    if not math.isfinite(sigma0) or sigma0 < 0:
        raise ValidationError(f"sigma0 must be finite and >= 0, got {sigma0}")
    return Individual(xv, MutationState(sigma0, kv))


@dataclass(frozen=True)
class VariantConfig:
    """Which of recorded-step / directional mutation is active.

    ``coupling_fraction`` is the share of ``|k|`` added to the mean of the
    exponential rate draw; ``lambda_mean`` and ``lambda_sd`` parameterize the
    normal draw of the step length along ``k``.
    """

    recorded_step: bool = False
    directional: bool = False
    coupling_fraction: float = 0.1
    lambda_mean: float = 1.0
    lambda_sd: float = 1.0
    sigma_floor: float = SIGMA_FLOOR

    def __post_init__(self):
        for attr in ("coupling_fraction", "lambda_sd", "sigma_floor"):
            value = getattr(self, attr)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"{attr} must be finite and > 0, got {value}")
        if not math.isfinite(self.lambda_mean):
            raise ValidationError(f"lambda_mean must be finite, got {self.lambda_mean}")

    @property
    def name(self) -> str:
        return variant_name(self)

    @classmethod
    def from_name(cls, label: str, **constants) -> "VariantConfig":
        """Inverse of :func:`variant_name`; extra keywords set the constants."""
        try:
            idx = VARIANT_NAMES.index(label)
        except ValueError:
            raise ConfigurationError(
                f"unknown variant {label!r}; valid: {', '.join(VARIANT_NAMES)}"
            ) from None
        return cls(recorded_step=bool(idx in (1, 3)), directional=idx >= 2, **constants)


def variant_name(cfg: VariantConfig) -> str:
    return VARIANT_NAMES[int(cfg.recorded_step) + 2 * int(cfg.directional)]


class RandomStream:
    """Seeded source of uniform and normal deviates.

    Wraps a PCG64-backed :class:`numpy.random.Generator`. The compiled kernels
    draw from the same bit generator, so scalar calls here and batch calls
    there advance one shared state and emit identical sequences.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def uniform01(self) -> float:
        """A deviate from the half-open interval [0, 1)."""
        return self._gen.random()

    def gaussian(self, mean: float, sd: float) -> float:
        return mean + sd * self._gen.standard_normal()

    def __repr__(self):
        return f"RandomStream(seed={self.seed})"
