"""Generational loop: founders, spawning, pooled truncation, stopping."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import _backend
from .core import (
    ConfigurationError,
    EvaluationError,
    Individual,
    MutationState,
    RandomStream,
    ValidationError,
    VariantConfig,
)
from .objectives import Objective


@dataclass(frozen=True)
class RunConfig:
    objective: Objective
    variant: VariantConfig = field(default_factory=VariantConfig)
    seed: int = 0
    survivors: int = 20
    progeny_per_survivor: int = 9
    max_generations: int = 50
    convergence_threshold: Optional[float] = 1e-8
    sigma0_fraction: float = 0.1

    def __post_init__(self):
        for attr in ("survivors", "progeny_per_survivor", "max_generations"):
            if getattr(self, attr) < 1:
                raise ConfigurationError(f"{attr} must be a positive integer")
        # None disables early stopping
        if self.convergence_threshold is not None and not self.convergence_threshold >= 0:
            raise ValidationError("convergence_threshold must be >= 0 or None")
        if not (math.isfinite(self.sigma0_fraction) and self.sigma0_fraction >= 0):
            raise ValidationError("sigma0_fraction must be finite and >= 0")

    @property
    def population_size(self) -> int:
        return self.survivors * (1 + self.progeny_per_survivor)


@dataclass
class ConvergenceCurve:
    """Best fitness per generation (index 0 is the founders) for one run.

    ``survivor_sigma`` holds the median mutation rate of the survivors at the
    same generations.
    """

    best_fitness: List[float]
    generations_to_threshold: Optional[int]
    evaluations_used: int
    survivor_sigma: List[float] = field(default_factory=list)

    @property
    def generations_run(self) -> int:
        return len(self.best_fitness) - 1

    @property
    def final(self) -> float:
        return self.best_fitness[-1]


class _Population:
    """Survivors as arrays: positions, rates, directions, fitnesses."""

    __slots__ = ("X", "S", "K", "F")

    def __init__(self, X, S, K, F):
        self.X, self.S, self.K, self.F = X, S, K, F

    @classmethod
    def from_individuals(cls, individuals):
        if any(not ind.evaluated for ind in individuals):
            raise ValidationError("every parent must be evaluated")
        X = np.array([ind.x for ind in individuals], dtype=float)
        K = np.array([ind.k for ind in individuals], dtype=float)
        if X.shape != K.shape:
            raise ConfigurationError("x and k dimensions differ within the population")
        S = np.array([ind.sigma for ind in individuals], dtype=float)
        F = np.array([ind.fitness for ind in individuals], dtype=float)
        return cls(X, S, K, F)

    def to_individuals(self):
        return [
            Individual(tuple(x), MutationState(s, tuple(k)), f)
            for x, s, k, f in zip(self.X.tolist(), self.S.tolist(),
                                  self.K.tolist(), self.F.tolist())
        ]


def _evaluate(objective: Objective, X, generation: int) -> np.ndarray:
    func = objective.func
    out = np.empty(len(X))
    for i, row in enumerate(X.tolist()):
        value = func(*row)
        if math.isnan(value):
            raise EvaluationError(
                f"{objective.name} returned NaN for individual {i} of generation "
                f"{generation} at x={row}"
            )
        out[i] = value
    return out


def init_population(cfg: RunConfig, rng: RandomStream) -> List[Individual]:
    """Draw ``cfg.survivors`` evaluated founders uniformly in the init box.

    Founders start with rate ``sigma0_fraction`` times the mean box width
    (never below the floor) and a zero direction.
    """
    obj = cfg.objective
    floor = cfg.variant.sigma_floor
    sigma0 = max(cfg.sigma0_fraction * obj.mean_width, floor)
    k0 = (0.0,) * obj.dim
    founders = []
    for _ in range(cfg.survivors):
        x = tuple(lo + (hi - lo) * rng.uniform01() for lo, hi in obj.init_box)
        founders.append(Individual(x, MutationState(sigma0, k0)))
    F = _evaluate(obj, np.array([f.x for f in founders]), 0)
    return [ind.with_fitness(f) for ind, f in zip(founders, F.tolist())]


def _advance(pop: _Population, cfg: RunConfig, rng: RandomStream, generation: int):
    kern = _backend.get()
    CX, CS, CK = kern.spawn_children(pop.X, pop.S, pop.K, cfg.progeny_per_survivor,
                                     cfg.variant, rng)
    CF = _evaluate(cfg.objective, CX, generation)
    # parents first: the stable sort then prefers a parent on ties
    F = np.concatenate([pop.F, CF])
    keep = np.argsort(F, kind="stable")[: cfg.survivors]
    return _Population(
        np.concatenate([pop.X, CX])[keep],
        np.concatenate([pop.S, CS])[keep],
        np.concatenate([pop.K, CK])[keep],
        F[keep],
    )


def step_generation(
    parents: List[Individual], cfg: RunConfig, rng: RandomStream, generation: int = 1
) -> List[Individual]:
    """One generation of spawn, evaluate and pooled truncation selection.

    Every parent produces ``progeny_per_survivor`` children; parents and
    children compete together and the best ``survivors`` are returned in
    ascending fitness order.
    """
    if len(parents) != cfg.survivors:
        raise ConfigurationError(
            f"expected {cfg.survivors} parents, got {len(parents)}"
        )
    pop = _Population.from_individuals(parents)
    return _advance(pop, cfg, rng, generation).to_individuals()


def run(cfg: RunConfig, rng: Optional[RandomStream] = None) -> ConvergenceCurve:
    """Evolve until the threshold is met or ``max_generations`` have run."""
    rng = rng if rng is not None else RandomStream(cfg.seed)
    pop = _Population.from_individuals(init_population(cfg, rng))
    if cfg.convergence_threshold is None:
        target = -math.inf
    else:
        target = cfg.objective.optimum_value + cfg.convergence_threshold

    best = [float(pop.F.min())]
    sigmas = [statistics.median(pop.S.tolist())]
    evaluations = cfg.survivors
    hit = 0 if best[0] <= target else None
    generation = 0
    while hit is None and generation < cfg.max_generations:
        generation += 1
        pop = _advance(pop, cfg, rng, generation)
        evaluations += cfg.survivors * cfg.progeny_per_survivor
        best.append(float(pop.F[0]))
        sigmas.append(statistics.median(pop.S.tolist()))
        if best[-1] <= target:
            hit = generation
    return ConvergenceCurve(best, hit, evaluations, sigmas)
