"""Mutation and meta-mutation operators.

Every operator draws from its :class:`~rsdm.core.RandomStream` in a fixed
order, and the compiled kernels in ``_kernels.pyx`` reproduce that order
exactly. Per child the draws are:

=============  ============================================================
MEP            u (rate), then one normal per coordinate for x
MEP+RS         u (rate), then one normal per coordinate for the step
MEP+DM         u (rate), lambda, normals for k, fresh lambda, normals for x
MEP+RS+DM      u (rate), lambda, normals for k
=============  ============================================================

Anything changed here must be mirrored in the compiled kernels;
``tests/test_backends.py`` checks they agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Sequence, Tuple

from .core import Individual, MutationState, ParameterVector, RandomStream, VariantConfig


def _norm(v: Sequence[float]) -> float:
    # plain sequential sum of squares; mirrored in C
    s = 0.0
    for a in v:
        s += a * a
    return math.sqrt(s)


def sample_sigma(
    sigma: float, k_norm: float, cfg: VariantConfig, rng: RandomStream
) -> float:
    """Redraw the isotropic rate from an exponential distribution.

    The mean is ``sigma + coupling_fraction * k_norm``; the coupling keeps a
    lineage from mutating purely along its direction. The result never drops
    below ``cfg.sigma_floor``.
    """
    u = rng.uniform01()
    s = -(sigma + cfg.coupling_fraction * k_norm) * math.log1p(-u)
    if not s >= cfg.sigma_floor:
        s = cfg.sigma_floor
    return s


def _meta_raw(
    sigma: float, k: Sequence[float], cfg: VariantConfig, rng: RandomStream
) -> Tuple[float, ParameterVector]:
    s = sample_sigma(sigma, _norm(k), cfg, rng)
    lam = rng.gaussian(cfg.lambda_mean, cfg.lambda_sd)
    return s, tuple(rng.gaussian(0.0, s) + lam * ki for ki in k)


def meta_mutate_direction(
    mut: MutationState, cfg: VariantConfig, rng: RandomStream
) -> MutationState:
    """Mutate ``(sigma, k)`` together.

    The rate is redrawn first; the new rate then scales the isotropic noise
    added to every component of ``k``, while one shared ``lambda`` rescales
    the old direction as a whole.
    """
    s, k = _meta_raw(mut.sigma, mut.k, cfg, rng)
    return MutationState(s, k)


def directional_step(
    sigma: float, k: Sequence[float], cfg: VariantConfig, rng: RandomStream
) -> ParameterVector:
    """Displacement ``N(0, sigma) + lambda * k_i`` with one ``lambda`` per step."""
    lam = rng.gaussian(cfg.lambda_mean, cfg.lambda_sd)
    out = []
    for ki in k:
        z = rng.gaussian(0.0, sigma)
        out.append(z + lam * ki)
    return tuple(out)


def _spawn_raw(
    x: Sequence[float],
    sigma: float,
    k: Sequence[float],
    cfg: VariantConfig,
    rng: RandomStream,
) -> Tuple[ParameterVector, float, ParameterVector]:
    """Child ``(x, sigma, k)`` for the variant named by ``cfg``."""
    n = len(x)
    if cfg.directional:
        s, kc = _meta_raw(sigma, k, cfg, rng)
        if cfg.recorded_step:
            xc = tuple(xi + ki for xi, ki in zip(x, kc))
            # store the realized step so child.x - parent.x == child.k exactly
            kc = tuple(a - b for a, b in zip(xc, x))
            return xc, s, kc
        lam = rng.gaussian(cfg.lambda_mean, cfg.lambda_sd)
        xc = []
        for xi, ki in zip(x, kc):
            z = rng.gaussian(0.0, s)
            xc.append(xi + z + lam * ki)
        return tuple(xc), s, kc

    s = sample_sigma(sigma, 0.0, cfg, rng)
    xc = tuple(xi + rng.gaussian(0.0, s) for xi in x)
    zero = (0.0,) * n
    if cfg.recorded_step:
        realized = _norm([a - b for a, b in zip(xc, x)])
        s = realized if realized >= cfg.sigma_floor else cfg.sigma_floor
    return xc, s, zero


def _child(raw) -> Individual:
    x, s, k = raw
    return Individual(x, MutationState(s, k))


def spawn_plain(parent: Individual, cfg: VariantConfig, rng: RandomStream) -> Individual:
    """Conventional meta-mutation: new rate, then isotropic noise on x."""
    plain = replace(cfg, recorded_step=False, directional=False)
    return _child(_spawn_raw(parent.x, parent.sigma, parent.k, plain, rng))


def spawn_recorded(parent: Individual, cfg: VariantConfig, rng: RandomStream) -> Individual:
    """As :func:`spawn_plain`, but the child's rate becomes its step length."""
    rs = replace(cfg, recorded_step=True, directional=False)
    return _child(_spawn_raw(parent.x, parent.sigma, parent.k, rs, rng))


def spawn_directional(parent: Individual, cfg: VariantConfig, rng: RandomStream) -> Individual:
    """Meta-mutate ``(sigma, k)``, then step x with the child's parameters.

    The x-update draws its own ``lambda``, independent of the one used to
    rescale ``k``.
    """
    dm = replace(cfg, recorded_step=False, directional=True)
    return _child(_spawn_raw(parent.x, parent.sigma, parent.k, dm, rng))


def spawn_directional_recorded(
    parent: Individual, cfg: VariantConfig, rng: RandomStream
) -> Individual:
    """Meta-mutate ``(sigma, k)`` and move x by exactly the new ``k``."""
    rsdm = replace(cfg, recorded_step=True, directional=True)
    return _child(_spawn_raw(parent.x, parent.sigma, parent.k, rsdm, rng))


def spawn(parent: Individual, cfg: VariantConfig, rng: RandomStream) -> Individual:
    """Spawn one unevaluated child using the operator selected by ``cfg``."""
    return _child(_spawn_raw(parent.x, parent.sigma, parent.k, cfg, rng))
