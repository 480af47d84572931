"""Pure-Python kernels: loops over the scalar operators in :mod:`rsdm.mutation`.

Used when the compiled extension is unavailable, and as the reference the
compiled kernels are checked against.
"""

import numpy as np

from . import mutation
from .core import RandomStream, VariantConfig

NAME = "python"


def spawn_children(X, S, K, progeny: int, cfg: VariantConfig, rng: RandomStream):
    """Spawn ``progeny`` children per parent row, grouped by parent.

    Returns ``(CX, CS, CK)`` arrays with ``len(S) * progeny`` rows.
    """
    spawn_raw = mutation._spawn_raw
    xs, ss, ks = [], [], []
    for x, s, k in zip(X.tolist(), S.tolist(), K.tolist()):
        for _ in range(progeny):
            cx, cs, ck = spawn_raw(x, s, k, cfg, rng)
            xs.append(cx)
            ss.append(cs)
            ks.append(ck)
    n = X.shape[1]
    return (np.array(xs, dtype=float).reshape(-1, n),
            np.array(ss, dtype=float),
            np.array(ks, dtype=float).reshape(-1, n))


def sample_sigmas(sigma: float, k_norm: float, count: int, cfg, rng):
    return np.array([mutation.sample_sigma(sigma, k_norm, cfg, rng) for _ in range(count)])


def meta_mutations(sigma: float, k, count: int, cfg, rng):
    k = [float(v) for v in k]
    out_s = np.empty(count)
    out_k = np.empty((count, len(k)))
    for i in range(count):
        out_s[i], out_k[i] = mutation._meta_raw(sigma, k, cfg, rng)
    return out_s, out_k


def directional_steps(sigma: float, k, count: int, cfg, rng):
    k = [float(v) for v in k]
    return np.array([mutation.directional_step(sigma, k, cfg, rng) for _ in range(count)],
                    dtype=float).reshape(count, len(k))
