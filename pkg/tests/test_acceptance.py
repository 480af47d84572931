"""Exit criteria for the package, one test per criterion.

Each test prints a single ``[criterion N] PASS|FAIL`` line in the terminal
summary. Run alone with ``pytest tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest
from scipy import stats as sps

from rsdm import (
    F1, F6, F9, SIGMA_FLOOR, VARIANT_NAMES, RandomStream, RunConfig, VariantConfig,
    init_population, run, step_generation,
)
from rsdm import _backend, mutation
from rsdm.core import Individual, MutationState
from rsdm.harness import ExperimentSpec, aggregate, emit_csv, run_experiment

from stats import cov_se, mean_se, rotation

THRESHOLD = 1e-8
MAX_GEN = 50
RUNTIME_LIMIT = 5.0

_lines = []


@pytest.fixture(scope="module", autouse=True)
def _report(pytestconfig):
    yield
    tr = pytestconfig.pluginmanager.getplugin("terminalreporter")
    if tr is not None:
        tr.write_sep("=", f"acceptance ({_backend.name()} kernels)")
        for line in sorted(_lines):
            tr.write_line(line)


def verdict(n, ok, detail):
    _lines.append(f"[criterion {n:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def seq_norm(v):
    # left-to-right sum of squares; builtin sum() compensates on 3.12+
    acc = 0.0
    for a in v:
        acc += a * a
    return math.sqrt(acc)


def timed_experiment(name, variants=VARIANT_NAMES, **overrides):
    t0 = time.perf_counter()
    curves = run_experiment(ExperimentSpec(name, tuple(variants), replicates=10,
                                           overrides=overrides))
    return {c.variant: c for c in curves}, time.perf_counter() - t0


def test_01_f1_convergence():
    curves, elapsed = timed_experiment("F1")
    gens = {v: c.generations_to(THRESHOLD) for v, c in curves.items()}
    ok = all(g is not None and g <= MAX_GEN for g in gens.values()) and elapsed < RUNTIME_LIMIT
    verdict(1, ok, f"F1 median generations to 1e-8 {gens}, {elapsed:.2f}s")


def test_02_f6_convergence():
    curves, elapsed = timed_experiment("F6", ("MEP", "MEP+RS", "MEP+RS+DM"))
    gens = {v: c.generations_to(THRESHOLD) for v, c in curves.items()}
    ok = all(g is not None and g <= MAX_GEN for g in gens.values())
    allowance = max(MAX_GEN, 2 * gens["MEP"]) if gens["MEP"] is not None else MAX_GEN
    t0 = time.perf_counter()
    dm, _ = timed_experiment("F6", ("MEP+DM",), max_generations=allowance)
    elapsed += time.perf_counter() - t0
    gens["MEP+DM"] = dm["MEP+DM"].generations_to(THRESHOLD)
    ok = ok and gens["MEP+DM"] is not None and gens["MEP+DM"] <= allowance
    ok = ok and elapsed < RUNTIME_LIMIT
    verdict(2, ok, f"F6 median generations to 1e-8 {gens} (MEP+DM allowance "
                   f"{allowance}), {elapsed:.2f}s")


def test_03_f9_separation():
    curves, elapsed = timed_experiment("F9")
    best = curves["MEP+RS+DM"]
    g = best.generations_to(THRESHOLD)
    finals = {v: c.values[min(MAX_GEN, len(c.values) - 1)] for v, c in curves.items()}
    ratios = {v: finals[v] / finals["MEP+RS+DM"] for v in ("MEP", "MEP+RS")}
    ok = (g is not None and g <= MAX_GEN
          and all(r >= 1e4 for r in ratios.values())
          and elapsed < RUNTIME_LIMIT)
    verdict(3, ok, f"F9 MEP+RS+DM reaches 1e-8 at generation {g}; final-median ratios "
                   f"{ {v: f'{r:.1e}' for v, r in ratios.items()} }, {elapsed:.2f}s")


def test_04_step_moments():
    cfg = VariantConfig.from_name("MEP+DM")
    steps = _backend.get().directional_steps(1.0, (2.0, 0.0), 10**6, cfg, RandomStream(404))
    m, mse = mean_se(steps)
    c, cse = cov_se(steps)
    ok = (np.all(np.abs(m - [2, 0]) <= 3 * mse)
          and np.all(np.abs(c - [[5, 0], [0, 1]]) <= 3 * cse))
    verdict(4, ok, f"step mean {np.round(m, 4).tolist()}, cov {np.round(c, 4).tolist()}")


def test_05_exponential_meta_mutation():
    kern = _backend.get()
    cfg = VariantConfig.from_name("MEP+DM")
    s0 = kern.sample_sigmas(1.0, 0.0, 10**6, cfg, RandomStream(505))
    s1 = kern.sample_sigmas(1.0, 10.0, 10**6, cfg, RandomStream(506))
    m0, sd0, m1 = s0.mean(), s0.std(ddof=1), s1.mean()
    ok = abs(m0 - 1) <= 0.01 and abs(sd0 - 1) <= 0.02 and abs(m1 - 2) <= 0.02
    verdict(5, ok, f"|k|=0: mean {m0:.4f} sd {sd0:.4f}; |k|=10: mean {m1:.4f}")


def test_06_self_similarity():
    kern = _backend.get()
    cfg = VariantConfig.from_name("MEP+DM")
    k = np.array([0.6, -0.8])
    base, _ = kern.meta_mutations(1.0, k, 10**4, cfg, RandomStream(606))
    pvals = {}
    for i, c in enumerate((1e-6, 1e6)):
        scaled, _ = kern.meta_mutations(c, c * k, 10**4, cfg, RandomStream(607 + i))
        pvals[c] = sps.ks_2samp(base, scaled / c).pvalue
    ok = all(p > 1e-3 for p in pvals.values())
    verdict(6, ok, f"KS p-values {{c: p}} = { {c: round(float(p), 4) for c, p in pvals.items()} }")


def test_07_rotational_invariance():
    kern = _backend.get()
    cfg = VariantConfig.from_name("MEP+DM")
    R = rotation(30)
    k = np.array([2.0, 0.0])
    base = kern.directional_steps(1.0, k, 10**6, cfg, RandomStream(707))
    turned = kern.directional_steps(1.0, R @ k, 10**6, cfg, RandomStream(708))
    c0, se0 = cov_se(base)
    c1, se1 = cov_se(turned)
    expected = R @ c0 @ R.T
    # error of the rotated estimate, propagated entrywise
    se_rot = np.sqrt((np.abs(R) @ se0**2 @ np.abs(R.T)))
    ok = np.all(np.abs(c1 - expected) <= 3 * np.hypot(se1, se_rot))
    verdict(7, ok, f"max |Cov(Rk) - R Cov(k) R^T| = {np.abs(c1 - expected).max():.4f}")


def test_08_recorded_step_identities():
    g = np.random.default_rng(808)
    rsdm = VariantConfig.from_name("MEP+RS+DM")
    rs = VariantConfig.from_name("MEP+RS")
    rng = RandomStream(809)
    bad_dm = bad_rs = 0
    for _ in range(10**4):
        n = int(g.integers(1, 6))
        x = tuple((g.normal(size=n) * 10.0 ** g.integers(-3, 4)).tolist())
        k = tuple((g.normal(size=n) * 10.0 ** g.integers(-6, 2)).tolist())
        parent = Individual(x, MutationState(float(g.exponential()), k))
        child = mutation.spawn(parent, rsdm, rng)
        bad_dm += tuple(a - b for a, b in zip(child.x, parent.x)) != child.k
        child = mutation.spawn(parent, rs, rng)
        step = seq_norm([a - b for a, b in zip(child.x, parent.x)])
        bad_rs += child.sigma != max(step, SIGMA_FLOOR)
    verdict(8, bad_dm == 0 and bad_rs == 0,
            f"violations: MEP+RS+DM {bad_dm}/10000, MEP+RS {bad_rs}/10000")


def test_09_elitism_and_determinism(tmp_path):
    non_monotone = 0
    bad_budget = 0
    for obj in (F1, F6, F9):
        for label in VARIANT_NAMES:
            for seed in range(1, 101):
                c = run(RunConfig(obj, VariantConfig.from_name(label), seed=seed))
                non_monotone += any(b > a for a, b in zip(c.best_fitness, c.best_fitness[1:]))
                bad_budget += c.evaluations_used != 20 + c.generations_run * 180

    bad_size = 0
    for obj in (F1, F6, F9):
        for label in VARIANT_NAMES:
            cfg = RunConfig(obj, VariantConfig.from_name(label), seed=3)
            rng = RandomStream(cfg.seed)
            pop = init_population(cfg, rng)
            for gen in range(1, 21):
                pop = step_generation(pop, cfg, rng, gen)
                bad_size += len(pop) != cfg.survivors

    differing = []
    for name in ("F1", "F6", "F9"):
        spec = ExperimentSpec(name, replicates=10, base_seed=100)
        for d in ("a", "b"):
            emit_csv(run_experiment(spec), str(tmp_path / d), name)
        for suffix in ("_median.csv", "_runs.csv"):
            f = name + suffix
            if (tmp_path / "a" / f).read_bytes() != (tmp_path / "b" / f).read_bytes():
                differing.append(f)
    ok = non_monotone == 0 and bad_budget == 0 and bad_size == 0 and not differing
    verdict(9, ok, f"1200 runs: {non_monotone} non-monotone, {bad_budget} budget "
                   f"mismatches, {bad_size} size changes; differing CSVs {differing}")


def test_10_sigma_tracks_sqrt_error():
    cfg_kw = dict(convergence_threshold=None)
    runs = [run(RunConfig(F1, VariantConfig(), seed=s, **cfg_kw)) for s in range(10)]
    fit = np.array(aggregate("MEP", runs).values)
    sig = np.array(aggregate("MEP", runs, "survivor_sigma").values)
    gens = np.arange(10, 41)
    slope = np.polyfit(np.log(fit[gens]), np.log(sig[gens]), 1)[0]
    verdict(10, abs(slope - 0.5) <= 0.2, f"slope of log sigma on log best fitness {slope:.3f}")
