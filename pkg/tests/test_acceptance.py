"""One test per acceptance criterion, each reporting a PASS/FAIL line."""

import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from acyclic_chi._util import derive_seed
from acyclic_chi.bounds import (
    BernoulliSum,
    beta_crit_bounds,
    chernoff_bound,
    empirical_tail,
    expected_cycle_bracket,
    expected_cycle_count,
)
from acyclic_chi.colouring import (
    Colouring,
    acyclic_upper_colouring,
    chi_exact,
    choose_g,
    find_low_colour_path,
    greedy_colouring,
    is_proper,
    lll_path_colouring,
    refute_colouring,
    theta_bound,
    verify_eta_c,
)
from acyclic_chi.cycles import count_cycles
from acyclic_chi.exceptions import ResampleBudgetExhausted
from acyclic_chi.experiments import SweepConfig, fit_exponents, refutation_rate, run_sweep
from acyclic_chi.graph import EdgeProbabilityModel, sample_graph
from conftest import brute_force_chi, small_random_graphs


def test_criterion_1_exact_solver_matches_brute_force(criterion):
    start = time.perf_counter()
    graphs = small_random_graphs(200, seed=2024, n_range=(1, 7))
    mismatches = [g for g in graphs if chi_exact(g, 0, 3)[0] != brute_force_chi(g, 0, 3)]
    elapsed = time.perf_counter() - start
    ok = criterion(1, not mismatches and elapsed < 300,
                   f"{200 - len(mismatches)}/200 exact matches, {elapsed:.1f}s (limit 300s)")
    assert ok


def test_criterion_2_power_colouring_always_verifies(criterion):
    start = time.perf_counter()
    failures = []
    for c in (3, 4):
        for seed in range(1, 101):
            g = sample_graph(EdgeProbabilityModel(50, p=0.1), seed)
            rep = verify_eta_c(g, acyclic_upper_colouring(g, c), 0, c, cap=10_000)
            if not (rep.passes and rep.exact_verdict):
                failures.append((c, seed))
    elapsed = time.perf_counter() - start
    ok = criterion(2, not failures and elapsed < 120,
                   f"{200 - len(failures)}/200 verified (c=3,4 x 100 seeds), {elapsed:.1f}s (limit 120s)")
    assert ok


def test_criterion_3_lll_post_condition(criterion):
    start = time.perf_counter()
    n, beta, c = 200, 0.5, 3
    p = n ** -beta
    g_len = choose_g(beta, c)
    theta = theta_bound(n, p, g_len, c, 1.0)
    terminated = failed_post = 0
    for seed in range(100):
        graph = sample_graph(EdgeProbabilityModel(n, p=p), seed)
        try:
            col = lll_path_colouring(graph, g_len, c, theta, seed=seed, max_resamples=100_000)
        except ResampleBudgetExhausted:
            continue
        terminated += 1
        if not is_proper(graph, col) or find_low_colour_path(graph, col, g_len, c) is not None:
            failed_post += 1
    elapsed = time.perf_counter() - start
    ok = criterion(3, g_len == 6 and terminated >= 95 and failed_post == 0 and elapsed < 600,
                   f"g={g_len}, theta={theta}, terminated {terminated}/100 (need 95), "
                   f"post-condition failures {failed_post}, {elapsed:.1f}s")
    assert ok


def test_criterion_4_cycle_count_bracket(criterion):
    start = time.perf_counter()
    n, p, trials = 200, 0.05, 500
    counts = {3: [], 4: [], 5: []}
    for i in range(trials):
        g = sample_graph(EdgeProbabilityModel(n, p=p), derive_seed("bracket", i))
        for k in counts:
            counts[k].append(count_cycles(g, k))
    parts, ok = [], True
    for k, vals in counts.items():
        mean = float(np.mean(vals))
        lo, hi = expected_cycle_bracket(n, p, k)
        exact = expected_cycle_count(n, p, k)
        rel = abs(mean - exact) / exact
        ok &= lo <= mean <= hi and rel <= 0.05
        parts.append(f"k={k}: mean {mean:.1f} in [{lo:.1f}, {hi:.0f}], exact {exact:.1f}, "
                     f"rel err {rel:.3%}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 600
    assert criterion(4, ok, "; ".join(parts) + f"; {elapsed:.1f}s")


def test_criterion_5_chernoff_domination(criterion):
    start = time.perf_counter()
    worst, violations = -math.inf, []
    for t in (100, 1000):
        for p in (0.1, 0.3, 0.5):
            for eps in (0.1, 0.2, 0.4):
                src = BernoulliSum(t=t, p=p)
                est = empirical_tail(src, eps, 10_000, derive_seed("chernoff", t, p, eps))
                slack = float(est.value) - (chernoff_bound(src.mean, eps) + 3 * est.stderr)
                worst = max(worst, slack)
                if slack > 0:
                    violations.append((t, p, eps))
    elapsed = time.perf_counter() - start
    ok = criterion(5, not violations and elapsed < 120,
                   f"18 grid points, {len(violations)} violations, max(tail - bound - 3se) = "
                   f"{worst:.4f}, {elapsed:.1f}s")
    assert ok


def test_criterion_6a_refuter_witnesses_reverify(criterion):
    rng = np.random.default_rng(6)
    witnesses = bad = 0
    for i in range(1000):
        n = int(rng.integers(8, 41))
        p = float(rng.uniform(0.2, 0.9))
        c = int(rng.choice([4, 6, 8]))
        g = sample_graph(EdgeProbabilityModel(n, p=p), derive_seed("refute", i))
        col = greedy_colouring(g, order=rng.permutation(n).tolist())
        cyc = refute_colouring(g, col, c)
        if cyc is not None:
            witnesses += 1
            if not (cyc.is_in(g) and len(cyc) == c and len({col[v] for v in cyc}) <= c - 1):
                bad += 1
    ok = criterion("6a", bad == 0 and witnesses > 0,
                   f"{witnesses} witnesses from 1000 random pairs, {bad} failed re-verification")
    assert ok


def test_criterion_6b_subcritical_refutation_rate(criterion):
    start = time.perf_counter()
    stats = refutation_rate(500, 0.05, 4, trials=100, palette_cap=500 // 8, seed=1)
    elapsed = time.perf_counter() - start
    ok = criterion("6b", stats.rate >= Fraction(99, 100) and elapsed < 900,
                   f"rate {float(stats.rate):.2f} (need 0.99): refuted {stats.refuted}, "
                   f"unrefuted {stats.unrefuted}, no proper colouring within cap "
                   f"{stats.palette_cap}: {stats.no_colouring}; {elapsed:.1f}s")
    assert ok


@pytest.fixture(scope="module")
def transition_sweep():
    cfg = SweepConfig(n_grid=[256, 512, 1024, 2048, 4096], beta_grid=[0.3, 0.45, 0.6],
                      c=3, algorithm="power_graph", trials_per_cell=2, seed=7)
    start = time.perf_counter()
    records = run_sweep(cfg, n_jobs=2)
    return records, time.perf_counter() - start


def test_criterion_7_finite_size_transition(criterion, transition_sweep):
    records, elapsed = transition_sweep
    fits = {f.beta: f for f in fit_exponents(records)}
    alphas = [fits[b].alpha_hat for b in (0.3, 0.45, 0.6)]
    upper = fits[0.6].upper(0.95)
    decreasing = all(a > b for a, b in zip(alphas, alphas[1:]))
    verified = all(r.verified for r in records)
    ok = criterion(7, upper < 1 and decreasing and verified and elapsed < 1800,
                   "alpha_hat " + ", ".join(f"beta={b}: {fits[b].alpha_hat:.3f}"
                                            for b in (0.3, 0.45, 0.6))
                   + f"; 95% upper limit at beta=0.6: {upper:.3f}; {elapsed:.1f}s")
    assert ok


def test_criterion_8_theoretical_bound_table(criterion):
    got = [(b.lower, b.upper) for b in (beta_crit_bounds(3, 0), beta_crit_bounds(4, 0),
                                        beta_crit_bounds(3, Fraction(1, 100)),
                                        beta_crit_bounds(4, Fraction(1, 2)))]
    want = [(Fraction(1, 10), Fraction(1, 2)), (Fraction(1, 14), Fraction(2, 3)),
            (Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))]
    ok = criterion(8, got == want, "c=3: (1/10, 1/2), c=4: (1/14, 2/3), eta>0: (0, 0)"
                   if got == want else f"got {got}")
    assert ok


def test_criterion_9_cli_sweep_is_byte_identical(criterion, tmp_path):
    import json

    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({"n_grid": [64, 128, 256], "beta_grid": [0.4, 0.6],
                               "c": 3, "trials_per_cell": 3, "seed": 99,
                               "algorithm": "power_graph"}))
    start = time.perf_counter()
    outputs = []
    for run in range(2):
        out = tmp_path / f"run{run}.csv"
        res = subprocess.run([sys.executable, "-m", "acyclic_chi", "sweep", str(cfg),
                              "--n-jobs", str(run + 1), "--out", str(out)],
                             capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        outputs.append(out.read_bytes())
    elapsed = time.perf_counter() - start
    same = outputs[0] == outputs[1]
    ok = criterion(9, same and elapsed < 300,
                   f"{len(outputs[0])} bytes, identical={same} (serial vs 2 workers), {elapsed:.1f}s")
    assert ok
