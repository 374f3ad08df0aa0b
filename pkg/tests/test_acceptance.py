"""Acceptance suite: one criterion per test, one printed pass/fail line.

Tolerances and runtime limits are pinned here on purpose; loosening them
is a behavior change, not a test fix.
"""

import json
import math
import time

import numpy as np

from orlicz_lab import (
    Grid,
    Symbol,
    YoungFunction,
    complement,
    conjugate_value,
    evaluate_bm,
    gauge_lower,
    gauge_upper_auto,
    gaussian,
    luxemburg_norm,
    indicator,
    make_bandlimited,
    run_bound_suite,
    run_gaussian_limits,
    run_rademacher_divergence,
    spot_check_pairing,
)
from orlicz_lab.cli import main


def _verdict(num: int, label: str, ok: bool) -> None:
    print(f"ACCEPTANCE {num} {label}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({label}) failed"


def test_criterion_01_indicator_norms():
    t0 = time.perf_counter()
    grid = Grid(32.0, 4096)
    phis = [YoungFunction.power(1.0), YoungFunction.power(2.0),
            YoungFunction.power(3.0), YoungFunction.exp_minus_one()]
    worst = 0.0
    for phi in phis:
        for a in (0.25, 1.0, 4.0, 16.0):
            numeric = luxemburg_norm(indicator(grid, a), phi)
            formula = 1.0 / phi.inverse(1.0 / a)
            worst = max(worst, abs(numeric - formula) / formula)
    elapsed = time.perf_counter() - t0
    _verdict(1, "indicator-norm exactness",
             worst <= 1e-7 and elapsed < 1.0)


def test_criterion_02_power_gauges():
    t0 = time.perf_counter()
    worst = 0.0
    for p in (1.0, 2.0, 4.0):
        phi = YoungFunction.power(p)
        for lam in (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
            expect = lam ** (-1.0 / p)
            worst = max(worst,
                        abs(gauge_lower(phi, lam) - expect) / expect,
                        abs(gauge_upper_auto(phi, lam) - expect) / expect)
    elapsed = time.perf_counter() - t0
    _verdict(2, "power dilation gauges",
             worst <= 1e-6 and elapsed < 1.0)


def _seeded_symbols(rng, count):
    """Difference symbols cycling Gaussian / compact bump / windowed sign."""
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            v0 = rng.uniform(-1.0, 1.0)
            s = 2.0 ** rng.uniform(-0.5, 0.5)
            out.append(Symbol.difference(
                lambda v, v0=v0, s=s: np.exp(-((v - v0) / s) ** 2),
                (-8.0, 8.0), label=f"gauss{i}"))
        elif kind == 1:
            w = rng.uniform(1.0, 3.0)
            out.append(Symbol.difference(
                lambda v, w=w: np.clip(1.0 - (np.asarray(v) / w) ** 2,
                                       0.0, None) ** 3,
                (-w, w), label=f"bump{i}"))
        else:
            w = rng.uniform(2.0, 6.0)
            out.append(Symbol.difference(np.sign, (-w, w),
                                         label=f"sign{i}"))
    return out


def test_criterion_03_cross_representation():
    t0 = time.perf_counter()
    grid = Grid(32.0, 4096)
    rng = np.random.default_rng(2024)
    worst_cross = 0.0
    worst_pair = 0.0
    for i, sym in enumerate(_seeded_symbols(rng, 20)):
        if i % 2 == 0:
            f = gaussian(grid, float(2.0 ** rng.uniform(-0.5, 0.5)))
            g = gaussian(grid, float(2.0 ** rng.uniform(-0.5, 0.5)))
        else:
            c1 = float(rng.uniform(0.5, 2.0))
            c2 = float(rng.uniform(0.5, 2.0))
            f = make_bandlimited(grid,
                                 lambda xi, c=c1: np.exp(-c * xi ** 2),
                                 (-6.0, 6.0))
            g = make_bandlimited(grid,
                                 lambda xi, c=c2: np.exp(-c * xi ** 2),
                                 (-6.0, 6.0))
        ref = evaluate_bm(sym, f, g, method="direct")
        for meth in ("kernel", "halfsum", "convolution"):
            out = evaluate_bm(sym, f, g, method=meth)
            worst_cross = max(worst_cross,
                              float(np.max(np.abs(out.values - ref.values))))
        if i < 4:  # pairing identity at 5 sample points
            # modest shifts: the translated inputs must stay on the grid
            for j in (grid.n // 2 - 192, grid.n // 2 - 64, grid.n // 2,
                      grid.n // 2 + 96, grid.n // 2 + 256):
                x = float(grid.nodes()[j])
                lhs = ref.values[grid.index_of(-x)]
                rhs = spot_check_pairing(sym, f, g, x)
                worst_pair = max(worst_pair, abs(lhs - rhs))
    elapsed = time.perf_counter() - t0
    _verdict(3, "cross-representation agreement",
             worst_cross <= 1e-6 and worst_pair <= 1e-5 and elapsed < 60.0)


def test_criterion_04_mt1_bound():
    rep = run_bound_suite("mt1", trials=200, seed=41)
    _verdict(4, "atomic-measure bound (constant 2||mu||_1)",
             rep.passed and rep.summary["worst_ratio"] <= 1.0)


def test_criterion_05_mt2_and_corollaries():
    mt2 = run_bound_suite("mt2", trials=200, seed=42)
    c1 = run_bound_suite("corollary_L1", trials=200, seed=43)
    ci = run_bound_suite("corollary_Linf", trials=200, seed=44)
    ok = all(r.passed and r.summary["worst_ratio"] <= 1.0
             for r in (mt2, c1, ci))
    _verdict(5, "integrable-symbol bound and corollaries", ok)


def test_criterion_06_symbol_algebra():
    p31 = run_bound_suite("prop31", trials=50, seed=45)
    p32 = run_bound_suite("prop32", trials=50, seed=46)
    ok = (p31.passed and p31.summary["max_deviation"] <= 1e-8
          and p32.passed and p32.summary["max_deviation"] <= 1e-8)
    _verdict(6, "translation/modulation/dilation identities", ok)


def test_criterion_07_rademacher_divergence():
    div = run_rademacher_divergence(
        YoungFunction.power(4.0), YoungFunction.power(4.0),
        YoungFunction.power(1.0), a=1.0, n_max=256, seed=47)
    bnd = run_rademacher_divergence(
        YoungFunction.power(2.0), YoungFunction.power(2.0),
        YoungFunction.power(1.0), a=1.0, n_max=256, seed=47)
    combs_ok = div.passed and bnd.passed  # comb bound on every draw
    ok = (combs_ok
          and abs(div.summary["slope"] - 0.5) <= 0.01
          and abs(bnd.summary["slope"]) <= 0.01)
    _verdict(7, "Rademacher divergence slopes", ok)


def test_criterion_08_gaussian_limits():
    t0 = time.perf_counter()
    rep = run_gaussian_limits()
    claims = {c.name: c for c in rep.claims}
    elapsed = time.perf_counter() - t0
    ok = (claims["large_lambda_limit"].passed
          and claims["small_lambda_mass"].passed
          and elapsed < 5.0)
    _verdict(8, "Gaussian-envelope limits", ok)


def test_criterion_09_conjugation():
    # x^2/2 is its own conjugate
    half_sq = YoungFunction.power_over_p(2.0)
    psi = complement(half_sq)
    xs = np.geomspace(0.01, 100.0, 60)
    self_err = max(abs(psi(x) - half_sq(x)) / max(half_sq(x), 1e-12)
                   for x in xs)

    # biconjugation returns power p=3 on an interior grid
    phi3 = YoungFunction.power_over_p(3.0)
    bi = complement(complement(phi3))
    inner = np.geomspace(0.1, 50.0, 40)
    bi_err = max(abs(bi(x) - phi3(x)) / max(phi3(x), 1e-12) for x in inner)

    # Young inequality x y <= phi(x) + phi*(y) on 1e4 random pairs
    rng = np.random.default_rng(48)
    x = rng.uniform(0.0, 20.0, 10_000)
    y = rng.uniform(0.0, 20.0, 10_000)
    phi = YoungFunction.power_over_p(2.5)
    violations = sum(
        1 for xi, yi in zip(x, y)
        if xi * yi > phi(xi) + conjugate_value(phi, yi)
        + 1e-9 * (1.0 + xi * yi))

    ok = self_err <= 1e-6 and bi_err <= 1e-4 and violations == 0
    _verdict(9, "conjugation and Young inequality", ok)


def test_criterion_10_determinism(tmp_path, capsys):
    texts = []
    for sub in ("one", "two"):
        out = tmp_path / sub
        code = main(["verify", "all", "--seed", "7", "--out", str(out),
                     "--no-figures"])
        assert code == 0
        texts.append({p.name: p.read_bytes()
                      for p in sorted(out.glob("*.json"))})
    capsys.readouterr()  # drop verify chatter so the verdict line stands out
    names_match = sorted(texts[0]) == sorted(texts[1])
    ok = (names_match and len(texts[0]) >= 10
          and all(texts[0][k] == texts[1][k] for k in texts[0]))
    for blob in texts[0].values():
        json.loads(blob)  # every report is valid JSON
    _verdict(10, "byte-identical reruns of verify all --seed 7", ok)
