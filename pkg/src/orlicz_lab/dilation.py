"""Norm estimates for the dilation operator f -> f(lambda .) on Orlicz
spaces, the three-function weight W(t), and Boyd-index fits.

The certified lower bound scans sup_mu phi^-1(mu)/phi^-1(lambda mu); the
upper bound combines the crude 1/min{1, lambda} with factorization
certificates phi(st) >= phi_1(s) phi(t) or phi(st) <= phi_2(s) phi(t),
which are verified on a grid before being used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .young import YoungFunction

INF = math.inf

MU_GRID_POINTS = 2048
MU_GRID_RANGE = (1e-8, 1e8)


class CertificateError(ValueError):
    """A supplied factorization minorant/majorant fails its inequality."""

    def __init__(self, case: str, s: float, t: float, lhs: float, rhs: float):
        self.witness = (s, t)
        super().__init__(
            f"factorization case {case} fails at (s, t) = ({s:g}, {t:g}): "
            f"{lhs:g} vs {rhs:g}")


@dataclass(frozen=True)
class GaugeEstimate:
    lam: float
    lower: float
    upper: float
    crude: tuple[float, float]


@dataclass(frozen=True)
class BoydEstimate:
    lower_index: float
    upper_index: float
    fit_decades: float
    residual: float


def default_mu_grid() -> np.ndarray:
    return np.geomspace(MU_GRID_RANGE[0], MU_GRID_RANGE[1], MU_GRID_POINTS)


def gauge_lower(phi: YoungFunction, lam: float,
                mu_grid: np.ndarray | None = None) -> float:
    """Certified lower bound: max over mu of phi^-1(mu)/phi^-1(lambda mu)."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    mu = default_mu_grid() if mu_grid is None else np.asarray(mu_grid, float)
    num = phi.inverse_many(mu)
    den = phi.inverse_many(lam * mu)
    ok = np.isfinite(num) & np.isfinite(den) & (num > 0) & (den > 0)
    if not ok.any():
        raise ValueError("no mu with finite nonzero inverses on the grid")
    return float(np.max(num[ok] / den[ok]))


def _check_factorization(phi: YoungFunction, other: YoungFunction,
                         case: str, n_points: int = 48) -> None:
    """Verify phi(st) >= phi1(s)phi(t) (case i) / <= phi2(s)phi(t) (ii)."""
    hi = phi.finite_domain_bound
    s_hi = min(1e4, hi) if np.isfinite(hi) else 1e4
    grid = np.geomspace(1e-4, s_hi, n_points)
    for s in grid:
        ft = phi.eval_many(grid)
        fst = phi.eval_many(s * grid)
        fs = other(s)
        # extended-real product: 0 * oo inside the bound resolves to 0
        prod = np.where((fs == 0) | (ft == 0), 0.0, fs * ft)
        if case == "i":
            bad = fst < prod * (1.0 - 1e-9) - 1e-300
        else:
            bad = np.where(np.isinf(prod), False,
                           fst > prod * (1.0 + 1e-9) + 1e-300)
        if bad.any():
            t = float(grid[int(np.argmax(bad))])
            raise CertificateError(case, float(s), t,
                                   float(fst[np.argmax(bad)]),
                                   float(prod[np.argmax(bad)]))


def gauge_upper(phi: YoungFunction, lam: float,
                minorant: YoungFunction | None = None,
                majorant: YoungFunction | None = None) -> float:
    """Upper bound: best of the crude bound and any verified certificate."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    candidates = [1.0 / min(1.0, lam)]
    if minorant is not None:
        _check_factorization(phi, minorant, "i")
        candidates.append(minorant.inverse(1.0 / lam))
    if majorant is not None:
        _check_factorization(phi, majorant, "ii")
        inv = majorant.inverse(lam)
        if inv > 0:
            candidates.append(1.0 / inv)
    return float(min(candidates))


def gauge_upper_auto(phi: YoungFunction, lam: float) -> float:
    """Try phi as its own factorization certificate; fall back to crude."""
    best = gauge_upper(phi, lam)
    for kw in ({"minorant": phi}, {"majorant": phi}):
        try:
            best = min(best, gauge_upper(phi, lam, **kw))
        except CertificateError:
            pass
    return best


def gauge_estimate(phi: YoungFunction, lam: float,
                   minorant: YoungFunction | None = None,
                   majorant: YoungFunction | None = None) -> GaugeEstimate:
    crude = (1.0 / max(1.0, lam), 1.0 / min(1.0, lam))
    lower = gauge_lower(phi, lam)
    if minorant is None and majorant is None:
        upper = gauge_upper_auto(phi, lam)
    else:
        upper = gauge_upper(phi, lam, minorant, majorant)
    return GaugeEstimate(lam=lam, lower=lower, upper=upper, crude=crude)


def weight_W(phi1: YoungFunction, phi2: YoungFunction, phi3: YoungFunction,
             t: float) -> float:
    """Dilation weight: upper gauges of phi3 at 1/t times phi1, phi2 at t."""
    if t <= 0:
        raise ValueError("t must be positive")
    return (gauge_upper_auto(phi3, 1.0 / t)
            * gauge_upper_auto(phi1, t)
            * gauge_upper_auto(phi2, t))


def boyd_indices(phi: YoungFunction, decades: float = 6.0,
                 points_per_decade: int = 16,
                 max_residual: float = 0.05) -> BoydEstimate:
    """Fit the log-log slopes of h(t) = gauge_lower(phi, 1/t) near 0 and oo.

    The fit runs over the outer two decades of each side; the residual is
    the worst root-mean-square misfit of the two regressions.
    """
    if decades < 3:
        raise ValueError("need at least 3 decades on each side of 1")
    n = int(decades * points_per_decade)
    t_small = np.geomspace(10.0 ** -decades, 10.0 ** -(decades - 2), n // 3)
    t_large = np.geomspace(10.0 ** (decades - 2), 10.0 ** decades, n // 3)

    def fit(ts):
        h = np.array([gauge_lower(phi, 1.0 / t) for t in ts])
        lt, lh = np.log(ts), np.log(h)
        A = np.vstack([lt, np.ones_like(lt)]).T
        coef, res, _, _ = np.linalg.lstsq(A, lh, rcond=None)
        rms = math.sqrt(float(res[0]) / len(ts)) if len(res) else 0.0
        return float(coef[0]), rms

    lo_slope, lo_res = fit(t_small)
    hi_slope, hi_res = fit(t_large)
    residual = max(lo_res, hi_res)
    if residual > max_residual:
        raise ValueError(
            f"gauge is not power-like on the fit range (residual {residual:.3g})")
    return BoydEstimate(lower_index=lo_slope, upper_index=hi_slope,
                        fit_decades=decades, residual=residual)
