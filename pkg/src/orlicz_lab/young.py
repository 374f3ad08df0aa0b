"""Extended-real Young functions and the composition conditions between them.

A Young function here is an even, convex map ``[0, oo) -> [0, oo]`` with
``phi(0) = 0`` that is not identically zero.  Infinity is a first-class
value: evaluation returns ``math.inf`` beyond the finite-domain boundary,
and the generalized inverse ``inf{x > 0 : phi(x) > y}`` is well defined for
every ``y >= 0`` (with ``inf of the empty set = oo``).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

INF = math.inf

# Defaults for the conjugation scan.
CONJUGATE_POINTS = 4096
CONJUGATE_X_MIN = 1e-8
BISECT_RTOL = 1e-12


class DegenerateYoungFunction(ValueError):
    """Raised when an operation cannot represent its result on a grid."""


def _as_array(x):
    return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class YoungFunction:
    """One Young function, closed-form or grid-backed.

    kind is one of ``power``, ``power_over_p``, ``exp_minus_one``,
    ``indicator_window``, ``piecewise_linear`` or ``grid``.  Only the
    nonnegative half-line is stored; evaluation folds negative arguments
    by evenness.
    """

    kind: str
    p: float = 0.0
    c: float = 0.0
    xs: np.ndarray | None = field(default=None, repr=False)
    ys: np.ndarray | None = field(default=None, repr=False)
    tail_exponent: float = INF
    finite_domain_bound: float = INF
    zero_plateau_edge: float = 0.0
    label: str = ""

    # -- constructors ---------------------------------------------------

    @staticmethod
    def power(p: float) -> "YoungFunction":
        if p < 1:
            raise ValueError(f"power kind needs p >= 1 for convexity, got {p}")
        return YoungFunction(kind="power", p=float(p), label=f"power:p={p:g}")

    @staticmethod
    def power_over_p(p: float) -> "YoungFunction":
        if p < 1:
            raise ValueError(f"power_over_p kind needs p >= 1, got {p}")
        return YoungFunction(kind="power_over_p", p=float(p),
                             label=f"powerp:p={p:g}")

    @staticmethod
    def exp_minus_one() -> "YoungFunction":
        return YoungFunction(kind="exp_minus_one", label="exp")

    @staticmethod
    def indicator_window(c: float) -> "YoungFunction":
        if c <= 0:
            raise ValueError("indicator window needs c > 0")
        return YoungFunction(kind="indicator_window", c=float(c),
                             finite_domain_bound=float(c),
                             zero_plateau_edge=float(c),
                             label=f"window:c={c:g}")

    @staticmethod
    def piecewise_linear(samples) -> "YoungFunction":
        pts = sorted((float(x), float(y)) for x, y in samples)
        xs = np.array([x for x, _ in pts])
        ys = np.array([y for _, y in pts])
        if xs[0] != 0.0 or ys[0] != 0.0:
            xs = np.concatenate([[0.0], xs])
            ys = np.concatenate([[0.0], ys])
        if np.any(np.diff(xs) <= 0) or np.any(np.diff(ys) < 0):
            raise ValueError("piecewise_linear samples must be increasing")
        slopes = np.diff(ys) / np.diff(xs)
        if np.any(np.diff(slopes) < -1e-12 * max(1.0, slopes.max())):
            raise ValueError("piecewise_linear samples are not convex")
        plateau = float(xs[np.searchsorted(ys, 0.0, side="right") - 1])
        return YoungFunction(kind="piecewise_linear", xs=xs, ys=ys,
                             zero_plateau_edge=plateau,
                             label="pwl")

    @staticmethod
    def from_grid(xs, ys, tail_exponent: float = INF,
                  finite_domain_bound: float = INF,
                  zero_plateau_edge: float = 0.0,
                  label: str = "grid") -> "YoungFunction":
        """Grid-backed Young function.

        Samples ``(xs, ys)`` with ``xs > 0`` strictly increasing and
        ``ys >= 0`` non-decreasing.  Interior evaluation interpolates
        ``log ys`` linearly in ``log xs`` (exact for pure powers); beyond
        the last sample the log-log slope ``tail_exponent`` (default: the
        last segment's) extends the graph unless ``finite_domain_bound``
        cuts it off.
        """
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or len(xs) < 2:
            raise ValueError("need two 1-d sample arrays of equal length")
        if np.any(xs <= 0) or np.any(np.diff(xs) <= 0):
            raise ValueError("grid xs must be positive and strictly increasing")
        if np.any(np.diff(ys) < 0):
            raise ValueError("grid ys must be non-decreasing")
        pos = ys > 0
        if pos.sum() < 2:
            raise DegenerateYoungFunction(
                "grid Young function needs at least two positive samples")
        plateau = zero_plateau_edge
        if not pos.all():
            plateau = max(plateau, float(xs[~pos].max()))
        return YoungFunction(kind="grid", xs=xs[pos], ys=ys[pos],
                             tail_exponent=float(tail_exponent),
                             finite_domain_bound=float(finite_domain_bound),
                             zero_plateau_edge=float(plateau),
                             label=label)

    # -- evaluation -----------------------------------------------------

    def eval_many(self, x) -> np.ndarray:
        """Vectorized evaluation of phi(|x|), with oo beyond the domain."""
        a = np.abs(_as_array(x))
        if self.kind == "power":
            return a ** self.p
        if self.kind == "power_over_p":
            return a ** self.p / self.p
        if self.kind == "exp_minus_one":
            with np.errstate(over="ignore"):
                return np.expm1(a)
        if self.kind == "indicator_window":
            return np.where(a <= self.c, 0.0, INF)
        if self.kind == "piecewise_linear":
            out = np.interp(a, self.xs, self.ys)
            # linear continuation with the last segment's slope
            slope = (self.ys[-1] - self.ys[-2]) / (self.xs[-1] - self.xs[-2])
            hi = a > self.xs[-1]
            out = np.where(hi, self.ys[-1] + slope * (a - self.xs[-1]), out)
            return out
        if self.kind == "grid":
            return self._grid_eval(a)
        raise ValueError(f"unknown kind {self.kind!r}")

    def _grid_eval(self, a: np.ndarray) -> np.ndarray:
        xs, ys = self.xs, self.ys
        lx, ly = np.log(xs), np.log(ys)
        with np.errstate(divide="ignore"):
            la = np.log(a)
        out = np.exp(np.interp(la, lx, ly))
        lo_slope = (ly[1] - ly[0]) / (lx[1] - lx[0])
        tail = self.tail_exponent
        if not np.isfinite(tail):
            tail = (ly[-1] - ly[-2]) / (lx[-1] - lx[-2])
        below = a < xs[0]
        above = a > xs[-1]
        with np.errstate(over="ignore", under="ignore"):
            out = np.where(below, ys[0] * np.exp(lo_slope * (la - lx[0])), out)
            out = np.where(above, ys[-1] * np.exp(tail * (la - lx[-1])), out)
        if self.zero_plateau_edge > 0:
            edge = self.zero_plateau_edge
            out = np.where(a <= edge, 0.0, out)
            # bridge the gap between the plateau edge and the first sample
            gap = below & (a > edge)
            if gap.any() and xs[0] > edge:
                out = np.where(gap, ys[0] * (a - edge) / (xs[0] - edge), out)
        out = np.where(a > self.finite_domain_bound, INF, out)
        out = np.where(a == 0.0, 0.0, out)
        return out

    def __call__(self, x: float) -> float:
        return float(self.eval_many(x))

    # -- generalized inverse --------------------------------------------

    def inverse(self, y: float) -> float:
        """inf{x > 0 : phi(x) > y}, with inf of the empty set = oo."""
        if y < 0:
            raise ValueError("inverse needs y >= 0")
        if self.kind == "power":
            return y ** (1.0 / self.p) if np.isfinite(y) else INF
        if self.kind == "power_over_p":
            return (self.p * y) ** (1.0 / self.p) if np.isfinite(y) else INF
        if self.kind == "exp_minus_one":
            return math.log1p(y) if np.isfinite(y) else INF
        if self.kind == "indicator_window":
            return self.c if np.isfinite(y) else INF
        return self._inverse_bisect(y)

    def inverse_many(self, y) -> np.ndarray:
        ya = _as_array(y)
        if self.kind == "power":
            return np.where(np.isfinite(ya), ya ** (1.0 / self.p), INF)
        if self.kind == "power_over_p":
            return np.where(np.isfinite(ya), (self.p * ya) ** (1.0 / self.p), INF)
        if self.kind == "exp_minus_one":
            return np.where(np.isfinite(ya), np.log1p(ya), INF)
        if self.kind == "indicator_window":
            return np.where(np.isfinite(ya), self.c, INF)
        flat = np.atleast_1d(ya).ravel()
        out = np.array([self._inverse_bisect(v) for v in flat])
        return out.reshape(np.shape(ya))

    def _inverse_bisect(self, y: float) -> float:
        if not np.isfinite(y):
            if np.isfinite(self.finite_domain_bound):
                return self.finite_domain_bound
            return INF
        lo = self.zero_plateau_edge
        hi = max(2.0 * lo, 1.0)
        if np.isfinite(self.finite_domain_bound):
            cap = self.finite_domain_bound
        else:
            cap = INF
        for _ in range(600):
            if self(hi) > y:
                break
            if hi >= cap:
                hi = cap
                break
            hi = min(2.0 * hi, cap) if np.isfinite(cap) else 2.0 * hi
        else:
            return cap if np.isfinite(cap) else INF
        if self(hi) <= y:
            return cap if np.isfinite(cap) else INF
        if lo == 0.0:
            lo = hi
            while self(lo) > y and lo > 1e-300:
                lo /= 2.0
            if self(lo) > y:
                return 0.0
        while hi - lo > BISECT_RTOL * hi:
            mid = 0.5 * (lo + hi)
            if self(mid) > y:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    # -- structural quantities ------------------------------------------

    def slope_at_zero(self) -> float:
        """lim_{x -> 0+} phi(x)/x (upper estimate for grid kinds)."""
        if self.kind == "power":
            return 1.0 if self.p == 1 else 0.0
        if self.kind == "power_over_p":
            return 1.0 if self.p == 1 else 0.0
        if self.kind == "exp_minus_one":
            return 1.0
        if self.kind == "indicator_window":
            return 0.0
        if self.zero_plateau_edge > 0:
            return 0.0
        x0 = 1e-9
        return self(x0) / x0

    def asymptotic_slope(self) -> float:
        """lim_{x -> oo} phi(x)/x, oo when phi grows superlinearly."""
        if np.isfinite(self.finite_domain_bound):
            return INF
        if self.kind in ("power", "power_over_p"):
            if self.p == 1:
                return 1.0 / (self.p if self.kind == "power_over_p" else 1.0)
            return INF
        if self.kind == "exp_minus_one":
            return INF
        if self.kind == "piecewise_linear":
            return float((self.ys[-1] - self.ys[-2])
                         / (self.xs[-1] - self.xs[-2]))
        # grid: a log-log tail slope of 1 means an asymptotically linear graph
        tail = self.tail_exponent
        if not np.isfinite(tail):
            lx, ly = np.log(self.xs), np.log(self.ys)
            tail = (ly[-1] - ly[-2]) / (lx[-1] - lx[-2])
        if abs(tail - 1.0) < 1e-6:
            return float(self.ys[-1] / self.xs[-1])
        return INF


# ---------------------------------------------------------------------------
# Legendre conjugation
# ---------------------------------------------------------------------------


def _sup_scan(phi: YoungFunction, y: float, xgrid: np.ndarray) -> float:
    """sup_{x >= 0} x*y - phi(x) via grid scan plus golden-section polish."""
    vals = xgrid * y - phi.eval_many(xgrid)
    i = int(np.nanargmax(vals))
    best = vals[i]
    lo = xgrid[max(i - 1, 0)]
    hi = xgrid[min(i + 1, len(xgrid) - 1)]
    # golden-section refinement on the bracketing interval
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1 = x1 * y - phi(x1)
    f2 = x2 * y - phi(x2)
    for _ in range(90):
        if b - a < 1e-14 * max(1.0, b):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = x2 * y - phi(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = x1 * y - phi(x1)
    best = max(best, f1, f2)
    return max(best, 0.0)


def complement(phi: YoungFunction, x_max: float = 1e6,
               n_points: int = CONJUGATE_POINTS) -> YoungFunction:
    """Complementary (conjugate) Young function psi(y) = sup x|y| - phi(x).

    The sup is scanned over a log-spaced grid on (0, min(x_max, domain
    bound)] and polished locally; the result is a grid-backed Young
    function.  A finite asymptotic slope of phi becomes the finite-domain
    bound of psi, and the slope of phi at zero becomes psi's zero plateau.
    """
    if x_max <= 0 or n_points < 64:
        raise ValueError("need x_max > 0 and n_points >= 64")
    x_hi = min(x_max, phi.finite_domain_bound)
    xgrid = np.geomspace(CONJUGATE_X_MIN, x_hi, n_points)
    finite = np.isfinite(phi.eval_many(xgrid))
    if not finite.any():
        raise DegenerateYoungFunction(
            "no grid point with finite phi; cannot represent the conjugate")
    xgrid = xgrid[finite]

    slope_inf = phi.asymptotic_slope()
    plateau = phi.slope_at_zero()
    if np.isfinite(slope_inf) and plateau >= slope_inf * (1.0 - 1e-12):
        # conjugate vanishes below the asymptotic slope and jumps to oo:
        # exactly an L^oo-type window
        return YoungFunction.indicator_window(slope_inf)

    # y range: from below the plateau edge (or tiny) up to the largest
    # slope reachable by the scan.
    if np.isfinite(slope_inf):
        y_hi = slope_inf
    else:
        x1, x0 = xgrid[-1], xgrid[-1] * 0.99
        y_hi = (phi(x1) - phi(x0)) / (x1 - x0)
        if y_hi <= 0:  # phi vanishes on the whole scan (pure plateau)
            y_hi = 1e6
    y_lo = max(plateau, y_hi * 1e-14, 1e-8)
    if y_hi <= y_lo:
        y_hi = 10.0 * y_lo
    ygrid = np.geomspace(y_lo, y_hi, n_points)
    psi_vals = np.array([_sup_scan(phi, y, xgrid) for y in ygrid])
    if not (psi_vals > 0).any():
        if np.isfinite(slope_inf):
            # conjugate vanishes up to the asymptotic slope: an L^oo window
            return YoungFunction.indicator_window(slope_inf)
        raise DegenerateYoungFunction(
            "conjugate is identically zero on the scan grid")
    fdb = slope_inf if np.isfinite(slope_inf) else INF
    return YoungFunction.from_grid(
        ygrid, psi_vals,
        finite_domain_bound=fdb,
        zero_plateau_edge=plateau,
        label=f"conj({phi.label})")


def conjugate_value(phi: YoungFunction, y: float, x_max: float = 1e6,
                    n_points: int = CONJUGATE_POINTS) -> float:
    """Pointwise sup x|y| - phi(x), without building a grid function."""
    x_hi = min(x_max, phi.finite_domain_bound)
    xgrid = np.geomspace(CONJUGATE_X_MIN, x_hi, n_points)
    slope = phi.asymptotic_slope()
    if np.isfinite(slope) and abs(y) > slope * (1.0 + 1e-12):
        return INF
    return _sup_scan(phi, abs(y), xgrid)


# ---------------------------------------------------------------------------
# Delta_2 and triple conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Delta2Result:
    holds: bool
    k: float


def check_delta2(phi: YoungFunction, x_lo: float, x_hi: float,
                 n_points: int = 512) -> Delta2Result:
    """Scan sup phi(2x)/phi(x) on a log grid, excluding the zero plateau.

    Reported unbounded (holds=False) when doubling crosses the domain
    boundary, or when the ratio is still climbing at the right edge of
    the scan (the sup over a finite grid then certifies nothing).
    """
    if not (0 < x_lo < x_hi):
        raise ValueError("need 0 < x_lo < x_hi")
    if x_hi >= phi.finite_domain_bound:
        raise ValueError("x_hi must stay below the finite-domain bound")
    grid = np.geomspace(x_lo, x_hi, n_points)
    f1 = phi.eval_many(grid)
    f2_all = phi.eval_many(2.0 * grid)
    if np.any(np.isfinite(f1) & ~np.isfinite(f2_all)):
        # doubling crosses the finite-domain boundary
        return Delta2Result(holds=False, k=INF)
    usable = (f1 > 0) & np.isfinite(f1)
    if not usable.any():
        raise ValueError("no grid point with 0 < phi(x) < oo")
    grid, f1 = grid[usable], f1[usable]
    f2 = f2_all[usable]
    ratio = f2 / f1
    k = float(ratio.max())
    # climbing at the right edge => treat as unbounded
    last_decade = grid >= grid[-1] / 10.0
    r_tail = ratio[last_decade]
    climbing = (len(r_tail) >= 3 and np.all(np.diff(r_tail) > 0)
                and ratio[-1] >= k * (1.0 - 1e-9))
    return Delta2Result(holds=not climbing, k=k)


@dataclass(frozen=True)
class TripleCondition:
    """Defect record for a Hoelder- or convolution-type inverse inequality."""

    kind: str            # "hoelder" or "young_conv"
    max_violation: float
    grid: np.ndarray = field(repr=False)

    @property
    def holds(self) -> bool:
        return self.max_violation <= 0.0


def check_triple(kind: str, phi1: YoungFunction, phi2: YoungFunction,
                 phi3: YoungFunction, grid) -> TripleCondition:
    """Defect of phi1^-1 phi2^-1 <= phi3^-1 (hoelder) or <= x phi3^-1."""
    g = _as_array(grid)
    if np.any(g <= 0):
        raise ValueError("grid values must be positive")
    lhs = phi1.inverse_many(g) * phi2.inverse_many(g)
    if kind == "hoelder":
        rhs = phi3.inverse_many(g)
    elif kind == "young_conv":
        rhs = g * phi3.inverse_many(g)
    else:
        raise ValueError(f"unknown triple condition {kind!r}")
    defect = lhs - rhs
    defect = np.where(np.isinf(lhs) & np.isinf(rhs), 0.0, defect)
    return TripleCondition(kind=kind, max_violation=float(np.max(defect)),
                           grid=g)


# ---------------------------------------------------------------------------
# Mini-DSL
# ---------------------------------------------------------------------------


def parse_young(spec: str) -> YoungFunction:
    """Parse ``power:p=2``, ``powerp:p=3``, ``exp``, ``window:c=2`` or
    ``grid:@file.csv`` (two columns x, phi(x), strictly increasing x)."""
    head, _, rest = spec.partition(":")
    kv = {}
    if rest and not rest.startswith("@"):
        for item in rest.split(","):
            key, _, val = item.partition("=")
            kv[key.strip()] = float(val)
    if head == "power":
        return YoungFunction.power(kv["p"])
    if head == "powerp":
        return YoungFunction.power_over_p(kv["p"])
    if head == "exp":
        return YoungFunction.exp_minus_one()
    if head == "window":
        return YoungFunction.indicator_window(kv["c"])
    if head == "grid":
        if not rest.startswith("@"):
            raise ValueError("grid kind needs @file.csv")
        xs, ys = [], []
        with open(rest[1:], newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                try:
                    x = float(row[0])
                except ValueError:
                    continue  # header
                xs.append(x)
                ys.append(float(row[1]))
        return YoungFunction.from_grid(np.array(xs), np.array(ys))
    raise ValueError(f"unknown Young-function spec {spec!r}")
