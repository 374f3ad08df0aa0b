"""Sampled functions on uniform grids: Fourier analysis, group actions,
and the Luxemburg norm.

The grid has nodes ``x_j = -L + j*dx`` (``dx = 2L/n``, ``n`` a power of
two) and dual nodes ``xi_k = (k - n/2)/(2L)``.  The continuous Fourier
transform is approximated by the trapezoid rule, realized as a
phase-corrected FFT; the forward/inverse pair is exact on the grid.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .young import YoungFunction

LUX_RTOL = 1e-10
LUX_MAX_DOUBLINGS = 400


class SupportOverflowError(ValueError):
    """An operation would push mass outside [-L, L] (wrap-around)."""


class BracketError(RuntimeError):
    """Luxemburg bisection could not bracket the norm."""


@dataclass(frozen=True)
class Grid:
    """Uniform symmetric grid on [-L, L) with n nodes, n a power of two."""

    half_width: float
    n: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError("n must be a power of two")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def freq_spacing(self) -> float:
        return 1.0 / (2.0 * self.half_width)

    @property
    def nyquist(self) -> float:
        return 0.5 / self.spacing

    def nodes(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.n)

    def freq_nodes(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.freq_spacing

    def freq_grid(self) -> "Grid":
        return Grid(half_width=self.nyquist, n=self.n)

    def index_of(self, x: float) -> int:
        j = (x + self.half_width) / self.spacing
        ji = int(round(j))
        if abs(j - ji) > 1e-9 or not (0 <= ji < self.n):
            raise ValueError(f"{x} is not a grid node")
        return ji


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples on a grid, with support and band-limit metadata."""

    grid: Grid
    values: np.ndarray = field(repr=False)
    support_hint: tuple[float, float] | None = None
    bandlimit_hint: tuple[float, float] | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n,):
            raise ValueError("values must match the grid length")
        if not np.all(np.isfinite(v.real) & np.isfinite(v.imag)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", v)

    # -- simple integrals ------------------------------------------------

    def l1(self) -> float:
        return float(self.grid.spacing * np.sum(np.abs(self.values)))

    def linf(self) -> float:
        return float(np.max(np.abs(self.values)))

    def support_measure(self) -> float:
        if self.support_hint is not None:
            return self.support_hint[1] - self.support_hint[0]
        nz = np.abs(self.values) > 1e-300
        return float(self.grid.spacing * np.count_nonzero(nz))

    def measured_support(self) -> tuple[float, float]:
        nz = np.nonzero(np.abs(self.values) > 1e-14 * max(self.linf(), 1e-300))[0]
        if len(nz) == 0:
            return (0.0, 0.0)
        x = self.grid.nodes()
        return (float(x[nz[0]]), float(x[nz[-1]] + self.grid.spacing))


# ---------------------------------------------------------------------------
# Fourier pair
# ---------------------------------------------------------------------------


def _alt_signs(n: int) -> np.ndarray:
    s = np.ones(n)
    s[1::2] = -1.0
    return s


def fourier(f: SampledFunction) -> SampledFunction:
    """Trapezoid-rule continuous Fourier transform on the dual grid."""
    g = f.grid
    s = _alt_signs(g.n)
    sign0 = -1.0 if (g.n // 2) % 2 else 1.0
    vals = g.spacing * sign0 * s * np.fft.fft(s * f.values)
    return SampledFunction(grid=g.freq_grid(), values=vals,
                           support_hint=f.bandlimit_hint,
                           bandlimit_hint=f.support_hint)


def inverse_fourier(fhat: SampledFunction) -> SampledFunction:
    """Exact inverse of :func:`fourier` on the grid."""
    g = fhat.grid
    s = _alt_signs(g.n)
    sign0 = -1.0 if (g.n // 2) % 2 else 1.0
    vals = g.n * g.spacing * sign0 * s * np.fft.ifft(s * fhat.values)
    return SampledFunction(grid=g.freq_grid(), values=vals,
                           support_hint=fhat.bandlimit_hint,
                           bandlimit_hint=fhat.support_hint)


def eval_trig(f: SampledFunction, x) -> np.ndarray:
    """Evaluate the band-limited trigonometric interpolant at arbitrary x.

    Exact (in the discrete model) for functions whose spectrum is carried
    on the grid; cost O(band * len(x)).
    """
    fh = fourier(f)
    xi = fh.grid.nodes()
    keep = np.abs(fh.values) > 1e-15 * max(np.max(np.abs(fh.values)), 1e-300)
    xi, coef = xi[keep], fh.values[keep]
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    dxi = fh.grid.spacing
    chunk = 256
    for i in range(0, len(xi), chunk):
        out += np.exp(2j * np.pi * np.outer(x, xi[i:i + chunk])) \
            @ coef[i:i + chunk]
    return dxi * out


# ---------------------------------------------------------------------------
# Group actions
# ---------------------------------------------------------------------------


def translate(f: SampledFunction, y: float) -> SampledFunction:
    """tau_y f(x) = f(x - y).

    Integer-cell shifts move samples exactly (zero fill); other shifts go
    through a frequency-domain phase and are exact for band-limited f only.
    """
    g = f.grid
    cells = y / g.spacing
    hint = None
    if f.support_hint is not None:
        hint = (f.support_hint[0] + y, f.support_hint[1] + y)
        if hint[0] < -g.half_width or hint[1] > g.half_width:
            raise SupportOverflowError(
                f"translate by {y} pushes support to {hint}")
    if abs(cells - round(cells)) < 1e-9:
        k = int(round(cells))
        vals = np.zeros(g.n, dtype=complex)
        if k >= 0:
            vals[k:] = f.values[:g.n - k]
            spilled = f.values[g.n - k:]
        else:
            vals[:g.n + k] = f.values[-k:]
            spilled = f.values[:-k]
        if np.any(np.abs(spilled) > 1e-12 * max(f.linf(), 1e-300)):
            raise SupportOverflowError(f"translate by {y} loses samples")
        return SampledFunction(g, vals, support_hint=hint,
                               bandlimit_hint=f.bandlimit_hint)
    fh = fourier(f)
    phase = np.exp(-2j * np.pi * y * fh.grid.nodes())
    out = inverse_fourier(SampledFunction(fh.grid, fh.values * phase))
    return SampledFunction(g, out.values, support_hint=hint,
                           bandlimit_hint=f.bandlimit_hint)


def modulate(f: SampledFunction, x0: float) -> SampledFunction:
    """M_{x0} f(y) = f(y) e^{2 pi i x0 y}."""
    g = f.grid
    vals = f.values * np.exp(2j * np.pi * x0 * g.nodes())
    bl = None
    if f.bandlimit_hint is not None:
        bl = (f.bandlimit_hint[0] + x0, f.bandlimit_hint[1] + x0)
        if bl[0] < -g.nyquist or bl[1] > g.nyquist:
            raise SupportOverflowError(
                f"modulation by {x0} leaves the dual range")
    return SampledFunction(g, vals, support_hint=f.support_hint,
                           bandlimit_hint=bl)


def dilate(f: SampledFunction, lam: float) -> SampledFunction:
    """D_lambda f(x) = f(lambda x), resampled on the same grid.

    Band-limited inputs are resampled through their trigonometric
    interpolant (exact in the discrete model); otherwise lambda must map
    grid nodes to grid nodes (integer index mapping).
    """
    if lam <= 0:
        raise ValueError("dilation needs lambda > 0")
    g = f.grid
    hint = None
    if f.support_hint is not None:
        hint = (f.support_hint[0] / lam, f.support_hint[1] / lam)
        if hint[0] < -g.half_width or hint[1] > g.half_width:
            raise SupportOverflowError(
                f"dilate by {lam} pushes support to {hint}")
    bl = None
    if f.bandlimit_hint is not None:
        bl = (f.bandlimit_hint[0] * lam, f.bandlimit_hint[1] * lam)
        if bl[0] < -g.nyquist or bl[1] > g.nyquist:
            raise SupportOverflowError(
                f"dilate by {lam} leaves the dual range")
        src = lam * g.nodes()
        inside = (src >= -g.half_width) & (src < g.half_width)
        if not inside.all():
            # off-grid sources are taken as zero; that is only sound when
            # the function has decayed by the grid boundary
            edge = max(abs(f.values[0]), abs(f.values[-1]))
            if edge > 1e-9 * max(f.linf(), 1e-300):
                raise SupportOverflowError(
                    f"dilate by {lam} samples f outside the grid where it "
                    "has not decayed")
        vals = np.zeros(g.n, dtype=complex)
        vals[inside] = eval_trig(f, src[inside])
        return SampledFunction(g, vals, support_hint=hint, bandlimit_hint=bl)
    # index mapping: lambda * x_j must be a grid node for every j it matters
    x = g.nodes()
    src = lam * x
    j = (src + g.half_width) / g.spacing
    ji = np.round(j).astype(int)
    inside = (np.abs(j - ji) < 1e-9) & (ji >= 0) & (ji < g.n)
    if not np.all(np.abs(j[(ji >= 0) & (ji < g.n)]
                         - np.round(j[(ji >= 0) & (ji < g.n)])) < 1e-9):
        raise ValueError(
            f"lambda={lam} is not commensurate with the grid and the input "
            "is not band-limited")
    vals = np.zeros(g.n, dtype=complex)
    vals[inside] = f.values[ji[inside]]
    # points mapped outside the grid must carry no mass
    outside = ~inside
    if f.support_hint is not None and np.any(outside):
        lo, hi = f.support_hint
        if np.any((src[outside] >= lo) & (src[outside] <= hi)):
            raise SupportOverflowError(
                f"dilate by {lam} samples f outside the grid")
    return SampledFunction(g, vals, support_hint=hint, bandlimit_hint=None)


def group_action(f: SampledFunction, action: str, value: float) -> SampledFunction:
    if action == "translate":
        return translate(f, value)
    if action == "modulate":
        return modulate(f, value)
    if action == "dilate":
        return dilate(f, value)
    raise ValueError(f"unknown action {action!r}")


# ---------------------------------------------------------------------------
# Luxemburg norm
# ---------------------------------------------------------------------------


def modular(f: SampledFunction, phi: YoungFunction, k: float) -> float:
    """Trapezoid value of the modular integral of phi(|f|/k)."""
    a = np.abs(f.values) / k
    vals = phi.eval_many(a[a > 0.0])
    return float(f.grid.spacing * np.sum(vals))


def luxemburg_norm(f: SampledFunction, phi: YoungFunction,
                   gamma: float = 1.0) -> float:
    """inf{k > 0 : integral of phi(|f|/k) <= gamma} by bisection.

    The map k -> modular is non-increasing; the bracket starts from the
    indicator-norm bounds (L1 below, Linf above) and grows/shrinks by
    doubling, at most LUX_MAX_DOUBLINGS times.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    amax = f.linf()
    if amax == 0.0:
        return 0.0
    meas = f.support_measure()
    inv = phi.inverse(1.0 / meas) if meas > 0 else INF_SAFE
    if np.isfinite(inv) and inv > 0:
        hi = amax / inv
        lo = f.l1() / (meas * inv)
    else:
        hi = amax
        lo = amax * 1e-8
    hi = max(hi, 1e-300)
    lo = min(max(lo, 1e-300), hi)
    for _ in range(LUX_MAX_DOUBLINGS):
        if modular(f, phi, hi) <= gamma:
            break
        hi *= 2.0
    else:
        raise BracketError("could not bracket from above (degenerate pair)")
    for _ in range(LUX_MAX_DOUBLINGS):
        if modular(f, phi, lo) > gamma:
            break
        if lo <= 1e-280:
            # modular stays <= gamma for arbitrarily small k: norm is 0
            return 0.0
        lo /= 2.0
    while hi - lo > LUX_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if modular(f, phi, mid) <= gamma:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


INF_SAFE = math.inf


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def make_bandlimited(grid: Grid, hat, window: tuple[float, float]) -> SampledFunction:
    """Build f from a prescribed compactly supported spectrum.

    ``hat`` is a callable on frequency; it is sampled on the dual grid and
    zeroed outside ``window``.
    """
    if window[0] < -grid.nyquist or window[1] > grid.nyquist:
        raise ValueError(f"window {window} exceeds the Nyquist range "
                         f"[{-grid.nyquist}, {grid.nyquist}]")
    fg = grid.freq_grid()
    xi = fg.nodes()
    vals = np.asarray(hat(xi), dtype=complex)
    vals = np.where((xi >= window[0]) & (xi <= window[1]), vals, 0.0)
    # trapezoid weights at a sharp window edge landing on a node
    for edge in window:
        hit = np.isclose(xi, edge, rtol=0, atol=1e-12)
        vals = np.where(hit, 0.5 * vals, vals)
    f = inverse_fourier(SampledFunction(fg, vals))
    return SampledFunction(grid, f.values,
                           support_hint=None, bandlimit_hint=window)


def convolve(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """(f * g)(x) by transform-multiply-invert (trapezoid quadrature)."""
    if f.grid != g.grid:
        raise ValueError("operands must share a grid")
    sf = f.support_hint or f.measured_support()
    sg = g.support_hint or g.measured_support()
    lo, hi = sf[0] + sg[0], sf[1] + sg[1]
    L = f.grid.half_width
    if lo < -L or hi > L:
        raise SupportOverflowError(
            f"convolution support [{lo}, {hi}] exceeds [-{L}, {L}]")
    fh, gh = fourier(f), fourier(g)
    out = inverse_fourier(SampledFunction(fh.grid, fh.values * gh.values))
    bl = None
    if f.bandlimit_hint and g.bandlimit_hint:
        bl = (max(f.bandlimit_hint[0], g.bandlimit_hint[0]),
              min(f.bandlimit_hint[1], g.bandlimit_hint[1]))
        if bl[0] > bl[1]:
            bl = None
    return SampledFunction(f.grid, out.values, support_hint=(lo, hi),
                           bandlimit_hint=bl)


# ---------------------------------------------------------------------------
# Presets and CSV I/O
# ---------------------------------------------------------------------------


def indicator(grid: Grid, a: float, start: float = 0.0) -> SampledFunction:
    """Half-open indicator of [start, start + a)."""
    x = grid.nodes()
    vals = ((x >= start - 1e-12) & (x < start + a - 1e-12)).astype(complex)
    return SampledFunction(grid, vals, support_hint=(start, start + a))


def gaussian(grid: Grid, s: float = 1.0) -> SampledFunction:
    """e^{-pi (x/s)^2}; self-dual at s=1."""
    x = grid.nodes()
    vals = np.exp(-np.pi * (x / s) ** 2).astype(complex)
    return SampledFunction(grid, vals)


def sinc_preset(grid: Grid, w: float = 1.0) -> SampledFunction:
    """Inverse transform of the window chi_[-w, w]: sin(2 pi w x)/(pi x)."""
    return make_bandlimited(grid, lambda xi: np.ones_like(xi), (-w, w))


def bl_gauss(grid: Grid, cutoff: float = 6.0) -> SampledFunction:
    """Band-limited Gaussian profile: spectrum e^{-2 xi^2}, truncated."""
    return make_bandlimited(grid, lambda xi: np.exp(-2.0 * xi ** 2),
                            (-cutoff, cutoff))


def parse_preset(spec: str, grid: Grid) -> SampledFunction:
    """CLI presets: indicator:a=4, gauss:s=1, sinc:w=1, bl-gauss, @file.csv."""
    if spec.startswith("@"):
        return load_csv(spec[1:])
    head, _, rest = spec.partition(":")
    kv = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            kv[key.strip()] = float(val)
    if head == "indicator":
        return indicator(grid, kv.get("a", 1.0), kv.get("start", 0.0))
    if head == "gauss":
        return gaussian(grid, kv.get("s", 1.0))
    if head == "sinc":
        return sinc_preset(grid, kv.get("w", 1.0))
    if head == "bl-gauss":
        return bl_gauss(grid, kv.get("cutoff", 6.0))
    raise ValueError(f"unknown function preset {spec!r}")


def load_csv(path: str) -> SampledFunction:
    """Load the `x,re,im` format; uniform spacing is enforced."""
    xs, re, im = [], [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row:
                continue
            try:
                x = float(row[0])
            except ValueError:
                continue  # header
            xs.append(x)
            re.append(float(row[1]))
            im.append(float(row[2]) if len(row) > 2 else 0.0)
    xs = np.asarray(xs)
    if len(xs) < 2 or np.any(np.diff(xs) <= 0):
        raise ValueError("CSV x column must be strictly increasing")
    dx = np.diff(xs)
    if np.max(np.abs(dx - dx[0])) > 1e-9 * dx[0]:
        raise ValueError("CSV grid is not uniform")
    n = len(xs)
    if n & (n - 1):
        raise ValueError("CSV length must be a power of two")
    grid = Grid(half_width=n * dx[0] / 2.0, n=n)
    if abs(xs[0] + grid.half_width) > 1e-9 * dx[0]:
        raise ValueError("CSV grid must start at -L")
    return SampledFunction(grid, np.asarray(re) + 1j * np.asarray(im))


def save_csv(f: SampledFunction, path: str) -> None:
    x = f.grid.nodes()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "re", "im"])
        for xi, v in zip(x, f.values):
            writer.writerow([f"{xi:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
