"""Bilinear Fourier multiplier operators and their symbol algebra.

A symbol is a function m(xi, eta) on the frequency plane, in one of three
forms: a general callable/grid, a difference form m(xi, eta) = M(xi - eta),
or a measure-hat form m(xi, eta) = mu_hat(alpha xi + beta eta).  The
operator

    B_m(f, g)(x) = iint fhat(xi) ghat(eta) m(xi, eta)
                   e^{2 pi i (xi + eta) x} dxi deta

is evaluated by several algebraically distinct quadrature paths which must
agree within METHOD_TOL in max norm on band-limited inputs; that
cross-validation is the module's core correctness contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .function_lab import (
    Grid,
    SampledFunction,
    SupportOverflowError,
    fourier,
    inverse_fourier,
    luxemburg_norm,
    translate,
)
from .young import YoungFunction

METHOD_TOL = 1e-6
BAND_CUT = 1e-15

_trapz = getattr(np, "trapezoid", np.trapz)


# ---------------------------------------------------------------------------
# Measures and symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Measure:
    """Finite measure on the line: weighted atoms plus an optional density."""

    atoms: tuple[tuple[float, complex], ...] = ()
    density: SampledFunction | None = None

    @staticmethod
    def from_atoms(*atoms) -> "Measure":
        return Measure(atoms=tuple((float(t), complex(w)) for t, w in atoms))

    @staticmethod
    def delta(t: float = 0.0, w: complex = 1.0) -> "Measure":
        return Measure.from_atoms((t, w))

    def total_variation(self) -> float:
        tv = sum(abs(w) for _, w in self.atoms)
        if self.density is not None:
            tv += self.density.l1()
        return float(tv)

    def hat(self, z) -> np.ndarray:
        """mu_hat(z) = integral of e^{-2 pi i t z} d mu(t)."""
        z = np.asarray(z, dtype=float)
        out = np.zeros(z.shape, dtype=complex)
        for t, w in self.atoms:
            out = out + w * np.exp(-2j * np.pi * t * z)
        if self.density is not None:
            t = self.density.grid.nodes()
            rho = self.density.values
            keep = np.abs(rho) > 0
            out = out + self.density.grid.spacing * (
                np.exp(-2j * np.pi * np.multiply.outer(z, t[keep]))
                @ rho[keep])
        return out


@dataclass(frozen=True)
class Symbol:
    """Bilinear symbol m(xi, eta) with form metadata.

    ``func(xi, eta)`` is always available and broadcasts.  For the
    difference form, ``m_profile(v)`` evaluates M and ``m_window`` is the
    interval outside which M is treated as zero by the integrable-symbol
    paths.
    """

    form: str                       # general | difference | measure_hat
    func: object = field(repr=False)
    m_profile: object = field(default=None, repr=False)
    m_window: tuple[float, float] | None = None
    measure: Measure | None = None
    alpha: float = 1.0
    beta: float = -1.0
    label: str = ""

    # -- constructors ---------------------------------------------------

    @staticmethod
    def general(func, label: str = "general") -> "Symbol":
        return Symbol(form="general", func=func, label=label)

    @staticmethod
    def constant(c: complex = 1.0, label: str | None = None) -> "Symbol":
        # m == c is the hat of c * delta_0, so the exact space-side path
        # (pointwise product) stays available for wide-band inputs
        c = complex(c)
        return Symbol.measure_hat(
            Measure.from_atoms((0.0, c)),
            label=label if label is not None else f"const({c.real:g})")

    @staticmethod
    def from_grid(freq_grid: Grid, values: np.ndarray,
                  label: str = "grid") -> "Symbol":
        """General form from samples on the product frequency grid,
        bilinearly interpolated off the nodes, zero outside."""
        values = np.asarray(values, dtype=complex)
        if values.shape != (freq_grid.n, freq_grid.n):
            raise ValueError("values must be (n, n) on the frequency grid")
        if not np.all(np.isfinite(values)):
            raise ValueError("general-form symbol values must be finite")
        xi0 = freq_grid.nodes()[0]
        d = freq_grid.spacing
        nmax = freq_grid.n - 1

        def func(xi, eta):
            xi, eta = np.broadcast_arrays(np.asarray(xi, float),
                                          np.asarray(eta, float))
            a = (xi - xi0) / d
            b = (eta - xi0) / d
            inside = (a >= 0) & (a <= nmax) & (b >= 0) & (b <= nmax)
            a = np.clip(a, 0, nmax)
            b = np.clip(b, 0, nmax)
            ia = np.minimum(a.astype(int), nmax - 1)
            ib = np.minimum(b.astype(int), nmax - 1)
            fa, fb = a - ia, b - ib
            out = ((1 - fa) * (1 - fb) * values[ia, ib]
                   + fa * (1 - fb) * values[ia + 1, ib]
                   + (1 - fa) * fb * values[ia, ib + 1]
                   + fa * fb * values[ia + 1, ib + 1])
            return np.where(inside, out, 0.0)

        return Symbol(form="general", func=func, label=label)

    @staticmethod
    def difference(m_profile, window: tuple[float, float],
                   label: str = "difference") -> "Symbol":
        lo, hi = float(window[0]), float(window[1])
        if not lo < hi:
            raise ValueError("window must be a nonempty interval")

        def prof(v):
            v = np.asarray(v, dtype=float)
            out = np.asarray(m_profile(v), dtype=complex)
            return np.where((v >= lo) & (v <= hi), out, 0.0)

        return Symbol(form="difference",
                      func=lambda xi, eta: prof(np.asarray(xi)
                                                - np.asarray(eta)),
                      m_profile=prof, m_window=(lo, hi), label=label)

    @staticmethod
    def difference_from_samples(m: SampledFunction,
                                label: str = "difference-csv") -> "Symbol":
        v = m.grid.nodes()
        vals = m.values

        def prof(u):
            u = np.asarray(u, dtype=float)
            return (np.interp(u, v, vals.real, left=0.0, right=0.0)
                    + 1j * np.interp(u, v, vals.imag, left=0.0, right=0.0))

        return Symbol.difference(prof, (float(v[0]), float(v[-1])),
                                 label=label)

    @staticmethod
    def gauss_difference(window: tuple[float, float] = (-8.0, 8.0)) -> "Symbol":
        return Symbol.difference(lambda v: np.exp(-np.asarray(v) ** 2),
                                 window, label="gauss")

    @staticmethod
    def sign_difference(window: tuple[float, float] = (-64.0, 64.0)) -> "Symbol":
        """Windowed sign(xi - eta).  Provided for constraint experiments
        only; no boundedness is asserted for it."""
        return Symbol.difference(np.sign, window, label="sign")

    @staticmethod
    def measure_hat(measure: Measure, alpha: float = 1.0, beta: float = -1.0,
                    label: str = "measure") -> "Symbol":
        return Symbol(
            form="measure_hat",
            func=lambda xi, eta: measure.hat(alpha * np.asarray(xi)
                                             + beta * np.asarray(eta)),
            measure=measure, alpha=float(alpha), beta=float(beta),
            label=label)

    def __call__(self, xi, eta):
        return self.func(xi, eta)

    def m_l1(self, n: int = 1 << 16) -> float:
        """L1 mass of the difference profile over its window."""
        if self.form != "difference":
            raise ValueError("m_l1 needs a difference-form symbol")
        lo, hi = self.m_window
        v = np.linspace(lo, hi, n)
        return float(_trapz(np.abs(self.m_profile(v)), v))


# ---------------------------------------------------------------------------
# Linear multiplier
# ---------------------------------------------------------------------------


def apply_linear_multiplier(m, f: SampledFunction) -> SampledFunction:
    """T_m f = inverse transform of m(xi) fhat(xi)."""
    fh = fourier(f)
    xi = fh.grid.nodes()
    mv = np.asarray(m(xi) if callable(m) else m, dtype=complex)
    if mv.shape != xi.shape:
        raise ValueError("multiplier window does not match the dual grid")
    out = inverse_fourier(SampledFunction(fh.grid, mv * fh.values))
    return SampledFunction(f.grid, out.values, support_hint=f.support_hint,
                           bandlimit_hint=f.bandlimit_hint)


# ---------------------------------------------------------------------------
# B_m evaluation paths
# ---------------------------------------------------------------------------


def _band_indices(fh: SampledFunction) -> np.ndarray:
    mags = np.abs(fh.values)
    top = mags.max()
    if top == 0.0:
        return np.zeros(0, dtype=int)
    return np.nonzero(mags > BAND_CUT * top)[0]


def _direct(sym: Symbol, f: SampledFunction,
            g: SampledFunction) -> SampledFunction:
    """Double quadrature of the defining integral over the product
    frequency grid, accumulated per output frequency."""
    fh, gh = fourier(f), fourier(g)
    kf, kg = _band_indices(fh), _band_indices(gh)
    n = f.grid.n
    xi = fh.grid.nodes()
    C = np.zeros(n, dtype=complex)
    for k in kf:
        s = k + kg - n // 2
        ok = (s >= 0) & (s < n)
        if not ok.all():
            spill = np.abs(fh.values[k] * gh.values[kg[~ok]])
            if np.any(spill > BAND_CUT):
                raise SupportOverflowError(
                    "sum frequency leaves the grid; inputs are too wide-band")
        lv = kg[ok]
        C[s[ok]] += fh.values[k] * gh.values[lv] * np.asarray(
            sym.func(xi[k], xi[lv]), dtype=complex)
    dxi = f.grid.freq_spacing
    out = inverse_fourier(SampledFunction(f.grid.freq_grid(), dxi * C))
    return SampledFunction(f.grid, out.values, bandlimit_hint=_coef_band(f.grid, C))


def _coef_band(grid: Grid, C: np.ndarray) -> tuple[float, float] | None:
    """Measured output band of a coefficient vector on the dual grid."""
    nz = np.nonzero(np.abs(C) > BAND_CUT * max(np.max(np.abs(C)), 1e-300))[0]
    if len(nz) == 0:
        return None
    xi = grid.freq_grid().nodes()
    return (float(xi[nz[0]]), float(xi[nz[-1]]))


def _kernel(sym: Symbol, f: SampledFunction,
            g: SampledFunction) -> SampledFunction:
    """Space-side correlation against K = inverse transform of M:
    B(x) = integral of f(x-t) g(x+t) K(t) dt, one diagonal slice per
    kernel node.  Operands are treated as zero off the grid."""
    if sym.form != "difference":
        raise ValueError("kernel path needs a difference-form symbol")
    grid = f.grid
    n = grid.n
    Mv = sym.m_profile(grid.freq_grid().nodes())
    if not np.all(np.isfinite(Mv)):
        raise ValueError("M is not integrable on the window (kernel path)")
    K = inverse_fourier(SampledFunction(grid.freq_grid(), Mv)).values
    B = np.zeros(n, dtype=complex)
    fv, gv = f.values, g.values
    for i in range(n):
        ki = K[i]
        if ki == 0.0:
            continue
        off = i - n // 2
        # the discrete model is periodic, so the correlation wraps; for
        # slowly decaying kernels (discontinuous M) the truncated slice
        # would otherwise drift from the frequency-side paths
        B += ki * np.roll(fv, off) * np.roll(gv, -off)
    return SampledFunction(grid, grid.spacing * B)


def _halfsum(sym: Symbol, f: SampledFunction,
             g: SampledFunction) -> SampledFunction:
    """Rotated quadrature in the sum/difference variables u = xi + eta,
    v = xi - eta with the Jacobian factor 1/2.

    The product frequency lattice maps to the checkerboard u + v even (in
    index units): each of its cells has area 2 dxi^2, so the per-point
    weight is 2 dxi^2 * 1/2 = dxi^2, matching the direct path.  Sampling
    the hats between lattice points instead would change the quadrature
    by O(dxi) for discontinuous profiles and break the cross-method
    agreement contract.
    """
    if sym.form != "difference":
        raise ValueError("halfsum path needs a difference-form symbol")
    grid = f.grid
    n = grid.n
    dxi = grid.freq_spacing
    fh, gh = fourier(f), fourier(g)
    Mv = sym.m_profile(grid.freq_grid().nodes())
    C = np.zeros(n, dtype=complex)
    s_all = np.arange(n)
    for d in np.nonzero(np.abs(Mv) > 0)[0]:
        s = s_all[(s_all + d) % 2 == 0]  # u, v share parity on the lattice
        k = (s + d) // 2                 # index of (u + v)/2
        l = (s - d + n) // 2             # index of (u - v)/2
        ok = (k >= 0) & (k < n) & (l >= 0) & (l < n)
        C[s[ok]] += (2.0 * 0.5) * Mv[d] * fh.values[k[ok]] * gh.values[l[ok]]
    out = inverse_fourier(SampledFunction(grid.freq_grid(), dxi * C))
    return SampledFunction(grid, out.values, bandlimit_hint=_coef_band(grid, C))


def _convolution(sym: Symbol, f: SampledFunction,
                 g: SampledFunction) -> SampledFunction:
    """Change-of-variables path eta = xi - beta: for each beta in the
    window, the spectrum of f times the beta-shifted spectrum of g lands
    at the doubled output frequency 2 xi - beta."""
    if sym.form != "difference":
        raise ValueError("convolution path needs a difference-form symbol")
    grid = f.grid
    n = grid.n
    fh, gh = fourier(f), fourier(g)
    kf = _band_indices(fh)
    Mv = sym.m_profile(grid.freq_grid().nodes())
    dxi = grid.freq_spacing
    V = np.zeros(n, dtype=complex)
    for db in np.nonzero(np.abs(Mv) > 0)[0]:
        kg_idx = kf - db + n // 2
        ok = (kg_idx >= 0) & (kg_idx < n)
        k = kf[ok]
        q = 2 * k - db
        qok = (q >= 0) & (q < n)
        contrib = fh.values[k] * gh.values[k - db + n // 2] * Mv[db]
        if not qok.all() and np.any(np.abs(contrib[~qok]) > BAND_CUT):
            raise SupportOverflowError("doubled frequency leaves the grid")
        np.add.at(V, q[qok], dxi * contrib[qok])
    out = inverse_fourier(SampledFunction(grid.freq_grid(), V))
    return SampledFunction(grid, out.values, bandlimit_hint=_coef_band(grid, V))


def _space_side(sym: Symbol, f: SampledFunction,
                g: SampledFunction) -> SampledFunction:
    """Measure-hat symbols act directly in space as a superposition of
    translated products."""
    if sym.form != "measure_hat":
        raise ValueError("space-side path needs a measure-hat symbol")
    grid = f.grid
    out = np.zeros(grid.n, dtype=complex)
    a, b = sym.alpha, sym.beta
    for t, w in sym.measure.atoms:
        out += w * translate(f, a * t).values * translate(g, b * t).values
    if sym.measure.density is not None:
        rho = sym.measure.density
        tt = rho.grid.nodes()
        for i in np.nonzero(np.abs(rho.values) > 0)[0]:
            out += (rho.grid.spacing * rho.values[i]
                    * translate(f, a * tt[i]).values
                    * translate(g, b * tt[i]).values)
    return SampledFunction(grid, out)


_METHODS = {
    "direct": _direct,
    "kernel": _kernel,
    "halfsum": _halfsum,
    "convolution": _convolution,
    "space_side": _space_side,
}


def applicable_methods(sym: Symbol) -> list[str]:
    if sym.form == "difference":
        return ["direct", "kernel", "halfsum", "convolution"]
    if sym.form == "measure_hat":
        return ["direct", "space_side"]
    return ["direct"]


def evaluate_bm(sym: Symbol, f: SampledFunction, g: SampledFunction,
                method: str = "direct") -> SampledFunction:
    """Evaluate B_m(f, g) by the requested quadrature path."""
    if f.grid != g.grid:
        raise ValueError("operands must share a grid")
    try:
        impl = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; "
                         f"choose from {sorted(_METHODS)}") from None
    return impl(sym, f, g)


def spot_check_pairing(sym: Symbol, f: SampledFunction, g: SampledFunction,
                       x: float) -> complex:
    """Frequency-side pairing identity at a single point:

        B_M(f, g)(-x) = integral of (hat(tau_x g) * M)(xi)
                        hat(tau_x f)(xi) dxi.

    Costs one full convolution per point, so it is used as a spot check
    inside the cross-representation tests, not as an evaluation method.
    """
    if sym.form != "difference":
        raise ValueError("pairing spot check needs a difference-form symbol")
    grid = f.grid
    xi = grid.freq_grid().nodes()
    dxi = grid.freq_spacing
    tf = fourier(translate(f, x))
    tg = fourier(translate(g, x))
    conv = np.zeros(grid.n, dtype=complex)
    for k in _band_indices(tg):
        conv += tg.values[k] * sym.m_profile(xi - xi[k])
    conv *= dxi
    return complex(dxi * np.sum(conv * tf.values))


# ---------------------------------------------------------------------------
# Symbol algebra
# ---------------------------------------------------------------------------

_QUAD_POINTS = 513


def _profile_l1(pf, pwin, n: int = 1 << 14) -> float:
    u = np.linspace(pwin[0], pwin[1], n)
    return float(_trapz(np.abs(np.asarray(pf(u))), u))


def symbol_transform(sym: Symbol, op: str, *, shift=None,
                     t: float | None = None, phi=None, psi=None,
                     weight=None, m1=None, m2=None,
                     t_grid: np.ndarray | None = None):
    """Transform a symbol; returns (new_symbol, norm_propagation_factor).

    Translation and modulation carry factor 1; dilation carries the
    caller-supplied weight W(t) (default 1); convolve_with/multiply_hat
    carry the L1 mass of phi (given as a (callable, window) pair);
    psi_average carries the weighted L1 mass of psi; compose_linear the
    product of the two linear-multiplier norms.
    """
    base = sym.func
    if op == "translate":
        xi0, eta0 = shift
        if sym.form == "difference":
            v0 = xi0 - eta0
            prof = sym.m_profile
            new = Symbol.difference(
                lambda v: prof(np.asarray(v) - v0),
                (sym.m_window[0] + v0, sym.m_window[1] + v0),
                label=f"tau({sym.label})")
        else:
            new = Symbol.general(
                lambda xi, eta: base(np.asarray(xi) - xi0,
                                     np.asarray(eta) - eta0),
                label=f"tau({sym.label})")
        return new, 1.0

    if op == "modulate":
        xi0, eta0 = shift
        new = Symbol.general(
            lambda xi, eta: np.exp(
                2j * np.pi * (xi0 * np.asarray(xi) + eta0 * np.asarray(eta)))
            * np.asarray(base(xi, eta), dtype=complex),
            label=f"mod({sym.label})")
        return new, 1.0

    if op == "dilate":
        if t is None or t <= 0:
            raise ValueError("dilate needs t > 0")
        if sym.form == "difference":
            prof = sym.m_profile
            new = Symbol.difference(
                lambda v: prof(t * np.asarray(v)),
                (sym.m_window[0] / t, sym.m_window[1] / t),
                label=f"D{t:g}({sym.label})")
        else:
            new = Symbol.general(
                lambda xi, eta: base(t * np.asarray(xi), t * np.asarray(eta)),
                label=f"D{t:g}({sym.label})")
        return new, float(weight) if weight is not None else 1.0

    if op == "convolve_with":
        if sym.form != "difference":
            raise ValueError("convolve_with acts on difference symbols")
        pf, pwin = phi
        prof = sym.m_profile
        u = np.linspace(pwin[0], pwin[1], _QUAD_POINTS)
        w = np.asarray(pf(u), dtype=complex)

        def conv_prof(v):
            v = np.atleast_1d(np.asarray(v, dtype=float))
            return np.array([_trapz(w * prof(x - u), u) for x in v])

        new = Symbol.difference(
            conv_prof,
            (sym.m_window[0] + pwin[0], sym.m_window[1] + pwin[1]),
            label=f"conv({sym.label})")
        return new, _profile_l1(pf, pwin)

    if op == "multiply_hat":
        if sym.form != "difference":
            raise ValueError("multiply_hat acts on difference symbols")
        pf, pwin = phi
        prof = sym.m_profile
        u = np.linspace(pwin[0], pwin[1], _QUAD_POINTS)
        w = np.asarray(pf(u), dtype=complex)

        def hat_prof(v):
            v = np.atleast_1d(np.asarray(v, dtype=float))
            ph = np.exp(-2j * np.pi * np.multiply.outer(v, u))
            return _trapz(ph * w, u, axis=-1) * prof(v)

        new = Symbol.difference(hat_prof, sym.m_window,
                                label=f"hatmul({sym.label})")
        return new, _profile_l1(pf, pwin)

    if op == "psi_average":
        ts = np.geomspace(1e-3, 1e3, 1024) if t_grid is None \
            else np.asarray(t_grid, dtype=float)
        pv = np.asarray(psi(ts), dtype=float)
        wv = np.asarray([weight(tv) for tv in ts]) if weight is not None \
            else np.ones_like(ts)
        wl1 = float(_trapz(np.abs(pv) * wv, ts))
        if not np.isfinite(wl1):
            raise ValueError("psi is not integrable against the weight")
        # trapezoid weights on the (possibly non-uniform) t grid
        dt = np.empty_like(ts)
        dt[1:-1] = 0.5 * (ts[2:] - ts[:-2])
        dt[0] = 0.5 * (ts[1] - ts[0])
        dt[-1] = 0.5 * (ts[-1] - ts[-2])
        keep = np.nonzero(pv != 0.0)[0]

        def avg(xi, eta):
            xi = np.asarray(xi, dtype=float)
            eta = np.asarray(eta, dtype=float)
            acc = np.zeros(np.broadcast(xi, eta).shape, dtype=complex)
            for i in keep:
                acc = acc + pv[i] * dt[i] * np.asarray(
                    base(ts[i] * xi, ts[i] * eta), dtype=complex)
            return acc

        new = Symbol.general(avg, label=f"psi_avg({sym.label})")
        return new, wl1

    if op == "compose_linear":
        (f1, norm1), (f2, norm2) = m1, m2
        new = Symbol.general(
            lambda xi, eta: np.asarray(f1(np.asarray(xi)), dtype=complex)
            * np.asarray(base(xi, eta), dtype=complex)
            * np.asarray(f2(np.asarray(eta)), dtype=complex),
            label=f"compose({sym.label})")
        return new, float(norm1) * float(norm2)

    raise ValueError(f"unknown symbol transform {op!r}")


# ---------------------------------------------------------------------------
# Operator-norm lower-bound search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    constant_claimed: float
    lhs: float
    rhs: float
    ratio: float
    witness: dict

    @property
    def passed(self) -> bool:
        return self.ratio <= 1.0


def _search_method(sym: Symbol) -> str:
    if sym.form == "measure_hat":
        return "space_side"
    if sym.form == "difference":
        return "kernel"
    return "direct"


def opnorm_lower_search(sym: Symbol, phi1: YoungFunction,
                        phi2: YoungFunction, phi3: YoungFunction,
                        family: str, budget: int, seed: int,
                        grid: Grid | None = None) -> BoundCheck:
    """Max over sampled (f, g) of N3(B_m(f, g)) / (N1(f) N2(g)).

    The result is a certified lower bound for the operator norm; the
    maximizing witness is recorded.  Deterministic under the seed: each
    trial derives its generator from (seed, trial index), so the outcome
    does not depend on how trials are scheduled.
    """
    from .testfunctions import sample_pair

    if budget < 1:
        raise ValueError("budget must be at least 1")
    grid = grid or Grid(16.0, 1024)
    method = _search_method(sym)
    best_ratio, best_trial, best_lhs, best_rhs = 0.0, None, 0.0, 0.0
    for trial in range(budget):
        rng = np.random.default_rng((seed, trial))
        f, g = sample_pair(family, grid, rng)
        n1 = luxemburg_norm(f, phi1)
        n2 = luxemburg_norm(g, phi2)
        if n1 == 0.0 or n2 == 0.0:
            continue
        try:
            b = evaluate_bm(sym, f, g, method=method)
        except SupportOverflowError:
            continue
        n3 = luxemburg_norm(b, phi3)
        ratio = n3 / (n1 * n2)
        if ratio > best_ratio:
            best_ratio, best_trial = ratio, trial
            best_lhs, best_rhs = n3, n1 * n2
    return BoundCheck(constant_claimed=math.nan, lhs=best_lhs, rhs=best_rhs,
                      ratio=best_ratio,
                      witness={"family": family, "trial": best_trial,
                               "seed": seed, "method": method})
