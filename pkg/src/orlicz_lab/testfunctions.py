"""Random test-function families for the operator-norm search harness.

Each family draws a pair (f, g) from a reproducible generator.  Supports
are kept well inside the grid so that translations by moderate amounts
and frequency doubling stay representable.
"""

from __future__ import annotations

import numpy as np

from .function_lab import Grid, SampledFunction, gaussian, indicator, modulate

FAMILIES = ("indicators", "gaussians", "modulated_translates",
            "rademacher_combs")


def _one_indicator(grid: Grid, rng: np.random.Generator) -> SampledFunction:
    a = 2.0 ** rng.integers(-4, 5)
    span = grid.half_width / 2.0
    start = rng.uniform(-span, span - min(a, span))
    # snap the endpoints to grid nodes so translations stay exact
    dx = grid.spacing
    start = round(start / dx) * dx
    return indicator(grid, a, start)


def _one_gaussian(grid: Grid, rng: np.random.Generator) -> SampledFunction:
    s = 2.0 ** rng.uniform(-1.5, 1.5)
    c = rng.uniform(-grid.half_width / 4.0, grid.half_width / 4.0)
    x = grid.nodes()
    return SampledFunction(grid, np.exp(-np.pi * ((x - c) / s) ** 2))


def _one_modulated(grid: Grid, rng: np.random.Generator) -> SampledFunction:
    f = _one_gaussian(grid, rng)
    nu = rng.uniform(-4.0, 4.0)
    return modulate(f, nu)


def _one_comb(grid: Grid, rng: np.random.Generator) -> SampledFunction:
    n_teeth = int(rng.choice([4, 8]))
    signs = rng.choice([-1.0, 1.0], size=n_teeth)
    start = -float(n_teeth)
    vals = np.zeros(grid.n, dtype=complex)
    for k, eps in enumerate(signs):
        vals += eps * indicator(grid, 1.0, start + 2.0 * k).values
    return SampledFunction(grid, vals,
                           support_hint=(start, start + 2.0 * n_teeth - 1.0))


_SAMPLERS = {
    "indicators": _one_indicator,
    "gaussians": _one_gaussian,
    "modulated_translates": _one_modulated,
    "rademacher_combs": _one_comb,
}


def sample_one(family: str, grid: Grid,
               rng: np.random.Generator) -> SampledFunction:
    try:
        sampler = _SAMPLERS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; "
                         f"choose from {sorted(_SAMPLERS)}") from None
    return sampler(grid, rng)


def sample_pair(family: str, grid: Grid, rng: np.random.Generator):
    return sample_one(family, grid, rng), sample_one(family, grid, rng)
