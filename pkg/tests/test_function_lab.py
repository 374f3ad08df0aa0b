"""Grids, transforms, group actions, and the Luxemburg norm."""

import math

import numpy as np
import pytest

from orlicz_lab import (
    Grid,
    SampledFunction,
    SupportOverflowError,
    YoungFunction,
    convolve,
    dilate,
    fourier,
    gaussian,
    indicator,
    inverse_fourier,
    load_csv,
    luxemburg_norm,
    make_bandlimited,
    modular,
    modulate,
    parse_preset,
    save_csv,
    translate,
)

GRID = Grid(16.0, 1024)


def test_grid_basic():
    assert GRID.spacing == pytest.approx(32.0 / 1024)
    assert GRID.freq_spacing == pytest.approx(1.0 / 32.0)
    x = GRID.nodes()
    assert x[0] == -16.0 and x[-1] < 16.0
    assert len(x) == 1024


def test_grid_rejects_bad_n():
    with pytest.raises(ValueError):
        Grid(16.0, 1000)


def test_fourier_round_trip():
    f = gaussian(GRID, 1.0)
    back = inverse_fourier(fourier(f))
    assert np.max(np.abs(back.values - f.values)) < 1e-12


def test_fourier_gaussian_closed_form():
    # exp(-pi x^2) is its own Fourier transform
    f = gaussian(GRID, 1.0)
    fh = fourier(f)
    xi = GRID.freq_nodes()
    assert np.max(np.abs(fh.values - np.exp(-math.pi * xi ** 2))) < 1e-12


def test_fourier_indicator_is_sinc():
    # trapezoid quadrature across the jump limits accuracy to O(dx)
    f = indicator(GRID, 2.0, -1.0)  # chi_[-1,1]
    fh = fourier(f)
    xi = GRID.freq_nodes()
    expected = np.sinc(2.0 * xi) * 2.0
    assert np.max(np.abs(fh.values - expected)) < 2.0 * GRID.spacing


def test_translate_exact_cells():
    f = gaussian(GRID, 1.0)
    g = translate(f, 4.0)
    x = GRID.nodes()
    assert np.max(np.abs(g.values - np.exp(-math.pi * (x - 4.0) ** 2))) < 1e-12


def test_translate_inverse():
    f = gaussian(GRID, 1.0)
    g = translate(translate(f, 1.3), -1.3)
    assert np.max(np.abs(g.values - f.values)) < 1e-9


def test_modulate_shifts_spectrum():
    f = gaussian(GRID, 1.0)
    g = modulate(f, 2.0)  # e^{2 pi i 2 x} f(x)
    gh = fourier(g)
    fh_shift = translate(fourier(f), 2.0)
    assert np.max(np.abs(gh.values - fh_shift.values)) < 1e-9


def test_dilate_gaussian():
    f = make_bandlimited(GRID, lambda xi: np.exp(-2.0 * xi ** 2),
                         (-4.0, 4.0))
    g = dilate(f, 2.0)
    x = GRID.nodes()
    ref = np.interp(2.0 * x, x, f.values.real, left=0.0, right=0.0)
    inside = np.abs(2.0 * x) < 15.0
    assert np.max(np.abs(g.values.real - ref)[inside]) < 1e-6


def test_dilate_rejects_support_overflow():
    # stretching by 1/2 would push the support outside the grid
    f = indicator(GRID, 30.0, -15.0)
    with pytest.raises(SupportOverflowError):
        dilate(f, 0.5)


def test_modular_and_norm_power():
    # ||f||_{L^p} equals the Luxemburg norm for phi(x)=|x|^p
    f = gaussian(GRID, 1.0)
    p = 3.0
    phi = YoungFunction.power(p)
    lp = float(np.trapezoid(np.abs(f.values) ** p, GRID.nodes())) ** (1 / p)
    assert luxemburg_norm(f, phi) == pytest.approx(lp, rel=1e-8)
    assert modular(f, phi, lp) == pytest.approx(1.0, rel=1e-8)


def test_norm_indicator_closed_form():
    for a in (0.25, 1.0, 4.0):
        f = indicator(GRID, a)
        phi = YoungFunction.power(2.0)
        assert luxemburg_norm(f, phi) == pytest.approx(math.sqrt(a),
                                                       rel=1e-8)


def test_norm_scaling_homogeneity():
    f = gaussian(GRID, 1.0)
    phi = YoungFunction.exp_minus_one()
    n1 = luxemburg_norm(f, phi)
    n3 = luxemburg_norm(SampledFunction(GRID, 3.0 * f.values), phi)
    assert n3 == pytest.approx(3.0 * n1, rel=1e-8)


def test_norm_zero_function():
    z = SampledFunction(GRID, np.zeros(GRID.n, dtype=complex))
    assert luxemburg_norm(z, YoungFunction.power(2.0)) == 0.0


def test_convolve_matches_quadrature():
    f = gaussian(GRID, 1.0)
    g = indicator(GRID, 1.0, -0.5)
    h = convolve(f, g)
    x = GRID.nodes()
    j = GRID.index_of(0.5)
    ref = float(np.trapezoid(
        np.exp(-math.pi * (x[j] - x) ** 2) * g.values.real, x))
    assert h.values[j].real == pytest.approx(ref, rel=1e-6)


def test_make_bandlimited_spectrum():
    f = make_bandlimited(GRID, lambda xi: np.exp(-2.0 * xi ** 2),
                         (-4.0, 4.0))
    fh = fourier(f)
    xi = GRID.freq_nodes()
    band = np.abs(xi) < 3.9
    assert np.max(np.abs(fh.values[band]
                         - np.exp(-2.0 * xi[band] ** 2))) < 1e-10
    outside = np.abs(xi) > 4.1
    assert np.max(np.abs(fh.values[outside])) < 1e-12


def test_csv_round_trip(tmp_path):
    f = gaussian(GRID, 1.5)
    path = tmp_path / "f.csv"
    save_csv(f, str(path))
    g = load_csv(str(path))
    assert g.grid == f.grid
    assert np.array_equal(g.values, f.values)  # 17 digits: bit-exact


def test_parse_preset_variants():
    for spec in ("indicator:a=4", "gauss:s=1", "sinc:w=1", "bl-gauss"):
        f = parse_preset(spec, GRID)
        assert f.linf() > 0

    with pytest.raises(ValueError):
        parse_preset("mystery", GRID)
