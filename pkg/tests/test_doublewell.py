import math

import numpy as np
import pytest

from helpers import dense_wkb_action, hessian_frequencies_at
from nanotrap.doublewell import (
    WkbResult,
    barrier_height,
    design_double,
    fig3_sweep,
    frequency_ratio,
    matched_separation,
    reference_omega0,
    saddle_check,
    tunneling_crossing,
    wkb_tunneling,
)
from nanotrap.errors import (
    AdiabaticityError,
    BistabilityError,
    DesignError,
    NoBarrierError,
)
from nanotrap.magnetics import dimensionless_double_potential, field_at

TWO_PI = 2.0 * math.pi

# Reference bistable configuration: chi = 0.067, I = 200 uA, x0 = 200 nm,
# y0 = 100 nm = x0/2.
CHI = 0.067
CURRENT = 200e-6
X0 = 200e-9
Y0 = 100e-9


@pytest.fixture(scope="module")
def reference_double(rb87):
    return design_double(CURRENT, X0, Y0, CHI, rb87)


def test_reference_omega0_value(rb87):
    omega0 = reference_omega0(CURRENT, X0, CHI, rb87)
    assert omega0 == pytest.approx(TWO_PI * 291e3, rel=0.05)
    assert omega0 == pytest.approx(TWO_PI * 290.1348e3, rel=1e-6)


def test_reference_omega0_current_scaling(rb87):
    base = reference_omega0(CURRENT, X0, CHI, rb87)
    assert reference_omega0(8.0 * CURRENT, X0, CHI, rb87) == pytest.approx(
        4.0 * base, rel=1e-12
    )
    with pytest.raises(AdiabaticityError):
        reference_omega0(CURRENT, X0, 1.2, rb87)


def test_frequency_ratio_values():
    assert frequency_ratio(X0, X0) == 0.0
    assert frequency_ratio(2.0, 1.0) == pytest.approx(0.75 ** (1.0 / 3.0), rel=1e-10)
    assert frequency_ratio(1.0, 0.99999) < 0.05
    with pytest.raises(DesignError):
        frequency_ratio(1.0, 2.0)


def test_frequency_ratio_monotone_to_zero():
    ratios = np.linspace(0.05, 0.999, 200)
    values = [frequency_ratio(1.0, r) for r in ratios]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < 0.1


def test_design_matches_reference_frequency(reference_double):
    trap = reference_double
    assert trap.omega / trap.omega0 == pytest.approx(0.75 ** (1.0 / 3.0), rel=1e-10)
    assert trap.omega / trap.omega0 == pytest.approx(
        frequency_ratio(trap.x0, trap.y0), rel=1e-10
    )
    assert trap.dx / trap.dy == pytest.approx(trap.x0 / trap.y0, rel=1e-12)


def test_minima_are_field_zeros(reference_double):
    trap = reference_double
    for point in trap.minima:
        b = field_at((point[0], point[1], 0.0), trap.layout, trap.bias)
        assert math.hypot(b[0], b[1]) < 1e-10 * trap.Bz
        value = dimensionless_double_potential(
            point[0] / trap.l0, point[1] / trap.l0, trap.dx, trap.dy, trap.chi
        )
        assert value == pytest.approx(1.0 / trap.chi, rel=1e-8)
    xm = math.sqrt(trap.x0**2 - trap.y0**2)
    assert trap.minima == ((-xm, trap.y0), (xm, trap.y0))


def test_bistability_guard(rb87):
    with pytest.raises(BistabilityError):
        design_double(CURRENT, 100e-9, 100e-9, CHI, rb87)
    with pytest.raises(BistabilityError):
        design_double(CURRENT, 90e-9, 100e-9, CHI, rb87)


def test_merging_minima_kills_the_frequency(rb87):
    nearly = design_double(CURRENT, X0, 0.999 * X0, CHI, rb87)
    assert nearly.omega / nearly.omega0 < 0.12
    assert nearly.tunneling_ratio is None  # barrier below one quantum


def test_barrier_height_values(reference_double):
    assert barrier_height(5.0, 5.0, CHI) == 0.0
    trap = reference_double
    assert trap.barrier_hbar_omega == pytest.approx(3.392164, rel=1e-6)
    assert 1.0 < trap.barrier_hbar_omega < 20.0  # a few well quanta
    from nanotrap import CODATA

    assert trap.barrier == pytest.approx(
        trap.barrier_hbar_omega * trap.omega * CODATA.hbar, rel=1e-10
    )


def test_barrier_equals_saddle_evaluation(reference_double):
    assert saddle_check(reference_double) < 1e-6


def test_temperature_scales(reference_double):
    from nanotrap import CODATA

    trap = reference_double
    assert trap.quantum_temperature == pytest.approx(
        CODATA.hbar * trap.omega / CODATA.kB, rel=1e-15
    )
    assert trap.barrier_temperature == pytest.approx(
        trap.barrier_hbar_omega * trap.quantum_temperature, rel=1e-10
    )
    # the well quantum sits in the uK range for the reference design
    assert 1e-6 < trap.quantum_temperature < 1e-4


def test_barrier_saddle_agreement_over_samples():
    rng = np.random.default_rng(13)
    for _ in range(200):
        dy = rng.uniform(1.0, 12.0)
        dx = dy * rng.uniform(1.05, 4.0)
        chi = rng.uniform(0.01, 0.5)
        direct = dimensionless_double_potential(0.0, dx, dx, dy, chi) - 1.0 / chi
        assert barrier_height(dx, dy, chi) == pytest.approx(direct, rel=1e-10)


def test_wkb_reference_values(reference_double):
    result = wkb_tunneling(reference_double)
    assert result.action == pytest.approx(28.13860, rel=1e-5)
    assert result.ratio == pytest.approx(6.0195e-13, rel=1e-4)
    assert result.ratio == pytest.approx(reference_double.tunneling_ratio, rel=1e-12)
    assert result.x_b == -result.x_a
    xm = math.sqrt(reference_double.dx**2 - reference_double.dy**2)
    assert -xm < result.x_a < 0.0 < result.x_b < xm


def test_wkb_turning_points_on_energy_contour(reference_double):
    trap = reference_double
    result = wkb_tunneling(trap)
    for x in (result.x_a, result.x_b):
        value = dimensionless_double_potential(x, trap.dy, trap.dx, trap.dy, trap.chi)
        assert value - 1.0 / trap.chi == pytest.approx(1.0, abs=1e-8)


def test_wkb_turning_point_matches_dense_scan(reference_double):
    trap = reference_double
    result = wkb_tunneling(trap)
    xm = math.sqrt(trap.dx**2 - trap.dy**2)
    xs = np.linspace(-xm, 0.0, 1_000_001)
    excess = (
        dimensionless_double_potential(xs, np.full_like(xs, trap.dy), trap.dx, trap.dy, trap.chi)
        - 1.0 / trap.chi
        - 1.0
    )
    negative = excess < 0.0
    crossing = np.nonzero(negative[:-1] & ~negative[1:])[0][-1]
    spacing = xs[1] - xs[0]
    assert xs[crossing] - spacing <= result.x_a <= xs[crossing + 1] + spacing


def test_wkb_action_matches_dense_quadrature(reference_double):
    trap = reference_double
    result = wkb_tunneling(trap)
    dense = dense_wkb_action(trap.dx, trap.dy, trap.chi, result.x_a, result.x_b)
    assert result.action == pytest.approx(dense, rel=1e-4)


def test_wkb_requires_a_barrier(rb87):
    shallow = design_double(CURRENT, X0, 0.95 * X0, CHI, rb87)
    assert shallow.tunneling_ratio is None
    with pytest.raises(NoBarrierError):
        wkb_tunneling(shallow)


def test_wkb_result_invariants():
    with pytest.raises(DesignError):
        WkbResult(x_a=1.0, x_b=-1.0, action=1.0, ratio=0.5)
    with pytest.raises(DesignError):
        WkbResult(x_a=-1.0, x_b=1.0, action=-1.0, ratio=0.5)
    with pytest.raises(DesignError):
        WkbResult(x_a=-1.0, x_b=1.0, action=1.0, ratio=1.5)


def test_matched_separation_scaling(rb87):
    omega0 = reference_omega0(CURRENT, X0, CHI, rb87)
    x0_big = matched_separation(1e-3, omega0, CHI, rb87)
    assert x0_big == pytest.approx(X0 * math.sqrt(5.0), rel=1e-8)
    assert reference_omega0(1e-3, x0_big, CHI, rb87) == pytest.approx(
        omega0, rel=1e-8
    )


def test_fig3_sweep_monotonicity(rb87):
    ratios = [0.5 + 0.025 * i for i in range(19)]
    rows = fig3_sweep(CURRENT, X0, CHI, rb87, ratios)
    assert [row.ratio for row in rows] == ratios
    freqs = [row.omega_over_omega0 for row in rows]
    assert all(a > b for a, b in zip(freqs, freqs[1:]))
    rates = [row.gamma_over_omega for row in rows if row.gamma_over_omega is not None]
    assert len(rates) >= 5
    assert all(a < b for a, b in zip(rates, rates[1:]))
    assert rates[0] < 1e-6  # deep suppression at small y0/x0
    assert rates[-1] > 0.05  # order one at the WKB edge
    assert any(row.gamma_over_omega is None for row in rows)  # sentinel rows


def test_fig3_sweep_validates_ratios(rb87):
    with pytest.raises(DesignError):
        fig3_sweep(CURRENT, X0, CHI, rb87, [0.5, 1.2])


def test_two_current_crossing_ordering(rb87):
    ratios = [0.5 + 0.025 * i for i in range(19)]
    omega0 = reference_omega0(CURRENT, X0, CHI, rb87)
    rows_small = fig3_sweep(CURRENT, X0, CHI, rb87, ratios)
    x0_big = matched_separation(1e-3, omega0, CHI, rb87)
    rows_big = fig3_sweep(1e-3, x0_big, CHI, rb87, ratios)
    crossing_small = tunneling_crossing(rows_small, threshold=1e-3)
    crossing_big = tunneling_crossing(rows_big, threshold=1e-3)
    # the larger current enters the tunneling regime at lower frequency
    assert crossing_big < crossing_small
    assert crossing_small - crossing_big > 0.1
    # at equal omega/omega0 the larger current tunnels less
    for small, big in zip(rows_small, rows_big):
        if small.gamma_over_omega is not None and big.gamma_over_omega is not None:
            assert big.gamma_over_omega < small.gamma_over_omega


def test_tunneling_crossing_threshold_ordering(rb87):
    ratios = [0.5 + 0.025 * i for i in range(19)]
    rows = fig3_sweep(CURRENT, X0, CHI, rb87, ratios)
    loose = tunneling_crossing(rows, threshold=1e-2)
    strict = tunneling_crossing(rows, threshold=1e-4)
    assert loose < strict  # larger rate threshold is reached deeper in the sweep
    with pytest.raises(DesignError):
        tunneling_crossing(rows, threshold=1e-30)


def test_double_well_hessian_frequency(rb87, reference_double):
    trap = reference_double
    w_low, w_high, minimum = hessian_frequencies_at(
        trap.layout, trap.bias, rb87, trap.minima[1], trap.l0
    )
    assert abs(w_low / trap.omega - 1.0) < 1e-2
    assert abs(w_high / trap.omega - 1.0) < 1e-2
    assert abs(w_high / w_low - 1.0) < 1e-6
    assert minimum[0] == pytest.approx(trap.minima[1][0], rel=1e-9)
    assert minimum[1] == pytest.approx(trap.minima[1][1], rel=1e-9)
