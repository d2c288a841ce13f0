import math
from fractions import Fraction

import pytest

from helpers import solve_clamped_beam_midpoint
from nanotrap import CODATA, default_mwnt
from nanotrap.errors import DesignError
from nanotrap.singlewell import design_from_current_and_d, design_from_current_and_y0
from nanotrap.stability import (
    BETA1,
    RB87_METAL_C4,
    NoiseSpectrum,
    StabilityBudget,
    casimir_polder_scale,
    current_noise_decoherence,
    frequency_mismatch_flag,
    fundamental_mode_frequency,
    max_static_deflection,
    noise_spin_flip_rate,
    stability_report,
    static_deflection,
    thermal_sigma,
)

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="module")
def reference_trap(rb87):
    return design_from_current_and_d(100e-6, 10.0, 0.067, rb87)


def test_shot_noise_spin_flip_rate(rb87):
    trap = design_from_current_and_y0(100e-6, 180e-9, 0.067, rb87, warn_weak=False)
    rate = noise_spin_flip_rate(trap, NoiseSpectrum.shot_noise(), rb87)
    assert rate == pytest.approx(0.051, rel=0.10)
    assert rate == pytest.approx(0.0509902, rel=1e-5)


def test_spin_flip_rate_zero_for_quiet_current(rb87):
    trap = design_from_current_and_y0(100e-6, 180e-9, 0.067, rb87, warn_weak=False)
    assert noise_spin_flip_rate(trap, NoiseSpectrum.constant(0.0), rb87) == 0.0


def test_spin_flip_rate_distance_scaling(rb87):
    near = design_from_current_and_y0(100e-6, 200e-9, 0.067, rb87, warn_weak=False)
    far = design_from_current_and_y0(100e-6, 400e-9, 0.067, rb87, warn_weak=False)
    spectrum = NoiseSpectrum.shot_noise()
    ratio = noise_spin_flip_rate(near, spectrum, rb87) / noise_spin_flip_rate(
        far, spectrum, rb87
    )
    assert ratio == pytest.approx(4.0, rel=1e-12)


def test_noise_spectrum_validation():
    with pytest.raises(DesignError):
        NoiseSpectrum(model="pink")
    with pytest.raises(DesignError):
        NoiseSpectrum(model="user_constant")
    with pytest.raises(DesignError):
        NoiseSpectrum(model="shot_noise_diffusive", s_constant=1.0)
    assert NoiseSpectrum.shot_noise().at_larmor(3e-4, 1e7) == pytest.approx(
        2.0 * CODATA.e * 3e-4 / 3.0, rel=1e-15
    )


def test_thermal_sigma_room_temperature(mwnt):
    sigma = thermal_sigma(mwnt, 300.0)
    assert 0.15e-9 <= sigma <= 0.35e-9


def test_thermal_sigma_scalings(mwnt):
    assert thermal_sigma(mwnt, 0.0) == 0.0
    assert thermal_sigma(mwnt, 1200.0) == pytest.approx(
        2.0 * thermal_sigma(mwnt, 300.0), rel=1e-12
    )
    longer = default_mwnt(L=2e-5, Ltot=4e-5)
    assert thermal_sigma(longer, 300.0) == pytest.approx(
        math.sqrt(8.0) * thermal_sigma(mwnt, 300.0), rel=1e-12
    )
    with pytest.raises(DesignError):
        thermal_sigma(mwnt, -1.0)


def test_fundamental_mode_frequency(mwnt):
    assert fundamental_mode_frequency(mwnt) == pytest.approx(
        TWO_PI * 11.9e6, rel=0.15
    )
    halved = default_mwnt(L=5e-6, Ltot=1e-5)
    assert fundamental_mode_frequency(halved) == pytest.approx(
        4.0 * fundamental_mode_frequency(mwnt), rel=1e-12
    )


def test_fundamental_mode_solid_cylinder_reduction(mwnt):
    expected = (
        (BETA1**2 / mwnt.L**2)
        * (mwnt.r_o / 2.0)
        * math.sqrt(mwnt.young / mwnt.density)
    )
    assert fundamental_mode_frequency(mwnt) == pytest.approx(expected, rel=1e-12)


def test_frequency_mismatch_flag(rb87, mwnt, reference_trap):
    ratio, ok = frequency_mismatch_flag(reference_trap, mwnt)
    assert ok and ratio == pytest.approx(11.9e6 / 4.6e3, rel=0.05)
    # boundary: a wire tuned so that omega_f equals the trap frequency
    stiffness_speed = (mwnt.r_o / 2.0) * math.sqrt(mwnt.young / mwnt.density)
    length = math.sqrt(BETA1**2 * stiffness_speed / reference_trap.omega)
    slow_wire = default_mwnt(L=length, Ltot=2 * length)
    ratio, ok = frequency_mismatch_flag(reference_trap, slow_wire)
    assert ratio == pytest.approx(1.0, rel=1e-9)
    assert not ok


def test_frequency_mismatch_scale_invariance(rb87, mwnt, reference_trap):
    faster_trap = design_from_current_and_d(200e-6, 10.0, 0.067, rb87)  # omega x4
    half_wire = default_mwnt(L=mwnt.L / 2.0, Ltot=mwnt.Ltot)  # omega_f x4
    r1, _ = frequency_mismatch_flag(reference_trap, mwnt)
    r2, _ = frequency_mismatch_flag(faster_trap, half_wire)
    assert r2 == pytest.approx(r1, rel=1e-12)


def test_current_noise_decoherence_reference(rb87, mwnt, reference_trap):
    ratio = current_noise_decoherence(reference_trap, mwnt, 300.0, rb87)
    assert ratio < 1e-8
    assert ratio == pytest.approx(3.1206e-9, rel=1e-4)
    assert current_noise_decoherence(reference_trap, mwnt, 0.0, rb87) == 0.0


def test_current_noise_distance_scaling(rb87, mwnt):
    # same omega and chi at half the distance: I -> I/4 keeps omega fixed
    near = design_from_current_and_y0(25e-6, 90e-9, 0.067, rb87, warn_weak=False)
    far = design_from_current_and_y0(100e-6, 180e-9, 0.067, rb87, warn_weak=False)
    assert near.omega == pytest.approx(far.omega, rel=1e-12)
    ratio = current_noise_decoherence(near, mwnt, 300.0, rb87) / (
        current_noise_decoherence(far, mwnt, 300.0, rb87)
    )
    assert ratio == pytest.approx(8.0, rel=1e-10)


def test_casimir_polder_scale_values():
    scale = casimir_polder_scale(1e-6, RB87_METAL_C4)
    assert scale == pytest.approx(RB87_METAL_C4 / (CODATA.hbar * 1e-24), rel=1e-15)
    assert scale == pytest.approx(1706.854, rel=1e-6)
    assert casimir_polder_scale(0.5e-6, RB87_METAL_C4) == pytest.approx(
        16.0 * scale, rel=1e-12
    )
    assert casimir_polder_scale(1e-6, 0.0) == 0.0
    with pytest.raises(DesignError):
        casimir_polder_scale(0.0)


def test_static_deflection_boundary_conditions(mwnt):
    assert static_deflection(0.0, mwnt, 1e-3, 2e-7) == 0.0
    assert static_deflection(mwnt.L, mwnt, 1e-3, 2e-7) == 0.0
    with pytest.raises(DesignError):
        static_deflection(-1e-9, mwnt, 1e-3, 2e-7)
    with pytest.raises(DesignError):
        static_deflection(2 * mwnt.L, mwnt, 1e-3, 2e-7)


def test_static_deflection_midpoint_identity(mwnt):
    current, x0 = 1e-3, 2e-7
    expected = CODATA.mu0 * current**2 * mwnt.L**4 / (
        1536.0 * math.pi * mwnt.young * mwnt.moment_of_inertia * x0
    )
    assert max_static_deflection(mwnt, current, x0) == pytest.approx(
        expected, rel=1e-12
    )


def test_static_deflection_magnitude(mwnt):
    # large-current pair at 200 nm half-separation: tenths of an Angstrom
    deflection = max_static_deflection(mwnt, 1e-3, 200e-9)
    assert 0.01e-9 <= deflection <= 0.09e-9
    assert deflection / 0.03e-9 == pytest.approx(1.0, abs=2.0)


def test_static_deflection_against_fd_beam_solve(mwnt):
    current, x0 = 1e-3, 2e-7
    fd_value = solve_clamped_beam_midpoint(mwnt, current, x0)
    assert max_static_deflection(mwnt, current, x0) == pytest.approx(
        fd_value, rel=1e-6
    )


def test_beam_shape_satisfies_ode_exactly():
    # psi(s) = s^2 (1-s)^2 / 24 solves psi'''' = 1: the fourth difference,
    # taken in exact rational arithmetic on a 1000-interval grid, is 1
    # everywhere (float arithmetic cannot resolve this below ~1e-5)
    h = Fraction(1, 1000)

    def psi(s):
        return s * s * (1 - s) ** 2 / 24

    worst = Fraction(0)
    for i in range(2, 999):
        s = i * h
        d4 = (
            psi(s - 2 * h) - 4 * psi(s - h) + 6 * psi(s) - 4 * psi(s + h) + psi(s + 2 * h)
        ) / h**4
        worst = max(worst, abs(d4 - 1))
    assert worst == 0


def test_beam_module_matches_uniform_load_shape(mwnt):
    current, x0 = 1e-3, 2e-7
    load = CODATA.mu0 * current**2 / (4.0 * math.pi * x0)
    scale = load * mwnt.L**4 / (mwnt.young * mwnt.moment_of_inertia)
    for s in (0.1, 0.25, 0.5, 0.8):
        expected = scale * s * s * (1.0 - s) ** 2 / 24.0
        assert static_deflection(s * mwnt.L, mwnt, current, x0) == pytest.approx(
            expected, rel=1e-12
        )


def test_stability_report_reference_passes(rb87, mwnt, reference_trap):
    report = stability_report(reference_trap, mwnt, 300.0, rb87)
    assert report.passed
    assert report.flags == {
        "gamma_sf": True,
        "sigma_thermal": True,
        "omega_f": True,
        "gamma_c_over_omega": True,
        "v_cp_scale": True,
        "deflection_max": True,
        "loss_per_osc": True,
    }
    assert report.loss_per_osc == pytest.approx(1.407e-6, rel=1e-3)
    assert report.adiabaticity == 0.067


def test_stability_report_flags_high_chi(rb87, mwnt):
    leaky = design_from_current_and_d(100e-6, 10.0, 0.5, rb87)
    report = stability_report(leaky, mwnt, 300.0, rb87)
    assert not report.flags["loss_per_osc"]
    assert not report.passed


def test_stability_report_is_deterministic(rb87, mwnt, reference_trap):
    a = stability_report(reference_trap, mwnt, 300.0, rb87).to_json()
    b = stability_report(reference_trap, mwnt, 300.0, rb87).to_json()
    assert a == b


def test_stability_report_serialization_schema(rb87, mwnt, reference_trap):
    doc = stability_report(reference_trap, mwnt, 300.0, rb87).to_dict()
    assert set(doc) == {"metrics", "inputs", "pass"}
    for block in doc["metrics"].values():
        assert set(block) == {"value", "unit", "threshold", "pass"}
        assert block["value"] >= 0.0
        assert math.isfinite(block["value"])


def test_stability_estimates_finite_over_reference_set(rb87, mwnt):
    for current_ua, d in [(1000, 10), (250, 5), (250, 10), (100, 5), (100, 10), (50, 5), (25, 5)]:
        trap = design_from_current_and_d(current_ua * 1e-6, d, 0.067, rb87)
        report = stability_report(trap, mwnt, 300.0, rb87)
        for name in (
            "gamma_sf",
            "sigma_thermal",
            "omega_f",
            "gamma_c_over_omega",
            "v_cp_scale",
            "deflection_max",
            "loss_per_osc",
        ):
            value = getattr(report, name)
            assert math.isfinite(value) and value >= 0.0


def test_budget_is_configurable(rb87, mwnt, reference_trap):
    strict = StabilityBudget(gamma_sf_max=1e-9)
    report = stability_report(reference_trap, mwnt, 300.0, rb87, budget=strict)
    assert not report.flags["gamma_sf"]
