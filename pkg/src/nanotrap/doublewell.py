"""Two-wire bistable trap design: minima, well frequency, barrier height
and the WKB tunneling rate between the wells.

Two co-propagating currents at (-x0, 0) and (+x0, 0) with the trap-line
bias Bx = mu0 I/(2 pi y0) produce, for x0 > y0, two field zeros at
y0 (+-sqrt(x0^2/y0^2 - 1), 1). Around each zero the potential is
parabolic and isotropic; the frequency, the barrier and the tunneling
exponent all reduce to functions of (dx, dy, chi) in oscillator units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA, AtomSpecies
from .errors import (
    AdiabaticityError,
    BistabilityError,
    BracketingError,
    DesignError,
    NoBarrierError,
)
from .magnetics import (
    BiasFields,
    WireLayout,
    dimensionless_double_potential,
    double_saddle,
    field_at,
)
from .numerics import (
    DEFAULT_TOLERANCES,
    ToleranceConfig,
    adaptive_integral,
    find_root_bracketed,
)

# Number of samples in the sign-change scan for the WKB turning points.
TURNING_POINT_SCAN = 10_000


@dataclass(frozen=True)
class WkbResult:
    """Classical turning points (in l0 units, on the line y = dy), the
    barrier action integral and the tunneling ratio e^(-action).

    The ratio is mathematically in (0, 1]; actions beyond ~709 underflow
    to an exact 0.0 in double precision and are kept as such.
    """

    x_a: float
    x_b: float
    action: float
    ratio: float

    def __post_init__(self) -> None:
        if not self.x_a < self.x_b:
            raise DesignError("turning points must satisfy x_a < x_b")
        if self.action < 0.0:
            raise DesignError("WKB action must be non-negative")
        if not 0.0 <= self.ratio <= 1.0:
            raise DesignError("tunneling ratio must lie in [0, 1]")


@dataclass(frozen=True)
class DoubleWellTrap:
    """A designed two-wire bistable trap (SI units, angular frequencies).

    ``minima`` holds the two physical minima in the transverse plane;
    ``barrier`` is the saddle height above the wells in Joule and
    ``barrier_hbar_omega`` the same in units of hbar*omega.
    ``tunneling_ratio`` is Gamma/omega, or None when the barrier is below
    one trap quantum and the WKB rate is undefined. ``omega0`` is the
    single-well reference frequency of the same current and x0 at
    y0 = x0/2.
    """

    current: float
    x0: float
    y0: float
    dx: float
    dy: float
    omega: float
    l0: float
    chi: float
    Bx: float
    Bz: float
    minima: tuple[tuple[float, float], tuple[float, float]]
    barrier: float
    barrier_hbar_omega: float
    tunneling_ratio: float | None
    omega0: float
    species: AtomSpecies

    def __post_init__(self) -> None:
        if not self.x0 > self.y0 > 0.0:
            raise BistabilityError("need x0 > y0 > 0 for two minima")
        if not math.isclose(self.dx / self.dy, self.x0 / self.y0, rel_tol=1e-12):
            raise DesignError("dx/dy must equal x0/y0")

    @property
    def bias(self) -> BiasFields:
        return BiasFields(Bx=self.Bx, Bz=self.Bz)

    @property
    def layout(self) -> WireLayout:
        return WireLayout.pair(self.current, self.x0)

    @property
    def quantum_temperature(self) -> float:
        """hbar omega / kB [K], the well level spacing as a temperature."""
        return CODATA.hbar * self.omega / CODATA.kB

    @property
    def barrier_temperature(self) -> float:
        """Barrier height D / kB [K]."""
        return self.barrier / CODATA.kB


def reference_omega0(
    current: float, x0: float, chi: float, species: AtomSpecies
) -> float:
    """Single-well reference frequency [rad/s] at fixed current and
    transverse bias, with the cloud at y0 = x0/2:

        omega0 = [(mu0 I / (2 pi y0^2))^2 mu^2 chi / (m hbar)]^(1/3).
    """
    if not (current > 0.0 and x0 > 0.0):
        raise DesignError("current and x0 must be positive")
    if not 0.0 < chi < 1.0:
        raise AdiabaticityError(f"chi = {chi} outside (0, 1)")
    y0 = 0.5 * x0
    grad = CODATA.mu0 * current / (2.0 * math.pi * y0 * y0)
    mu = species.mu
    return (grad * grad * mu * mu * chi / (species.mass * CODATA.hbar)) ** (1.0 / 3.0)


def frequency_ratio(x0: float, y0: float) -> float:
    """Well frequency relative to the y0 = x0/2 single-well reference:

        omega/omega0 = [(1/16) (x0/y0)^4 (1 - y0^2/x0^2)]^(1/3).

    Falls to zero as y0 -> x0, where the minima merge and the potential
    turns quartic.
    """
    if not x0 >= y0 > 0.0:
        raise DesignError("need x0 >= y0 > 0")
    ratio = x0 / y0
    return ((ratio**4 / 16.0) * (1.0 - 1.0 / (ratio * ratio))) ** (1.0 / 3.0)


def barrier_height(dx: float, dy: float, chi: float) -> float:
    """Saddle height above the wells in units of hbar*omega:

        D = chi^-1 [sqrt(1 + chi dy^2 (1 - dy/dx)/(1 + dy/dx)) - 1],

    exactly the potential at the stationary saddle (0, dx) minus the well
    value 1/chi. Vanishes as dy -> dx.
    """
    if not dx >= dy > 0.0:
        raise DesignError("need dx >= dy > 0")
    if not chi > 0.0:
        raise DesignError("chi must be positive")
    ratio = dy / dx
    inner = 1.0 + chi * dy * dy * (1.0 - ratio) / (1.0 + ratio)
    return (math.sqrt(inner) - 1.0) / chi


def _wkb_from_reduced(
    dx: float,
    dy: float,
    chi: float,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> WkbResult:
    """WKB tunneling integral along the line y = dy joining the minima.

    The energy sits one trap quantum above the potential floor 1/chi
    (the single-well ground-state energy), so the turning points are the
    roots of V(x, dy) - 1/chi = 1 bracketing the barrier and the
    integrand sqrt(2 [V - 1/chi - 1]) vanishes there. The substitution
    u^2 = x - x_a removes the square-root edge before the adaptive
    quadrature; by mirror symmetry the two halves are equal.
    """
    barrier = barrier_height(dx, dy, chi)
    if barrier <= 1.0:
        raise NoBarrierError(
            f"barrier {barrier:.4g} hbar*omega <= 1: no classically forbidden "
            "region at the well ground-state energy"
        )
    floor = 1.0 / chi

    def excess(x):
        return dimensionless_double_potential(x, dy, dx, dy, chi) - floor - 1.0

    x_min = -math.sqrt(dx * dx - dy * dy)  # left minimum on the line
    xs = np.linspace(x_min, 0.0, TURNING_POINT_SCAN + 1)
    values = excess(xs)
    negative = values < 0.0
    crossings = np.nonzero(negative[:-1] & ~negative[1:])[0]
    if len(crossings) == 0:
        raise BracketingError(
            f"no turning point found on the scan [{x_min}, 0] with "
            f"{TURNING_POINT_SCAN} samples"
        )
    k = int(crossings[-1])  # crossing adjacent to the barrier
    x_a = find_root_bracketed(
        excess,
        float(xs[k]),
        float(xs[k + 1]),
        tol=tolerances.root_abs_tol,
        max_iterations=tolerances.max_iterations,
    )
    x_b = -x_a

    def integrand(u: float) -> float:
        x = x_a + u * u
        value = excess(x)
        if value < 0.0:  # round-off just past the turning point
            value = 0.0
        return 2.0 * u * math.sqrt(2.0 * value)

    half = adaptive_integral(
        integrand, 0.0, math.sqrt(-x_a), rel_tol=tolerances.quad_rel_tol
    )
    action = 2.0 * half
    return WkbResult(x_a=x_a, x_b=x_b, action=action, ratio=math.exp(-action))


def design_double(
    current: float,
    x0: float,
    y0: float,
    chi: float,
    species: AtomSpecies,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> DoubleWellTrap:
    """Design the two-wire bistable trap.

    The well frequency follows from the field gradient at the zeros,

        omega = [mu^2 chi/(m hbar) (mu0 I/(2 pi))^2
                 (1/y0^2)(1/y0^2 - 1/x0^2)]^(1/3),

    and the two minima are verified to be transverse-field zeros of the
    dimensionful field. ``tunneling_ratio`` is filled whenever the
    barrier exceeds one trap quantum.
    """
    if not current > 0.0:
        raise DesignError("current must be positive")
    if not x0 > y0 > 0.0:
        raise BistabilityError(
            f"x0 = {x0} must exceed y0 = {y0} for a bistable potential"
        )
    if not 0.0 < chi < 1.0:
        raise AdiabaticityError(f"chi = {chi} outside (0, 1)")

    mu = species.mu
    hbar = CODATA.hbar
    amp = CODATA.mu0 * current / (2.0 * math.pi)
    curvature = (1.0 / y0**2) * (1.0 / y0**2 - 1.0 / x0**2)
    omega = (mu * mu * chi / (species.mass * hbar) * amp * amp * curvature) ** (
        1.0 / 3.0
    )
    l0 = math.sqrt(hbar / (species.mass * omega))
    dx = x0 / l0
    dy = y0 / l0
    bz = hbar * omega / (mu * chi)
    bx = amp / y0

    x_m = math.sqrt(x0 * x0 - y0 * y0)
    minima = ((-x_m, y0), (x_m, y0))
    layout = WireLayout.pair(current, x0)
    bias = BiasFields(Bx=bx, Bz=bz)
    for point in minima:
        b = field_at((point[0], point[1], 0.0), layout, bias)
        if math.hypot(b[0], b[1]) > 1e-10 * bz:
            raise DesignError(
                f"transverse field does not cancel at the minimum {point}"
            )

    barrier_ho = barrier_height(dx, dy, chi)
    if barrier_ho > 1.0:
        ratio = _wkb_from_reduced(dx, dy, chi, tolerances).ratio
    else:
        ratio = None

    return DoubleWellTrap(
        current=current,
        x0=x0,
        y0=y0,
        dx=dx,
        dy=dy,
        omega=omega,
        l0=l0,
        chi=chi,
        Bx=bx,
        Bz=bz,
        minima=minima,
        barrier=barrier_ho * hbar * omega,
        barrier_hbar_omega=barrier_ho,
        tunneling_ratio=ratio,
        omega0=reference_omega0(current, x0, chi, species),
        species=species,
    )


def wkb_tunneling(
    trap: DoubleWellTrap,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> WkbResult:
    """WKB tunneling rate Gamma/omega for a designed bistable trap.

    Raises NoBarrierError when the barrier is at or below one trap
    quantum.
    """
    return _wkb_from_reduced(trap.dx, trap.dy, trap.chi, tolerances)


def saddle_check(trap: DoubleWellTrap) -> float:
    """Relative difference between the closed-form barrier and the saddle
    evaluation of the dimensionless potential (independent code paths)."""
    sx, sy = double_saddle(trap.dx, trap.dy)
    v_saddle = dimensionless_double_potential(sx, sy, trap.dx, trap.dy, trap.chi)
    direct = v_saddle - 1.0 / trap.chi
    return abs(direct / trap.barrier_hbar_omega - 1.0)


def matched_separation(
    current: float,
    omega0_target: float,
    chi: float,
    species: AtomSpecies,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> float:
    """Wire half-separation x0 at which ``reference_omega0`` hits a given
    target, by scalar bisection (omega0 is monotone decreasing in x0).

    Used to compare tunneling curves of different currents at the same
    reference frequency: a larger current needs a larger separation.
    """
    if not omega0_target > 0.0:
        raise DesignError("omega0_target must be positive")

    def objective(x0: float) -> float:
        return reference_omega0(current, x0, chi, species) - omega0_target

    lo = hi = 1e-7  # start from 100 nm and grow a bracket
    while objective(lo) < 0.0:
        lo *= 0.5
        if lo < 1e-12:
            raise BracketingError("no separation below 1 pm matches omega0")
    while objective(hi) > 0.0:
        hi *= 2.0
        if hi > 1e-3:
            raise BracketingError("no separation below 1 mm matches omega0")
    x0 = find_root_bracketed(
        objective, lo, hi, tol=tolerances.root_abs_tol * hi,
        max_iterations=tolerances.max_iterations,
    )
    return x0


@dataclass(frozen=True)
class Fig3Row:
    """One point of a tunneling sweep at fixed current and separation."""

    ratio: float                     # y0 / x0
    omega_over_omega0: float
    gamma_over_omega: float | None   # None where the WKB rate is undefined


def fig3_sweep(
    current: float,
    x0: float,
    chi: float,
    species: AtomSpecies,
    ratio_grid,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> list[Fig3Row]:
    """Sweep y0/x0 at fixed current and separation.

    Each row carries omega/omega0 and Gamma/omega; rows whose barrier is
    at or below one trap quantum report gamma_over_omega = None and are
    rendered as an explicit sentinel downstream. Rows come back in input
    order.
    """
    rows: list[Fig3Row] = []
    for ratio in ratio_grid:
        r = float(ratio)
        if not 0.0 < r < 1.0:
            raise DesignError(f"y0/x0 ratio {r} outside (0, 1)")
        trap = design_double(current, x0, r * x0, chi, species, tolerances)
        rows.append(
            Fig3Row(
                ratio=r,
                omega_over_omega0=trap.omega / trap.omega0,
                gamma_over_omega=trap.tunneling_ratio,
            )
        )
    return rows


def tunneling_crossing(rows: list[Fig3Row], threshold: float = 1e-3) -> float:
    """omega/omega0 at which Gamma/omega first reaches ``threshold``,
    log-linearly interpolated between the bracketing sweep rows.

    The sweep must contain defined rates on both sides of the threshold;
    the "tunneling regime" label attached to this crossing is a
    convention, the threshold is configurable.
    """
    defined = [r for r in rows if r.gamma_over_omega is not None]
    defined.sort(key=lambda r: r.omega_over_omega0)
    # gamma falls as omega/omega0 grows; walk from the high-frequency side
    for low, high in zip(defined[:-1], defined[1:]):
        g_low, g_high = high.gamma_over_omega, low.gamma_over_omega
        if g_low <= threshold <= g_high:
            la, lb = math.log(g_low), math.log(g_high)
            t = (math.log(threshold) - la) / (lb - la)
            return high.omega_over_omega0 + t * (
                low.omega_over_omega0 - high.omega_over_omega0
            )
    raise DesignError(
        f"sweep does not bracket Gamma/omega = {threshold:g}; widen the grid"
    )
