"""Single-wire trap design.

Maps between the design knobs (current I with reduced distance d and
adiabaticity chi, or current with explicit bias fields) and the full trap
parameter set (omega, l0, y0, Bx, Bz, Majorana loss), plus the numeric
harmonicity check of the analytic frequency against the full potential.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import CODATA, AtomSpecies
from .errors import AdiabaticityError, ConvergenceError, DesignError, WeakConfinementWarning
from .magnetics import BiasFields, WireLayout, potential_at, potential_gradient
from .numerics import DEFAULT_TOLERANCES, fd_hessian, minimize_newton_2d

# Below d = y0/l0 of about 5 the escape barrier drops under ~10 hbar*omega
# and the harmonic description of the well starts to fail.
WEAK_CONFINEMENT_D = 5.0

_REL = 1e-10  # tolerance for the coupled trap relations


def _check_relation(name: str, got: float, expected: float) -> None:
    if not math.isclose(got, expected, rel_tol=_REL, abs_tol=0.0):
        raise DesignError(
            f"inconsistent trap: {name} = {got!r}, expected {expected!r}"
        )


@dataclass(frozen=True)
class SingleWellTrap:
    """A designed single-wire trap.

    All fields are SI with angular frequencies; the coupled relations

        l0 = sqrt(hbar/(m omega)),  d = y0/l0,  Bx = mu0 I/(2 pi y0),
        chi = hbar omega/(mu Bz) = omega/omega_L

    are enforced at construction to 1e-10 relative, and chi must lie in
    (0, 1) for the adiabatic picture to hold.
    """

    current: float
    y0: float
    omega: float
    l0: float
    d: float
    chi: float
    Bx: float
    Bz: float
    loss_rate: float
    omega_L: float
    species: AtomSpecies

    def __post_init__(self) -> None:
        for name in ("current", "y0", "omega", "l0", "d", "Bx", "Bz"):
            if not getattr(self, name) > 0.0:
                raise DesignError(f"trap parameter {name} must be positive")
        if not 0.0 < self.chi < 1.0:
            raise AdiabaticityError(
                f"chi = {self.chi} outside (0, 1): need omega << omega_L"
            )
        m = self.species.mass
        mu = self.species.mu
        _check_relation("l0", self.l0, math.sqrt(CODATA.hbar / (m * self.omega)))
        _check_relation("d", self.d, self.y0 / self.l0)
        _check_relation(
            "Bx", self.Bx, CODATA.mu0 * self.current / (2.0 * math.pi * self.y0)
        )
        _check_relation("chi", self.chi, CODATA.hbar * self.omega / (mu * self.Bz))
        _check_relation("omega_L", self.omega_L, self.omega / self.chi)

    @property
    def confinement(self) -> str:
        """"confining" for d >= 5, "weak" below."""
        return "confining" if self.d >= WEAK_CONFINEMENT_D else "weak"

    @property
    def bias(self) -> BiasFields:
        return BiasFields(Bx=self.Bx, Bz=self.Bz)


def majorana_loss_rate(omega: float, chi: float) -> float:
    """Majorana spin-flip loss rate (pi omega / 2) exp(1 - 1/chi) [1/s]."""
    if not omega > 0.0:
        raise DesignError("omega must be positive")
    if not 0.0 < chi < 1.0:
        raise AdiabaticityError(f"chi = {chi} outside (0, 1)")
    return 0.5 * math.pi * omega * math.exp(1.0 - 1.0 / chi)


def escape_barrier(d: float, chi: float) -> float:
    """Barrier between the trap minimum and |x_perp| -> infinity, in
    units of hbar*omega: (sqrt(1 + chi d^2) - 1) / chi."""
    if d < 0.0:
        raise DesignError("d must be non-negative")
    if not chi > 0.0:
        raise DesignError("chi must be positive")
    return (math.sqrt(1.0 + chi * d * d) - 1.0) / chi


def _build_trap(
    current: float,
    omega: float,
    y0: float,
    chi: float,
    species: AtomSpecies,
    warn_weak: bool,
) -> SingleWellTrap:
    hbar = CODATA.hbar
    mu = species.mu
    l0 = math.sqrt(hbar / (species.mass * omega))
    d = y0 / l0
    bz = hbar * omega / (mu * chi)
    bx = CODATA.mu0 * current / (2.0 * math.pi * y0)
    trap = SingleWellTrap(
        current=current,
        y0=y0,
        omega=omega,
        l0=l0,
        d=d,
        chi=chi,
        Bx=bx,
        Bz=bz,
        loss_rate=majorana_loss_rate(omega, chi),
        omega_L=omega / chi,
        species=species,
    )
    if warn_weak and d < WEAK_CONFINEMENT_D:
        warnings.warn(
            f"d = y0/l0 = {d:.3g} < {WEAK_CONFINEMENT_D:g}: weakly confining trap",
            WeakConfinementWarning,
            stacklevel=3,
        )
    return trap


def design_from_current_and_d(
    current: float,
    d: float,
    chi: float,
    species: AtomSpecies,
    warn_weak: bool = True,
) -> SingleWellTrap:
    """Design a trap from the current, the reduced distance d = y0/l0 and
    the adiabaticity chi = hbar omega/(mu Bz).

    The frequency follows in closed form,

        omega = (m chi mu^2 / hbar^3) * (mu0 I / (2 pi d^2))^2,

    and grows as I^2 at fixed (d, chi) while falling as 1/d^4.
    """
    if not current > 0.0:
        raise DesignError("current must be positive")
    if not d > 0.0:
        raise DesignError("d must be positive")
    if not 0.0 < chi < 1.0:
        raise AdiabaticityError(
            f"chi = {chi} outside (0, 1): adiabatic approximation requires omega << omega_L"
        )
    mu = species.mu
    amp = CODATA.mu0 * current / (2.0 * math.pi * d * d)
    omega = (species.mass * chi * mu * mu / CODATA.hbar**3) * amp * amp
    l0 = math.sqrt(CODATA.hbar / (species.mass * omega))
    return _build_trap(current, omega, d * l0, chi, species, warn_weak)


def design_from_current_and_y0(
    current: float,
    y0: float,
    chi: float,
    species: AtomSpecies,
    warn_weak: bool = True,
) -> SingleWellTrap:
    """Design a trap from the current and the physical wire-cloud
    distance y0, solving the chi constraint self-consistently:

        omega^3 = (mu0 I / (2 pi y0^2))^2 * mu^2 chi / (m hbar).
    """
    if not (current > 0.0 and y0 > 0.0):
        raise DesignError("current and y0 must be positive")
    if not 0.0 < chi < 1.0:
        raise AdiabaticityError(f"chi = {chi} outside (0, 1)")
    mu = species.mu
    grad = CODATA.mu0 * current / (2.0 * math.pi * y0 * y0)
    omega = (grad * grad * mu * mu * chi / (species.mass * CODATA.hbar)) ** (1.0 / 3.0)
    return _build_trap(current, omega, y0, chi, species, warn_weak)


def design_from_fields(
    current: float,
    Bx: float,
    Bz: float,
    species: AtomSpecies,
    warn_weak: bool = True,
) -> SingleWellTrap:
    """Design a trap from the current and explicit bias fields.

    y0 = mu0 I/(2 pi Bx) and omega = sqrt(mu/(m Bz)) mu0 I/(2 pi y0^2);
    round-trips exactly with the other constructors.
    """
    if not (current > 0.0 and Bx > 0.0 and Bz > 0.0):
        raise DesignError("current, Bx and Bz must be positive")
    mu = species.mu
    y0 = CODATA.mu0 * current / (2.0 * math.pi * Bx)
    omega = math.sqrt(mu / (species.mass * Bz)) * CODATA.mu0 * current / (
        2.0 * math.pi * y0 * y0
    )
    chi = CODATA.hbar * omega / (mu * Bz)
    return _build_trap(current, omega, y0, chi, species, warn_weak)


def hessian_frequencies(
    trap: SingleWellTrap,
    fd_step: float = DEFAULT_TOLERANCES.fd_step,
    max_drift: float = 1e-3,
) -> tuple[float, float, np.ndarray]:
    """Locate the potential minimum and extract both transverse
    eigenfrequencies from a finite-difference Hessian of mu |B|.

    The wire sits at x = 0; a damped Newton search on the analytic
    gradient starts from the analytic minimum (0, y0) and must not drift
    by more than ``max_drift`` * l0. Returns (omega_low, omega_high,
    minimum) with the eigenfrequencies sorted ascending.
    """
    layout = WireLayout.single(trap.current)
    bias = trap.bias
    species = trap.species

    def grad(p):
        return potential_gradient(p, layout, bias, species)

    grad_scale = species.mu * trap.Bz / trap.l0
    start = np.array([0.0, trap.y0])
    minimum = minimize_newton_2d(
        grad,
        start,
        grad_tol=1e-9 * grad_scale,
        jac_step=1e-5 * trap.l0,
    )
    drift = float(np.hypot(minimum[0] - start[0], minimum[1] - start[1]))
    if drift > max_drift * trap.l0:
        raise ConvergenceError(
            f"located minimum drifted {drift / trap.l0:.3e} l0 from the analytic one"
        )

    def f(x, y):
        return potential_at((x, y, 0.0), layout, bias, species)

    hess = fd_hessian(f, minimum, fd_step * trap.l0)
    eigenvalues = np.linalg.eigvalsh(hess)
    if np.any(eigenvalues <= 0.0):
        raise ConvergenceError("Hessian at the located minimum is not positive")
    w_low, w_high = np.sqrt(eigenvalues / species.mass)
    return float(w_low), float(w_high), minimum


def numeric_frequency_check(
    trap: SingleWellTrap,
    fd_step: float = DEFAULT_TOLERANCES.fd_step,
    max_drift: float = 1e-3,
) -> float:
    """Maximum relative deviation between the analytic trap frequency and
    the two finite-difference Hessian eigenfrequencies of the full
    potential; small values confirm the harmonic description."""
    w_low, w_high, _ = hessian_frequencies(trap, fd_step, max_drift)
    return max(abs(w_low / trap.omega - 1.0), abs(w_high / trap.omega - 1.0))
