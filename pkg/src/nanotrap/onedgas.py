"""Characterization of the trapped 1D gas.

Covers the effective 1D scattering length under tight transverse
confinement with its confinement-induced resonance, the
Tonks-Girardeau / Thomas-Fermi crossover parameter eta = n_TF |a1d|,
and the longitudinal cloud size in either regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CODATA, AtomSpecies
from .errors import DesignError, ResonanceError

# Confinement coupling constant of s-wave scattering in a transverse
# harmonic guide.
OLSHANII_C = 1.4603

# Regime thresholds on eta; between them both cloud-length formulas agree
# to a few tens of percent, so the classification is soft there.
TG_ETA_MAX = 0.5
TF_ETA_MIN = 2.0

REGIME_TG = "TG"
REGIME_TF = "TF"
REGIME_CROSSOVER = "crossover"

# Relative half-width of the guard window around the resonance.
RESONANCE_WINDOW = 1e-6


def cir_position(l0: float) -> float:
    """3D scattering length at which the 1D coupling diverges:
    a = sqrt(2) l0 / C."""
    if not l0 > 0.0:
        raise DesignError("l0 must be positive")
    return math.sqrt(2.0) * l0 / OLSHANII_C


def a1d_from_confinement(
    a3d: float,
    l0: float,
    resonance_window: float = RESONANCE_WINDOW,
) -> float:
    """Effective 1D scattering length [m], signed:

        a1d = -(l0^2 / a) (1 - C a / (sqrt(2) l0)).

    Negative below the confinement-induced resonance, crossing zero at
    a = sqrt(2) l0 / C where the coupling g1d = -2 hbar^2/(m a1d)
    diverges; evaluation inside ``resonance_window`` (relative) of that
    point raises ResonanceError.
    """
    if not (a3d > 0.0 and l0 > 0.0):
        raise DesignError("a3d and l0 must be positive")
    a_res = cir_position(l0)
    if abs(a3d - a_res) < resonance_window * a_res:
        raise ResonanceError(
            f"a3d = {a3d} within {resonance_window:g} (relative) of the "
            f"confinement-induced resonance at {a_res}"
        )
    return -(l0 * l0 / a3d) * (1.0 - OLSHANII_C * a3d / (math.sqrt(2.0) * l0))


def g1d_from_a1d(a1d: float, species: AtomSpecies) -> float:
    """1D coupling constant g1d = -2 hbar^2 / (m a1d) [J m]."""
    if a1d == 0.0:
        raise DesignError("a1d must be nonzero")
    return -2.0 * CODATA.hbar**2 / (species.mass * a1d)


def tf_density(
    n_atoms: int,
    omega_z: float,
    a1d: float,
    species: AtomSpecies,
) -> float:
    """Central Thomas-Fermi density [1/m]:

        n_TF = [(9/64) N^2 (m omega_z / hbar)^2 |a1d|]^(1/3).

    The (m omega_z / hbar)^2 factor (inverse oscillator length to the
    fourth) is the only dimensionally consistent combination giving a
    line density.
    """
    if n_atoms < 1:
        raise DesignError("need at least one atom")
    if not omega_z > 0.0:
        raise DesignError("omega_z must be positive")
    if a1d == 0.0:
        raise DesignError("a1d must be nonzero")
    inv_lz2 = species.mass * omega_z / CODATA.hbar
    return ((9.0 / 64.0) * n_atoms**2 * inv_lz2 * inv_lz2 * abs(a1d)) ** (1.0 / 3.0)


def classify_regime(
    eta: float,
    tg_eta_max: float = TG_ETA_MAX,
    tf_eta_min: float = TF_ETA_MIN,
) -> str:
    """Tonks-Girardeau for small eta, Thomas-Fermi for large, crossover
    between the two thresholds."""
    if eta < 0.0:
        raise DesignError("eta must be non-negative")
    if not tg_eta_max < tf_eta_min:
        raise DesignError("need tg_eta_max < tf_eta_min")
    if eta < tg_eta_max:
        return REGIME_TG
    if eta > tf_eta_min:
        return REGIME_TF
    return REGIME_CROSSOVER


@dataclass(frozen=True)
class CloudLength:
    """Longitudinal cloud size with both regime candidates retained."""

    length: float
    regime: str
    tf_length: float
    tg_length: float
    eta: float
    n_tf: float


def cloud_length(
    n_atoms: int,
    omega_z: float,
    a1d: float,
    species: AtomSpecies,
    tg_eta_max: float = TG_ETA_MAX,
    tf_eta_min: float = TF_ETA_MIN,
) -> CloudLength:
    """Longitudinal size of the cloud [m].

    Thomas-Fermi: l = [3 N (hbar/(m omega_z))^2 / |a1d|]^(1/3);
    Tonks-Girardeau: l = [2 N hbar/(m omega_z)]^(1/2), independent of
    a1d. The regime is picked from eta; in the crossover both candidates
    are close, and their arithmetic mean is reported rather than an
    invented interpolation.
    """
    n_tf = tf_density(n_atoms, omega_z, a1d, species)
    eta = n_tf * abs(a1d)
    regime = classify_regime(eta, tg_eta_max, tf_eta_min)
    lz2 = CODATA.hbar / (species.mass * omega_z)  # oscillator length squared [m^2]
    tf_len = (3.0 * n_atoms * lz2 * lz2 / abs(a1d)) ** (1.0 / 3.0)
    tg_len = math.sqrt(2.0 * n_atoms * lz2)
    if regime == REGIME_TF:
        length = tf_len
    elif regime == REGIME_TG:
        length = tg_len
    else:
        length = 0.5 * (tf_len + tg_len)
    return CloudLength(
        length=length,
        regime=regime,
        tf_length=tf_len,
        tg_length=tg_len,
        eta=eta,
        n_tf=n_tf,
    )


@dataclass(frozen=True)
class GasProfile:
    """Full 1D-gas characterization for one trap configuration."""

    omega: float
    omega_z: float
    n_atoms: int
    a1d: float
    g1d: float
    eta: float
    regime: str
    length: float
    n_tf: float
    tf_length: float
    tg_length: float

    def __post_init__(self) -> None:
        if self.n_atoms < 1:
            raise DesignError("need at least one atom")
        if not self.omega_z < self.omega:
            raise DesignError("longitudinal confinement must satisfy omega_z < omega")


def characterize_gas(
    omega: float,
    omega_z: float,
    n_atoms: int,
    species: AtomSpecies,
) -> GasProfile:
    """Characterize N atoms in a guide of transverse frequency omega with
    longitudinal confinement omega_z << omega, using the species'
    3D scattering length."""
    if not (omega > 0.0 and omega_z > 0.0):
        raise DesignError("frequencies must be positive")
    l0 = math.sqrt(CODATA.hbar / (species.mass * omega))
    a1d = a1d_from_confinement(species.a3d, l0)
    g1d = g1d_from_a1d(a1d, species)
    cl = cloud_length(n_atoms, omega_z, a1d, species)
    return GasProfile(
        omega=omega,
        omega_z=omega_z,
        n_atoms=n_atoms,
        a1d=a1d,
        g1d=g1d,
        eta=cl.eta,
        regime=cl.regime,
        length=cl.length,
        n_tf=cl.n_tf,
        tf_length=cl.tf_length,
        tg_length=cl.tg_length,
    )


def max_atoms_for_wire(
    suspended_length: float,
    omega_z: float,
    a1d: float,
    species: AtomSpecies,
    fill_fraction: float = 1.0,
) -> int:
    """Largest atom number whose cloud fits within ``fill_fraction`` of
    the suspended wire length; 0 if even a single atom does not fit.

    The cloud length grows monotonically with N within each regime
    (N^(1/3) and N^(1/2)); after the bisection a local scan absorbs the
    tiny jumps the regime switch can introduce, so the returned N
    satisfies length(N) <= target < length(N + 1).
    """
    if not suspended_length > 0.0:
        raise DesignError("suspended_length must be positive")
    if not 0.0 < fill_fraction <= 1.0:
        raise DesignError("fill_fraction must lie in (0, 1]")
    target = fill_fraction * suspended_length

    def length(n: int) -> float:
        return cloud_length(n, omega_z, a1d, species).length

    if length(1) > target:
        return 0
    hi = 1
    while length(hi) <= target:
        hi *= 2
        if hi > 10**12:
            raise DesignError("cloud never exceeds the wire: unphysical inputs")
    lo = hi // 2  # length(lo) <= target < length(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if length(mid) <= target:
            lo = mid
        else:
            hi = mid
    while length(lo + 1) <= target:
        lo += 1
    while lo >= 1 and length(lo) > target:
        lo -= 1
    return lo
