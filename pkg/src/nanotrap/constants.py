"""Physical constants and the default atom/wire datasets.

Everything in this package works in SI units with angular frequencies
[rad/s]; conversion to the nu = omega/(2 pi), Gauss, nm, uA style of
presentation happens only at the CLI boundary. All modules share the
single CODATA table defined here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants consumed by the trap formulas.

    Attributes
    ----------
    mu0 : float
        Vacuum permeability [T m / A].
    hbar : float
        Reduced Planck constant [J s].
    kB : float
        Boltzmann constant [J / K].
    muB : float
        Bohr magneton [J / T].
    e : float
        Elementary charge [C].
    """

    mu0: float
    hbar: float
    kB: float
    muB: float
    e: float

    def __post_init__(self) -> None:
        for name in ("mu0", "hbar", "kB", "muB", "e"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"physical constant {name} must be positive")


CONSTANTS_VERSION = "CODATA-2018"

# CODATA 2018 recommended values.
CODATA = PhysicalConstants(
    mu0=1.25663706212e-06,
    hbar=1.054571817e-34,
    kB=1.380649e-23,
    muB=9.2740100783e-24,
    e=1.602176634e-19,
)


@dataclass(frozen=True)
class AtomSpecies:
    """An atom in a fixed weak-field-seeking hyperfine state.

    Attributes
    ----------
    mass : float
        Atomic mass [kg].
    F, mF : float
        Hyperfine and magnetic quantum numbers (dimensionless).
    gF : float
        Lande factor (dimensionless).
    a3d : float
        3D s-wave scattering length [m].
    """

    mass: float
    F: float
    mF: float
    gF: float
    a3d: float

    def __post_init__(self) -> None:
        if not self.mass > 0.0:
            raise ValueError("atomic mass must be positive")
        if abs(self.mF) > self.F:
            raise ValueError(f"|mF| = {abs(self.mF)} exceeds F = {self.F}")
        if not self.mu > 0.0:
            raise ValueError(
                "magnetic moment mF*gF*muB must be positive (weak-field seeker)"
            )
        if not self.a3d > 0.0:
            raise ValueError("3D scattering length must be positive")

    @property
    def mu(self) -> float:
        """Magnetic moment mF * gF * muB [J/T]."""
        return self.mF * self.gF * CODATA.muB


@dataclass(frozen=True)
class NanowireSpec:
    """Geometry and material of a doubly clamped suspended nanowire.

    Attributes
    ----------
    L : float
        Suspended length [m].
    Ltot : float
        Total wire length including the contacted parts [m]; must be >= L.
    r_o, r_i : float
        Outer and inner radius of the (hollow) cylinder [m]; r_i = 0 for a
        solid wire.
    young : float
        Young modulus [Pa].
    density : float
        Volume mass density [kg/m^3].
    conductivity : float
        Electrical conductivity [S/m].
    conduction_area : float or None
        Cross-section actually carrying current [m^2]; None means the full
        geometric cross-section.
    """

    L: float
    Ltot: float
    r_o: float
    r_i: float
    young: float
    density: float
    conductivity: float
    conduction_area: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.r_i < self.r_o:
            raise ValueError("need 0 <= r_i < r_o")
        if not 0.0 < self.L <= self.Ltot:
            raise ValueError("need 0 < L <= Ltot")
        for name in ("young", "density", "conductivity"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"wire parameter {name} must be positive")
        if self.conduction_area is not None and not self.conduction_area > 0.0:
            raise ValueError("conduction_area must be positive (or None)")

    @property
    def moment_of_inertia(self) -> float:
        """Area moment of inertia pi (r_o^4 - r_i^4) / 4 [m^4]."""
        return math.pi * (self.r_o**4 - self.r_i**4) / 4.0

    @property
    def cross_section(self) -> float:
        """Geometric cross-section pi (r_o^2 - r_i^2) [m^2]."""
        return math.pi * (self.r_o**2 - self.r_i**2)

    @property
    def lineal_density(self) -> float:
        """Mass per unit length, density * cross_section [kg/m]."""
        return self.density * self.cross_section

    @property
    def conducting_area(self) -> float:
        """Current-carrying cross-section [m^2] (defaults to the full one)."""
        if self.conduction_area is None:
            return self.cross_section
        return self.conduction_area


_SPECIES_KEYS = {
    "mass_kg": "mass",
    "F": "F",
    "mF": "mF",
    "gF": "gF",
    "a3d_m": "a3d",
}

_WIRE_KEYS = {
    "L_m": "L",
    "Ltot_m": "Ltot",
    "r_o_m": "r_o",
    "r_i_m": "r_i",
    "young_Pa": "young",
    "density_kg_m3": "density",
    "conductivity_S_m": "conductivity",
    "conduction_area_m2": "conduction_area",
}


def _from_document(doc: dict, keymap: dict[str, str], what: str) -> dict:
    unknown = set(doc) - set(keymap)
    if unknown:
        raise ValueError(f"unknown {what} keys: {sorted(unknown)}")
    missing = set(keymap) - set(doc)
    if missing:
        raise ValueError(f"missing {what} keys: {sorted(missing)}")
    return {attr: doc[key] for key, attr in keymap.items()}


def species_from_dict(doc: dict) -> AtomSpecies:
    """Build an AtomSpecies from a JSON-style document (keys mass_kg, F,
    mF, gF, a3d_m)."""
    return AtomSpecies(**_from_document(doc, _SPECIES_KEYS, "species"))


def species_to_dict(species: AtomSpecies) -> dict:
    return {key: getattr(species, attr) for key, attr in _SPECIES_KEYS.items()}


def wire_from_dict(doc: dict) -> NanowireSpec:
    """Build a NanowireSpec from a JSON-style document (keys L_m, Ltot_m,
    r_o_m, r_i_m, young_Pa, density_kg_m3, conductivity_S_m,
    conduction_area_m2)."""
    return NanowireSpec(**_from_document(doc, _WIRE_KEYS, "wire"))


def wire_to_dict(wire: NanowireSpec) -> dict:
    return {key: getattr(wire, attr) for key, attr in _WIRE_KEYS.items()}


def load_species(path) -> AtomSpecies:
    """Load an atom dataset from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        return species_from_dict(json.load(fh))


def load_wire(path) -> NanowireSpec:
    """Load a wire dataset from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        return wire_from_dict(json.load(fh))


@lru_cache(maxsize=1)
def _defaults_document() -> dict:
    text = resources.files(__package__).joinpath("data/defaults.json").read_text(
        encoding="utf-8"
    )
    return json.loads(text)


def defaults_version() -> int:
    """Version number of the compiled-in default dataset."""
    return _defaults_document()["version"]


def default_rb87(a3d: float | None = None) -> AtomSpecies:
    """87Rb in the stretched weak-field-seeking state |F, mF> = |2, 2>.

    gF = 1/2 for this state, so the moment is exactly one Bohr magneton.
    The scattering length defaults to 5.3 nm and may be overridden without
    touching any of the magnetic trap parameters.
    """
    doc = dict(_defaults_document()["rb87"])
    if a3d is not None:
        doc["a3d_m"] = a3d
    return species_from_dict(doc)


def default_mwnt(**overrides: float) -> NanowireSpec:
    """Default suspended multiwall-nanotube wire.

    A solid cylinder (r_o = 24 nm, Y = 1 TPa, rho = 1300 kg/m^3, L = 10 um)
    calibrated so that the fundamental flexural mode lands at
    2 pi x 11.9 MHz and the room-temperature thermal displacement in the
    0.2-0.3 nm range. Field names of `NanowireSpec` may be overridden.
    """
    doc = _defaults_document()["mwnt"]
    kwargs = {attr: doc[key] for key, attr in _WIRE_KEYS.items()}
    unknown = set(overrides) - set(kwargs)
    if unknown:
        raise ValueError(f"unknown wire parameters: {sorted(unknown)}")
    kwargs.update(overrides)
    return NanowireSpec(**kwargs)
