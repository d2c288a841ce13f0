"""Magnetic fields and trapping potentials for one- and two-wire
waveguide geometries.

Wires are treated as infinite straight conductors along z at transverse
positions (x_w, 0), so every field is a function of the transverse
coordinates only and the z component of the total field equals the
longitudinal bias exactly. Co-propagating currents are assumed for wire
pairs. Two equivalent evaluators are provided: a dimensionful one
(Tesla / Joule) and the dimensionless form in oscillator units
(lengths in l0, energies in hbar*omega) that depends only on the reduced
geometry (d, or dx and dy) and on chi = hbar*omega / (mu*Bz).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA, AtomSpecies
from .errors import DesignError, SingularPointError

# Exclusion radius around a wire axis for dimensionful evaluation [m].
WIRE_AXIS_EPS = 1e-12
# Same guard for the dimensionless evaluators, in units of l0.
DIMENSIONLESS_AXIS_EPS = 1e-9


@dataclass(frozen=True)
class BiasFields:
    """Homogeneous bias fields: transverse Bx >= 0 and longitudinal Bz > 0 [T].

    Bz must be positive; it keeps the Larmor frequency finite and
    suppresses spin flips at the trap minimum.
    """

    Bx: float
    Bz: float

    def __post_init__(self) -> None:
        if not self.Bz > 0.0:
            raise DesignError("Bz must be positive (Majorana suppression)")
        if self.Bx < 0.0:
            raise DesignError("Bx must be non-negative")


@dataclass(frozen=True)
class WireLayout:
    """Parallel wires along z at transverse offsets ``positions`` [m],
    each carrying the same co-propagating current [A]."""

    positions: tuple[float, ...]
    current: float

    def __post_init__(self) -> None:
        if not self.current > 0.0:
            raise DesignError("wire current must be positive")
        if len(self.positions) == 0:
            raise DesignError("layout needs at least one wire")

    @classmethod
    def single(cls, current: float, x_position: float = 0.0) -> "WireLayout":
        return cls(positions=(x_position,), current=current)

    @classmethod
    def pair(cls, current: float, half_separation: float) -> "WireLayout":
        """Two wires at -x0 and +x0."""
        if not half_separation > 0.0:
            raise DesignError("half_separation must be positive")
        return cls(positions=(-half_separation, half_separation), current=current)


def bias_for_trap_line(current: float, y0: float) -> float:
    """Transverse bias Bx = mu0 I / (2 pi y0) [T] that cancels the wire
    field on the line a height y0 above the wire."""
    if not (current > 0.0 and y0 > 0.0):
        raise DesignError("current and y0 must be positive")
    return CODATA.mu0 * current / (2.0 * math.pi * y0)


def field_at(
    point,
    layout: WireLayout,
    bias: BiasFields | None = None,
    eps: float = WIRE_AXIS_EPS,
) -> np.ndarray:
    """Total magnetic field [T] at a 3-space point (x, y, z).

    Sum of infinite-wire fields mu0 I / (2 pi r^2) * (-y, x - x_w, 0)
    plus the bias; with a bias the z component equals Bz exactly. Raises
    SingularPointError within ``eps`` of any wire axis. ``bias=None``
    returns the bare wire field (useful for superposition checks).
    """
    x = float(point[0])
    y = float(point[1])
    amp = CODATA.mu0 * layout.current / (2.0 * math.pi)
    bx = 0.0
    by = 0.0
    for xw in layout.positions:
        dx = x - xw
        r2 = dx * dx + y * y
        if r2 < eps * eps:
            raise SingularPointError(
                f"point within {eps} m of the wire axis at x = {xw}"
            )
        bx += amp * (-y) / r2
        by += amp * dx / r2
    if bias is None:
        return np.array([bx, by, 0.0])
    return np.array([bx + bias.Bx, by, bias.Bz])


def field_jacobian(point, layout: WireLayout, eps: float = WIRE_AXIS_EPS) -> np.ndarray:
    """Transverse Jacobian d(Bx, By)/d(x, y) [T/m] of the wire field.

    The bias is homogeneous so it does not contribute. For each wire the
    Jacobian is symmetric and traceless (curl- and divergence-free field).
    """
    x = float(point[0])
    y = float(point[1])
    amp = CODATA.mu0 * layout.current / (2.0 * math.pi)
    dbxdx = 0.0
    dbxdy = 0.0
    for xw in layout.positions:
        dx = x - xw
        r2 = dx * dx + y * y
        if r2 < eps * eps:
            raise SingularPointError(
                f"point within {eps} m of the wire axis at x = {xw}"
            )
        r4 = r2 * r2
        dbxdx += amp * 2.0 * y * dx / r4
        dbxdy += amp * (y * y - dx * dx) / r4
    return np.array([[dbxdx, dbxdy], [dbxdy, -dbxdx]])


def potential_at(
    point,
    layout: WireLayout,
    bias: BiasFields,
    species: AtomSpecies,
    eps: float = WIRE_AXIS_EPS,
) -> float:
    """Adiabatic trapping potential mu |B| [J]; bounded below by mu Bz."""
    b = field_at(point, layout, bias, eps)
    return species.mu * float(np.sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]))


def potential_gradient(
    point,
    layout: WireLayout,
    bias: BiasFields,
    species: AtomSpecies,
    eps: float = WIRE_AXIS_EPS,
) -> np.ndarray:
    """Transverse gradient of mu |B| [J/m], analytic.

    grad |B| = (B . dB/dx_i) / |B|; only the transverse components vary.
    """
    b = field_at(point, layout, bias, eps)
    jac = field_jacobian(point, layout, eps)
    norm = float(np.sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]))
    bt = b[:2]
    return species.mu * (bt @ jac) / norm


def _as_coords(x, y):
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    return xs, ys


def _maybe_scalar(arr):
    return float(arr) if arr.ndim == 0 else arr


def dimensionless_single_potential(
    x,
    y,
    d: float,
    chi: float,
    x_offset: float = 0.0,
    eps: float = DIMENSIONLESS_AXIS_EPS,
):
    """Single-wire trap potential in units of hbar*omega.

    Coordinates are in units of l0, the wire sits at (-x_offset, 0) and
    the trap-line bias Bx = mu0 I/(2 pi y0) is built in, so the minimum is
    exactly V = 1/chi at (x, y) = (-x_offset, d) with d = y0/l0. For
    |x_perp| -> infinity the potential approaches
    (1 + chi d^2)^(1/2) / chi. Accepts scalars or numpy arrays.
    """
    if not (d > 0.0 and chi > 0.0):
        raise DesignError("d and chi must be positive")
    xs, ys = _as_coords(x, y)
    u = xs + x_offset
    r2 = u * u + ys * ys
    if np.any(r2 < eps * eps):
        raise SingularPointError(
            f"evaluation within {eps} l0 of the wire axis at ({-x_offset}, 0)"
        )
    d2 = d * d
    num = d2 * (r2 - d * ys) ** 2 + d2 * d2 * (u * u)
    chi_v = np.sqrt(1.0 + chi * num / (r2 * r2))
    return _maybe_scalar(chi_v / chi)


def dimensionless_double_potential(
    x,
    y,
    dx: float,
    dy: float,
    chi: float,
    eps: float = DIMENSIONLESS_AXIS_EPS,
):
    """Two-wire bistable potential in units of hbar*omega.

    Coordinates in units of l0; the wires sit at (-dx, 0) and (+dx, 0)
    and the bias Bx = mu0 I/(2 pi y0) is built in. For dx > dy the two
    minima lie at (+-sqrt(dx^2 - dy^2), dy) with value 1/chi; the saddle
    between them sits on the symmetry axis at (0, dx). Accepts scalars or
    numpy arrays.
    """
    if not (dx > dy > 0.0):
        raise DesignError("need dx > dy > 0 for a bistable geometry")
    if not chi > 0.0:
        raise DesignError("chi must be positive")
    xs, ys = _as_coords(x, y)
    r1 = (xs + dx) ** 2 + ys * ys
    r2 = (xs - dx) ** 2 + ys * ys
    if np.any(r1 < eps * eps) or np.any(r2 < eps * eps):
        raise SingularPointError(
            f"evaluation within {eps} l0 of a wire axis at (+-{dx}, 0)"
        )
    term_x = -ys / r1 - ys / r2 + 1.0 / dy
    term_y = (xs + dx) / r1 + (xs - dx) / r2
    prefactor = chi * dy**4 / (1.0 - (dy / dx) ** 2)
    chi_v = np.sqrt(1.0 + prefactor * (term_x * term_x + term_y * term_y))
    return _maybe_scalar(chi_v / chi)


def single_minimum(d: float, x_offset: float = 0.0) -> tuple[float, float]:
    """Location (in l0 units) of the single-well minimum."""
    return (-x_offset, d)


def double_minima(dx: float, dy: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """The two double-well minima (in l0 units), at (+-sqrt(dx^2-dy^2), dy)."""
    if not dx > dy > 0.0:
        raise DesignError("need dx > dy > 0 for a bistable geometry")
    xm = math.sqrt(dx * dx - dy * dy)
    return ((-xm, dy), (xm, dy))


def double_saddle(dx: float, dy: float) -> tuple[float, float]:
    """Stationary saddle of the double-well potential, at (0, dx).

    On the symmetry axis x = 0 the bias is never fully cancelled when
    dx > dy; the residual transverse field |1/dy - 2y/(dx^2 + y^2)| is
    smallest at y = dx, which makes (0, dx) the stationary barrier top.
    Its height above the wells is what the closed-form barrier
    expression reproduces exactly.
    """
    if not dx > dy > 0.0:
        raise DesignError("need dx > dy > 0 for a bistable geometry")
    return (0.0, dx)


GRID_CSV_HEADER = "x_over_l0,y_over_l0,V_over_hbar_omega"


def potential_grid(evaluate, xs, ys):
    """Evaluate a dimensionless potential on a rectangular grid.

    Yields (x, y, V) tuples row-major in x: x varies fastest, y varies
    slowest. This fixed ordering keeps exported files diffable.
    """
    for y in ys:
        for x in xs:
            yield float(x), float(y), float(evaluate(x, y))


def format_grid_csv(rows) -> str:
    """Render grid rows as CSV with fixed 9-significant-digit scientific
    formatting."""
    lines = [GRID_CSV_HEADER]
    for x, y, v in rows:
        lines.append(f"{x:.8e},{y:.8e},{v:.8e}")
    return "\n".join(lines) + "\n"
