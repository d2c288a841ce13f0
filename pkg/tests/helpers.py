"""Independent numerical oracles shared by the module and acceptance tests.

These deliberately avoid the code paths they check: the beam deflection is
re-solved as a finite-difference boundary-value problem, the WKB action is
re-integrated on a dense trapezoid grid, and trap minima are re-located by
Newton iteration on the analytic gradient before taking a finite-difference
Hessian.
"""

import math

import numpy as np

from nanotrap import CODATA
from nanotrap.magnetics import dimensionless_double_potential, potential_gradient, potential_at
from nanotrap.numerics import fd_hessian, minimize_newton_2d


def solve_clamped_beam_midpoint(wire, current, pair_half_separation, n=100):
    """Midspan deflection [m] of a clamped-clamped beam under the uniform
    magnetic line load, via a finite-difference BVP solve.

    Works on the dimensionless form psi'''' = 1 on [0, 1] with
    psi(0) = psi(1) = psi'(0) = psi'(1) = 0 and rescales at the end. The
    interior five-point fourth difference and the one-sided five-point
    first-derivative boundary stencils are all exact for quartics, so the
    discrete solution matches the continuum one to solver round-off.
    ``n`` must be even so the midpoint is a grid node.
    """
    if n % 2 != 0:
        raise ValueError("need an even number of intervals")
    h = 1.0 / n
    matrix = np.zeros((n - 1, n - 1))
    rhs = np.zeros(n - 1)
    # clamped slopes at both ends (psi_0 = psi_n = 0 already eliminated)
    matrix[0, 0:4] = (48.0, -36.0, 16.0, -3.0)
    matrix[1, n - 2] = 48.0
    matrix[1, n - 3] = -36.0
    matrix[1, n - 4] = 16.0
    matrix[1, n - 5] = -3.0
    row = 2
    for i in range(2, n - 1):
        for offset, weight in ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)):
            j = i + offset
            if 1 <= j <= n - 1:
                matrix[row, j - 1] += weight
        rhs[row] = h**4
        row += 1
    psi = np.linalg.solve(matrix, rhs)
    load = CODATA.mu0 * current**2 / (4.0 * math.pi * pair_half_separation)
    scale = load * wire.L**4 / (wire.young * wire.moment_of_inertia)
    return scale * psi[n // 2 - 1]


def dense_wkb_action(dx, dy, chi, x_a, x_b, n=1_000_001):
    """Barrier action re-integrated with an n-point trapezoid rule."""
    xs = np.linspace(x_a, x_b, n)
    excess = (
        dimensionless_double_potential(xs, np.full_like(xs, dy), dx, dy, chi)
        - 1.0 / chi
        - 1.0
    )
    integrand = np.sqrt(2.0 * np.clip(excess, 0.0, None))
    return float(np.trapezoid(integrand, xs))


def hessian_frequencies_at(layout, bias, species, start, l0, fd_step=1e-4):
    """Finite-difference eigenfrequencies of mu |B| at the minimum nearest
    ``start``; returns (omega_low, omega_high, minimum)."""

    def grad(p):
        return potential_gradient(p, layout, bias, species)

    minimum = minimize_newton_2d(
        grad,
        np.asarray(start, dtype=float),
        grad_tol=1e-9 * species.mu * bias.Bz / l0,
        jac_step=1e-5 * l0,
    )

    def f(x, y):
        return potential_at((x, y, 0.0), layout, bias, species)

    hess = fd_hessian(f, minimum, fd_step * l0)
    eigenvalues = np.linalg.eigvalsh(hess)
    w_low, w_high = np.sqrt(eigenvalues / species.mass)
    return float(w_low), float(w_high), minimum
