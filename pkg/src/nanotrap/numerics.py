"""Deterministic numerical kernels: bracketed root finding, adaptive
quadrature, finite-difference derivatives and a small damped Newton
minimizer.

The kernels are pure functions of their inputs (same inputs, same bits)
and their default tolerances are chosen at least two orders of magnitude
tighter than any physics-level acceptance tolerance in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BracketingError, ConvergenceError


@dataclass(frozen=True)
class ToleranceConfig:
    """Accuracy budget shared by the numerical kernels.

    root_abs_tol is an absolute tolerance on dimensionless coordinates,
    quad_rel_tol a relative quadrature tolerance, fd_step a relative
    finite-difference step.
    """

    root_abs_tol: float = 1e-10
    quad_rel_tol: float = 1e-6
    fd_step: float = 1e-4
    max_iterations: int = 200

    def __post_init__(self) -> None:
        for name in ("root_abs_tol", "quad_rel_tol", "fd_step"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


DEFAULT_TOLERANCES = ToleranceConfig()


def find_root_bracketed(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOLERANCES.root_abs_tol,
    max_iterations: int = DEFAULT_TOLERANCES.max_iterations,
) -> float:
    """Root of ``f`` on a bracket [a, b] with ``f(a) * f(b) < 0``.

    Secant steps confined to the current bracket, with a bisection step
    whenever the secant point leaves the bracket or the previous step
    failed to halve it; the bisection fallback guarantees convergence.
    A linear ``f`` is solved exactly by the first secant step.
    """
    fa = f(a)
    if fa == 0.0:
        return a
    fb = f(b)
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise BracketingError(
            f"no sign change on [{a!r}, {b!r}]: f(a)={fa!r}, f(b)={fb!r}"
        )

    force_bisect = False
    for _ in range(max_iterations):
        width = abs(b - a)
        if width <= tol:
            return 0.5 * (a + b)
        if force_bisect or fb == fa:
            x = 0.5 * (a + b)
        else:
            x = b - fb * (b - a) / (fb - fa)
            lo, hi = (a, b) if a < b else (b, a)
            if not lo < x < hi:
                x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        force_bisect = abs(b - a) > 0.5 * width
    raise ConvergenceError(
        f"root not located to {tol} within {max_iterations} iterations"
    )


def _adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    # Richardson: |S_fine - S_coarse| / 15 estimates the fine-grid error.
    if abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if depth <= 0:
        raise ConvergenceError(
            f"quadrature did not converge on [{a!r}, {b!r}]: subdivision limit"
        )
    return _adaptive_simpson(
        f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1
    ) + _adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)


def adaptive_integral(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = DEFAULT_TOLERANCES.quad_rel_tol,
    max_depth: int = 48,
) -> float:
    """Integral of ``f`` over [a, b] by adaptive Simpson subdivision.

    The local acceptance test is the Richardson estimate of the classic
    adaptive Simpson scheme; intervals are split until the estimated
    error falls below ``rel_tol`` relative to the first whole-interval
    estimate. Integrable endpoint behaviour such as sqrt(x) is handled by
    subdivision alone; raises ConvergenceError past ``max_depth`` levels.
    """
    if a == b:
        return 0.0
    fa = f(a)
    fm = f(0.5 * (a + b))
    fb = f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    scale = abs(whole)
    if scale == 0.0:
        scale = abs(b - a) * max(abs(fa), abs(fm), abs(fb))
        if scale == 0.0:
            return 0.0
    return _adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * scale, max_depth)


def fd_hessian(
    f: Callable[[float, float], float],
    point,
    step,
) -> np.ndarray:
    """Central-difference Hessian of a 2D scalar function.

    ``step`` may be a scalar or a per-axis pair; the result is symmetric
    by construction.
    """
    x, y = float(point[0]), float(point[1])
    hs = np.broadcast_to(np.asarray(step, dtype=float), (2,))
    hx, hy = float(hs[0]), float(hs[1])
    if hx <= 0.0 or hy <= 0.0:
        raise ValueError("finite-difference steps must be positive")

    f0 = f(x, y)
    dxx = (f(x + hx, y) - 2.0 * f0 + f(x - hx, y)) / (hx * hx)
    dyy = (f(x, y + hy) - 2.0 * f0 + f(x, y - hy)) / (hy * hy)
    dxy = (
        f(x + hx, y + hy)
        - f(x + hx, y - hy)
        - f(x - hx, y + hy)
        + f(x - hx, y - hy)
    ) / (4.0 * hx * hy)
    return np.array([[dxx, dxy], [dxy, dyy]])


def minimize_newton_2d(
    grad: Callable[[np.ndarray], np.ndarray],
    start,
    grad_tol: float,
    jac_step: float,
    max_iterations: int = 50,
) -> np.ndarray:
    """Damped Newton search for a stationary point of a 2D potential.

    ``grad`` returns the (analytic) gradient; its Jacobian is formed by
    central differences with absolute step ``jac_step``. Steps are halved
    until the gradient norm decreases, which keeps the iteration inside
    the starting basin.
    """
    p = np.asarray(start, dtype=float).copy()
    g = np.asarray(grad(p), dtype=float)
    gn = float(np.hypot(g[0], g[1]))
    for _ in range(max_iterations):
        if gn <= grad_tol:
            return p
        jac = np.empty((2, 2))
        for j in range(2):
            dp = np.zeros(2)
            dp[j] = jac_step
            jac[:, j] = (np.asarray(grad(p + dp)) - np.asarray(grad(p - dp))) / (
                2.0 * jac_step
            )
        try:
            direction = -np.linalg.solve(jac, g)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular Jacobian in Newton step") from exc
        alpha = 1.0
        for _ in range(40):
            q = p + alpha * direction
            gq = np.asarray(grad(q), dtype=float)
            gqn = float(np.hypot(gq[0], gq[1]))
            if gqn < gn:
                p, g, gn = q, gq, gqn
                break
            alpha *= 0.5
        else:
            raise ConvergenceError("Newton damping failed to reduce the gradient")
    raise ConvergenceError(
        f"stationary point not reached in {max_iterations} Newton iterations"
    )
