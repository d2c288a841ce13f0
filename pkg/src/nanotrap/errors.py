"""Exception and warning types shared across the design modules."""


class DesignError(ValueError):
    """Invalid physical input for a trap design operation."""


class SingularPointError(DesignError):
    """Evaluation point inside the exclusion zone around a wire axis."""


class AdiabaticityError(DesignError):
    """chi = omega/omega_L outside (0, 1); the adiabatic approximation fails."""


class BistabilityError(DesignError):
    """Two-wire geometry with x0 <= y0 has no double-well minima."""


class ResonanceError(DesignError):
    """3D scattering length inside the guard window around the
    confinement-induced resonance, where the 1D coupling diverges."""


class NoBarrierError(DesignError):
    """Double-well barrier below one trap quantum: no classically
    forbidden region at the well ground-state energy."""


class BracketingError(RuntimeError):
    """Root search failed to find or keep a sign change on its interval."""


class ConvergenceError(RuntimeError):
    """Iterative numerical kernel exhausted its subdivision or iteration
    budget before reaching the requested tolerance."""


class WeakConfinementWarning(UserWarning):
    """d = y0/l0 below the confining threshold: the escape barrier is low
    and the harmonic description of the well degrades."""
