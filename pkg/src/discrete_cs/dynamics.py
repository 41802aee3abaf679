"""Time evolution of coherent states.

Evolving ``|J, gamma>`` for a time ``t`` multiplies each coefficient by
``exp(-i e_n omega t)``; the result is again a coherent state, with label
``(J, gamma + omega t)``.  Both routes are implemented independently so the
equality can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import SpectrumSpec, levels
from .state import DEFAULT_POLICY, CoherentState, TruncationPolicy, coefficients, reduced_phase

__all__ = ["TimeGrid", "evolve_label", "evolve_direct", "autocorrelation", "l2_distance"]


@dataclass(frozen=True)
class TimeGrid:
    t_values: tuple[float, ...]

    def __post_init__(self):
        t = np.asarray(self.t_values, dtype=float)
        if t.ndim != 1 or not np.all(np.isfinite(t)):
            raise ValueError("time grid must be a finite 1-d sequence")
        if np.any(np.diff(t) <= 0):
            raise ValueError("time grid must be strictly increasing")

    @classmethod
    def uniform(cls, t_max: float, steps: int) -> "TimeGrid":
        """``steps + 1`` equally spaced times from 0 to ``t_max`` inclusive."""
        return cls(tuple(np.linspace(0.0, t_max, steps + 1)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.t_values, dtype=dtype)


def evolve_label(s: CoherentState, t: float) -> CoherentState:
    """Rebuild the state at label ``gamma + omega t``, same action and policy."""
    return coefficients(s.spec, s.J, s.gamma + s.spec.omega * t, s.policy)


def evolve_direct(s: CoherentState, t: float) -> CoherentState:
    """Apply ``exp(-i H t)`` to the stored coefficients."""
    e = levels(s.spec, s.N)
    phase = np.exp(-1j * reduced_phase(e, s.spec.omega * t))
    return s.with_coeffs(s.coeffs * phase, gamma=s.gamma + s.spec.omega * t)


def l2_distance(a: CoherentState, b: CoherentState) -> float:
    n = max(len(a.coeffs), len(b.coeffs))
    pa = np.zeros(n, complex)
    pb = np.zeros(n, complex)
    pa[: len(a.coeffs)] = a.coeffs
    pb[: len(b.coeffs)] = b.coeffs
    return float(np.linalg.norm(pa - pb))


def autocorrelation(
    spec: SpectrumSpec, J: float, grid, policy: TruncationPolicy = DEFAULT_POLICY
) -> np.ndarray:
    """Return-probability ``P(t) = |sum_n |c_n|**2 exp(-i e_n omega t)|**2``.

    The result has shape ``(len(grid), 2)`` with columns ``t`` and ``P``.  It
    does not depend on ``gamma``: the phases cancel between bra and ket.
    """
    t = np.asarray(grid, dtype=float)
    s = coefficients(spec, J, 0.0, policy)
    p = s.probabilities
    e = levels(spec, s.N)
    out = np.empty((t.size, 2))
    out[:, 0] = t
    for i, ti in enumerate(t):
        amp = np.dot(p, np.exp(-1j * reduced_phase(e, spec.omega * ti)))
        out[i, 1] = abs(amp) ** 2
    return out
