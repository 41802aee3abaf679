"""Energy moments, the action identity and the canonical one-form.

``<H>`` and ``<H**2>`` are summed directly from the weighted series, so that
``<H> = omega J`` comes out as a measured residual rather than being built in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BoundViolated, OutOfDomain
from .spectrum import SpectrumSpec, hydrogen1d
from .state import DEFAULT_POLICY, TruncationPolicy, _series, coefficients, overlap

__all__ = [
    "ObservableReport",
    "mean_energy",
    "mean_energy_sq",
    "variance_v",
    "canonical_one_form",
    "one_form_finite_difference",
    "observable_report",
    "hydrogen_variance_bound_check",
    "VarianceBoundReport",
]


def _level_stats(spec, J, policy):
    """Mean and variance of ``e_n`` under the weights ``|c_n|**2``."""
    s = _series(spec, J, policy, max_power=2)
    if s.N == 0:
        return 0.0, 0.0
    p = np.exp(s.log_terms - s.shift) / s.sums[0]
    mean = math.fsum(p * s.e)
    var = math.fsum(p * (s.e - mean) ** 2)
    return mean, var


def mean_energy(spec: SpectrumSpec, J: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``<J,gamma|H|J,gamma> = omega sum e_n J**n/rho_n / M(J)**2``."""
    return spec.omega * _level_stats(spec, J, policy)[0]


def variance_v(spec: SpectrumSpec, J: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``v(J) = <H**2>/omega**2 - J**2``.

    Evaluated as ``Var(e) + (<e> - J)(<e> + J)``, which equals
    ``<e**2> - J**2`` but keeps its accuracy when ``v`` is small.
    """
    mean, var = _level_stats(spec, float(J), policy)
    return var + (mean - J) * (mean + J)


def mean_energy_sq(spec: SpectrumSpec, J: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    mean, var = _level_stats(spec, J, policy)
    return spec.omega**2 * (var + mean * mean)


def canonical_one_form(
    spec: SpectrumSpec, J: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """``i <J,gamma| d/dgamma |J,gamma> = sum e_n |c_n|**2`` (independent of gamma)."""
    return _level_stats(spec, J, policy)[0]


def one_form_finite_difference(
    spec: SpectrumSpec,
    J: float,
    gamma: float = 0.0,
    delta: float = 1e-5,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Central difference of ``i <gamma|gamma + d>`` in ``d`` at ``d = 0``."""
    s0 = coefficients(spec, J, gamma, policy)
    plus = overlap(s0, coefficients(spec, J, gamma + delta, policy))
    minus = overlap(s0, coefficients(spec, J, gamma - delta, policy))
    return float((1j * (plus - minus) / (2 * delta)).real)


@dataclass(frozen=True)
class ObservableReport:
    J: float
    mean_H: float
    mean_H2: float
    v: float
    action_residual: float  # |<H>/omega - J|
    one_form_residual: float  # |i<d_gamma> - J|
    trajectory_residual: float  # |omega * one_form - <H>| along |J, gamma + omega t>


def observable_report(
    spec: SpectrumSpec, J: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> ObservableReport:
    J = float(J)
    mean, var = _level_stats(spec, J, policy)
    w = spec.omega
    one_form = mean
    mean_h = w * mean
    return ObservableReport(
        J=J,
        mean_H=mean_h,
        mean_H2=w * w * (var + mean * mean),
        v=var + (mean - J) * (mean + J),
        action_residual=abs(mean - J),
        one_form_residual=abs(one_form - J),
        # restricted action integrand: gamma' * one_form - <H>, with gamma' = omega
        trajectory_residual=abs(w * one_form - mean_h),
    )


class VarianceBoundReport(NamedTuple):
    J: np.ndarray
    v: np.ndarray
    ratio: np.ndarray  # v / (6 (1 - J))
    max_ratio: float
    argmax_J: float


def hydrogen_variance_bound_check(
    J_grid, policy: TruncationPolicy = DEFAULT_POLICY, omega: float = 1.0
) -> VarianceBoundReport:
    """Check ``0 < v(J) < 6 (1 - J)`` on a grid for the hydrogen analog.

    Raises :class:`BoundViolated` naming the first failing action.  A
    violation points at a numerical defect, not at physics.
    """
    spec = hydrogen1d(omega)
    J = np.asarray(J_grid, dtype=float)
    if np.any((J <= 0) | (J >= 1)):
        raise OutOfDomain("variance bound is checked on 0 < J < 1 only")
    v = np.array([variance_v(spec, j, policy) for j in J])
    bound = 6.0 * (1.0 - J)
    bad = np.flatnonzero(~((v > 0) & (v < bound)))
    if bad.size:
        j = float(J[bad[0]])
        raise BoundViolated(
            f"v({j!r}) = {v[bad[0]]!r} not in (0, {bound[bad[0]]!r})", J=j
        )
    ratio = v / bound
    k = int(np.argmax(ratio))
    return VarianceBoundReport(J, v, ratio, float(ratio[k]), float(J[k]))
