"""Numerical checks of the resolution of unity.

The candidate unity operator is

    integral M(J)**2 dmu(J)  x  (1/(2 Gamma)) integral_{-Gamma}^{Gamma} dgamma  |J,gamma><J,gamma|

Its ``(n, m)`` element is ``sinc((e_n - e_m) Gamma) * mu_{(n+m)/2} / sqrt(rho_n rho_m)``
where ``mu_s`` is the ``s``-th moment of ``mu``.  The diagonal is exactly the
moment identity ``mu_n = rho_n``; off-diagonal elements vanish like ``1/Gamma``
for a nondegenerate spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegeneratePair, QuadratureNotConverged
from .moments import Measure, moment_of_measure, moment_sequence
from .quadrature import QuadraturePolicy, composite_gauss
from .spectrum import SpectrumSpec, levels
from .state import DEFAULT_POLICY, TruncationPolicy, _check_domain, _log_normalization

__all__ = [
    "UnityReport",
    "verify_diagonal",
    "bohr_offdiagonal",
    "bohr_offdiagonal_analytic",
    "bohr_envelope",
    "decay_slope",
    "resolution_check",
]

DEFAULT_QUAD = QuadraturePolicy()


def _sinc(x):
    return np.sinc(np.asarray(x) / np.pi)


def verify_diagonal(
    spec: SpectrumSpec, mu: Measure, n_max: int, quad: QuadraturePolicy = DEFAULT_QUAD
) -> np.ndarray:
    """``|mu_n / rho_n - 1|`` for ``n = 0..n_max``.

    Each entry is the deviation of the diagonal weight of ``|n><n|`` in the
    reconstructed operator from one.
    """
    seq = moment_sequence(spec, n_max)
    return np.array(
        [abs(moment_of_measure(mu, n, quad, log_scale=float(seq.log_rho[n])) - 1.0) for n in range(n_max + 1)]
    )


def _gap(spec, n, m):
    e = levels(spec, max(n, m))
    gap = float(e[n] - e[m])
    if abs(gap) <= 1e-14 * max(1.0, abs(e[n]), abs(e[m])):
        raise DegeneratePair(f"levels {n} and {m} coincide (e={e[n]!r}); spectrum is degenerate")
    return gap


def _prefactor(spec, n, m, J, policy):
    J = _check_domain(spec, J)
    _, _, log_m2, _ = _log_normalization(spec, J, policy)
    seq = moment_sequence(spec, max(n, m))
    lj = math.log(J)
    return math.exp(0.5 * ((n + m) * lj - seq.log_rho[n] - seq.log_rho[m]) - log_m2)


def bohr_offdiagonal_analytic(
    spec: SpectrumSpec, n: int, m: int, J: float, Gamma: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """Window average of the ``(n, m)`` projector element in closed form."""
    if n == m:
        raise ValueError("off-diagonal element needs n != m")
    gap = _gap(spec, n, m)
    return _prefactor(spec, n, m, J, policy) * float(_sinc(gap * Gamma))


def bohr_offdiagonal(
    spec: SpectrumSpec,
    n: int,
    m: int,
    J: float,
    Gamma: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    rtol: float = 1e-8,
) -> complex:
    """``(1/(2 Gamma)) integral_{-Gamma}^{Gamma} c_n conj(c_m) dgamma`` by quadrature.

    The panel width follows half the oscillation period.  The result is
    compared against the sinc form and :class:`QuadratureNotConverged` is
    raised if they differ by more than ``rtol`` times the prefactor.
    """
    if n == m:
        raise ValueError("off-diagonal element needs n != m")
    if not Gamma > 0:
        raise ValueError("Gamma must be positive")
    gap = _gap(spec, n, m)
    pref = _prefactor(spec, n, m, J, policy)
    panels = int(math.ceil(2 * Gamma * abs(gap) / math.pi)) + 4
    value = pref * composite_gauss(lambda g: np.exp(-1j * gap * g), -Gamma, Gamma, panels) / (2 * Gamma)
    expected = pref * float(_sinc(gap * Gamma))
    if abs(value - expected) > rtol * pref:
        raise QuadratureNotConverged(
            f"window average ({n},{m}) at Gamma={Gamma}: quadrature {value!r} vs sinc {expected!r}"
        )
    return complex(value)


def bohr_envelope(
    spec: SpectrumSpec,
    n: int,
    m: int,
    J: float,
    Gamma: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    samples: int = 9,
) -> float:
    """Largest window-average magnitude over one half period of windows starting at ``Gamma``.

    The raw magnitude oscillates with ``|sin((e_n - e_m) Gamma)|``; its
    envelope is what decays like ``1/Gamma``.
    """
    gap = abs(_gap(spec, n, m))
    windows = Gamma + np.linspace(0.0, math.pi / gap, samples)
    return max(abs(bohr_offdiagonal(spec, n, m, J, g, policy)) for g in windows)


def decay_slope(gammas, magnitudes) -> float:
    """Least-squares slope of ``log magnitude`` against ``log Gamma``."""
    x = np.log10(np.asarray(gammas, dtype=float))
    y = np.log10(np.asarray(magnitudes, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


@dataclass(frozen=True)
class UnityReport:
    n_max: int
    diag_errors: np.ndarray
    offdiag_samples: tuple  # ((n, m, Gamma), magnitude)
    gamma_window: float
    quad_tol: float
    max_offdiag: float = 0.0
    C_fit: float = 0.0  # max |A_nm| * Gamma
    C_bound: float = 0.0  # max moment factor / |e_n - e_m|

    @property
    def max_diag_error(self) -> float:
        return float(np.max(self.diag_errors))

    @property
    def passed(self) -> bool:
        diag_ok = self.max_diag_error <= self.quad_tol
        off_ok = self.max_offdiag <= self.C_bound / self.gamma_window * (1 + 1e-9)
        return bool(diag_ok and off_ok)


class _Pair(NamedTuple):
    n: int
    m: int
    value: float


def resolution_check(
    spec: SpectrumSpec,
    mu: Measure,
    n_max: int,
    Gamma: float,
    quad: QuadraturePolicy = DEFAULT_QUAD,
    offdiag_n_max: int = 20,
    tol: float = 1e-10,
) -> UnityReport:
    """Assemble the windowed unity operator on levels ``0..n_max``.

    The diagonal comes from :func:`verify_diagonal` on all ``n <= n_max``;
    off-diagonal elements are formed on ``0..min(n_max, offdiag_n_max)``
    from the sinc factor and quadrature moments of ``mu``.  Passing means
    every diagonal error is at most ``tol`` and every off-diagonal element
    respects the ``C/Gamma`` envelope.
    """
    diag = verify_diagonal(spec, mu, n_max, quad)
    k = min(n_max, offdiag_n_max)
    seq = moment_sequence(spec, k)
    e = levels(spec, k)
    pairs = []
    c_bound = 0.0
    for n in range(k + 1):
        for m in range(n):
            gap = e[n] - e[m]
            if abs(gap) <= 1e-14 * max(1.0, abs(e[n])):
                raise DegeneratePair(f"levels {n} and {m} coincide")
            factor = moment_of_measure(
                mu, 0.5 * (n + m), quad, log_scale=0.5 * float(seq.log_rho[n] + seq.log_rho[m])
            )
            pairs.append(_Pair(n, m, factor * float(_sinc(gap * Gamma))))
            c_bound = max(c_bound, factor / abs(gap))
    mags = [abs(p.value) for p in pairs]
    max_off = max(mags, default=0.0)
    return UnityReport(
        n_max=n_max,
        diag_errors=diag,
        offdiag_samples=tuple(((p.n, p.m, Gamma), abs(p.value)) for p in pairs),
        gamma_window=float(Gamma),
        quad_tol=tol,
        max_offdiag=max_off,
        C_fit=max_off * Gamma,
        C_bound=c_bound,
    )
