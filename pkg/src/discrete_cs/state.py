"""Coherent-state coefficient vectors with certified truncation.

The coefficients are ``c_n = J**(n/2) exp(-i e_n gamma) / (M(J) sqrt(rho_n))``
with ``M(J)**2 = sum_n J**n / rho_n``.  Series are summed until a geometric
tail bound certifies the neglected remainder: once ``q = J / e_{N+1} < 1``
every later term ratio ``J / e_{k+1}`` is at most ``q`` (levels increase), so
the tail after ``t_N`` is at most ``t_N q / (1 - q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import CapExceeded, OutOfDomain, SpectrumMismatch
from .moments import moment_sequence, radius_of_convergence
from .spectrum import Kind, SpectrumSpec, available_levels, levels

__all__ = [
    "TruncationPolicy",
    "SeriesResult",
    "CoherentState",
    "action_domain",
    "normalization_sq",
    "hydrogen_normalization_closed",
    "coefficients",
    "overlap",
    "extend",
    "reduced_phase",
]

_TWO_PI_LD = np.longdouble(2) * np.arccos(np.longdouble(-1))


@dataclass(frozen=True)
class TruncationPolicy:
    rel_tol: float = 1e-12
    n_cap: int = 10**6

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.n_cap < 1:
            raise ValueError("n_cap must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


class SeriesResult(NamedTuple):
    value: float
    tail: float  # certified bound on the neglected remainder
    n_terms: int  # index of the last included term


# --------------------------------------------------------------------------
# series engine


def action_domain(spec: SpectrumSpec) -> float:
    """Supremum ``J*`` of admissible actions (``inf`` for tables)."""
    if spec.kind is Kind.CUSTOM_TABLE:
        return math.inf
    return radius_of_convergence(spec)


def _check_domain(spec, J):
    J = float(J)
    if not (J >= 0 and math.isfinite(J)):
        raise OutOfDomain(f"action J must be finite and >= 0, got {J!r}")
    j_star = action_domain(spec)
    if J >= j_star:
        raise OutOfDomain(f"action J={J!r} outside [0, J*={j_star!r}) for {spec.label}")
    return J


class _Series(NamedTuple):
    N: int
    e: np.ndarray  # e_0 .. e_N
    log_terms: np.ndarray  # log(J**n / rho_n), n = 0 .. N
    shift: float  # sums and tails below are scaled by exp(-shift)
    sums: tuple[float, ...]  # sum of e_n**p t_n for p = 0 .. max_power
    tails: tuple[float, ...]


def _tail_bounds(spec, J, t, e_next, e_next2, max_power):
    """Per-index tail bounds for the weighted series ``sum e_n**p t_n``.

    ``t[k]`` is the (scaled) term at index ``k``; ``e_next[k] = e_{k+1}``,
    ``e_next2[k] = e_{k+2}``.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        q = J / e_next
        t0 = np.where(q < 1, t * q / (1 - q), np.inf)
        out = [t0]
        if max_power >= 1:
            # e_k t_k = J t_{k-1} exactly, so the weighted tail is J (t_N + tail_0)
            out.append(J * (t + t0))
        if max_power >= 2:
            e_star = action_domain(spec) if spec.kind is not Kind.CUSTOM_TABLE else math.inf
            if math.isfinite(e_star):
                # e_{k+1} <= e* for a bounded increasing spectrum
                out.append(J * e_star * (t + t0))
            else:
                # terms u_k = e_{k+1} t_k; assumes the ratio e_{k+2} J / e_{k+1}**2
                # is nonincreasing past N, true for the unbounded built-in families
                r = e_next2 * J / (e_next * e_next)
                out.append(np.where(r < 1, J * e_next * t / (1 - r), np.inf))
    return out


def _series(spec, J, policy, max_power=0):
    J = _check_domain(spec, J)
    if J == 0.0:
        e0 = levels(spec, 0)
        zeros = (0.0,) * (max_power + 1)
        return _Series(0, e0, np.zeros(1), 0.0, (1.0,) + zeros[1:], zeros)
    # need e_{N+2} for the tail bounds
    hard_cap = int(min(policy.n_cap, available_levels(spec) - 2))
    if hard_cap < 1:
        raise CapExceeded(f"{spec.label}: too few levels to certify a truncation", 0, math.inf)
    N = int(min(hard_cap, max(64, 4 * J + 64)))
    lnJ = math.log(J)
    while True:
        seq = moment_sequence(spec, N)
        e_all = levels(spec, N + 2)
        n = np.arange(N + 1)
        logt = n * lnJ - seq.log_rho
        shift = float(np.max(logt))
        t = np.exp(logt - shift)
        e = e_all[: N + 1]
        tails = _tail_bounds(spec, J, t, e_all[1 : N + 2], e_all[2 : N + 3], max_power)
        ok = np.ones(N + 1, dtype=bool)
        for p, tail in enumerate(tails):
            partial = np.cumsum(t * e**p)
            ok &= tail <= policy.rel_tol * partial
        hits = np.flatnonzero(ok)
        if hits.size:
            k = int(hits[0])
            tk = t[: k + 1]
            ek = e[: k + 1]
            sums = tuple(math.fsum(tk * ek**p) for p in range(max_power + 1))
            return _Series(k, ek, logt[: k + 1], shift, sums, tuple(float(tl[k]) for tl in tails))
        if N >= hard_cap:
            est = float(tails[0][-1] / np.sum(t)) if np.isfinite(tails[0][-1]) else math.inf
            raise CapExceeded(
                f"{spec.label}: series at J={J!r} not certified to rel_tol={policy.rel_tol:g} "
                f"within {N + 1} terms (relative tail estimate {est:.3e})",
                N,
                est,
            )
        N = min(2 * N, hard_cap)


def normalization_sq(
    spec: SpectrumSpec, J: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> SeriesResult:
    """``M(J)**2 = sum_n J**n / rho_n`` as a certified partial sum.

    Raises :class:`OutOfDomain` for ``J`` outside ``[0, J*)`` and
    :class:`CapExceeded` when ``policy.n_cap`` terms do not reach the
    requested relative tolerance (the hydrogen analog close to ``J = 1``).
    """
    s = _series(spec, J, policy)
    scale = math.exp(s.shift)
    return SeriesResult(s.sums[0] * scale, s.tails[0] * scale, s.N)


_SMALL_J = 1e-3


def hydrogen_normalization_closed(J: float) -> float:
    """Closed form of ``M(J)**2`` for ``e_n = 1 - 1/(n+1)**2``.

    ``sum_n 2(n+1)/(n+2) J**n = 2 (1/(J(1-J)) + ln(1-J)/J**2)`` on ``0 < J < 1``.
    Below ``J = 1e-3`` the power series is summed instead, since the two
    terms of the closed form cancel to leading order.
    """
    J = float(J)
    if not 0 < J < 1:
        raise OutOfDomain(f"closed form defined on 0 < J < 1, got {J!r}")
    if J < _SMALL_J:
        # J**14 < 1e-42 bounds the dropped terms
        return math.fsum(2 * (n + 1) / (n + 2) * J**n for n in range(14))
    return 2.0 * (1.0 / (J * (1.0 - J)) + math.log1p(-J) / (J * J))


def _log_normalization(spec, J, policy, n_min=0):
    """``(levels, log terms, log M**2, relative tail)`` on ``0..max(N, n_min)``.

    Falls back to the closed form for the hydrogen analog when the series
    cannot be certified within ``policy.n_cap`` terms.
    """
    try:
        s = _series(spec, J, policy)
        log_m2 = s.shift + math.log(s.sums[0])
        tail = s.tails[0] / s.sums[0]
        if n_min <= s.N:
            return s.e, s.log_terms, log_m2, tail
        N = int(min(n_min, available_levels(spec)))
    except CapExceeded:
        if spec.kind is not Kind.HYDROGEN1D:
            raise
        # certificate degrades near J* = 1: keep n_cap terms and use the exact
        # normalization; the missing probability is reported as the tail
        N = max(policy.n_cap, n_min)
        log_m2 = math.log(hydrogen_normalization_closed(J))
        tail = None
    seq = moment_sequence(spec, N)
    logt = np.arange(N + 1) * math.log(J) - seq.log_rho
    if tail is None:
        tail = max(0.0, 1.0 - math.fsum(np.exp(logt - log_m2)))
    else:
        # extra terms past the certified index: renormalize over all of them
        shift = float(np.max(logt))
        log_m2 = shift + math.log(math.fsum(np.exp(logt - shift)))
    return levels(spec, N), logt, log_m2, tail


def reduced_phase(e: np.ndarray, angle: float) -> np.ndarray:
    """``(e * angle) mod 2 pi`` formed in long double, returned as float64."""
    prod = np.asarray(e, dtype=np.longdouble) * np.longdouble(angle)
    return np.fmod(prod, _TWO_PI_LD).astype(float)


@dataclass(frozen=True)
class CoherentState:
    """Truncated coefficient vector of the state labelled ``(J, gamma)``.

    ``tail_bound`` bounds the probability carried by the neglected levels
    ``n > N``; the stored vector is normalized over ``0..N``.
    """

    spec: SpectrumSpec
    J: float
    gamma: float
    coeffs: np.ndarray = field(repr=False)
    tail_bound: float
    policy: TruncationPolicy = DEFAULT_POLICY

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    def with_coeffs(self, coeffs, gamma=None):
        coeffs = np.asarray(coeffs, dtype=complex)
        coeffs.setflags(write=False)
        return CoherentState(
            self.spec,
            self.J,
            self.gamma if gamma is None else gamma,
            coeffs,
            self.tail_bound,
            self.policy,
        )


def coefficients(
    spec: SpectrumSpec,
    J: float,
    gamma: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    n_min: int = 0,
) -> CoherentState:
    """Coefficients ``c_0..c_N`` of the coherent state ``|J, gamma>``.

    ``N`` is the certified truncation index, raised to ``n_min`` if that is
    larger.  Moduli are formed as ``exp((n/2) ln J - (1/2) ln rho_n - ln M)``;
    the angle ``gamma`` is never reduced modulo 2 pi because the levels need
    not be integers.
    """
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise OutOfDomain(f"gamma must be finite, got {gamma!r}")
    J = _check_domain(spec, J)
    if J == 0.0:
        coeffs = np.zeros(int(min(n_min, available_levels(spec))) + 1, complex)
        coeffs[0] = 1.0
        coeffs.setflags(write=False)
        return CoherentState(spec, J, gamma, coeffs, 0.0, policy)
    e, log_terms, log_m2, tail = _log_normalization(spec, J, policy, n_min)
    modulus = np.exp(0.5 * (log_terms - log_m2))
    theta = reduced_phase(e, gamma)
    coeffs = modulus * np.exp(-1j * theta)
    coeffs.setflags(write=False)
    return CoherentState(spec, float(J), gamma, coeffs, float(tail), policy)


def extend(s: CoherentState, n_min: int) -> CoherentState:
    """Rebuild ``s`` from its label with at least ``n_min + 1`` coefficients."""
    if s.N >= n_min:
        return s
    return coefficients(s.spec, s.J, s.gamma, s.policy, n_min=n_min)


def overlap(a: CoherentState, b: CoherentState, pad: str = "extend") -> complex:
    """``<a|b> = sum conj(a_n) b_n``.

    The shorter state is rebuilt from its label out to the longer truncation
    (``pad="extend"``), so the error is of order ``sqrt(tail_a * tail_b)``.
    ``pad="zeros"`` zero-pads instead, which costs ``sqrt(tail)`` accuracy.
    """
    if a.spec != b.spec:
        raise SpectrumMismatch(f"cannot overlap states of {a.spec.label} and {b.spec.label}")
    if pad == "extend":
        n = max(a.N, b.N)
        a, b = extend(a, n), extend(b, n)
    elif pad != "zeros":
        raise ValueError(f"pad must be 'extend' or 'zeros', got {pad!r}")
    n = min(len(a.coeffs), len(b.coeffs))
    return complex(np.vdot(a.coeffs[:n], b.coeffs[:n]))
