"""Moment sequences ``rho_n = e_1 e_2 ... e_n`` and the measures that carry them.

``rho_n`` is kept in log space (a long-double cumulative sum of ``log e_k``)
so the same code handles factorial growth (harmonic) and convergence to a
constant (hydrogen analog).  Built-in spectra also carry exact rationals for
small ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import IndexBeyondComputed, LimitUnavailable, NoClosedFormMeasure
from .quadrature import QuadraturePolicy, integrate, integrate_semi_infinite
from .spectrum import Kind, SpectrumSpec, available_levels, limit_level, log_levels

__all__ = [
    "MomentSequence",
    "Measure",
    "EXACT_N",
    "moment_sequence",
    "rho",
    "log_rho",
    "hydrogen_rho_closed",
    "radius_of_convergence",
    "canonical_measure",
    "moment_of_measure",
]

EXACT_N = 20


@dataclass(frozen=True)
class MomentSequence:
    spec: SpectrumSpec
    log_rho: np.ndarray = field(repr=False)
    exact: tuple[Fraction, ...] = field(default=(), repr=False)

    @property
    def n_max(self) -> int:
        return len(self.log_rho) - 1


def _exact_levels(kind, n_max):
    if kind is Kind.HARMONIC:
        return [Fraction(k) for k in range(1, n_max + 1)]
    return [Fraction(k * (k + 2), (k + 1) ** 2) for k in range(1, n_max + 1)]


@lru_cache(maxsize=64)
def moment_sequence(spec: SpectrumSpec, n_max: int) -> MomentSequence:
    """``log rho_n`` for ``0 <= n <= n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if n_max > available_levels(spec):
        raise IndexBeyondComputed(
            f"moment index {n_max} needs levels beyond the table of {len(spec.table)}"
        )
    logs = log_levels(spec, n_max).astype(np.longdouble)
    out = np.empty(n_max + 1)
    out[0] = 0.0
    out[1:] = np.cumsum(logs, dtype=np.longdouble)
    out.setflags(write=False)
    exact = ()
    if spec.kind in (Kind.HARMONIC, Kind.HYDROGEN1D):
        prods = [Fraction(1)]
        for ek in _exact_levels(spec.kind, min(n_max, EXACT_N)):
            prods.append(prods[-1] * ek)
        exact = tuple(prods)
    return MomentSequence(spec, out, exact)


def log_rho(seq: MomentSequence, n: int) -> float:
    if not 0 <= n <= seq.n_max:
        raise IndexBeyondComputed(f"rho_{n} not computed (n_max={seq.n_max})")
    return float(seq.log_rho[n])


def rho(seq: MomentSequence, n: int) -> float:
    """``rho_n``; exact rational for small ``n`` of built-ins, else ``exp(log rho_n)``."""
    if not 0 <= n <= seq.n_max:
        raise IndexBeyondComputed(f"rho_{n} not computed (n_max={seq.n_max})")
    if n < len(seq.exact):
        return float(seq.exact[n])
    return math.exp(seq.log_rho[n])


def hydrogen_rho_closed(n: int) -> float:
    """Telescoped product for ``e_k = 1 - 1/(k+1)**2``: ``(n+2) / (2(n+1))``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (n + 2) / (2 * (n + 1))


def radius_of_convergence(spec: SpectrumSpec) -> float:
    """Radius ``J*`` of ``sum J**n / rho_n``.

    The term ratio is ``J / e_{n+1}``, so the ratio test gives ``J* = lim e_n``.
    """
    if spec.kind is Kind.CUSTOM_TABLE:
        raise LimitUnavailable("radius of convergence needs the level limit; a table has none")
    return limit_level(spec)


# --------------------------------------------------------------------------
# measures


DENSITIES = ("exp_neg_j", "const_half_on_unit", "tabulated")


@dataclass(frozen=True)
class Measure:
    """Nonnegative density on ``[0, support_upper]`` plus point atoms.

    ``samples`` are ``(J, density)`` pairs for the ``tabulated`` density,
    interpolated linearly; ``atoms`` are ``(location, weight)`` pairs.
    """

    density: str
    atoms: tuple[tuple[float, float], ...] = ()
    support_upper: float = math.inf
    samples: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.density not in DENSITIES:
            raise ValueError(f"unknown density {self.density!r}")
        for loc, w in self.atoms:
            if not w > 0:
                raise ValueError(f"atom weight must be positive, got {w}")
            if not 0 <= loc <= self.support_upper:
                raise ValueError(f"atom at {loc} outside [0, {self.support_upper}]")
        if self.density == "tabulated":
            if len(self.samples) < 2:
                raise ValueError("tabulated density needs at least two samples")
            xs = [s[0] for s in self.samples]
            if any(b <= a for a, b in zip(xs, xs[1:])) or xs[0] < 0:
                raise ValueError("tabulated sample locations must be increasing and >= 0")
            if any(s[1] < 0 for s in self.samples):
                raise ValueError("tabulated density must be nonnegative")


def canonical_measure(spec: SpectrumSpec) -> Measure:
    """Measure whose moments are ``rho_n`` for the built-in spectra.

    Harmonic: density ``exp(-J)`` on ``[0, inf)``.  Hydrogen analog: density
    1/2 on ``[0, 1]`` plus an atom of weight 1/2 at ``J = 1``, since
    ``(1/2)/(n+1) + 1/2 = (n+2)/(2(n+1))``.
    """
    if spec.kind is Kind.HARMONIC:
        return Measure("exp_neg_j")
    if spec.kind is Kind.HYDROGEN1D:
        return Measure("const_half_on_unit", atoms=((1.0, 0.5),), support_upper=1.0)
    raise NoClosedFormMeasure(
        f"no closed-form measure for {spec.label}; inverse moment problems are not solved"
    )


def _pow_scaled(J, s, log_scale):
    # J**s * exp(-log_scale), with 0**0 = 1
    with np.errstate(divide="ignore"):
        lj = np.log(J)
    return np.exp(np.where(J > 0, s * lj, 0.0 if s == 0 else -np.inf) - log_scale)


def moment_of_measure(
    mu: Measure,
    n: float,
    quad: QuadraturePolicy = QuadraturePolicy(),
    log_scale: float = 0.0,
    full_output: bool = False,
):
    """``exp(-log_scale) * integral of J**n dmu`` (density part by quadrature).

    ``n`` may be any nonnegative real.  Pass ``log_scale = log rho_n`` to get
    the normalized moment without overflow at large ``n``.  Raises
    :class:`QuadratureNotConverged` if the tolerance cannot be met.  With
    ``full_output`` the quadrature error estimate is returned as well.
    """
    if n < 0:
        raise ValueError("moment order must be nonnegative")
    if mu.density == "exp_neg_j":
        def f(J):
            return _pow_scaled(J, n, log_scale + J)

        # integrand is a scaled Gamma(n+1) density: mode n, width sqrt(n+1)
        width = math.sqrt(n + 1.0)
        upper = n + 40.0 * width + 40.0
        body, e1 = integrate(f, 0.0, upper, quad, breakpoints=(max(n - 10 * width, 0.0), n, n + 10 * width))
        # substitution u = exp(-(J - upper)) for the remaining tail
        tail, e2 = integrate_semi_infinite(f, upper, quad)
        value, err = body + tail, e1 + e2
    elif mu.density == "const_half_on_unit":
        value, err = integrate(lambda J: 0.5 * _pow_scaled(J, n, log_scale), 0.0, 1.0, quad)
    else:
        xs = np.array([s[0] for s in mu.samples])
        ys = np.array([s[1] for s in mu.samples])

        def f(J):
            return _pow_scaled(J, n, log_scale) * np.interp(J, xs, ys, left=0.0, right=0.0)

        value, err = integrate(f, float(xs[0]), float(xs[-1]), quad, breakpoints=tuple(xs[1:-1]))
    atoms = math.fsum(
        w * math.exp((n * math.log(loc) if loc > 0 else (0.0 if n == 0 else -math.inf)) - log_scale)
        for loc, w in mu.atoms
    )
    value += atoms
    if full_output:
        return value, err
    return value
