"""Level sequences of nondegenerate discrete spectra.

A spectrum is described by its dimensionless levels ``e_n = E_n / omega`` with
``0 = e_0 < e_1 < e_2 < ...`` and the frequency ``omega`` (hbar = 1).  Two
spectra are built in (harmonic oscillator and a one-dimensional hydrogen
analog); user spectra come either as a finite table or as a named parametric
family so that configuration files stay declarative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import IndexBeyondTable, InvalidSpectrum, LimitUnavailable

__all__ = [
    "Kind",
    "SpectrumSpec",
    "ValidationResult",
    "FAMILIES",
    "harmonic",
    "hydrogen1d",
    "custom_table",
    "custom_formula",
    "from_config",
    "to_config",
    "level",
    "levels",
    "log_levels",
    "validate",
    "limit_level",
    "estimate_limit",
    "available_levels",
]

DEFAULT_N_VALIDATE = 10**4


class Kind(str, enum.Enum):
    HARMONIC = "harmonic"
    HYDROGEN1D = "hydrogen1d"
    CUSTOM_TABLE = "custom_table"
    CUSTOM_FORMULA = "custom_formula"


@dataclass(frozen=True)
class SpectrumSpec:
    """Immutable description of a spectrum.

    ``table`` holds the levels of a ``CUSTOM_TABLE`` spectrum; ``family`` and
    ``params`` (a sorted tuple of ``(name, value)`` pairs) describe a
    ``CUSTOM_FORMULA`` spectrum.  Use the factory functions rather than the
    constructor: they validate monotonicity eagerly.
    """

    kind: Kind
    omega: float = 1.0
    table: tuple[float, ...] | None = None
    family: str | None = None
    params: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise InvalidSpectrum(f"omega must be positive and finite, got {self.omega!r}")
        if self.kind is Kind.CUSTOM_TABLE:
            if not self.table:
                raise InvalidSpectrum("custom_table spectrum needs a non-empty level table")
        elif self.kind is Kind.CUSTOM_FORMULA:
            if self.family not in FAMILIES:
                raise InvalidSpectrum(
                    f"unknown formula family {self.family!r}; known: {sorted(FAMILIES)}"
                )
            fam = FAMILIES[self.family]
            names = {k for k, _ in self.params}
            if names != set(fam.params):
                raise InvalidSpectrum(
                    f"family {self.family!r} takes parameters {fam.params}, got {sorted(names)}"
                )
            fam.check(self.param_dict)

    @property
    def param_dict(self) -> dict[str, float]:
        return dict(self.params)

    @property
    def e_star(self) -> float | None:
        """Limit of the levels (``inf`` if unbounded, ``None`` for finite tables)."""
        if self.kind is Kind.CUSTOM_TABLE:
            return None
        return limit_level(self)

    @property
    def label(self) -> str:
        if self.kind is Kind.CUSTOM_FORMULA:
            args = ",".join(f"{k}={v:g}" for k, v in self.params)
            return f"custom_formula:{self.family}({args})"
        if self.kind is Kind.CUSTOM_TABLE:
            return f"custom_table[{len(self.table)}]"
        return self.kind.value


# --------------------------------------------------------------------------
# parametric families


class _Family(NamedTuple):
    params: tuple[str, ...]
    values: Callable[..., np.ndarray]
    logs: Callable[..., np.ndarray]  # log e_n for n >= 1
    check: Callable[[dict], None]
    bounded: bool


def _positive(*names):
    def check(p):
        for name in names:
            if not (p[name] > 0 and math.isfinite(p[name])):
                raise InvalidSpectrum(f"parameter {name!r} must be positive, got {p[name]!r}")

    return check


def _power_law(n, scale, p):
    return scale * -np.expm1(-p * np.log1p(n))


def _power_law_log(n, scale, p):
    return math.log(scale) + np.log(-np.expm1(-p * np.log1p(n)))


def _rational(n, cap, b):
    return cap * n / (n + b)


def _rational_log(n, cap, b):
    return math.log(cap) + np.log(n) - np.log(n + b)


def _affine(n, slope):
    return slope * n


def _affine_log(n, slope):
    return math.log(slope) + np.log(n)


FAMILIES: dict[str, _Family] = {
    # e_n = scale * (1 - (n+1)^-p)
    "power_law": _Family(("p", "scale"), _power_law, _power_law_log, _positive("p", "scale"), True),
    # e_n = cap * n / (n + b)
    "rational": _Family(("b", "cap"), _rational, _rational_log, _positive("b", "cap"), True),
    # e_n = slope * n
    "affine": _Family(("slope",), _affine, _affine_log, _positive("slope"), False),
}


# --------------------------------------------------------------------------
# construction


def harmonic(omega: float = 1.0) -> SpectrumSpec:
    """Harmonic oscillator, ``e_n = n``."""
    return SpectrumSpec(Kind.HARMONIC, float(omega))


def hydrogen1d(omega: float = 1.0) -> SpectrumSpec:
    """One-dimensional hydrogen analog, ``e_n = 1 - 1/(n+1)**2``."""
    return SpectrumSpec(Kind.HYDROGEN1D, float(omega))


def custom_table(levels, omega: float = 1.0, validate_levels: bool = True) -> SpectrumSpec:
    spec = SpectrumSpec(Kind.CUSTOM_TABLE, float(omega), table=tuple(float(x) for x in levels))
    if validate_levels:
        _raise_if_invalid(spec, len(spec.table) - 1)
    return spec


def custom_formula(
    family: str,
    omega: float = 1.0,
    n_validate: int = DEFAULT_N_VALIDATE,
    validate_levels: bool = True,
    **params: float,
) -> SpectrumSpec:
    """Spectrum from a named family, e.g. ``custom_formula("power_law", p=2, scale=1)``."""
    items = tuple(sorted((k, float(v)) for k, v in params.items()))
    spec = SpectrumSpec(Kind.CUSTOM_FORMULA, float(omega), family=family, params=items)
    if validate_levels:
        _raise_if_invalid(spec, n_validate)
    return spec


def _raise_if_invalid(spec, n_max):
    res = validate(spec, max(n_max, 1))
    if not res.valid:
        raise InvalidSpectrum(f"{spec.label}: {res.reason}")


def from_config(block: dict, n_validate: int = DEFAULT_N_VALIDATE) -> SpectrumSpec:
    """Build a spectrum from a JSON config block.

    Examples of accepted blocks::

        {"kind": "hydrogen1d", "omega": 1.0}
        {"kind": "custom_table", "omega": 2.5, "levels": [0, 0.75, 0.9]}
        {"kind": "custom_formula", "family": "power_law", "params": {"p": 2, "scale": 1}}
    """
    if not isinstance(block, dict) or "kind" not in block:
        raise InvalidSpectrum("spectrum block must be an object with a 'kind' field")
    try:
        kind = Kind(str(block["kind"]).lower())
    except ValueError:
        raise InvalidSpectrum(f"unknown spectrum kind {block['kind']!r}") from None
    omega = float(block.get("omega", 1.0))
    if kind is Kind.HARMONIC:
        return harmonic(omega)
    if kind is Kind.HYDROGEN1D:
        return hydrogen1d(omega)
    if kind is Kind.CUSTOM_TABLE:
        if "levels" not in block:
            raise InvalidSpectrum("custom_table needs a 'levels' list")
        return custom_table(block["levels"], omega)
    if "family" not in block:
        raise InvalidSpectrum("custom_formula needs a 'family' name")
    return custom_formula(
        block["family"], omega, n_validate=n_validate, **dict(block.get("params", {}))
    )


def to_config(spec: SpectrumSpec) -> dict:
    out = {"kind": spec.kind.value, "omega": spec.omega}
    if spec.kind is Kind.CUSTOM_TABLE:
        out["levels"] = list(spec.table)
    elif spec.kind is Kind.CUSTOM_FORMULA:
        out["family"] = spec.family
        out["params"] = spec.param_dict
    return out


# --------------------------------------------------------------------------
# levels


def available_levels(spec: SpectrumSpec) -> float:
    """Largest usable index (``inf`` except for tables)."""
    if spec.kind is Kind.CUSTOM_TABLE:
        return len(spec.table) - 1
    return math.inf


def levels(spec: SpectrumSpec, n_max: int, start: int = 0, dtype=float) -> np.ndarray:
    """Array ``[e_start, ..., e_n_max]``.

    Pass ``dtype=np.longdouble`` to resolve neighbouring hydrogen levels
    beyond ``n ~ 2.6e5``, where their spacing ``2/n**3`` drops below the
    float64 resolution at 1.
    """
    if n_max < start:
        return np.empty(0, dtype=dtype)
    if n_max > available_levels(spec):
        raise IndexBeyondTable(
            f"level index {n_max} beyond table of length {len(spec.table)}"
        )
    if spec.kind is Kind.CUSTOM_TABLE:
        return np.asarray(spec.table[start : n_max + 1], dtype=dtype)
    n = np.arange(start, n_max + 1).astype(dtype)
    if spec.kind is Kind.HARMONIC:
        return n
    if spec.kind is Kind.HYDROGEN1D:
        # n(n+2)/(n+1)^2: numerator and denominator are exact integers
        return n * (n + 2) / ((n + 1) * (n + 1))
    return FAMILIES[spec.family].values(n, **spec.param_dict)


def level(spec: SpectrumSpec, n: int) -> float:
    if n < 0:
        raise IndexError(f"level index must be nonnegative, got {n}")
    return float(levels(spec, n, start=n)[0])


def log_levels(spec: SpectrumSpec, n_max: int, start: int = 1) -> np.ndarray:
    """``log e_n`` for ``start <= n <= n_max`` (``start >= 1``), computed without cancellation."""
    if start < 1:
        raise ValueError("log e_0 is -inf; start must be >= 1")
    if n_max < start:
        return np.empty(0)
    if spec.kind is Kind.HARMONIC:
        return np.log(np.arange(start, n_max + 1, dtype=float))
    if spec.kind is Kind.HYDROGEN1D:
        n = np.arange(start, n_max + 1, dtype=float)
        return np.log1p(-1.0 / ((n + 1.0) * (n + 1.0)))
    if spec.kind is Kind.CUSTOM_TABLE:
        return np.log(levels(spec, n_max, start))
    n = np.arange(start, n_max + 1, dtype=float)
    return FAMILIES[spec.family].logs(n, **spec.param_dict)


class ValidationResult(NamedTuple):
    valid: bool
    first_violation: int | None = None
    reason: str = ""


def validate(spec: SpectrumSpec, n_max: int) -> ValidationResult:
    """Check ``e_0 = 0`` and strict increase of the levels up to ``n_max``.

    Levels are formed in long double.  Tables are checked over their full
    length when ``n_max`` exceeds it.  Violations are reported in the result,
    never raised.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n_max = int(min(n_max, available_levels(spec)))
    e = levels(spec, n_max, dtype=np.longdouble)
    if e[0] != 0.0:
        return ValidationResult(False, 0, f"e_0 must be exactly 0, got {e[0]!r}")
    bad = np.flatnonzero(~np.isfinite(e))
    if bad.size:
        return ValidationResult(False, int(bad[0]), f"non-finite level at n={bad[0]}")
    steps = np.diff(e)
    bad = np.flatnonzero(~(steps > 0))
    if bad.size:
        k = int(bad[0]) + 1
        return ValidationResult(
            False, k, f"levels not strictly increasing at n={k}: e_{k - 1}={e[k - 1]!r}, e_{k}={e[k]!r}"
        )
    return ValidationResult(True)


# --------------------------------------------------------------------------
# limit of the levels


def estimate_limit(spec: SpectrumSpec, k_min: int = 8, k_max: int = 22) -> tuple[float, float]:
    """Estimate ``lim e_n`` and an uncertainty from the tail of the sequence.

    Levels are sampled at ``n = 2**k``.  For algebraic approach to the limit
    the successive differences shrink by a constant factor ``r < 1`` and an
    Aitken-style geometric extrapolation applies; ``r`` near or above one is
    read as an unbounded sequence (``inf``, zero uncertainty).
    """
    if spec.kind is Kind.HARMONIC:
        return math.inf, 0.0
    if spec.kind is Kind.HYDROGEN1D:
        return 1.0, 0.0
    if spec.kind is Kind.CUSTOM_TABLE:
        raise LimitUnavailable("a finite level table has no limit")
    ns = 2.0 ** np.arange(k_min, k_max + 1)
    e = FAMILIES[spec.family].values(ns, **spec.param_dict)
    d = np.diff(e)
    r = d[1:] / d[:-1]
    if not np.all(np.isfinite(r)) or r[-1] > 0.999 or r[-2] > 0.999:
        return math.inf, 0.0
    est = e[2:] + d[1:] * r / (1.0 - r)
    value = float(est[-1])
    unc = float(abs(est[-1] - est[-2]) + 16 * np.finfo(float).eps * abs(value))
    return value, unc


def limit_level(spec: SpectrumSpec) -> float:
    """``e* = lim e_n``: ``inf`` for harmonic, 1 for hydrogen, estimated for formulas.

    Raises :class:`LimitUnavailable` for finite tables.
    """
    return estimate_limit(spec)[0]
