"""Coherent states for nondegenerate discrete spectra.

States ``|J, gamma>`` are built from a level sequence ``e_n`` with moments
``rho_n = e_1 ... e_n``, and the package checks numerically that they are
normalized, resolve unity, stay coherent under time evolution and satisfy
``<H> = omega J``.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .spectrum import (
    Kind,
    SpectrumSpec,
    custom_formula,
    custom_table,
    from_config,
    harmonic,
    hydrogen1d,
    level,
    levels,
    limit_level,
    validate,
)
from .quadrature import QuadraturePolicy
from .moments import (
    Measure,
    MomentSequence,
    canonical_measure,
    hydrogen_rho_closed,
    moment_of_measure,
    moment_sequence,
    radius_of_convergence,
    rho,
)
from .state import (
    CoherentState,
    TruncationPolicy,
    coefficients,
    hydrogen_normalization_closed,
    normalization_sq,
    overlap,
)
from .dynamics import TimeGrid, autocorrelation, evolve_direct, evolve_label
from .observables import (
    canonical_one_form,
    hydrogen_variance_bound_check,
    mean_energy,
    observable_report,
    variance_v,
)
from .unity import bohr_offdiagonal, resolution_check, verify_diagonal
from .verify import run_verification
