"""Wehrl entropy, Wehrl and Husimi phase distributions of Schrödinger cat and kitten states."""

from .closedform import (
    approx_cat_wehrl_pd,
    approx_kitten_wehrl_pd,
    approx_wehrl_entropy,
    coherent_husimi_pd,
    coherent_wehrl_pd,
)
from .errors import BadWeights, CatPhaseError, MixedModuli, NonConverged, NoRoot, ZeroNorm
from .husimi import PhasePoint, q_decompose, q_value
from .quadrature import (
    EntropyReport,
    PhaseProfile,
    PolarQuadrature,
    ProfileKind,
    cartesian_wehrl_entropy,
    default_quadrature,
    gamma_scan,
    husimi_pd,
    phase_profiles,
    wehrl_entropy,
    wehrl_pd,
)
from .states import (
    CatParameters,
    CoherentSuperposition,
    KerrSchedule,
    coherent,
    gram_normalize,
    make_cat,
    make_equientropic,
    make_kerr_state,
    n_max,
    solve_equientropic_weight,
)

__version__ = "0.1.0"
