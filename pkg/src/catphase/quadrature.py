"""Polar-grid quadrature of the Wehrl entropy and the Wehrl/Husimi phase densities.

One product grid (Gauss-Legendre in ``|alpha|`` times a uniform periodic
grid in ``theta``) serves all three quantities: the radial sums at fixed
``theta`` are the phase densities, and their periodic trapezoid sum over
``theta`` is the entropy (resp. the Husimi normalisation).

Rows of the grid are independent and are evaluated in fixed-size blocks, so
results are bit-for-bit identical for any number of worker threads.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NonConverged
from .husimi import log_q, q_value
from .states import CatParameters, CoherentSuperposition, make_cat

DEFAULT_TOL = 1e-8
LOG_TINY = math.log(1e-300)
ROW_BLOCK = 32
MAX_RADIAL = 1024
MAX_THETA = 8192


def thread_count() -> int:
    """Worker cap from ``CATPHASE_THREADS`` (defaults to the CPU count)."""
    raw = os.environ.get("CATPHASE_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    n = int(raw)
    if n < 1:
        raise ValueError("CATPHASE_THREADS must be a positive integer")
    return n


@dataclass(frozen=True)
class PolarQuadrature:
    """Gauss-Legendre radial nodes on ``[0, r_max]`` times ``theta_count`` angles."""

    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    theta_count: int
    r_max: float

    @classmethod
    def gauss_legendre(cls, n_radial: int, theta_count: int, r_max: float) -> "PolarQuadrature":
        if theta_count < 8 or theta_count % 2:
            raise ValueError("theta_count must be even and at least 8")
        if r_max <= 0:
            raise ValueError("r_max must be positive")
        x, w = np.polynomial.legendre.leggauss(n_radial)
        r = 0.5 * r_max * (x + 1.0)
        w = 0.5 * r_max * w
        r.flags.writeable = False
        w.flags.writeable = False
        return cls(r, w, int(theta_count), float(r_max))

    @property
    def n_radial(self) -> int:
        return self.radial_nodes.size

    @property
    def thetas(self) -> np.ndarray:
        return 2 * math.pi * np.arange(self.theta_count) / self.theta_count

    def doubled(self) -> "PolarQuadrature":
        return PolarQuadrature.gauss_legendre(2 * self.n_radial, 2 * self.theta_count, self.r_max)

    def with_theta_count(self, theta_count: int) -> "PolarQuadrature":
        return PolarQuadrature.gauss_legendre(self.n_radial, theta_count, self.r_max)


class ProfileKind(enum.Enum):
    WEHRL_PD = "wehrl_pd"
    HUSIMI_PD = "husimi_pd"


def periodic_integral(values: np.ndarray) -> float:
    """Trapezoid rule on a uniform closed-open grid over ``[0, 2 pi)``."""
    values = np.asarray(values)
    return float(np.sum(values) * (2 * math.pi / values.size))


@dataclass(frozen=True)
class PhaseProfile:
    thetas: np.ndarray
    values: np.ndarray
    kind: ProfileKind
    integral: float

    @classmethod
    def from_values(cls, thetas, values, kind: ProfileKind) -> "PhaseProfile":
        return cls(np.asarray(thetas), np.asarray(values), kind, periodic_integral(values))


@dataclass(frozen=True)
class EntropyReport:
    wehrl_entropy: float
    error_estimate: float
    profile: PhaseProfile | None = None


def _row_block(state, quad, thetas):
    alpha = quad.radial_nodes[None, :] * np.exp(1j * thetas)[:, None]
    lq = log_q(state, alpha)
    q = np.exp(lq)
    neg_qlogq = np.where(lq < LOG_TINY, 0.0, -q * lq)
    wr = quad.radial_weights * quad.radial_nodes
    return np.sum(neg_qlogq * wr, axis=1), np.sum(q * wr, axis=1)


def radial_integrals(state: CoherentSuperposition, quad: PolarQuadrature, threads: int | None = None):
    """Wehrl and Husimi phase densities on ``quad.thetas``, as two arrays."""
    thetas = quad.thetas
    blocks = [thetas[i : i + ROW_BLOCK] for i in range(0, thetas.size, ROW_BLOCK)]
    threads = thread_count() if threads is None else threads
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(blocks))) as pool:
            parts = list(pool.map(lambda t: _row_block(state, quad, t), blocks))
    else:
        parts = [_row_block(state, quad, t) for t in blocks]
    s = np.concatenate([p[0] for p in parts])
    p = np.concatenate([p[1] for p in parts])
    return s, p


def phase_profiles(state, quad, threads=None) -> tuple[PhaseProfile, PhaseProfile]:
    """Both phase densities from a single pass over the grid."""
    s, p = radial_integrals(state, quad, threads)
    return (
        PhaseProfile.from_values(quad.thetas, s, ProfileKind.WEHRL_PD),
        PhaseProfile.from_values(quad.thetas, p, ProfileKind.HUSIMI_PD),
    )


def wehrl_pd(state: CoherentSuperposition, quad: PolarQuadrature, threads=None) -> PhaseProfile:
    """Wehrl phase density: radial integral of ``-Q ln Q |alpha|`` at each grid angle."""
    return phase_profiles(state, quad, threads)[0]


def husimi_pd(state: CoherentSuperposition, quad: PolarQuadrature, threads=None) -> PhaseProfile:
    """Husimi phase density: radial integral of ``Q |alpha|`` at each grid angle."""
    return phase_profiles(state, quad, threads)[1]


def suggested_r_max(state: CoherentSuperposition, tol: float) -> float:
    return state.max_amplitude + math.sqrt(math.log(1.0 / tol)) + 2.0


def _next_pow2(n: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(n, 1))))


def _entropy_on(state, quad, threads):
    return periodic_integral(radial_integrals(state, quad, threads)[0])


def default_quadrature(
    state: CoherentSuperposition, tol: float = DEFAULT_TOL, theta_count: int | None = None, threads=None
) -> PolarQuadrature:
    """Smallest power-of-two grid whose entropy moves by less than ``tol`` on doubling.

    ``theta_count`` fixes a minimum angular resolution (e.g. for plotting).
    If the node caps are hit the last grid is returned and
    :func:`wehrl_entropy` reports the residual as its error estimate.
    """
    if not 1e-12 <= tol <= 1e-3:
        raise ValueError(f"tol={tol!r} outside [1e-12, 1e-3]")
    r_max = suggested_r_max(state, tol)
    a = state.max_amplitude
    n_theta = max(16, _next_pow2(8 * a * (1 + a)), _next_pow2(theta_count or 0))
    n_r = max(32, _next_pow2(6 * r_max))
    quad = PolarQuadrature.gauss_legendre(n_r, n_theta, r_max)
    current = _entropy_on(state, quad, threads)
    while 2 * quad.n_radial <= MAX_RADIAL and 2 * quad.theta_count <= MAX_THETA:
        finer = quad.doubled()
        refined = _entropy_on(state, finer, threads)
        if abs(refined - current) < tol:
            break
        quad, current = finer, refined
    return quad


def wehrl_entropy(
    state: CoherentSuperposition,
    quad: PolarQuadrature | None = None,
    tol: float = DEFAULT_TOL,
    threads=None,
) -> EntropyReport:
    """Wehrl entropy as the angular integral of the Wehrl phase density.

    The error estimate is the change under doubling both node counts;
    ``NonConverged`` is raised when it exceeds ``10 * tol``.
    """
    if quad is None:
        quad = default_quadrature(state, tol, threads=threads)
    profile = wehrl_pd(state, quad, threads)
    finer = _entropy_on(state, quad.doubled(), threads)
    err = abs(finer - profile.integral)
    if err > 10 * tol:
        raise NonConverged(
            f"entropy changed by {err:.3e} on grid doubling "
            f"(n_radial={quad.n_radial}, theta_count={quad.theta_count}, r_max={quad.r_max:.3f})"
        )
    return EntropyReport(profile.integral, err, profile)


def gamma_scan(alpha0: complex, gammas, quad: PolarQuadrature | None = None, tol: float = DEFAULT_TOL, threads=None):
    """Wehrl entropy of the cat ``|alpha0, gamma>`` for each superposition phase."""
    out = []
    for g in gammas:
        report = wehrl_entropy(make_cat(CatParameters(alpha0, g)), quad, tol, threads)
        out.append((float(g), report.wehrl_entropy))
    return out


def cartesian_wehrl_entropy(
    state: CoherentSuperposition, nodes: int = 64, panels: int | None = None, half_width: float | None = None
):
    """Reference ``(S_w, int Q)`` from a composite Cartesian Gauss-Legendre grid.

    Independent of the polar machinery: plain ``Q`` and ``np.log`` with a
    hard zero below 1e-300. Panels are at most one unit wide and an even
    number of them puts a panel edge on both axes, where zeros of Q (and the
    ``rho^2 ln rho`` kink of ``-Q ln Q``) sit for symmetric states. Zeros
    elsewhere only converge algebraically, hence the generous node count.
    """
    if half_width is None:
        half_width = suggested_r_max(state, 1e-12)
    if panels is None:
        panels = 2 * math.ceil(half_width)
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(-half_width, half_width, panels + 1)
    h = 0.5 * (edges[1] - edges[0])
    grid = np.concatenate([e + h * (x + 1.0) for e in edges[:-1]])
    weights = np.tile(w * h, panels)
    ww = weights[:, None] * weights[None, :]

    s_total = 0.0
    q_total = 0.0
    # row strips keep memory bounded for many-component states
    for i in range(0, grid.size, 64):
        alpha = grid[i : i + 64, None] + 1j * grid[None, :]
        q = q_value(state, alpha)
        safe = np.where(q > 1e-300, q, 1.0)
        integrand = np.where(q > 1e-300, -q * np.log(safe), 0.0)
        s_total += float(np.sum(integrand * ww[i : i + 64]))
        q_total += float(np.sum(q * ww[i : i + 64]))
    return s_total, q_total
