"""Analytic phase distributions and their large-separation approximations.

The coherent-state Wehrl and Husimi phase densities are exact; the cat and
kitten expressions neglect interference between components and become
exact as the components separate (``N <= n_max(alpha0)``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import BadWeights, MixedModuli
from .states import CoherentSuperposition

LOG_PI = math.log(math.pi)
SQRT_PI = math.sqrt(math.pi)


def erf(x):
    """Error function; accurate to a few ulp over the whole real line."""
    y = special.erf(x)
    return float(y) if np.ndim(y) == 0 else y


@dataclass(frozen=True)
class CoherentPDParams:
    alpha0: complex
    theta: float | np.ndarray

    @property
    def x0(self) -> float:
        return abs(self.alpha0)

    @property
    def x(self):
        return self.x0 * np.cos(np.asarray(self.theta) - cmath.phase(self.alpha0))


def _coherent_terms(alpha0, theta):
    p = CoherentPDParams(complex(alpha0), theta)
    x, x0 = p.x, p.x0
    # e^{X^2 - X0^2} e^{-X^2} merged into e^{-X0^2}
    gauss = np.exp(-(x0**2)) * np.ones_like(x)
    tail = np.exp(x**2 - x0**2) * SQRT_PI * x * (1.0 + special.erf(x))
    return x, x0, gauss, tail


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v


def coherent_wehrl_pd(alpha0: complex, theta):
    """Wehrl phase density ``S_theta`` of the coherent state ``|alpha0>``."""
    x, x0, gauss, tail = _coherent_terms(alpha0, theta)
    base = x0**2 - x**2 + LOG_PI
    return _scalar((gauss * (base + 1.0) + tail * (base + 0.5)) / (2 * math.pi))


def coherent_husimi_pd(alpha0: complex, theta):
    """Husimi phase density ``P_theta`` of the coherent state ``|alpha0>``."""
    _, _, gauss, tail = _coherent_terms(alpha0, theta)
    return _scalar((gauss + tail) / (2 * math.pi))


def approx_cat_wehrl_pd(alpha0: complex, theta):
    """Interference-free Wehrl phase density of a well-separated two-state cat.

    Independent of the superposition phase.
    """
    alpha0 = complex(alpha0)
    s = coherent_wehrl_pd(alpha0, theta) + coherent_wehrl_pd(-alpha0, theta)
    p = coherent_husimi_pd(alpha0, theta) + coherent_husimi_pd(-alpha0, theta)
    return 0.5 * (s + math.log(2.0) * p)


def _xlogx(w: np.ndarray) -> np.ndarray:
    out = np.zeros_like(w)
    pos = w > 0
    out[pos] = w[pos] * np.log(w[pos])
    return out


def approx_kitten_wehrl_pd(state: CoherentSuperposition, theta):
    """Interference-free Wehrl phase density of an N-component kitten.

    Components must lie on a common circle; ``MixedModuli`` otherwise.
    """
    mod = np.abs(state.amplitudes)
    if np.ptp(mod) > 1e-9:
        raise MixedModuli(f"component moduli span {np.ptp(mod):.3e}")
    w = state.weights
    wlogw = _xlogx(w)
    theta = np.asarray(theta, dtype=float)
    total = np.zeros_like(theta)
    for wk, wlk, ak in zip(w, wlogw, state.amplitudes):
        total = total + wk * coherent_wehrl_pd(ak, theta) - wlk * coherent_husimi_pd(ak, theta)
    return _scalar(total)


def approx_wehrl_entropy(weights) -> float:
    """High-separation Wehrl entropy ``1 + ln pi + H(weights)`` in nats."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0):
        raise BadWeights("weights must be non-negative")
    if abs(w.sum() - 1.0) > 1e-9:
        raise BadWeights(f"weights sum to {w.sum()!r}, not 1")
    return 1.0 + LOG_PI - float(_xlogx(w).sum())
