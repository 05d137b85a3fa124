"""Superpositions of coherent states: cats, kittens and Kerr-generated states.

Every state is held as a list of ``(coefficient, amplitude)`` pairs

    |psi> = sum_k c_k |alpha_k>

normalised with the full Gram matrix of coherent-state overlaps, so that
overlapping components (small amplitudes) are handled exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import NoRoot, ZeroNorm

NORM_TOL = 1e-12
ZERO_NORM = 1e-15


def overlap_matrix(amplitudes: np.ndarray) -> np.ndarray:
    """Gram matrix ``G[k, l] = <alpha_k|alpha_l>``."""
    a = np.asarray(amplitudes, dtype=complex)
    mod2 = np.abs(a) ** 2
    expo = -0.5 * mod2[:, None] - 0.5 * mod2[None, :] + np.conj(a)[:, None] * a[None, :]
    return np.exp(expo)


def _gram_norm(coefficients: np.ndarray, amplitudes: np.ndarray) -> float:
    c = np.asarray(coefficients, dtype=complex)
    return float(np.real(np.conj(c) @ overlap_matrix(amplitudes) @ c))


@dataclass(frozen=True)
class CoherentSuperposition:
    """Normalised superposition ``sum_k c_k |alpha_k>`` of coherent states.

    Build instances through :func:`gram_normalize` or one of the ``make_*``
    constructors; direct construction only validates.
    """

    coefficients: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).reshape(-1)
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ValueError("a superposition needs at least one component")
        if c.shape != a.shape:
            raise ValueError("coefficients and amplitudes differ in length")
        norm = _gram_norm(c, a)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalised (<psi|psi> = {norm!r})")
        c.flags.writeable = False
        a.flags.writeable = False
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "amplitudes", a)

    def __len__(self):
        return self.coefficients.size

    @property
    def components(self) -> list[tuple[complex, complex]]:
        return [(complex(c), complex(a)) for c, a in zip(self.coefficients, self.amplitudes)]

    @property
    def weights(self) -> np.ndarray:
        """Component weights ``|c_k|^2`` (they sum to one only for separated states)."""
        return np.abs(self.coefficients) ** 2

    @property
    def max_amplitude(self) -> float:
        return float(np.max(np.abs(self.amplitudes)))

    def norm(self) -> float:
        return _gram_norm(self.coefficients, self.amplitudes)

    def rotated(self, phi: float) -> "CoherentSuperposition":
        """Phase-space rotation by ``phi``: every amplitude picks up ``exp(i phi)``."""
        return CoherentSuperposition(self.coefficients, self.amplitudes * np.exp(1j * phi))

    def __eq__(self, other):
        if not isinstance(other, CoherentSuperposition):
            return NotImplemented
        return np.array_equal(self.coefficients, other.coefficients) and np.array_equal(
            self.amplitudes, other.amplitudes
        )

    __hash__ = None


def gram_normalize(components: Iterable[tuple[complex, complex]]) -> CoherentSuperposition:
    """Scale ``(coefficient, amplitude)`` pairs to a unit-norm state.

    Coefficient ratios are preserved. Raises :class:`ZeroNorm` when the
    Gram-weighted norm vanishes (e.g. ``|a> - |a>``).
    """
    pairs = list(components)
    if not pairs:
        raise ValueError("a superposition needs at least one component")
    c = np.array([p[0] for p in pairs], dtype=complex)
    a = np.array([p[1] for p in pairs], dtype=complex)
    norm = _gram_norm(c, a)
    if not norm >= ZERO_NORM:
        raise ZeroNorm(f"superposition has vanishing norm ({norm:.3e})")
    c = c / math.sqrt(norm)
    # one refinement pass pulls the norm to rounding level for nearly
    # linearly dependent components
    c = c / math.sqrt(_gram_norm(c, a))
    return CoherentSuperposition(c, a)


def coherent(alpha0: complex) -> CoherentSuperposition:
    return gram_normalize([(1.0, alpha0)])


@dataclass(frozen=True)
class CatParameters:
    alpha0: complex
    gamma: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha0", complex(self.alpha0))
        object.__setattr__(self, "gamma", float(self.gamma) % (2 * math.pi))


def make_cat(p: CatParameters) -> CoherentSuperposition:
    """Two-component cat ``N_gamma (|alpha0> + e^{i gamma} |-alpha0>)``.

    ``gamma = 0`` is the even, ``pi`` the odd and ``pi/2`` the Yurke-Stoler state.
    """
    return gram_normalize([(1.0, p.alpha0), (np.exp(1j * p.gamma), -p.alpha0)])


def cat_normalization(alpha0: complex, gamma: float) -> float:
    """Closed-form cat normalisation ``{2[1 + cos(gamma) exp(-2|alpha0|^2)]}^(-1/2)``."""
    return (2.0 * (1.0 + math.cos(gamma) * math.exp(-2.0 * abs(alpha0) ** 2))) ** -0.5


def _xlogx(x: float) -> float:
    return 0.0 if x <= 0.0 else x * math.log(x)


def equientropic_residual(x: float, n: int) -> float:
    """``2 (1-(n-1)x)^(1-(n-1)x) x^((n-1)x) - 1`` evaluated in log space."""
    m = n - 1
    major = 1.0 - m * x
    log_term = _xlogx(major) + m * _xlogx(x)
    return 2.0 * math.exp(log_term) - 1.0


def solve_equientropic_weight(N: int, xtol: float = 1e-14, maxiter: int = 200) -> float:
    """Minor-component weight ``x_N`` of the ``N``-component equientropic state.

    The Shannon entropy of the weights ``(1-(N-1)x, x, ..., x)`` equals ln 2
    at the returned root. The residual is strictly decreasing on ``[0, 1/N]``,
    so plain bisection on that bracket is used.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    lo, hi = 0.0, 1.0 / N
    f_lo = equientropic_residual(lo, N)
    f_hi = equientropic_residual(hi, N)
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise NoRoot(f"equientropic weight not bracketed for N={N}")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        f_mid = equientropic_residual(mid, N)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo < xtol:
            break
    return 0.5 * (lo + hi)


def make_equientropic(alpha0: complex, N: int) -> CoherentSuperposition:
    """N-component state with weights ``(1-(N-1)x_N, x_N, ...)`` on a circle.

    Well-separated members of this family all share the Wehrl entropy
    ``1 + ln 2 pi``.
    """
    x = solve_equientropic_weight(N)
    alpha0 = complex(alpha0)
    comps = [(math.sqrt(1.0 - (N - 1) * x), alpha0)]
    comps += [(math.sqrt(x), np.exp(2j * math.pi * k / N) * alpha0) for k in range(1, N)]
    return gram_normalize(comps)


@dataclass(frozen=True)
class KerrSchedule:
    """Kerr evolution stopped at ``g t = 2 pi M / N`` for coprime ``M, N``."""

    M: int
    N: int
    alpha0: complex

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ValueError("M and N must be positive integers")
        if math.gcd(self.M, self.N) != 1:
            raise ValueError(f"M={self.M} and N={self.N} are not coprime")
        object.__setattr__(self, "alpha0", complex(self.alpha0))

    @property
    def phases(self) -> np.ndarray:
        k = np.arange(1, self.N + 1)
        return (2 * k + self.N - 3) * math.pi / self.N


def kerr_coefficients(M: int, N: int) -> np.ndarray:
    """Superposition coefficients of the Kerr kitten, one per component phase."""
    n = np.arange(1, N + 1)
    phi = KerrSchedule(M, N, 0).phases
    arg = n[None, :] * ((M / N) * math.pi * (n[None, :] - 1) - phi[:, None])
    return np.exp(1j * arg).sum(axis=1) / N


def make_kerr_state(s: KerrSchedule) -> CoherentSuperposition:
    c = kerr_coefficients(s.M, s.N)
    amps = np.exp(1j * s.phases) * s.alpha0
    return gram_normalize(zip(c, amps))


def n_max(alpha0: complex) -> int:
    """Largest number of well-separated components on a circle of radius ``|alpha0|``."""
    return int(math.pi * abs(alpha0) / math.sqrt(2.0))
