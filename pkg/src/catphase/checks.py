"""Invariant checks run by ``catphase validate``.

Each check returns a :class:`CheckResult`; the measured value is reported
next to the threshold it was held to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closedform, husimi, quadrature, states

LIEB = 1 + math.log(math.pi)
TWO_STATE = 1 + math.log(2 * math.pi)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float


CHECKS: list[tuple[str, Callable[[], tuple[float, float, bool]]]] = []


def check(name):
    def register(fn):
        CHECKS.append((name, fn))
        return fn

    return register


def _sample_states():
    return [
        states.coherent(0.5 - 1j),
        states.make_cat(states.CatParameters(0.8, 0)),
        states.make_cat(states.CatParameters(0.8, math.pi / 2)),
        states.make_cat(states.CatParameters(1.2, math.pi)),
        states.make_equientropic(1.5, 3),
        states.make_kerr_state(states.KerrSchedule(1, 3, 2.0)),
    ]


@check("states.unit_norm")
def _unit_norm():
    worst = max(abs(s.norm() - 1) for s in _sample_states())
    return worst, 1e-12, worst <= 1e-12


@check("states.even_cat_is_equientropic_n2")
def _even_equi():
    a = math.sqrt(12)
    e = states.make_equientropic(a, 2)
    c = states.make_cat(states.CatParameters(a, 0))
    dev = float(np.max(np.abs(e.coefficients - c.coefficients)))
    return dev, 1e-12, dev <= 1e-12


@check("states.kerr_equal_weights")
def _kerr_weights():
    worst = 0.0
    for n in range(1, 9):
        for m in range(1, 2 * n + 1):
            if math.gcd(m, n) == 1:
                s = states.make_kerr_state(states.KerrSchedule(m, n, 1.5))
                worst = max(worst, float(np.ptp(s.weights)))
    return worst, 1e-12, worst <= 1e-12


@check("states.equientropic_roots")
def _roots():
    xs = [states.solve_equientropic_weight(n) for n in range(2, 11)]
    resid = max(abs(states.equientropic_residual(x, n)) for n, x in zip(range(2, 11), xs))
    ok = resid < 1e-12 and all(a > b for a, b in zip(xs, xs[1:]))
    ok = ok and abs(xs[0] - 0.5) < 1e-12 and round(xs[1], 2) == 0.11 and round(xs[2], 3) == 0.063
    return resid, 1e-12, ok


@check("states.n_max_table")
def _n_max():
    got = (states.n_max(math.sqrt(12)), states.n_max(3), states.n_max(math.sqrt(2)))
    return float(sum(got)), 16.0, got == (7, 6, 3)


@check("husimi.decomposition_matches_overlap")
def _decomp():
    rng = np.random.default_rng(1)
    alpha = rng.normal(scale=2, size=300) + 1j * rng.normal(scale=2, size=300)
    worst = 0.0
    for s in _sample_states():
        d = husimi.q_decompose(s, alpha)
        worst = max(worst, float(np.max(np.abs(d.total - husimi.q_value(s, alpha)))))
    return worst, 1e-12, worst <= 1e-12


@check("husimi.bounds")
def _bounds():
    rng = np.random.default_rng(2)
    alpha = rng.normal(scale=3, size=500) + 1j * rng.normal(scale=3, size=500)
    top = max(float(np.max(husimi.q_value(s, alpha))) for s in _sample_states())
    low = min(float(np.min(husimi.q_value(s, alpha))) for s in _sample_states())
    return top, 1 / math.pi + 1e-14, low >= 0 and top <= 1 / math.pi + 1e-14


@check("closedform.coherent_pd_vs_quadrature")
def _coherent_pd():
    worst = 0.0
    for a in (0.0, 1.0, math.sqrt(12)):
        s = states.coherent(a)
        quad = quadrature.default_quadrature(s).with_theta_count(512)
        w, p = quadrature.phase_profiles(s, quad)
        worst = max(worst, float(np.max(np.abs(w.values - closedform.coherent_wehrl_pd(a, w.thetas)))))
        worst = max(worst, float(np.max(np.abs(p.values - closedform.coherent_husimi_pd(a, p.thetas)))))
    return worst, 1e-8, worst < 1e-8


@check("quadrature.coherent_entropy")
def _coherent_entropy():
    worst = max(abs(quadrature.wehrl_entropy(states.coherent(a)).wehrl_entropy - LIEB) for a in (0, 1 + 2j, 12**0.5))
    return worst, 1e-7, worst < 1e-7


@check("quadrature.polar_vs_cartesian")
def _polar_cartesian():
    worst = 0.0
    for s in _sample_states():
        polar = quadrature.wehrl_entropy(s).wehrl_entropy
        worst = max(worst, abs(polar - quadrature.cartesian_wehrl_entropy(s)[0]))
    return worst, 1e-7, worst < 1e-7


@check("quadrature.husimi_normalisation")
def _husimi_norm():
    worst = 0.0
    for s in _sample_states():
        worst = max(worst, abs(quadrature.husimi_pd(s, quadrature.default_quadrature(s)).integral - 1))
    return worst, 1e-8, worst < 1e-8


@check("quadrature.lieb_floor")
def _lieb():
    low = math.inf
    for a in (0.4, 0.8, 1.2, 2.4):
        for g in (0, math.pi / 2, math.pi):
            s = states.make_cat(states.CatParameters(a, g))
            low = min(low, quadrature.wehrl_entropy(s).wehrl_entropy - LIEB)
    return low, -1e-7, low >= -1e-7


@check("quadrature.equientropic_corrections")
def _equi():
    bounds = {2: 2e-6, 3: 6.5e-5, 4: 1.2e-3}
    ok = True
    worst_ratio = 0.0
    for n, bound in bounds.items():
        eps = TWO_STATE - quadrature.wehrl_entropy(states.make_equientropic(math.sqrt(12), n)).wehrl_entropy
        ok = ok and 0 < eps < bound
        worst_ratio = max(worst_ratio, eps / bound)
    return worst_ratio, 1.0, ok


@check("closedform.kitten_entropy_law")
def _kitten_law():
    s = states.make_equientropic(6.0, 3)
    th = 2 * np.pi * np.arange(2048) / 2048
    integral = quadrature.periodic_integral(closedform.approx_kitten_wehrl_pd(s, th))
    dev = abs(integral - closedform.approx_wehrl_entropy(s.weights / s.weights.sum()))
    return dev, 1e-8, dev < 1e-8


@check("quadrature.even_below_odd_small_amplitude")
def _even_odd():
    even = states.make_cat(states.CatParameters(0.4, 0))
    odd = states.make_cat(states.CatParameters(0.4, math.pi))
    quad = quadrature.default_quadrature(odd).with_theta_count(512)
    gap = float(np.min(quadrature.wehrl_pd(odd, quad).values - quadrature.wehrl_pd(even, quad).values))
    return gap, 0.0, gap > 0


def run_checks(names=None) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS:
        if names and name not in names:
            continue
        value, threshold, passed = fn()
        out.append(CheckResult(name, bool(passed), float(value), float(threshold)))
    return out
