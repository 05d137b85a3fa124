import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gammaln

from catphase.husimi import PhasePoint, log_q, q_decompose, q_value
from catphase.states import (
    CatParameters,
    KerrSchedule,
    coherent,
    gram_normalize,
    make_cat,
    make_equientropic,
    make_kerr_state,
)

from .test_states import fock_vector

STATES = {
    "vacuum": coherent(0),
    "coherent": coherent(1.5 - 0.5j),
    "even": make_cat(CatParameters(0.8, 0)),
    "odd": make_cat(CatParameters(0.8, math.pi)),
    "ys": make_cat(CatParameters(1.2 * np.exp(0.3j), math.pi / 2)),
    "cat_g": make_cat(CatParameters(2.0, 1.1)),
    "equi4": make_equientropic(1.5, 4),
    "kerr5": make_kerr_state(KerrSchedule(2, 5, 1.4)),
    "mixed": gram_normalize([(1, 1.0), (0.5j, -0.3 + 2j), (0.2, 0.1)]),
}

points = st.complex_numbers(max_magnitude=6.0, allow_nan=False, allow_infinity=False)


def fock_q(state, alpha, nmax=120):
    psi = fock_vector(state, nmax)
    n = np.arange(nmax)
    if alpha == 0:
        amp = psi[0]
    else:
        bra = np.exp(-0.5 * abs(alpha) ** 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1) - 1j * n * np.angle(alpha))
        amp = np.sum(bra * psi)
    return abs(amp) ** 2 / math.pi


def cat_q_two_terms(alpha0, gamma, alpha):
    """Cat Husimi function from its coherent and interference pieces.

    The interference cosine carries ``gamma - 2|alpha||alpha0| sin(theta0 - theta)``;
    see test_flipped_cat_interference_sign for the other sign.
    """
    n2 = 1.0 / (2 * (1 + math.cos(gamma) * math.exp(-2 * abs(alpha0) ** 2)))
    q1 = math.exp(-abs(alpha - alpha0) ** 2) / math.pi
    q2 = math.exp(-abs(alpha + alpha0) ** 2) / math.pi
    r, th, th0 = abs(alpha), np.angle(alpha), np.angle(alpha0)
    q12 = math.exp(-(r**2) - abs(alpha0) ** 2) / math.pi * math.cos(gamma - 2 * r * abs(alpha0) * math.sin(th0 - th))
    return n2 * (q1 + 2 * q12 + q2)


def test_vacuum_peak():
    assert q_value(coherent(0), 0) == pytest.approx(1 / math.pi, abs=1e-16)


@pytest.mark.parametrize("a", [0.3, 2 + 1j, 5j])
def test_coherent_peak(a):
    assert q_value(coherent(a), PhasePoint(a)) == pytest.approx(1 / math.pi, rel=1e-14)


@pytest.mark.parametrize("name", sorted(STATES))
@pytest.mark.parametrize("alpha", [0, 0.7, -1.1 + 0.4j, 2.5j, 3 - 3j])
def test_q_matches_number_basis(name, alpha):
    state = STATES[name]
    assert q_value(state, alpha) == pytest.approx(fock_q(state, alpha), abs=1e-14)


def test_even_cat_on_imaginary_axis():
    a = math.sqrt(12)
    state = make_cat(CatParameters(a, 0))
    alpha = 1j * a
    assert q_value(state, alpha) == pytest.approx(cat_q_two_terms(a, 0, alpha), rel=1e-12)


@pytest.mark.parametrize("gamma", [0, 0.4, math.pi / 2, math.pi, 5.0])
@pytest.mark.parametrize("alpha", [0.2 + 0.1j, -1 + 1j, 1.5j, 2.0])
def test_cat_two_term_oracle(gamma, alpha):
    a0 = 1.1 * np.exp(0.6j)
    state = make_cat(CatParameters(a0, gamma))
    assert q_value(state, alpha) == pytest.approx(cat_q_two_terms(a0, gamma, alpha), abs=1e-14)


def test_flipped_cat_interference_sign():
    # a cross term carrying gamma + 2|a||a0| sin(theta0 - theta) agrees with
    # the direct overlap only after gamma -> -gamma
    a0, gamma, alpha = 1.0, math.pi / 2, 0.5j
    direct = q_value(make_cat(CatParameters(a0, gamma)), alpha)
    assert direct == pytest.approx(cat_q_two_terms(a0, gamma, alpha), abs=1e-15)
    assert direct != pytest.approx(cat_q_two_terms(a0, -gamma, alpha), abs=1e-3)
    mirrored = q_value(make_cat(CatParameters(a0, -gamma)), alpha)
    assert mirrored == pytest.approx(cat_q_two_terms(a0, -gamma, alpha), abs=1e-15)


@pytest.mark.parametrize("name", sorted(STATES))
def test_decomposition_matches_direct(name):
    state = STATES[name]
    rng = np.random.default_rng(7)
    alpha = rng.normal(scale=2.0, size=200) + 1j * rng.normal(scale=2.0, size=200)
    d = q_decompose(state, alpha)
    np.testing.assert_allclose(d.total, q_value(state, alpha), atol=1e-12, rtol=0)
    np.testing.assert_allclose(d.total, d.free + d.interference, atol=1e-15)
    assert np.all(d.total >= -1e-14)
    assert np.all(d.free >= 0)


def test_single_coherent_has_no_interference():
    d = q_decompose(coherent(1 + 1j), np.linspace(-3, 3, 50) + 0.5j)
    assert np.all(d.interference == 0)


def test_cat_decomposition_structure():
    a0, gamma = 1.3, 0.9
    state = make_cat(CatParameters(a0, gamma))
    alpha = np.array([0.4 - 0.2j, 1.0j, -2.0])
    d = q_decompose(state, alpha)
    n2 = 1.0 / (2 * (1 + math.cos(gamma) * math.exp(-2 * a0**2)))
    free = n2 * (np.exp(-np.abs(alpha - a0) ** 2) + np.exp(-np.abs(alpha + a0) ** 2)) / math.pi
    np.testing.assert_allclose(d.free, free, rtol=1e-13)


def test_interference_negligible_for_separated_cat():
    a0 = math.sqrt(12)
    d = q_decompose(make_cat(CatParameters(a0, 0)), a0)
    assert abs(d.interference) <= math.exp(-12) / math.pi


@given(points)
@settings(max_examples=200, deadline=None)
def test_husimi_bounds(alpha):
    for state in STATES.values():
        q = q_value(state, alpha)
        assert 0 <= q <= 1 / math.pi + 1e-14


@given(points, st.floats(0, 2 * math.pi))
@settings(max_examples=100, deadline=None)
def test_rotation_covariance(alpha, phi):
    for state in STATES.values():
        rotated = state.rotated(phi)
        assert q_value(rotated, alpha) == pytest.approx(q_value(state, np.exp(-1j * phi) * alpha), abs=1e-12)


@given(points, st.floats(0, 2 * math.pi))
@settings(max_examples=100, deadline=None)
def test_global_phase_invariance(alpha, phi):
    state = STATES["kerr5"]
    shifted = gram_normalize(zip(state.coefficients * np.exp(1j * phi), state.amplitudes))
    assert q_value(shifted, alpha) == pytest.approx(q_value(state, alpha), abs=1e-14)


@given(points)
@settings(max_examples=100, deadline=None)
def test_real_cat_symmetries(alpha):
    for gamma in (0.0, math.pi):
        state = make_cat(CatParameters(1.3, gamma))
        q = q_value(state, alpha)
        assert q_value(state, -alpha) == pytest.approx(q, abs=1e-14)
        assert q_value(state, np.conj(alpha)) == pytest.approx(q, abs=1e-14)
    # a generic phase maps gamma -> -gamma under either reflection alone
    for gamma in (1.0, math.pi / 2):
        state = make_cat(CatParameters(1.3, gamma))
        assert q_value(state, -np.conj(alpha)) == pytest.approx(q_value(state, alpha), abs=1e-14)


def test_far_field_does_not_underflow_in_log():
    state = make_cat(CatParameters(1.0, 0))
    lq = log_q(state, 40.0 + 0j)
    assert np.isfinite(lq)
    assert lq == pytest.approx(-((40 - 1) ** 2) - math.log(math.pi) + 2 * math.log(state.coefficients[0].real), rel=1e-9)


def test_zero_of_q():
    state = gram_normalize([(1, 0.7), (-1, -0.7)])
    assert log_q(state, 0.0) == -np.inf
    assert q_value(state, 0.0) == 0.0
    # e^{i pi} leaves a rounding residue, so the odd cat is only ~0 at the origin
    assert q_value(make_cat(CatParameters(0.7, math.pi)), 0.0) < 1e-30


def test_phase_point_polar():
    p = PhasePoint.polar(2.0, 3 * math.pi / 2)
    assert p.r == pytest.approx(2.0)
    assert p.theta == pytest.approx(3 * math.pi / 2)
    with pytest.raises(ValueError):
        PhasePoint.polar(-1.0, 0.0)
