import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qkernel.errors import DomainError, PoleAtOmega, TruncationExceeded
from qkernel.qcore import (
    OmegaGuard,
    ParamSet,
    TruncationPolicy,
    check_nome,
    expand_shorthand,
    qpoch,
    qpoch_finite,
    qpoch_general,
    qpoch_infinite,
    theta,
)

from conftest import NOMES, mp_qpoch, rel

moduli = st.floats(0.05, 0.9)
phases = st.floats(-math.pi, math.pi)
nomes = st.sampled_from(NOMES)


@st.composite
def cplx(draw, lo=0.05, hi=0.9):
    return draw(st.floats(lo, hi)) * cmath.exp(1j * draw(phases))


def test_finite_trivial_cases():
    assert qpoch_finite(0.37 - 0.2j, 0.5, 0) == 1
    assert qpoch_finite(0, 0.5, 7) == 1


def test_finite_matches_high_precision():
    assert rel(qpoch_finite(0.3 + 0.1j, 0.5, 4), mp_qpoch(0.3 + 0.1j, 0.5, 4)) < 1e-15


def test_infinite_trivial_cases():
    assert qpoch_infinite(0, 0.5) == 1
    assert qpoch_infinite(1, 0.5) == 0


@given(cplx(0.0, 3.0), nomes)
def test_infinite_matches_high_precision(a, q):
    assert rel(qpoch_infinite(a, q), mp_qpoch(a, q)) < 1e-13


def test_infinite_at_a_equal_q():
    assert rel(qpoch_infinite(0.5, 0.5), mp_qpoch(0.5, 0.5)) < 1e-15


def test_truncation_exceeded_near_unit_nome():
    with pytest.raises(TruncationExceeded):
        qpoch_infinite(0.5, 0.998, TruncationPolicy(n_max=100))


def test_nome_margin():
    with pytest.raises(DomainError):
        check_nome(0.9995)
    with pytest.raises(DomainError):
        check_nome(0)


def test_general_exponent():
    assert qpoch_general(0.3 - 0.4j, 0.5, 0) == 1
    assert rel(qpoch_general(0.2, 0.5, 3), qpoch_finite(0.2, 0.5, 3)) < 1e-15
    b = 0.5 + 0.5j
    expected = mp_qpoch(0.2, 0.5) / mp_qpoch(0.2 * 0.5 ** b, 0.5)
    assert rel(qpoch_general(0.2, 0.5, b), expected) < 1e-13


def test_general_exponent_pole():
    with pytest.raises(PoleAtOmega):
        qpoch_general(0.3, 0.5, math.log(1 / 0.3) / math.log(0.5) + 0j)


def test_theta_zeros():
    q = 0.5
    assert abs(theta(q ** 3, q)) < 1e-12
    assert abs(theta(1, q)) < 1e-15
    assert abs(theta(q ** -2, q)) < 1e-10


def test_theta_product_oracle():
    assert rel(theta(0.3, 0.5), mp_qpoch(0.3, 0.5) * mp_qpoch(0.5 / 0.3, 0.5)) < 1e-14


def test_theta_rejects_zero():
    with pytest.raises(DomainError):
        theta(0, 0.5)


@given(cplx(0.2, 3.0), nomes)
def test_theta_ratio(a, q):
    guard = OmegaGuard(1e-3)
    if guard.near_theta_zero(a, q) or guard.near_theta_zero(q * a, q):
        return
    assert rel(theta(a, q) / theta(q * a, q), -a) < 1e-11


def test_shorthand():
    assert expand_shorthand(("pm", 2j)) == [2j, -2j]
    assert expand_shorthand(("expi", 0.0)) == [1, 1]
    vals = expand_shorthand(("expi", math.pi / 2, 0.5))
    assert abs(vals[0] - 0.5j) < 1e-16 and abs(vals[1] + 0.5j) < 1e-16
    assert expand_shorthand([1, 2j]) == [1, 2j]


def test_paramset():
    s = ParamSet([1, 2, 3j])
    assert s.drop(1) == (1, 3j)
    assert s.scale(2) == (2, 4, 6j)
    assert s.pairproducts() == [2, 3j, 6j]
    with pytest.raises(DomainError):
        ParamSet([1, 0])


def test_guard_classification():
    g = OmegaGuard()
    q = 0.5
    assert g.near_omega(q ** -3, q)
    assert not g.near_omega(q ** 3, q)
    assert g.near_theta_zero(q ** 3, q)
    assert not g.near_theta_zero(0.37, q)


@settings(max_examples=50)
@given(cplx(0.05, 0.9), nomes, st.integers(0, 8), st.integers(0, 8))
def test_splitting(a, q, n, k):
    lhs = qpoch_finite(a, q, n + k)
    assert rel(lhs, qpoch_finite(a, q, k) * qpoch_finite(a * q ** k, q, n)) < 1e-12
    assert rel(lhs, qpoch_finite(a, q, n) * qpoch_finite(a * q ** n, q, k)) < 1e-12


@given(cplx(0.05, 3.0), nomes)
def test_square_split(a, q):
    rq = complex(np.sqrt(q))
    rhs = 1
    for v in (a, -a, rq * a, -rq * a):
        rhs *= qpoch_infinite(v, q)
    assert rel(qpoch_infinite(a * a, q), rhs) < 1e-11


def test_continuity_in_a():
    q = 0.7
    grid = 0.6 + 1e-6 * np.arange(200)
    vals = np.array([qpoch_infinite(a * cmath.exp(0.3j), q) for a in grid])
    assert np.max(np.abs(np.diff(vals))) < 1e-5
    assert np.max(np.abs(np.diff(vals, 2))) < 1e-10


def test_vectorised_matches_scalar():
    a = np.array([0.1, 0.3 + 0.2j, -0.7j])
    out = qpoch_infinite(a, 0.5)
    assert all(rel(out[i], qpoch_infinite(complex(a[i]), 0.5)) < 1e-15 for i in range(3))
    assert qpoch(0.3, 0.5, 2) == qpoch_finite(0.3, 0.5, 2)
