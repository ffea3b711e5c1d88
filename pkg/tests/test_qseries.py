import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qkernel.errors import Divergent, PoleInDenominator
from qkernel.qcore import qpoch_finite, qpoch_infinite, qpochs
from qkernel.qseries import ConvergenceClass, SeriesSpec, classify, evaluate, is_terminating, phi, vwp_params, wphi

from conftest import NOMES, rel

nomes = st.sampled_from(NOMES)


@st.composite
def cplx(draw, lo=0.05, hi=0.9):
    return draw(st.floats(lo, hi)) * cmath.exp(1j * draw(st.floats(-math.pi, math.pi)))


def direct_sum(numer, denom, q, z, m=0, terms=400):
    """Term-by-term oracle with explicit Pochhammer symbols."""
    e = len(denom) - (len(numer) - 1) + m
    total = 0j
    for k in range(terms):
        num = qpochs(numer, q, k) if numer else 1
        den = qpoch_finite(q, q, k) * (qpochs(denom, q, k) if denom else 1)
        total += num / den * ((-1) ** k * q ** (k * (k - 1) / 2)) ** e * z ** k
    return total


def test_classification():
    q = 0.5
    assert classify(SeriesSpec([0.1, 0.2], [0.3], q, 0.5)) is ConvergenceClass.UNIT_DISK
    assert classify(SeriesSpec([0.1, 0.2], [0.3, 0.4], q, 0.5, -1)) is ConvergenceClass.UNIT_DISK
    assert classify(SeriesSpec([q ** -5, 0.2], [0.3], q, 0.5)) is ConvergenceClass.TERMINATING
    assert classify(SeriesSpec([0.1], [0.3], q, 5.0)) is ConvergenceClass.ENTIRE
    assert classify(SeriesSpec([0.1, 0.2, 0.3], [0.3], q, 0.5)) is ConvergenceClass.DIVERGENT


def test_is_terminating():
    q = 0.5
    assert is_terminating([q ** -4, 0.3], q) == 4
    assert is_terminating([0.3, 0.7j], q) is None
    assert is_terminating([1], q) == 0


def test_zero_argument():
    assert phi([0.3, 0.4], [0.5], 0.5, 0) == 1
    assert wphi(0.3, [0.2, 0.1, 0.4], 0.5, 0) == 1


def test_single_zero_numerator_is_geometric():
    q, z = 0.5, 0.4 + 0.3j
    assert rel(phi([0], [], q, z), direct_sum([0], [], q, z)) < 1e-14
    # 1phi0(0;;q,z) = 1/(z; q)_inf
    assert rel(phi([0], [], q, z), 1 / qpoch_infinite(z, q)) < 1e-14


def test_terminating_hand_expansion():
    q, b, c, d, z = 0.5, 0.3 + 0.1j, -0.2, 0.6j, 0.7
    n = 3
    a = q ** -n
    expected = sum(
        qpochs([a, b, c], q, k) / qpochs([q, d, 0.4], q, k) * z ** k for k in range(n + 1)
    )
    assert rel(phi([a, b, c], [d, 0.4], q, z), expected) < 1e-13


def test_terminating_8w7_three_terms():
    q, b = 0.5, 0.3 + 0.2j
    tail = [0.2, -0.4j, 0.35, 0.15 - 0.1j, q ** -2]
    numer, denom = vwp_params(b, tail, q)
    z = 0.9
    expected = sum(qpochs(numer, q, k) / qpochs([q, *denom], q, k) * z ** k for k in range(3))
    assert rel(wphi(b, tail, q, z), expected) < 1e-13


def test_wphi_collapse():
    q, b = 0.5, 0.3
    a = 0.2
    # a numerator a paired with a denominator q b / a' where a' = q b / a
    tail = [a, q * b / a, 0.12]
    numer, denom = vwp_params(b, tail, q)
    assert numer[3] == pytest.approx(denom[3])
    reduced_n = [x for i, x in enumerate(numer) if i != 3]
    reduced_d = [x for i, x in enumerate(denom) if i != 3]
    assert rel(wphi(b, tail, q, 0.5), phi(reduced_n, reduced_d, q, 0.5)) < 1e-13


@settings(max_examples=40)
@given(cplx(), cplx(), cplx(0.1, 0.9), nomes, st.integers(1, 3))
def test_offset_consistency(a, b, z, q, p):
    # zero numerators: start from a 2phi(1+p) so the total stays on the unit disk
    denom = [0.3 + 0.1j] + [0.5 - 0.2j] * p
    assert rel(phi([a, b], denom, q, z, -p), phi([a, b] + [0] * p, denom, q, z)) < 1e-13
    # zero denominators
    assert rel(phi([a, b], [0.3 + 0.1j] + [0] * p, q, z), phi([a, b], [0.3 + 0.1j], q, z, p)) < 1e-13


@given(cplx(), cplx(), cplx(0.1, 0.9), nomes)
def test_cancellation(a, b, extra, q):
    z = 0.3 - 0.2j
    assert rel(phi([a, b, extra], [0.4j, extra], q, z), phi([a, b], [0.4j], q, z)) < 1e-12


@settings(max_examples=60)
@given(cplx(0.1, 0.9), cplx(0.1, 0.9), nomes, st.floats(0.1, 0.9))
def test_q_gauss(a, b, q, r):
    c = a * b * r * cmath.exp(0.4j)
    expected = qpochs([c / a, c / b], q) / qpochs([c, c / (a * b)], q)
    assert rel(phi([a, b], [c], q, c / (a * b)), expected) < 1e-9


def test_direct_sum_oracle():
    q, z = 0.5 * cmath.exp(1j * math.pi / 7), 0.6
    numer, denom = [0.3, 0.5j, -0.4], [0.2 + 0.1j, 0.7]
    assert rel(phi(numer, denom, q, z), direct_sum(numer, denom, q, z)) < 1e-13


def test_branch_invariance():
    q, b = 0.5, -0.3 + 0.1j
    tail = [0.2, 0.1j, 0.3]
    rb = complex(np.sqrt(b))
    z = 0.4
    n1 = [b, q * rb, -q * rb, *tail]
    d1 = [rb, -rb, *[q * b / a for a in tail]]
    n2 = [b, -q * rb, q * rb, *tail]
    d2 = [-rb, rb, *[q * b / a for a in tail]]
    assert rel(phi(n1, d1, q, z), phi(n2, d2, q, z)) < 1e-13
    assert rel(wphi(b, tail, q, z), phi(n1, d1, q, z)) < 1e-13


def test_errors():
    with pytest.raises(Divergent):
        phi([0.1, 0.2, 0.3], [0.4], 0.5, 0.5)
    with pytest.raises(Divergent):
        phi([0.1, 0.2], [0.4], 0.5, 1.2)
    with pytest.raises(PoleInDenominator):
        phi([0.1, 0.2], [0.5 ** -2], 0.5, 0.5)


def test_broadcast_over_arrays():
    z = np.array([0.1, 0.3j, -0.5])
    out = evaluate(SeriesSpec([0.2, 0.3], [0.6], 0.5, z)).value
    for i in range(3):
        assert rel(out[i], phi([0.2, 0.3], [0.6], 0.5, complex(z[i]))) < 1e-14
