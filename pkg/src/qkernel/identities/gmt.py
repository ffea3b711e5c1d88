"""Reusable evaluators for the G_{m,t}, H and J families.

``G_{m,t}(a, b, c, d; sigma, q)`` is the normalised contour integral

    (q;q)_inf/(2 pi) (sqrt(t)/sigma)^m int_{-pi}^{pi}
        (b sigma/z, t a z/sigma; q)_inf / (d sigma/z, t c z/sigma; q)_inf e^{i m psi} dpsi

with z = e^{i psi}. It can also be written as a residue sum over the poles
coming from ``d`` (``eval_G_series_d``) or from ``c`` (``eval_G_series_c``).
All square roots use the principal branch.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..errors import HypothesisViolated
from ..qcore import check_nome, qpoch_infinite, qpochs, thetas
from ..qseries import phi
from ..quadrature import QuadraturePolicy, integrate_periodic, jackson_qintegral


def _c(values) -> list[complex]:
    return [complex(v) for v in values]


def _prod(values) -> complex:
    out = 1 + 0j
    for v in values:
        out *= v
    return out


def contour_ratio(num_in, num_out, den_in, den_out, q, sigma=1.0, exponent=0):
    """Vectorised integrand (num_in sigma/z, num_out z/sigma)/(den_in sigma/z, den_out z/sigma) z^exponent.

    ``*_in`` lists multiply sigma/z, ``*_out`` lists multiply z/sigma. The
    returned callable takes an array of angles psi.
    """
    num_in, num_out, den_in, den_out = map(_c, (num_in, num_out, den_in, den_out))

    def f(psi):
        z = np.exp(1j * psi)
        u = sigma / z
        w = z / sigma
        out = np.ones_like(z)
        for v in num_in:
            out = out * qpoch_infinite(v * u, q)
        for v in num_out:
            out = out * qpoch_infinite(v * w, q)
        for v in den_in:
            out = out / qpoch_infinite(v * u, q)
        for v in den_out:
            out = out / qpoch_infinite(v * w, q)
        if exponent:
            out = out * z ** exponent
        return out

    return f


def contour_integral(num_in, num_out, den_in, den_out, q, sigma=1.0, exponent=0,
                     quad: QuadraturePolicy | None = None) -> complex:
    return integrate_periodic(contour_ratio(num_in, num_out, den_in, den_out, q, sigma, exponent), quad)


# ---------------------------------------------------------------------------
# G_{m,t}
# ---------------------------------------------------------------------------


def eval_G_integral(m: int, t, a: Sequence, b: Sequence, c: Sequence, d: Sequence, sigma: float, q,
                    quad: QuadraturePolicy | None = None, check: bool = True) -> complex:
    q = check_nome(q)
    t = complex(t)
    a, b, c, d = map(_c, (a, b, c, d))
    if not (a or b or c or d):
        raise HypothesisViolated("at least one parameter set must be non-empty")
    if check:
        if any(abs(ck) >= sigma / abs(t) for ck in c) or any(abs(dl) >= 1 / sigma for dl in d):
            raise HypothesisViolated("need |c_k| < sigma/|t| and |d_l| < 1/sigma")
    rt = complex(np.sqrt(t))
    integral = contour_integral(b, [t * v for v in a], d, [t * v for v in c], q, sigma, m, quad)
    return complex(qpoch_infinite(q, q) / (2 * math.pi) * (rt / sigma) ** m * integral)


def eval_G_series_d(m: int, t, a: Sequence, b: Sequence, c: Sequence, d: Sequence, q) -> complex:
    """Residue sum over the poles generated by ``d`` (requires D >= B)."""
    q = check_nome(q)
    t = complex(t)
    a, b, c, d = map(_c, (a, b, c, d))
    A, B, C, D = len(a), len(b), len(c), len(d)
    if D < B:
        raise HypothesisViolated("the d-side expansion needs D >= B")
    rt = complex(np.sqrt(t))
    arg = q ** m * _prod(b) / _prod(d)
    total = 0j
    for k, dk in enumerate(d):
        rest = d[:k] + d[k + 1:]
        pref = (qpochs([t * dk * v for v in a] + [v / dk for v in b], q)
                / qpochs([t * dk * v for v in c] + [v / dk for v in rest], q)) * dk ** m
        series = phi([t * dk * v for v in c] + [q * dk / v for v in b],
                     [t * dk * v for v in a] + [q * dk / v for v in rest],
                     q, arg * (q * dk) ** (D - B), C - A)
        total += pref * series
    return complex(rt ** m * total)


def eval_G_series_c(m: int, t, a: Sequence, b: Sequence, c: Sequence, d: Sequence, q) -> complex:
    """Residue sum over the poles generated by ``c`` (requires C >= A)."""
    q = check_nome(q)
    t = complex(t)
    a, b, c, d = map(_c, (a, b, c, d))
    A, B, C, D = len(a), len(b), len(c), len(d)
    if C < A:
        raise HypothesisViolated("the c-side expansion needs C >= A")
    rt = complex(np.sqrt(t))
    arg = q ** (-m) * _prod(a) / _prod(c)
    total = 0j
    for k, ck in enumerate(c):
        rest = c[:k] + c[k + 1:]
        pref = (qpochs([t * ck * v for v in b] + [v / ck for v in a], q)
                / qpochs([t * ck * v for v in d] + [v / ck for v in rest], q)) * ck ** (-m)
        series = phi([t * ck * v for v in d] + [q * ck / v for v in a],
                     [t * ck * v for v in b] + [q * ck / v for v in rest],
                     q, arg * (q * ck) ** (C - A), D - B)
        total += pref * series
    return complex(total / rt ** m)


# ---------------------------------------------------------------------------
# H and J (argument-q symmetric sums)
# ---------------------------------------------------------------------------


def _H_term(a, c, d1, d2, q):
    A, C = len(a), len(c)
    pref = qpochs([d1 * v for v in a], q) / qpochs([d2 / d1] + [d1 * v for v in c], q)
    return pref * phi([d1 * v for v in c], [d1 * v for v in a] + [q * d1 / d2], q, q, C - A - 2)


def H_terms(a: Sequence, c: Sequence, d1, d2, q) -> list[complex]:
    q = check_nome(q)
    a, c = _c(a), _c(c)
    d1, d2 = complex(d1), complex(d2)
    return [complex(_H_term(a, c, d1, d2, q)), complex(_H_term(a, c, d2, d1, q))]


def eval_H(a: Sequence, c: Sequence, d1, d2, q) -> complex:
    """H(a, c, {d1, d2}; q), the two-term symmetric sum of argument-q series."""
    return complex(sum(H_terms(a, c, d1, d2, q)))


def J_terms(a: Sequence, c: Sequence, d1, d2, f, q) -> list[complex]:
    q = check_nome(q)
    a, c = _c(a), _c(c)
    d1, d2, f = complex(d1), complex(d2), complex(f)
    A, C = len(a), len(c)
    if C < A + 2:
        raise HypothesisViolated("J needs C >= A + 2")
    out = []
    for k, ck in enumerate(c):
        rest = c[:k] + c[k + 1:]
        pref = (thetas([f * ck * d1, f / (ck * d2)], q) * qpochs([v / ck for v in a], q)
                / qpochs([ck * d1, ck * d2] + [v / ck for v in rest], q))
        arg = q * (q * ck) ** (C - A - 2) * _prod(a) / (d1 * d2 * _prod(c))
        out.append(complex(pref * phi([ck * d1, ck * d2] + [q * ck / v for v in a], [q * ck / v for v in rest], q, arg)))
    return out


def eval_J(a: Sequence, c: Sequence, d1, d2, f, q) -> complex:
    """J(a, c, {d1, d2}; f, q), the C-term theta-weighted sum (C >= A + 2)."""
    return complex(sum(J_terms(a, c, d1, d2, f, q)))


def qq_integral(a: Sequence, c: Sequence, d1, d2, f, sigma, q, quad: QuadraturePolicy | None = None) -> complex:
    """The contour integral whose closed forms are H (theta-weighted) and J."""
    q = check_nome(q)
    a, c = _c(a), _c(c)
    d1, d2, f = complex(d1), complex(d2), complex(f)
    return contour_integral([f * d1, q * d2 / f], [f / d2, q / (f * d1)] + a, [d1, d2], c, q, sigma, 0, quad)


def qq_integral_mirror(b: Sequence, d: Sequence, c1, c2, f, sigma, q, quad: QuadraturePolicy | None = None) -> complex:
    """Mirror image of :func:`qq_integral`: the roles of z and 1/z exchanged."""
    q = check_nome(q)
    b, d = _c(b), _c(d)
    c1, c2, f = complex(c1), complex(c2), complex(f)
    return contour_integral([f / c2, q / (f * c1)] + b, [f * c1, q * c2 / f], d, [c1, c2], q, sigma, 0, quad)


def H_qintegral(a: Sequence, c: Sequence, d1, d2, s, q) -> complex:
    """H written as a Jackson q-integral between s sqrt(d2/d1) and s sqrt(d1/d2).

    Every root is derived from r = sqrt(d1/d2) (principal branch):
    sqrt(d2/d1) = 1/r and sqrt(d1 d2) = d2 r, so the three roots are
    mutually consistent.
    """
    q = check_nome(q)
    a, c = _c(a), _c(c)
    d1, d2, s = complex(d1), complex(d2), complex(s)
    r = complex(np.sqrt(d1 / d2))
    rinv = 1 / r
    root_prod = d2 * r

    def integrand(u):
        w = np.asarray(u, dtype=complex) / s
        out = qpoch_infinite(q * r * w, q) * qpoch_infinite(q * rinv * w, q)
        for v in a:
            out = out * qpoch_infinite(v * root_prod * w, q)
        for v in c:
            out = out / qpoch_infinite(v * root_prod * w, q)
        return out

    qint = jackson_qintegral(integrand, s * rinv, s * r, q)
    pref = rinv / ((1 - q) * s * qpoch_infinite(q, q) * thetas([d2 / d1], q))
    return complex(pref * qint)
