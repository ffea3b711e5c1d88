"""Askey-Wilson polynomials and their d -> 0, c -> 0 specialisations.

Polynomials are evaluated from the terminating balanced series

    p_n(x) = a^{-n} (ab, ac, ad; q)_n 4phi3(q^{-n}, q^{n-1}abcd, a e^{±iθ}; ab, ac, ad; q, q)

with the continuous dual q-Hahn and Al-Salam-Chihara cases obtained by
deleting the vanishing parameters from the term ratio (no numeric limits).

The terms of this sum grow like |q|^{-n^2/2} while the polynomial stays of
order one, so binary64 summation loses all accuracy once n is moderately
large. Each evaluation therefore measures its own condition number
``sum |t_k| / |sum t_k|`` and, when that exceeds ``COND_LIMIT``, repeats the
sum in mpmath at a working precision sized to the largest term. The inputs
(x, parameters, q) are taken as exact binary64 numbers and every derived
parameter such as q^{-n} is rebuilt at the wider precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .errors import PoleInDenominator, QKernelError
from .qcore import TruncationPolicy, check_nome, qpoch_finite, qpoch_infinite, qpochs
from .quadrature import QuadraturePolicy, integrate_even_half

#: widen to mpmath once the binary64 sum has lost this factor of accuracy
COND_LIMIT = 1e3


@dataclass(frozen=True)
class AWParams:
    a: complex
    b: complex
    c: complex
    d: complex
    q: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "q", check_nome(self.q))

    @property
    def values(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class CDQHParams:
    a: complex
    b: complex
    c: complex
    q: complex

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "q", check_nome(self.q))

    @property
    def values(self) -> tuple:
        return (self.a, self.b, self.c)


# ---------------------------------------------------------------------------
# term generation, shared by the binary64 and the widened path
# ---------------------------------------------------------------------------


def _terms(n, x, params, q, lib):
    """Return (prefactor, [t_0..t_n]) of the series form in arithmetic ``lib``.

    ``lib`` is either the :mod:`cmath` module (binary64) or :mod:`mpmath`.
    """
    a, others = params[0], params[1:]
    e = x + 1j * lib.sqrt(1 - x * x)
    numer = [q ** (-n), a * e, a / e]
    if len(params) == 4:
        numer.append(q ** (n - 1) * a * others[0] * others[1] * others[2])
    denom = [a * o for o in others]
    terms = [1 + 0j if lib is cmath else mpmath.mpc(1)]
    t = terms[0]
    qk = q ** 0
    for k in range(n):
        num = q
        for u in numer:
            num = num * (1 - u * qk)
        den = 1 - q * qk
        for v in denom:
            den = den * (1 - v * qk)
        if den == 0:
            raise PoleInDenominator(f"denominator vanishes at k={k}")
        t = t * num / den
        terms.append(t)
        qk = qk * q
    pref = a ** (-n)
    for v in denom:
        for j in range(n):
            pref = pref * (1 - v * q ** j)
    return pref, terms


def _log10_max_term(n, x, params, q) -> float:
    # magnitude estimate via logs, immune to overflow
    a, others = params[0], params[1:]
    e = complex(x, math.sqrt(max(0.0, 1 - x * x)))
    numer = [q ** (-n), a * e, a / e]
    if len(params) == 4:
        numer.append(q ** (n - 1) * a * others[0] * others[1] * others[2])
    denom = [a * o for o in others]
    logt = 0.0
    best = 0.0
    qk = 1.0 + 0j
    for k in range(n):
        num = math.log10(abs(q)) + sum(math.log10(max(abs(1 - u * qk), 1e-300)) for u in numer)
        den = math.log10(abs(1 - q * qk)) + sum(math.log10(max(abs(1 - v * qk), 1e-300)) for v in denom)
        logt += num - den
        best = max(best, logt)
        qk *= q
    pref = -n * math.log10(abs(a)) + sum(
        math.log10(max(abs(1 - v * q ** j), 1e-300)) for v in denom for j in range(n)
    )
    return best + pref


def _evaluate(n: int, x: float, params: Sequence[complex], q: complex) -> complex:
    n = int(n)
    if n < 0:
        raise ValueError("degree must be >= 0")
    x = float(x)
    if n == 0:
        return 1 + 0j
    with np.errstate(all="ignore"):
        try:
            pref, terms = _terms(n, x, [complex(p) for p in params], complex(q), cmath)
            total = sum(terms)
            scale = sum(abs(t) for t in terms)
            value = pref * total
            ok = math.isfinite(abs(value)) and scale <= COND_LIMIT * abs(total)
        except (OverflowError, ZeroDivisionError):
            ok = False
    if ok:
        return complex(value)
    digits = max(0.0, _log10_max_term(n, x, params, q))
    dps = int(digits) + 30
    with mpmath.workdps(dps):
        mq = mpmath.mpc(q)
        mparams = [mpmath.mpc(p) for p in params]
        pref, terms = _terms(n, mpmath.mpf(x), mparams, mq, mpmath)
        value = pref * mpmath.fsum(terms)
        return complex(value)


def _closed_under_conjugation(values, q) -> bool:
    if complex(q).imag != 0:
        return False
    pool = list(values)
    for v in values:
        match = next((i for i, w in enumerate(pool) if abs(w - v.conjugate()) <= 1e-15 * max(1, abs(v))), None)
        if match is None:
            return False
        pool.pop(match)
    return True


def _realify(value: complex, values, q) -> complex:
    if _closed_under_conjugation(values, q):
        if abs(value.imag) > 1e-10 * max(abs(value), 1e-300):
            raise QKernelError(f"polynomial should be real, got {value}")
        return complex(value.real, 0.0)
    return value


def askey_wilson(n: int, x: float, a, b, c, d, q) -> complex:
    """Askey-Wilson polynomial p_n(x; a, b, c, d | q) for x in [-1, 1]."""
    q = check_nome(q)
    vals = tuple(complex(v) for v in (a, b, c, d))
    return _realify(_evaluate(n, x, vals, q), vals, q)


def cdqhahn(n: int, x: float, a, b, c, q) -> complex:
    """Continuous dual q-Hahn polynomial p_n(x; a, b, c | q)."""
    q = check_nome(q)
    vals = tuple(complex(v) for v in (a, b, c))
    return _realify(_evaluate(n, x, vals, q), vals, q)


def alsalam_chihara(n: int, x: float, a, b, q) -> complex:
    """Al-Salam-Chihara polynomial p_n(x; a, b | q)."""
    q = check_nome(q)
    vals = (complex(a), complex(b))
    return _realify(_evaluate(n, x, vals, q), vals, q)


# ---------------------------------------------------------------------------
# weight, norm, Gram matrix
# ---------------------------------------------------------------------------


def aw_weight(theta, a, b, c, d, q, policy: TruncationPolicy | None = None):
    """w_q(cos θ) = (e^{±2iθ}; q)_inf / ({a,b,c,d} e^{±iθ}; q)_inf, vectorised in θ."""
    q = check_nome(q)
    e = np.exp(1j * np.asarray(theta, dtype=float))
    num = qpoch_infinite(e * e, q, policy) * qpoch_infinite(1 / (e * e), q, policy)
    den = 1.0
    for v in (a, b, c, d):
        den = den * qpoch_infinite(v * e, q, policy) * qpoch_infinite(v / e, q, policy)
    return num / den


def aw_weight_split(theta, a, b, c, d, q, policy: TruncationPolicy | None = None):
    """Second printed form of the weight: (±e^{±iθ}, ±q^{1/2} e^{±iθ}; q)_inf over the same denominator."""
    q = check_nome(q)
    e = np.exp(1j * np.asarray(theta, dtype=float))
    rq = complex(np.sqrt(q))
    num = 1.0
    for s in (1, -1):
        for u in (e, 1 / e):
            num = num * qpoch_infinite(s * u, q, policy) * qpoch_infinite(s * rq * u, q, policy)
    den = 1.0
    for v in (a, b, c, d):
        den = den * qpoch_infinite(v * e, q, policy) * qpoch_infinite(v / e, q, policy)
    return num / den


def aw_norm(n: int, a, b, c, d, q, policy: TruncationPolicy | None = None) -> complex:
    """h_n(a; q), the squared norm of p_n."""
    q = check_nome(q)
    a, b, c, d = (complex(v) for v in (a, b, c, d))
    abcd = a * b * c * d
    pairs = [a * b, a * c, a * d, b * c, b * d, c * d]
    num = 2 * math.pi * qpoch_finite(q ** (n - 1) * abcd, q, n) * qpoch_infinite(q ** (2 * n) * abcd, q, policy)
    den = qpoch_infinite(q ** (n + 1), q, policy) * qpochs([q ** n * p for p in pairs], q, None, policy)
    if den == 0:
        raise PoleInDenominator("h_n denominator vanishes")
    return complex(num / den)


def aw_integral_closed(a, b, c, d, q, policy: TruncationPolicy | None = None) -> complex:
    """Closed form of int_0^pi w_q dθ, equal to h_0."""
    return aw_norm(0, a, b, c, d, q, policy)


def _poly_on_grid(n, thetas, vals, q):
    return np.array([_evaluate(n, math.cos(t), vals, q) for t in thetas])


def gram_matrix(nmax: int, a, b, c, d, q, quad: QuadraturePolicy | None = None) -> np.ndarray:
    """G[m, n] = int_0^pi p_m p_n w_q dθ for 0 <= m, n <= nmax."""
    vals = tuple(complex(v) for v in (a, b, c, d))
    q = check_nome(q)
    cache: dict[tuple, np.ndarray] = {}

    def polys(theta):
        key = (theta.size, float(theta[0]))
        if key not in cache:
            cache[key] = np.array([_poly_on_grid(k, theta, vals, q) for k in range(nmax + 1)])
        return cache[key]

    gram = np.zeros((nmax + 1, nmax + 1), dtype=complex)
    for m in range(nmax + 1):
        for k in range(m, nmax + 1):
            def f(theta, m=m, k=k):
                p = polys(theta)
                return p[m] * p[k] * aw_weight(theta, *vals, q)
            gram[m, k] = gram[k, m] = integrate_even_half(f, quad)
    return gram
