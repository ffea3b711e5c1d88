"""q-shifted factorials, the modified theta function and parameter guards.

All routines work in binary64 complex arithmetic and broadcast over numpy
arrays, so a periodic integrand can evaluate every quadrature node in one
call. Scalars in give Python ``complex`` out.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, PoleAtOmega, TruncationExceeded

#: |q| must stay below 1 - NOME_MARGIN
NOME_MARGIN = 1e-3
#: absolute distance used by the Omega_q and theta-zero guards
GUARD_TOL = 1e-6


def _env_nmax(default: int) -> int:
    raw = os.environ.get("QKERNEL_NMAX")
    if not raw:
        return default
    return max(default, int(raw))


@dataclass(frozen=True)
class TruncationPolicy:
    """Stop rule shared by infinite products and nonterminating series.

    A product stops once the tail bound ``|a| |q|^N / (1 - |q|)`` drops below
    ``eps_term``; a series stops after ``k_consecutive`` terms in a row fall
    below ``eps_term * max(1, |partial sum|)``.
    """

    eps_term: float = 1e-17
    n_max: int = field(default_factory=lambda: _env_nmax(50_000))
    k_consecutive: int = 3
    tail_mode: str = "product-tail-bound"

    def __post_init__(self):
        if not self.eps_term > 0:
            raise ValueError("eps_term must be positive")
        if self.n_max < 1 or self.k_consecutive < 1:
            raise ValueError("n_max and k_consecutive must be >= 1")
        if self.tail_mode not in ("product-tail-bound", "fixed-epsilon"):
            raise ValueError(f"unknown tail_mode {self.tail_mode!r}")


DEFAULT_POLICY = TruncationPolicy()


def check_nome(q) -> complex:
    """Return ``q`` as a complex number after validating ``0 < |q| < 1 - margin``."""
    q = complex(q)
    if not 0.0 < abs(q) <= 1.0 - NOME_MARGIN:
        raise DomainError(f"nome must satisfy 0 < |q| <= {1 - NOME_MARGIN}, got {q}")
    return q


def _out(x):
    if np.ndim(x) == 0:
        return complex(x)
    return x


# ---------------------------------------------------------------------------
# q-shifted factorials
# ---------------------------------------------------------------------------


def qpoch_finite(a, q, n: int):
    """(a; q)_n = prod_{j<n} (1 - a q^j), an exact finite product.

    ``q`` is not restricted to the unit disk here since the product is finite;
    this lets base-1/q identities be evaluated directly.
    """
    n = int(n)
    if n < 0:
        raise DomainError("qpoch_finite needs n >= 0")
    a = np.asarray(a, dtype=complex)
    if n == 0:
        return _out(np.ones_like(a))
    qn = complex(q) ** np.arange(n)
    return _out(np.prod(1.0 - a[..., None] * qn, axis=-1))


def _product_length(amax: float, q: complex, policy: TruncationPolicy) -> int:
    """Number of factors N with |a| |q|^N / (1-|q|) below eps_term."""
    if amax == 0.0:
        return 0
    aq = abs(q)
    if policy.tail_mode == "fixed-epsilon":
        bound = policy.eps_term
    else:
        bound = policy.eps_term * (1.0 - aq)
    n = math.ceil(math.log(bound / amax) / math.log(aq)) if amax > bound else 0
    n = max(n, 1)
    if n > policy.n_max:
        raise TruncationExceeded(f"infinite product needs {n} factors (n_max={policy.n_max})")
    return n


def qpoch_infinite(a, q, policy: TruncationPolicy | None = None):
    """(a; q)_inf, truncated where the tail bound drops below eps_term."""
    policy = policy or DEFAULT_POLICY
    q = check_nome(q)
    a = np.asarray(a, dtype=complex)
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    n = _product_length(amax, q, policy)
    if n == 0:
        return _out(np.ones_like(a))
    qn = q ** np.arange(n)
    if a.ndim == 0 or a.size * n <= 4_000_000:
        return _out(np.prod(1.0 - a[..., None] * qn, axis=-1))
    out = np.ones_like(a)
    for start in range(0, n, 256):
        out = out * np.prod(1.0 - a[..., None] * qn[start:start + 256], axis=-1)
    return out


def qpoch(a, q, n=None, policy: TruncationPolicy | None = None):
    """(a; q)_n for integer ``n``, or (a; q)_inf when ``n`` is None."""
    if n is None:
        return qpoch_infinite(a, q, policy)
    return qpoch_finite(a, q, n)


def qpochs(values: Iterable, q, n=None, policy: TruncationPolicy | None = None):
    """Product notation (a_1, ..., a_k; q)_n."""
    out = 1.0 + 0j
    for v in values:
        out = out * qpoch(v, q, n, policy)
    return out


def _is_nonneg_int(b) -> bool:
    b = complex(b)
    return b.imag == 0.0 and b.real >= 0 and float(b.real).is_integer()


def qpoch_general(a, q, b, policy: TruncationPolicy | None = None, guard: "OmegaGuard | None" = None):
    """(a; q)_b = (a; q)_inf / (a q^b; q)_inf for complex exponent ``b``.

    Non-negative integer ``b`` goes straight to the finite product.
    """
    q = check_nome(q)
    if _is_nonneg_int(b):
        return qpoch_finite(a, q, int(complex(b).real))
    guard = guard or OmegaGuard()
    shifted = np.asarray(a, dtype=complex) * np.exp(complex(b) * np.log(q))
    if np.any(guard.near_omega(shifted, q)):
        raise PoleAtOmega(f"a q^b = {shifted} is within {guard.tol} of Omega_q")
    return _out(qpoch_infinite(a, q, policy) / qpoch_infinite(shifted, q, policy))


def theta(x, q, policy: TruncationPolicy | None = None):
    """Modified theta function theta(x; q) = (x, q/x; q)_inf."""
    x = np.asarray(x, dtype=complex)
    if np.any(x == 0):
        raise DomainError("theta(x; q) is undefined at x = 0")
    return _out(qpoch_infinite(x, q, policy) * qpoch_infinite(q / x, q, policy))


def thetas(values: Iterable, q, policy: TruncationPolicy | None = None):
    out = 1.0 + 0j
    for v in values:
        out = out * theta(v, q, policy)
    return out


# ---------------------------------------------------------------------------
# Guards
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaGuard:
    """Proximity tests against Omega_q = {q^-k : k >= 0} and {q^m : m in Z}."""

    tol: float = GUARD_TOL

    def _nearest_power(self, x, q, allow_negative: bool):
        # candidate exponent from moduli, then test the neighbours
        x = np.asarray(x, dtype=complex)
        lq = math.log(abs(q))
        with np.errstate(divide="ignore"):
            k0 = np.round(np.log(np.abs(x)) / -lq)
        k0 = np.where(np.isfinite(k0), k0, 0.0)
        best = np.full(x.shape, np.inf)
        for shift in (-1, 0, 1):
            k = k0 + shift
            if not allow_negative:
                k = np.maximum(k, 0)
            # x is near q^{-k}
            dist = np.abs(x - np.exp(-k * np.log(complex(q))))
            best = np.minimum(best, dist)
        return best

    def near_omega(self, x, q):
        """True where x is within tol of q^{-k} for some k >= 0."""
        return self._nearest_power(x, q, allow_negative=False) < self.tol

    def near_theta_zero(self, x, q):
        """True where x is within tol of q^m for some integer m."""
        return self._nearest_power(x, q, allow_negative=True) < self.tol


# ---------------------------------------------------------------------------
# Parameter sets and shorthand
# ---------------------------------------------------------------------------


class ParamSet(tuple):
    """Ordered multiset of nonzero complex parameters.

    Mirrors the set notation a_[k] (drop one), b*a (scale) and the pairwise
    products a_i a_j used throughout the identities.
    """

    def __new__(cls, values: Iterable = ()):
        vals = tuple(complex(v) for v in values)
        if any(v == 0 for v in vals):
            raise DomainError("ParamSet elements must be nonzero")
        return super().__new__(cls, vals)

    def drop(self, k: int) -> "ParamSet":
        return ParamSet(v for i, v in enumerate(self) if i != k)

    def scale(self, b) -> "ParamSet":
        return ParamSet(complex(b) * v for v in self)

    def pairproducts(self) -> list[complex]:
        return [self[i] * self[j] for i in range(len(self)) for j in range(i + 1, len(self))]

    def product(self) -> complex:
        out = 1.0 + 0j
        for v in self:
            out *= v
        return out


def pm(a) -> list[complex]:
    """The shorthand ±a = [a, -a]."""
    a = complex(a)
    return [a, -a]


def expi_pm(theta_: float, scale=1.0) -> list[complex]:
    """The shorthand a e^{±iθ} = [a e^{iθ}, a e^{-iθ}]."""
    e = complex(math.cos(theta_), math.sin(theta_))
    return [complex(scale) * e, complex(scale) / e]


def expand_shorthand(spec) -> list[complex]:
    """Expand a shorthand descriptor into an explicit list of values.

    Accepted descriptors::

        ("pm", a)              -> [a, -a]
        ("expi", theta)        -> [e^{iθ}, e^{-iθ}]
        ("expi", theta, a)     -> [a e^{iθ}, a e^{-iθ}]
        [v1, v2, ...]          -> the list itself
    """
    if isinstance(spec, tuple) and spec and isinstance(spec[0], str):
        kind, *args = spec
        if kind == "pm":
            return pm(args[0])
        if kind == "expi":
            return expi_pm(float(args[0]), args[1] if len(args) > 1 else 1.0)
        raise DomainError(f"unknown shorthand {kind!r}")
    return [complex(v) for v in spec]


def principal_sqrt(z) -> complex:
    return complex(np.sqrt(complex(z)))


def prod(values: Sequence) -> complex:
    out = 1.0 + 0j
    for v in values:
        out = out * v
    return out
