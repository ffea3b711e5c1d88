"""Trapezoidal rule for periodic integrands and the Jackson q-integral.

The contour integrals in this package are all of the form
``int_{-pi}^{pi} F(e^{i psi}) dpsi`` with ``F`` analytic on an annulus
around the unit circle, where the uniform trapezoidal rule converges
geometrically. The node count is doubled (reusing old nodes) until two
successive estimates agree.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import effort
from .errors import DegenerateEndpoints, NoConvergence, NonFinite, SlowConvergence
from .qcore import GUARD_TOL, TruncationPolicy, check_nome

EPS = np.finfo(float).eps


def _quad_nmax() -> int:
    raw = os.environ.get("QKERNEL_NMAX")
    return max(16384, int(raw)) if raw else 16384


@dataclass(frozen=True)
class QuadraturePolicy:
    n0: int = 64
    n_max: int = field(default_factory=_quad_nmax)
    tol: float = 1e-10

    def __post_init__(self):
        if self.n0 < 16 or self.n0 & (self.n0 - 1):
            raise ValueError("n0 must be a power of two >= 16")
        if self.n_max < self.n0:
            raise ValueError("n_max must be >= n0")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


DEFAULT_QUAD = QuadraturePolicy()


def _eval(f, psi):
    vals = np.asarray(f(psi), dtype=complex)
    if vals.shape != psi.shape:
        vals = np.broadcast_to(vals, psi.shape).astype(complex)
    if not np.all(np.isfinite(vals)):
        raise NonFinite("integrand returned a non-finite value")
    return vals


def integrate_periodic(f: Callable[[np.ndarray], np.ndarray], policy: QuadraturePolicy | None = None) -> complex:
    """int_{-pi}^{pi} f(psi) dpsi for a smooth 2pi-periodic, vectorised ``f``.

    Stops when successive estimates agree to ``tol`` relative, or to a small
    multiple of the rounding floor ``eps * int |f|`` when the integral itself
    is much smaller than the integrand.
    """
    policy = policy or DEFAULT_QUAD
    n = policy.n0
    vals = _eval(f, -math.pi + 2 * math.pi * np.arange(n) / n)
    total = vals.sum()
    abs_total = np.abs(vals).sum()
    est = 2 * math.pi * total / n
    while True:
        if 2 * n > policy.n_max:
            effort.note_nodes(n)
            raise NoConvergence(f"no agreement to {policy.tol:g} within {policy.n_max} nodes")
        # midpoints of the current grid
        mid = -math.pi + 2 * math.pi * (np.arange(n) + 0.5) / n
        new = _eval(f, mid)
        total = total + new.sum()
        abs_total = abs_total + np.abs(new).sum()
        n *= 2
        new_est = 2 * math.pi * total / n
        diff = abs(new_est - est)
        floor = 64 * EPS * 2 * math.pi * abs_total / n
        est = new_est
        if diff <= policy.tol * abs(est) or diff <= floor:
            effort.note_nodes(n)
            return complex(est)


def integrate_even_half(f: Callable[[np.ndarray], np.ndarray], policy: QuadraturePolicy | None = None) -> complex:
    """int_0^pi f for an even periodic ``f``, as half the full-period integral."""
    return 0.5 * integrate_periodic(f, policy)


# ---------------------------------------------------------------------------
# Jackson q-integral
# ---------------------------------------------------------------------------


def _geometric_sum(f, x, q, policy: TruncationPolicy, block: int = 64):
    """sum_{n>=0} q^n f(q^n x) with the series stop rule."""
    total = 0j
    small = 0
    n0 = 0
    while n0 < policy.n_max:
        n = np.arange(n0, n0 + block)
        qn = q ** n
        terms = qn * np.asarray(f(qn * x), dtype=complex)
        if not np.all(np.isfinite(terms)):
            raise NonFinite("q-integrand returned a non-finite value")
        for t in terms:
            total += t
            if abs(t) <= policy.eps_term * max(1.0, abs(total)):
                small += 1
                if small >= policy.k_consecutive:
                    effort.note_terms(n0 + 1)
                    return total
            else:
                small = 0
            n0 += 1
    raise SlowConvergence(f"q-integral did not settle within {policy.n_max} terms")


_JACKSON_POLICY = TruncationPolicy(eps_term=1e-17, n_max=20_000, k_consecutive=3)


def jackson_qintegral(f, a, b, q, policy: TruncationPolicy | None = None) -> complex:
    """int_a^b f(u) d_q u = (1-q) [b sum q^n f(q^n b) - a sum q^n f(q^n a)]."""
    policy = policy or _JACKSON_POLICY
    q = check_nome(q)
    a, b = complex(a), complex(b)
    upper = b * _geometric_sum(f, b, q, policy) if b != 0 else 0j
    lower = a * _geometric_sum(f, a, q, policy) if a != 0 else 0j
    return complex((1 - q) * (upper - lower))


def jackson_symmetric(f, a, b, q, policy: TruncationPolicy | None = None) -> complex:
    """Symmetric-sum form (1-q)ab/(a-b) * [ (1 - a/b) S(a) + idem(a; b) ].

    ``S(x) = sum q^n f(q^n x)``. The product ``x y (1 - x/y)`` is written as
    ``x (y - x)`` so an endpoint at the origin needs no special case.
    """
    policy = policy or _JACKSON_POLICY
    q = check_nome(q)
    a, b = complex(a), complex(b)
    if abs(a - b) < GUARD_TOL:
        raise DegenerateEndpoints("symmetric q-integral needs a != b")
    total = 0j
    for x, y in ((a, b), (b, a)):
        if x == 0:
            continue
        total += x * (y - x) * _geometric_sum(f, x, q, policy)
    return complex((1 - q) * total / (a - b))
