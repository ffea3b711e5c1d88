"""Basic hypergeometric series r+1 phi s with the zero-offset notation.

The offset ``m`` follows van de Bult and Rains: ``m = -p`` stands for ``p``
extra zero numerator parameters and ``m = p`` for ``p`` extra zero
denominator parameters. Both only change the weight
``((-1)^k q^{k(k-1)/2})^(s - r + m)`` attached to the k-th term, so the
series is summed with that exponent directly.

Parameters and ``z`` may be numpy arrays; they are broadcast together and
the stop rule is applied to the worst element.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import effort
from .errors import Divergent, PoleInDenominator, SlowConvergence
from .qcore import OmegaGuard, TruncationPolicy, check_nome

#: unit-disk series are refused for |z| above 1 - Z_MARGIN
Z_MARGIN = 1e-3


def _series_nmax() -> int:
    raw = os.environ.get("QKERNEL_NMAX")
    return max(5000, int(raw)) if raw else 5000


SERIES_POLICY = TruncationPolicy(eps_term=1e-17, n_max=_series_nmax(), k_consecutive=3)


class ConvergenceClass(str, enum.Enum):
    ENTIRE = "entire"
    UNIT_DISK = "unit-disk"
    DIVERGENT = "divergent"
    TERMINATING = "terminating"


def is_terminating(numer: Sequence, q, n_max: int = 5000, guard: OmegaGuard | None = None):
    """Smallest n such that a numerator parameter equals q^{-n}, else None.

    Array-valued entries are never treated as terminating.
    """
    guard = guard or OmegaGuard()
    q = complex(q)
    best = None
    for a in numer:
        if np.ndim(a) != 0:
            continue
        a = complex(a)
        if a == 0:
            continue
        # exponent estimate from the modulus, then confirm with the guard
        n = int(round(np.log(abs(a)) / -np.log(abs(q))))
        for cand in (n - 1, n, n + 1):
            if 0 <= cand <= n_max and abs(a - q ** (-cand)) < guard.tol * max(1.0, abs(a)):
                best = cand if best is None else min(best, cand)
                break
    return best


@dataclass(frozen=True)
class SeriesSpec:
    """numerators / denominators / nome / argument / zero offset."""

    numer: tuple
    denom: tuple
    q: complex
    z: complex
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "numer", tuple(self.numer))
        object.__setattr__(self, "denom", tuple(self.denom))
        object.__setattr__(self, "q", check_nome(self.q))

    @property
    def weight_exponent(self) -> int:
        """s - r + m for an r+1 phi s."""
        return len(self.denom) - (len(self.numer) - 1) + self.m

    def terminating_index(self):
        return is_terminating(self.numer, self.q)

    def classify(self) -> ConvergenceClass:
        if self.terminating_index() is not None:
            return ConvergenceClass.TERMINATING
        e = self.weight_exponent
        if e > 0:
            return ConvergenceClass.ENTIRE
        if e == 0:
            return ConvergenceClass.UNIT_DISK
        return ConvergenceClass.DIVERGENT


def classify(spec: SeriesSpec) -> ConvergenceClass:
    return spec.classify()


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    kind: ConvergenceClass
    terms: int


def evaluate(spec: SeriesSpec, policy: TruncationPolicy | None = None) -> SeriesResult:
    """Sum the series described by ``spec``.

    Terminating series are summed exactly through the terminating index.
    Otherwise terms are generated by the multiplicative recurrence and the
    sum stops after ``k_consecutive`` terms below
    ``eps_term * max(1, |partial|)``.
    """
    policy = policy or SERIES_POLICY
    kind = spec.classify()
    q = spec.q
    z = np.asarray(spec.z, dtype=complex)
    nterm = spec.terminating_index()
    if kind is ConvergenceClass.DIVERGENT:
        raise Divergent(f"series with s-r+m = {spec.weight_exponent} < 0 diverges")
    if kind is ConvergenceClass.UNIT_DISK and np.max(np.abs(z)) > 1 - Z_MARGIN:
        raise Divergent(f"|z| = {np.max(np.abs(z)):.6g} outside the convergence disk")

    numer = [np.asarray(a, dtype=complex) for a in spec.numer]
    denom = [np.asarray(b, dtype=complex) for b in spec.denom]
    e = spec.weight_exponent
    shape = np.broadcast_shapes(z.shape, *(a.shape for a in numer), *(b.shape for b in denom))

    term = np.ones(shape, dtype=complex)
    total = np.ones(shape, dtype=complex)
    if not np.any(z):
        effort.note_terms(1)
        return SeriesResult(_scalar(total), kind, 1)

    limit = nterm if nterm is not None else policy.n_max
    small = 0
    qk = 1.0 + 0j
    k = 0
    while k < limit:
        ratio = z * ((-qk) ** e if e else 1.0)
        for a in numer:
            ratio = ratio * (1.0 - a * qk)
        den = 1.0 - q * qk
        for b in denom:
            f = 1.0 - b * qk
            if np.any(np.abs(f) < 1e-300):
                raise PoleInDenominator(f"denominator parameter {b} hits q^-{k}")
            den = den * f
        term = term * ratio / den
        total = total + term
        k += 1
        qk *= q
        if nterm is not None:
            continue
        floor = policy.eps_term * np.maximum(1.0, np.abs(total))
        if np.all(np.abs(term) <= floor):
            small += 1
            if small >= policy.k_consecutive:
                break
        else:
            small = 0
    else:
        if nterm is None:
            raise SlowConvergence(f"series did not settle within {policy.n_max} terms")
    if not np.all(np.isfinite(total)):
        raise PoleInDenominator("series produced a non-finite value")
    effort.note_terms(k + 1)
    return SeriesResult(_scalar(total), kind, k + 1)


def _scalar(x):
    return complex(x) if np.ndim(x) == 0 else x


def phi(numer: Sequence, denom: Sequence, q, z, m: int = 0, policy: TruncationPolicy | None = None):
    """Value of r+1 phi s^m (numer; denom; q, z)."""
    return evaluate(SeriesSpec(numer, denom, q, z, m), policy).value


def vwp_params(b, tail: Sequence, q):
    """Numerator and denominator lists of the very-well-poised series W(b; tail)."""
    b = complex(b)
    rb = complex(np.sqrt(b))
    q = complex(q)
    numer = [b, q * rb, -q * rb, *tail]
    denom = [rb, -rb, *[q * b / np.asarray(a, dtype=complex) for a in tail]]
    return numer, denom


def wphi(b, tail: Sequence, q, z, policy: TruncationPolicy | None = None):
    """Very-well-poised r+1 W r (b; a_4, ..., a_{r+1}; q, z)."""
    numer, denom = vwp_params(b, tail, q)
    return phi(numer, denom, q, z, 0, policy)
