"""Small building blocks shared by the case modules."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .. import effort
from ..qcore import prod, qpoch_infinite, qpochs, thetas
from ..qseries import SERIES_POLICY
from ..quadrature import integrate_periodic

#: generating-function partial sums never use more terms than this
GF_MAX_TERMS = 60


def vec(p, name: str, n: int) -> list[complex]:
    return [complex(p[f"{name}{i + 1}"]) for i in range(n)]


def pairs(values: Sequence[complex]) -> list[complex]:
    return [values[i] * values[j] for i in range(len(values)) for j in range(i + 1, len(values))]


def others(values: Sequence[complex], k: int) -> list[complex]:
    return [v for i, v in enumerate(values) if i != k]


def inv(values: Sequence[complex]) -> list[complex]:
    return [1 / v for v in values]


def scaled(values: Sequence[complex], s) -> list[complex]:
    return [s * v for v in values]


def symmetric_integral(num: Sequence[complex], den: Sequence[complex], q) -> complex:
    """int_{-pi}^{pi} (e^{±2i psi}, num e^{±i psi}; q)_inf / (den e^{±i psi}; q)_inf d psi."""

    def f(psi):
        e = np.exp(1j * psi)
        out = qpoch_infinite(e * e, q) * qpoch_infinite(1 / (e * e), q)
        for v in num:
            out = out * qpoch_infinite(v * e, q) * qpoch_infinite(v / e, q)
        for v in den:
            out = out / (qpoch_infinite(v * e, q) * qpoch_infinite(v / e, q))
        return out

    return integrate_periodic(f)


def partial_sum(term: Callable[[int], complex], max_terms: int = GF_MAX_TERMS) -> complex:
    """Sum term(0), term(1), ... with the series stop rule, capped at ``max_terms``."""
    total = 0j
    small = 0
    n = 0
    for n in range(max_terms):
        t = complex(term(n))
        total += t
        if abs(t) <= SERIES_POLICY.eps_term * max(1.0, abs(total)):
            small += 1
            if small >= SERIES_POLICY.k_consecutive:
                break
        else:
            small = 0
    effort.note_terms(n + 1)
    return total


TWO_PI = 2 * math.pi

__all__ = [
    "GF_MAX_TERMS", "TWO_PI", "inv", "others", "pairs", "partial_sum", "prod", "qpochs",
    "scaled", "symmetric_integral", "thetas", "vec",
]
