import cmath
import math

import mpmath
import numpy as np
import pytest

NOMES = (0.3 + 0j, 0.5 + 0j, 0.7 + 0j, 0.5 * cmath.exp(1j * math.pi / 7))


def mp_qpoch(a, q, n=None, dps=40):
    """High-precision (a; q)_n, or (a; q)_inf when n is None."""
    with mpmath.workdps(dps):
        a, q = mpmath.mpc(a), mpmath.mpc(q)
        if n is not None:
            out = mpmath.mpc(1)
            for j in range(n):
                out *= 1 - a * q ** j
            return complex(out)
        out, j = mpmath.mpc(1), 0
        while True:
            term = a * q ** j
            out *= 1 - term
            if abs(term) < mpmath.mpf(10) ** (-dps):
                return complex(out)
            j += 1


def rel(x, y) -> float:
    x, y = complex(x), complex(y)
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
