"""Orthogonality of Askey-Wilson polynomials: Gram matrix against the closed-form norms."""
import argparse
from dataclasses import dataclass

import numpy as np

from qkernel.polyortho import aw_norm, gram_matrix


@dataclass
class GramConfig:
    params: tuple[complex, ...] = (0.3, 0.4j, -0.4j, -0.2)
    q: complex = 0.5
    nmax: int = 8


def check(cfg: GramConfig) -> tuple[float, float]:
    g = gram_matrix(cfg.nmax, *cfg.params, cfg.q)
    norms = np.array([aw_norm(n, *cfg.params, cfg.q) for n in range(cfg.nmax + 1)])
    scale = np.sqrt(np.abs(np.outer(norms, norms)))
    off = np.abs(g - np.diag(np.diag(g))) / scale
    diag = np.abs(np.diag(g) - norms) / np.abs(norms)
    return float(off.max()), float(diag.max())


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--q", type=complex, default=0.5)
    a = ap.parse_args()
    for params in [(0.3, 0.4j, -0.4j, -0.2), (0.5, 0.2 + 0.3j, 0.2 - 0.3j, -0.6), (0.1, 0.2, 0.3, 0.4)]:
        off, diag = check(GramConfig(params, a.q, a.nmax))
        print(f"params={params}: max off-diagonal {off:.2e}, max diagonal error {diag:.2e}")
