"""Trapezoid error versus node count for the Askey-Wilson weight as max|a| approaches 1."""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from qkernel.polyortho import aw_integral_closed, aw_weight


@dataclass
class LadderConfig:
    q: complex = 0.5
    radii: tuple[float, ...] = (0.3, 0.6, 0.8, 0.9, 0.95)
    nodes: tuple[int, ...] = (16, 32, 64, 128, 256, 512, 1024)


def ladder(cfg: LadderConfig):
    rows = []
    for r in cfg.radii:
        params = (r, 0.3j, -0.2, 0.1 - 0.1j)
        exact = aw_integral_closed(*params, cfg.q)
        errs = []
        for n in cfg.nodes:
            theta = math.pi * (np.arange(n) + 0.5) / n
            approx = math.pi * np.mean(aw_weight(theta, *params, cfg.q))
            errs.append(abs(approx - exact) / abs(exact))
        rows.append((r, errs))
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=complex, default=0.5)
    cfg = LadderConfig(q=ap.parse_args().q)
    print("max|a|  " + " ".join(f"{n:>9d}" for n in cfg.nodes))
    for r, errs in ladder(cfg):
        print(f"{r:6.2f}  " + " ".join(f"{e:9.1e}" for e in errs))
