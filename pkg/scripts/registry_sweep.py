"""Run every registered identity over a few seeds and print per-case worst residuals."""
import argparse
import time
from dataclasses import dataclass

from qkernel.identities import case_ids, get_case, run_case


@dataclass
class SweepConfig:
    seeds: tuple[int, ...] = (0, 1, 2)
    samples: int = 8
    cases: tuple[str, ...] = ()


def sweep(cfg: SweepConfig) -> int:
    failures = 0
    for cid in cfg.cases or case_ids():
        case = get_case(cid)
        t0 = time.perf_counter()
        recs = [r for s in cfg.seeds for r in run_case(case, s, cfg.samples)]
        ok = sum(r.passed for r in recs)
        failures += len(recs) - ok
        worst = max((r.rel_res for r in recs if r.rel_res is not None), default=float("nan"))
        print(f"{cid:20s} {ok:3d}/{len(recs):<3d} worst={worst:.2e} tol={case.tol:.0e} "
              f"{time.perf_counter() - t0:6.2f}s")
    return failures


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--samples", type=int, default=8)
    ap.add_argument("cases", nargs="*")
    a = ap.parse_args()
    bad = sweep(SweepConfig(tuple(a.seeds), a.samples, tuple(a.cases)))
    print(f"failures: {bad}")
    raise SystemExit(1 if bad else 0)
