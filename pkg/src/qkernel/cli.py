"""Command-line front end.

    qkernel eval qpoch a=0.3 q=0.5 n=5
    qkernel verify --cases AWint,NRint --seed 42 --samples 10 --out report.json
    qkernel report report.json
"""

from __future__ import annotations

import argparse
import cmath
import csv
import dataclasses
import io
import json
import math
import re
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__, effort
from .errors import QKernelError

EXIT_OK, EXIT_USAGE, EXIT_EVAL, EXIT_FAIL = 0, 1, 2, 3

_NUM = r"(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
_COMPLEX = re.compile(rf"^\s*(?P<re>[+-]?{_NUM})?(?:(?P<im>[+-]{_NUM}?)i)?\s*$")
_EXP = re.compile(rf"^\s*(?:(?P<r>{_NUM})\s*\*?\s*)?exp\(\s*i\s*\*?\s*(?P<t>[^)]+)\)\s*$")
_ANGLE = re.compile(rf"^\s*(?P<sign>[+-])?(?:(?P<num>{_NUM})\s*\*?\s*)?(?P<pi>pi)?(?:\s*/\s*(?P<den>{_NUM}))?\s*$")


class UsageError(Exception):
    pass


def _angle(text: str) -> float:
    m = _ANGLE.match(text)
    if not m or not (m["num"] or m["pi"]):
        raise UsageError(f"cannot parse angle {text!r}")
    val = float(m["num"]) if m["num"] else 1.0
    if m["pi"]:
        val *= math.pi
    if m["den"]:
        val /= float(m["den"])
    return -val if m["sign"] == "-" else val


def parse_complex(text: str) -> complex:
    """Parse "1.5", "0.3-0.2i", "-2i", "exp(i pi/7)" or "0.5exp(i0.4)"."""
    m = _EXP.match(text)
    if m:
        r = float(m["r"]) if m["r"] else 1.0
        return r * cmath.exp(1j * _angle(m["t"]))
    m = _COMPLEX.match(text)
    if not m or (m["re"] is None and m["im"] is None):
        raise UsageError(f"cannot parse complex literal {text!r}")
    re_ = float(m["re"]) if m["re"] else 0.0
    im = 0.0
    if m["im"] is not None:
        im_text = m["im"]
        im = float(im_text + "1") if im_text in "+-" else float(im_text)
    elif m["re"] and text.strip().endswith("i"):
        raise UsageError(f"cannot parse complex literal {text!r}")
    return complex(re_, im)


def parse_list(text: str) -> list[complex]:
    return [parse_complex(t) for t in text.split(",") if t.strip()] if text.strip() else []


def format_complex(z: complex) -> str:
    z = complex(z) + 0.0  # drops negative zeros
    if z.imag == 0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}i"


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _eval_kernel(kind: str, kw: dict[str, str]):
    from . import polyortho, qcore, qseries

    def c(name, default=None):
        if name not in kw:
            if default is None:
                raise UsageError(f"{kind}: missing argument {name}=")
            return default
        return parse_complex(kw.pop(name))

    def n_arg(name, required=True):
        if name not in kw:
            if required:
                raise UsageError(f"{kind}: missing argument {name}=")
            return None
        raw = kw.pop(name)
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"{kind}: {name} must be an integer, got {raw!r}") from None

    def real(name):
        z = c(name)
        if z.imag != 0:
            raise UsageError(f"{kind}: {name} must be real")
        return z.real

    def lst(name):
        return parse_list(kw.pop(name, ""))

    if kind == "qpoch":
        a, q, n = c("a"), c("q"), n_arg("n", required=False)
        call = lambda: qcore.qpoch(a, q, n)
    elif kind == "theta":
        x, q = c("x"), c("q")
        call = lambda: qcore.theta(x, q)
    elif kind == "phi":
        numer, denom, q, z = lst("numer"), lst("denom"), c("q"), c("z")
        m = n_arg("m", required=False) or 0
        call = lambda: qseries.phi(numer, denom, q, z, m)
    elif kind == "wphi":
        b, tail, q, z = c("b"), lst("tail"), c("q"), c("z")
        call = lambda: qseries.wphi(b, tail, q, z)
    elif kind == "aw":
        n, x = n_arg("n"), real("x")
        a, b, cc, d, q = c("a"), c("b"), c("c"), c("d"), c("q")
        call = lambda: polyortho.askey_wilson(n, x, a, b, cc, d, q)
    elif kind == "cdqh":
        n, x = n_arg("n"), real("x")
        a, b, cc, q = c("a"), c("b"), c("c"), c("q")
        call = lambda: polyortho.cdqhahn(n, x, a, b, cc, q)
    else:  # argparse restricts choices
        raise UsageError(f"unknown kind {kind!r}")
    if kw:
        raise UsageError(f"{kind}: unexpected argument(s) {', '.join(sorted(kw))}")
    return call


def cmd_eval(args) -> int:
    kw: dict[str, str] = {}
    for item in args.args:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected name=value, got {item!r}")
        kw[key.strip()] = val
    call = _eval_kernel(args.kind, kw)
    with effort.track() as eff:
        try:
            value = call()
        except (QKernelError, ArithmeticError, ValueError) as exc:
            print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_EVAL
    print(format_complex(value))
    print(f"terms={eff.terms} nodes={eff.nodes}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    cases: list[str]
    seed: int = 1
    samples: int = 10
    tol: float | None = None
    q: complex | None = None
    out: str | None = None
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        from .identities import case_ids

        if self.samples < 1:
            raise UsageError("--samples must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.fmt not in ("json", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if not self.cases:
            raise UsageError("no cases selected (use --cases or --all)")
        known = set(case_ids())
        unknown = [c for c in self.cases if c not in known]
        if unknown:
            raise UsageError(f"unknown case id(s): {', '.join(unknown)}")


def _jsonable(v):
    if isinstance(v, complex):
        return [_jsonable(v.real), _jsonable(v.imag)]
    if isinstance(v, float):
        return v if math.isfinite(v) else None
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return _jsonable(v.item())
    return v


def record_dict(rec) -> dict:
    return _jsonable(dataclasses.asdict(rec))


def _run_one(case_id: str, cfg: RunConfig) -> list[dict]:
    from .identities import get_case, run_case

    recs = run_case(get_case(case_id), cfg.seed, cfg.samples, q=cfg.q, tol=cfg.tol)
    return [record_dict(r) for r in recs]


def _policies() -> dict:
    from .identities.base import COND_MAX, DENOM_FLOOR, MAX_ATTEMPTS, QSET
    from .qcore import DEFAULT_POLICY, GUARD_TOL
    from .qseries import SERIES_POLICY
    from .quadrature import DEFAULT_QUAD

    return _jsonable({
        "product": dataclasses.asdict(DEFAULT_POLICY),
        "series": dataclasses.asdict(SERIES_POLICY),
        "quadrature": dataclasses.asdict(DEFAULT_QUAD),
        "guard_tol": GUARD_TOL,
        "denom_floor": DENOM_FLOOR,
        "cond_max": COND_MAX,
        "max_attempts": MAX_ATTEMPTS,
        "qset": list(QSET),
    })


def build_report(cfg: RunConfig) -> dict:
    if cfg.jobs > 1 and len(cfg.cases) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_run_one, cfg.cases, [cfg] * len(cfg.cases)))
    else:
        chunks = [_run_one(c, cfg) for c in cfg.cases]
    meta = {
        "seed": cfg.seed,
        "version": __version__,
        "samples": cfg.samples,
        "tol_override": cfg.tol,
        "q_override": _jsonable(cfg.q),
        "cases": list(cfg.cases),
        "policies": _policies(),
    }
    return {"meta": meta, "records": [r for chunk in chunks for r in chunk]}


CSV_FIELDS = ["case", "index", "passed", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
              "abs_res", "rel_res", "tol", "terms", "nodes", "attempts", "error", "params"]


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in report["records"]:
        lhs, rhs = r["lhs"] or [None, None], r["rhs"] or [None, None]
        w.writerow([r["case"], r["index"], r["passed"], *lhs, *rhs, r["abs_res"], r["rel_res"],
                    r["tol"], r["terms"], r["nodes"], r["attempts"], r["error"] or "",
                    json.dumps(r["params"], sort_keys=False)])
    return buf.getvalue()


def serialize(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return report_csv(report)
    return json.dumps(report, indent=1) + "\n"


def summarize(records: list[dict]) -> dict[str, dict]:
    """Per-case aggregate in first-seen order."""
    out: dict[str, dict] = {}
    for r in records:
        out.setdefault(r["case"], []).append(r)
    table = {}
    for case, rs in out.items():
        res = [r["rel_res"] for r in rs if r["rel_res"] is not None]
        worst = math.inf if len(res) < len(rs) else max(res, default=math.nan)
        table[case] = {
            "n": len(rs),
            "passed": sum(bool(r["passed"]) for r in rs),
            "worst_rel": worst,
            "median_terms": statistics.median(r["terms"] for r in rs),
            "median_nodes": statistics.median(r["nodes"] for r in rs),
        }
    return table


def cmd_verify(args) -> int:
    from .identities import case_ids

    if args.all:
        cases = case_ids()
    else:
        cases = [c.strip() for c in (args.cases or "").split(",") if c.strip()]
    cfg = RunConfig(cases=cases, seed=args.seed, samples=args.samples, tol=args.tol,
                    q=parse_complex(args.q) if args.q is not None else None,
                    out=args.out, fmt=args.format, jobs=args.jobs)
    report = build_report(cfg)
    text = serialize(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    all_ok = True
    for case, row in summarize(report["records"]).items():
        ok = row["passed"] == row["n"]
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'} {row['passed']}/{row['n']} {case} worst={row['worst_rel']:.3e}")
    return EXIT_OK if all_ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

REPORT_COLUMNS = ["case", "n", "pass_rate", "worst_rel", "median_terms", "median_nodes"]


def load_report(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if not text.strip():
        return {"meta": {}, "records": []}
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed report: {exc}") from None
    if isinstance(data, list):
        data = {"meta": {}, "records": data}
    if not isinstance(data, dict) or not isinstance(data.get("records"), list):
        raise UsageError("malformed report: expected an object with a records list")
    need = {"case", "passed", "rel_res", "terms", "nodes"}
    for r in data["records"]:
        if not isinstance(r, dict) or not need <= r.keys():
            raise UsageError("malformed report: record lacks required fields")
    return data


def cmd_report(args) -> int:
    table = summarize(load_report(args.input)["records"])
    rows = [[case, row["n"], f"{row['passed'] / row['n']:.3f}", f"{row['worst_rel']:.3e}",
             f"{row['median_terms']:g}", f"{row['median_nodes']:g}"] for case, row in table.items()]
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        w.writerows(rows)
    else:
        widths = [max(len(str(x)) for x in col) for col in zip(REPORT_COLUMNS, *rows)]
        for line in [REPORT_COLUMNS, *rows]:
            print("  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip())
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qkernel", description="q-series kernels and identity checks")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate a kernel function")
    e.add_argument("kind", choices=["qpoch", "theta", "phi", "wphi", "aw", "cdqh"])
    e.add_argument("args", nargs="*", metavar="name=value",
                   help="complex literals like 0.3, 0.2-0.1i or exp(i pi/7); lists comma separated")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run identity cases and write a residual report")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--cases", help="comma separated case ids")
    g.add_argument("--all", action="store_true", help="every registered case")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--samples", type=int, default=10)
    v.add_argument("--tol", type=float, default=None, help="override every case tolerance")
    v.add_argument("--q", default=None, help="fixed nome instead of the default rotation")
    v.add_argument("--out", default=None, help="report path")
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--jobs", type=int, default=1, help="worker processes across cases")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="aggregate a JSON residual report")
    r.add_argument("input")
    r.add_argument("--format", choices=["table", "csv"], default="table")
    r.set_defaults(func=cmd_report)

    sub.add_parser("list", help="list case ids").set_defaults(func=cmd_list)
    return p


def cmd_list(args) -> int:
    from .identities import register_all

    for c in register_all():
        print(f"{c.id}\t{c.group}\t{c.title}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
