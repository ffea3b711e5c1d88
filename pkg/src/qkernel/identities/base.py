"""Identity cases, parameter samplers and residual records."""

from __future__ import annotations

import cmath
import math
import zlib
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .. import effort
from ..errors import QKernelError
from ..qcore import OmegaGuard, check_nome, qpoch_infinite

#: default nome rotation, sample i uses QSET[i % 4]
QSET: tuple[complex, ...] = (0.3 + 0j, 0.5 + 0j, 0.7 + 0j, 0.5 * cmath.exp(1j * math.pi / 7))
#: resampling budget per emitted sample
MAX_ATTEMPTS = 200
#: |(x; q)_inf| below this counts as a denominator hit
DENOM_FLOOR = 1e-6
#: largest accepted sum |term_k| / |sum term_k| for closed forms built from several terms
COND_MAX = 1e4


# ---------------------------------------------------------------------------
# parameter domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Annulus:
    """Complex value with modulus in [rmin, rmax] and phase in a sector.

    ``sector=(k, n)`` restricts the phase to [2 pi k/n, 2 pi (k+1)/n), which
    keeps parameters that enter idem sums apart from one another.
    ``width`` is the used fraction of the sector, centred.
    ``real=True`` draws a real number of random sign instead.
    """

    rmin: float
    rmax: float
    real: bool = False
    sector: tuple[int, int] | None = None
    width: float = 1.0

    def draw(self, rng: np.random.Generator) -> complex:
        r = rng.uniform(self.rmin, self.rmax)
        if self.real:
            return complex(r if rng.uniform() < 0.5 else -r)
        k, n = self.sector or (0, 1)
        # width < 1 keeps the phase in the middle of its sector
        phase = 2 * math.pi * (k + 0.5 + self.width * (rng.uniform() - 0.5)) / n
        return complex(r * math.cos(phase), r * math.sin(phase))


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def draw(self, rng: np.random.Generator) -> float:
        return float(rng.uniform(self.lo, self.hi))


@dataclass(frozen=True)
class Choice:
    values: tuple

    def draw(self, rng: np.random.Generator):
        return self.values[int(rng.integers(len(self.values)))]


@dataclass(frozen=True)
class Fixed:
    value: object

    def draw(self, rng: np.random.Generator):
        return self.value


def ring(name: str, count: int, rmin: float, rmax: float, width: float = 1.0) -> dict:
    """``count`` annulus parameters ``name1..nameN`` in disjoint phase sectors."""
    return {f"{name}{i + 1}": Annulus(rmin, rmax, sector=(i, count), width=width) for i in range(count)}


def geometric_between(rng: np.random.Generator, lo: float, hi: float, margin: float = 0.15) -> float:
    """A modulus strictly between lo and hi, drawn log-uniformly away from both ends."""
    u = rng.uniform(margin, 1 - margin)
    return lo ** (1 - u) * hi ** u


def unit_phase(rng: np.random.Generator) -> complex:
    return cmath.exp(2j * math.pi * rng.uniform())


# ---------------------------------------------------------------------------
# guards
# ---------------------------------------------------------------------------


@dataclass
class Guards:
    """Values to keep away from pole sets during sampling.

    ``denom``: arguments x of denominator factors (x; q)_inf, rejected when x
    is near Omega_q or |(x; q)_inf| < DENOM_FLOOR. ``theta``: arguments of
    modified theta functions, rejected near q^m. ``distinct``: pairs whose
    ratio must stay off q^m (idem sums).
    """

    denom: list = field(default_factory=list)
    theta: list = field(default_factory=list)
    distinct: list = field(default_factory=list)


def guards_ok(g: Guards, q: complex, guard: OmegaGuard) -> str | None:
    for x in g.denom:
        x = complex(x)
        if guard.near_omega(x, q) or abs(qpoch_infinite(x, q)) < DENOM_FLOOR:
            return f"denominator argument {x:.6g} near a pole"
    thetas_ = list(g.theta) + [complex(u) / complex(v) for u, v in g.distinct]
    for x in thetas_:
        x = complex(x)
        if x == 0 or guard.near_theta_zero(x, q):
            return f"theta argument {x:.6g} near q^m"
    return None


# ---------------------------------------------------------------------------
# cases and records
# ---------------------------------------------------------------------------

Params = Mapping[str, object]


@dataclass(frozen=True)
class IdentityCase:
    """One machine-checkable identity.

    ``domains`` are drawn independently, ``derive`` fills in constrained or
    dependent parameters (it receives the rng so it may draw more), and
    ``constraint`` plus ``guards`` decide admissibility of the raw draw.
    ``terms``, when given, splits a multi-term closed form (or several, as a
    list of lists); draws where those
    terms cancel by more than COND_MAX are rejected, since no evaluator can
    resolve a relative residual there.
    """

    id: str
    title: str
    lhs: Callable[[Params], complex]
    rhs: Callable[[Params], complex]
    domains: Mapping[str, object]
    derive: Callable[[dict, np.random.Generator], None] | None = None
    constraint: Callable[[Params], bool] | None = None
    guards: Callable[[Params], Guards] | None = None
    tol: float = 1e-8
    group: str = "misc"
    qset: Sequence[complex] = QSET
    terms: Callable[[Params], Sequence[complex]] | None = None

    def draw(self, rng: np.random.Generator, q: complex) -> dict:
        p: dict = {"q": q}
        for name, dom in self.domains.items():
            p[name] = dom.draw(rng)
        if self.derive is not None:
            self.derive(p, rng)
        return p

    def admissible(self, p: Params, guard: OmegaGuard | None = None) -> str | None:
        """None when admissible, otherwise the rejection reason."""
        guard = guard or OmegaGuard()
        try:
            if self.constraint is not None and not self.constraint(p):
                return "constraint violated"
            if self.guards is not None:
                reason = guards_ok(self.guards(p), complex(p["q"]), guard)
                if reason is not None:
                    return reason
            if self.terms is not None:
                groups = self.terms(p)
                if groups and not isinstance(groups[0], (list, tuple)):
                    groups = [groups]
                cond = max(condition_number(g) for g in groups)
                if not cond <= COND_MAX:
                    return f"closed form cancels (condition {cond:.3g})"
        except (QKernelError, ZeroDivisionError, OverflowError, ValueError) as exc:
            return f"guard evaluation failed: {exc}"
        return None


@dataclass
class ResidualRecord:
    case: str
    index: int
    params: dict
    lhs: complex | None
    rhs: complex | None
    abs_res: float | None
    rel_res: float | None
    tol: float
    passed: bool
    terms: int = 0
    nodes: int = 0
    attempts: int = 1
    error: str | None = None


def condition_number(terms: Sequence[complex]) -> float:
    """sum |t_k| / |sum t_k|, the relative error amplification of a sum."""
    terms = [complex(t) for t in terms]
    total = abs(sum(terms))
    mass = sum(abs(t) for t in terms)
    if mass == 0:
        return 1.0
    return mass / total if total > 0 else math.inf


def relative_residual(lhs: complex, rhs: complex) -> tuple[float, float]:
    diff = abs(lhs - rhs)
    return diff, diff / max(abs(lhs), abs(rhs), 1e-300)


def sample_rng(seed: int, case_id: str, index: int) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, zlib.crc32(case_id.encode()), int(index)])


def draw_admissible(case: IdentityCase, seed: int, index: int, q=None,
                    guard: OmegaGuard | None = None) -> tuple[dict, int]:
    rng = sample_rng(seed, case.id, index)
    q = check_nome(case.qset[index % len(case.qset)] if q is None else q)
    for attempt in range(1, MAX_ATTEMPTS + 1):
        p = case.draw(rng, q)
        if case.admissible(p, guard) is None:
            return p, attempt
    raise QKernelError(f"{case.id}: no admissible sample in {MAX_ATTEMPTS} draws")


def evaluate_sample(case: IdentityCase, p: dict, index: int = 0, attempts: int = 1,
                    tol: float | None = None) -> ResidualRecord:
    tol = case.tol if tol is None else tol
    with effort.track() as eff:
        try:
            lhs = complex(case.lhs(p))
            rhs = complex(case.rhs(p))
        except (QKernelError, ArithmeticError, ValueError) as exc:
            return ResidualRecord(case.id, index, p, None, None, None, None, tol, False,
                                  eff.terms, eff.nodes, attempts, f"{type(exc).__name__}: {exc}")
    if not (cmath.isfinite(lhs) and cmath.isfinite(rhs)):
        return ResidualRecord(case.id, index, p, lhs, rhs, None, None, tol, False,
                              eff.terms, eff.nodes, attempts, "NonFinite: evaluator returned a non-finite value")
    a, r = relative_residual(lhs, rhs)
    return ResidualRecord(case.id, index, p, lhs, rhs, a, r, tol, r <= tol, eff.terms, eff.nodes, attempts)


def run_case(case: IdentityCase, seed: int, n_samples: int, q=None, tol: float | None = None,
             guard: OmegaGuard | None = None) -> list[ResidualRecord]:
    """Evaluate ``n_samples`` seeded samples; failures become records, never exceptions."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    out = []
    for i in range(n_samples):
        try:
            p, attempts = draw_admissible(case, seed, i, q, guard)
        except QKernelError as exc:
            out.append(ResidualRecord(case.id, i, {}, None, None, None, None,
                                      case.tol if tol is None else tol, False,
                                      error=f"SamplerExhausted: {exc}"))
            continue
        out.append(evaluate_sample(case, p, i, attempts, tol))
    return out


def audit_sampler(case: IdentityCase, seed: int = 0, draws: int = 200,
                  guard: OmegaGuard | None = None) -> float:
    """Fraction of raw draws that pass the admissibility test."""
    ok = 0
    for i in range(draws):
        rng = sample_rng(seed, case.id, i)
        p = case.draw(rng, check_nome(case.qset[i % len(case.qset)]))
        ok += case.admissible(p, guard) is None
    return ok / draws
