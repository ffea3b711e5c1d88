"""q-beta integrals, their reductions and the very-well-poised transformations they imply."""

from __future__ import annotations

import cmath
import math

from ..qcore import prod, qpoch_infinite, qpochs, thetas
from ..qseries import wphi
from .base import Annulus, Fixed, Guards, IdentityCase, Interval, geometric_between, ring, unit_phase
from .common import TWO_PI, others, pairs, symmetric_integral, vec
from .gmt import contour_integral

NESTED_TOL = 1e-6


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def aw_rhs(a, q):
    return TWO_PI * qpoch_infinite(prod(a), q) / qpochs([q] + pairs(a), q)


def nr_rhs(a, lam, q):
    """Closed form of the Nassrallah-Rahman integral over [0, pi]."""
    a5 = prod(a)
    pref = TWO_PI * qpochs([lam * v for v in a] + [a5 / lam], q) / qpochs([q] + pairs(a) + [lam * lam], q)
    return pref * wphi(lam * lam / q, [lam / v for v in a], q, a5 / lam)


def _rahman_term(a, lam, mu, q):
    return (qpochs([lam * v for v in a] + [mu / v for v in a], q) / qpochs([lam * lam, mu / lam], q)
            * wphi(lam * lam / q, [lam * mu / q] + [lam / v for v in a], q, q))


def rahman_rhs(a, lam, mu, q):
    """Closed form of the Rahman integral over [0, pi] (needs lam mu = a_1...a_6)."""
    return TWO_PI / qpochs([q] + pairs(a), q) * (_rahman_term(a, lam, mu, q) + _rahman_term(a, mu, lam, q))


def askey_roy_rhs(a, b, c, d, f, q):
    return TWO_PI * thetas([f, f * c / d], q) * qpoch_infinite(a * b * c * d, q) / qpochs(
        [q, a * c, a * d, b * c, b * d], q)


def gasper_rhs(a, b, c, d, e, f, q):
    num = qpochs([a * b * c * d, b * c * d * e, a * c * d * e], q)
    den = qpochs([q, a * c, a * d, b * c, b * d, c * e, d * e], q)
    return TWO_PI * thetas([f, f * c / d], q) * num / den


def fourfour_rhs(a, b, c, d, g, h, k, f, q):
    num = qpochs([k * c, k * d, a * c * d * g, b * c * d * g, c * d * g * h, a * b * c * d * h / k], q)
    den = qpochs([q, a * c, a * d, b * c, b * d, c * g, d * g, c * h, d * h, k * c * d * g], q)
    w = wphi(k * c * d * g / q, [c * g, d * g, k / a, k / b, k / h], q, a * b * c * d * h / k)
    return TWO_PI * thetas([f, f * c / d], q) * num / den * w


def _idem_terms(a, extra_num, extra_tail, z, q):
    """Terms over a_1 of (a_1^-2, extra_num(a_1); q) / (a_1 a_[1], a_[1]/a_1; q) W(a_1^2; a_1 a_[1], extra_tail(a_1))."""
    out = []
    for k, ak in enumerate(a):
        rest = others(a, k)
        num = qpochs([ak ** -2] + extra_num(ak), q)
        den = qpochs([ak * v for v in rest] + [v / ak for v in rest], q)
        out.append(num / den * wphi(ak * ak, [ak * v for v in rest] + extra_tail(ak), q, z))
    return out


def gen_rahman_terms(a, lam, mu, q):
    z = q * lam * mu / prod(a)
    return _idem_terms(a, lambda x: [x * lam, x * mu, lam / x, mu / x], lambda x: [q * x / lam, q * x / mu], z, q)


def gen_rahman_rhs(a, lam, mu, q):
    return TWO_PI / qpoch_infinite(q, q) * sum(gen_rahman_terms(a, lam, mu, q))


def alt_nr_terms(a, lam, q):
    return _idem_terms(a, lambda x: [x * lam, lam / x], lambda x: [q * x / lam], q * lam / prod(a), q)


def alt_nr_rhs(a, lam, q):
    return TWO_PI / qpoch_infinite(q, q) * sum(alt_nr_terms(a, lam, q))


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def _a_guards(n):
    def guards(p):
        a = vec(p, "a", n)
        return Guards(denom=pairs(a), distinct=[(a[i], a[j]) for i in range(n) for j in range(i + 1, n)])

    return guards


def _lam_above_product(n, lo=1.3, hi=4.0):
    """lam with |a_1...a_n| < |lam|, the W argument a_1...a_n/lam staying in the disk."""

    def derive(p, rng):
        p["lam"] = prod(vec(p, "a", n)) * rng.uniform(lo, hi) * unit_phase(rng)

    return derive


def _lam_in_window(n):
    """lam with |q lam| < |a_1...a_n| < |lam|."""

    def derive(p, rng):
        an = prod(vec(p, "a", n))
        p["lam"] = an * geometric_between(rng, 1.0, 1.0 / abs(p["q"])) * unit_phase(rng)

    return derive


def _rahman_derive(p, rng):
    p["mu"] = prod(vec(p, "a", 6)) / p["lam"]


def _rahman_guards(p):
    a = vec(p, "a", 6)
    lam, mu = p["lam"], p["mu"]
    g = _a_guards(6)(p)
    g.denom += [lam * lam, mu * mu]
    g.distinct.append((lam, mu))
    g.denom += [lam * v for v in a] + [mu * v for v in a]
    return g


def _gen_rahman_derive(p, rng):
    a6 = prod(vec(p, "a", 6))
    p["mu"] = a6 / p["lam"] * geometric_between(rng, 1.0, 1.0 / abs(p["q"])) * unit_phase(rng)


def _gen_rahman_guards(p):
    a = vec(p, "a", 6)
    g = _a_guards(6)(p)
    g.denom += [p["lam"] * v for v in a] + [p["mu"] * v for v in a]
    return g


def _nr_guards(p):
    a = vec(p, "a", 5)
    g = _a_guards(5)(p)
    g.denom += [p["lam"] ** 2] + [p["lam"] * v for v in a]
    return g


def _sum6w5_derive(p, rng):
    a123 = prod(vec(p, "a", 3))
    target = geometric_between(rng, abs(p["q"]), 1.0)
    p["a4"] = target / abs(a123) * unit_phase(rng)


def _ar_domains(with_e):
    dom = {"sigma": Interval(0.8, 1.25), "f": Annulus(0.8, 1.25)}
    names = ["a", "b", "c", "d"] + (["e"] if with_e else [])
    for i, name in enumerate(names):
        dom[name] = Annulus(0.3 if name in "cd" else 0.1, 0.8, sector=(i, len(names)))
    return dom


def _balance_f(p):
    """Place the free parameter f where the integral is well conditioned.

    |f|^2 = |q d / c| balances the two theta numerators. The value scales
    with theta(f, f c/d), so among a few phases the one maximising that
    product is kept; near its zeros the quadrature would mostly cancel.
    """
    q, c, d = p["q"], p["c"], p["d"]
    base = p["f"] * math.sqrt(abs(q * d / c))
    candidates = [base * cmath.exp(2j * math.pi * k / 8) for k in range(8)]
    p["f"] = max(candidates, key=lambda f: abs(thetas([f, f * c / d], q)))


def _ar_derive(p, rng):
    _balance_f(p)
    s = p["sigma"]
    for name in ("a", "b", "e"):
        if name in p:
            p[name] = p[name] * s
    for name in ("c", "d"):
        p[name] = p[name] / s


def _ar_guards(p):
    f, c, d = p["f"], p["c"], p["d"]
    return Guards(theta=[f, f * c / d], denom=[p["a"] * c, p["a"] * d, p["b"] * c, p["b"] * d])


def _ar_integral(p, e=None):
    q, f, s = p["q"], p["f"], p["sigma"]
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    num_out = [f / d, q / (f * c)]
    den_out = [a, b]
    if e is not None:
        num_out.append(a * b * c * d * e)
        den_out.append(e)
    return contour_integral([f * c, q * d / f], num_out, [c, d], den_out, q, s)


FOURFOUR_NAMES = ("a", "b", "c", "d", "g", "h")


def _rint_to_nr_guards(p):
    a = vec(p, "a", 6)
    lam = prod(a[:5])
    g = _a_guards(6)(p)
    g.denom += [lam * lam, a[5] ** 2]
    g.distinct.append((lam, a[5]))
    return g


def _fourfour_gint_guards(p):
    g = _ar_guards(p)
    c, d, e, k = p["c"], p["d"], p["e"], p["k"]
    g.denom += [c * e, d * e, c * k, d * k, k * c * d * e]
    return g


def _fourfour_domains():
    dom = {"f": Annulus(0.8, 1.25)}
    for i, name in enumerate(FOURFOUR_NAMES):
        dom[name] = Annulus(0.3 if name in "cd" else 0.1, 0.8, sector=(i, len(FOURFOUR_NAMES)))
    return dom


def _fourfour_derive(p, rng):
    _balance_f(p)
    p["k"] = p["a"] * p["b"] * p["c"] * p["d"] * p["h"] * rng.uniform(1.3, 4.0) * unit_phase(rng)


def _fourfour_guards(p):
    g = _ar_guards(p)
    c, d = p["c"], p["d"]
    g.denom += [c * p["g"], d * p["g"], c * p["h"], d * p["h"], p["k"] * c * d * p["g"]]
    return g


def _fourfour_integral(p):
    q, f = p["q"], p["f"]
    a, b, c, d, g, h, k = (p[n] for n in FOURFOUR_NAMES + ("k",))
    return contour_integral([c * f, q * d / f], [f / d, q / (f * c), k, a * b * c * d * g * h / k],
                            [c, d], [a, b, g, h], q)


def _fourfour_closed(p):
    return fourfour_rhs(*(p[n] for n in FOURFOUR_NAMES + ("k", "f")), p["q"])


def _rint_terms(p):
    a, lam, mu, q = vec(p, "a", 6), p["lam"], p["mu"], p["q"]
    return [_rahman_term(a, lam, mu, q), _rahman_term(a, mu, lam, q)]


def _genrah_terms(p):
    return gen_rahman_terms(vec(p, "a", 6), p["lam"], p["mu"], p["q"])


def _altnr_terms(p):
    return alt_nr_terms(vec(p, "a", 5), p["lam"], p["q"])


def _sym10_terms(p):
    a, lam, mu, q = vec(p, "a", 6), p["lam"], p["mu"], p["q"]
    return [gen_rahman_terms(a, lam, mu, q), _rint_terms(p)]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def cases() -> list[IdentityCase]:
    a4 = ring("a", 4, 0.05, 0.8)
    a5 = ring("a", 5, 0.1, 0.8)
    a6 = ring("a", 6, 0.1, 0.8)
    a5_wide = ring("a", 5, 0.55, 0.85)
    a6_wide = ring("a", 6, 0.55, 0.85, width=0.6)

    return [
        IdentityCase(
            "AWint", "Askey-Wilson integral",
            lambda p: 0.5 * symmetric_integral([], vec(p, "a", 4), p["q"]),
            lambda p: aw_rhs(vec(p, "a", 4), p["q"]),
            a4, guards=_a_guards(4), group="qbeta",
        ),
        IdentityCase(
            "NRint", "Nassrallah-Rahman integral",
            lambda p: 0.5 * symmetric_integral([p["lam"]], vec(p, "a", 5), p["q"]),
            lambda p: nr_rhs(vec(p, "a", 5), p["lam"], p["q"]),
            a5, _lam_above_product(5), guards=_nr_guards, group="qbeta",
        ),
        IdentityCase(
            "NR-to-AW", "Nassrallah-Rahman closed form at lam = a5 equals the Askey-Wilson integral",
            lambda p: nr_rhs(vec(p, "a", 5), p["a5"], p["q"]),
            lambda p: 0.5 * symmetric_integral([], vec(p, "a", 4), p["q"]),
            a5, guards=_a_guards(5), group="qbeta",
        ),
        IdentityCase(
            "Rint", "Rahman integral with lam mu = a1...a6",
            lambda p: 0.5 * symmetric_integral([p["lam"], p["mu"]], vec(p, "a", 6), p["q"]),
            lambda p: rahman_rhs(vec(p, "a", 6), p["lam"], p["mu"], p["q"]),
            {**a6, "lam": Annulus(0.3, 1.2)}, _rahman_derive, guards=_rahman_guards,
            tol=NESTED_TOL, terms=_rint_terms,
            group="qbeta",
        ),
        IdentityCase(
            "Rint-to-NR", "Rahman closed form at mu = a6 equals the Nassrallah-Rahman integral at lam = a1...a5",
            lambda p: rahman_rhs(vec(p, "a", 6), prod(vec(p, "a", 5)), p["a6"], p["q"]),
            lambda p: 0.5 * symmetric_integral([prod(vec(p, "a", 5))], vec(p, "a", 5), p["q"]),
            a6, guards=_rint_to_nr_guards, tol=NESTED_TOL, group="qbeta",
        ),
        IdentityCase(
            "ARint", "Askey-Roy integral",
            _ar_integral,
            lambda p: askey_roy_rhs(p["a"], p["b"], p["c"], p["d"], p["f"], p["q"]),
            _ar_domains(False), _ar_derive, guards=_ar_guards, group="qbeta",
        ),
        IdentityCase(
            "Gint", "Gasper integral",
            lambda p: _ar_integral(p, p["e"]),
            lambda p: gasper_rhs(p["a"], p["b"], p["c"], p["d"], p["e"], p["f"], p["q"]),
            _ar_domains(True), _ar_derive, guards=_ar_guards, group="qbeta",
        ),
        IdentityCase(
            "Gint-to-AR", "Gasper closed form at e = 0 equals the Askey-Roy integral",
            lambda p: gasper_rhs(p["a"], p["b"], p["c"], p["d"], 0.0, p["f"], p["q"]),
            _ar_integral,
            _ar_domains(False), _ar_derive, guards=_ar_guards, group="qbeta",
        ),
        IdentityCase(
            "fourfour", "theta-weighted integral with four numerator and four denominator products",
            _fourfour_integral, _fourfour_closed,
            _fourfour_domains(), _fourfour_derive, guards=_fourfour_guards, tol=NESTED_TOL, group="qbeta",
        ),
        IdentityCase(
            "fourfour-to-Gint", "the h = k, g = e specialisation reproduces the Gasper integral",
            lambda p: fourfour_rhs(p["a"], p["b"], p["c"], p["d"], p["e"], p["k"], p["k"], p["f"], p["q"]),
            lambda p: _ar_integral({**p, "sigma": 1.0}, p["e"]),
            {**_ar_domains(True), "sigma": Fixed(1.0), "k": Annulus(0.3, 1.5)},
            _ar_derive, guards=_fourfour_gint_guards, group="qbeta",
        ),
        IdentityCase(
            "genRah", "Rahman-type integral without the lam mu constraint as an idem sum of six 10W9",
            lambda p: symmetric_integral([p["lam"], p["mu"]], vec(p, "a", 6), p["q"]),
            lambda p: gen_rahman_rhs(vec(p, "a", 6), p["lam"], p["mu"], p["q"]),
            {**a6_wide, "lam": Annulus(0.3, 1.0)}, _gen_rahman_derive, guards=_gen_rahman_guards,
            tol=NESTED_TOL, terms=_genrah_terms,
            group="symmetrization",
        ),
        IdentityCase(
            "sym-10W9", "idem sum of six 10W9 equals the symmetric sum of two 10W9",
            lambda p: gen_rahman_rhs(vec(p, "a", 6), p["lam"], p["mu"], p["q"]) * qpoch_infinite(p["q"], p["q"]) / TWO_PI,
            lambda p: 2 * qpoch_infinite(p["q"], p["q"]) / TWO_PI * rahman_rhs(vec(p, "a", 6), p["lam"], p["mu"], p["q"]),
            {**a6_wide, "lam": Annulus(0.3, 1.0)}, _rahman_derive, guards=_rahman_guards,
            tol=NESTED_TOL, terms=_sym10_terms,
            group="symmetrization",
        ),
        IdentityCase(
            "altNR", "Nassrallah-Rahman integral as an idem sum of five 8W7",
            lambda p: symmetric_integral([p["lam"]], vec(p, "a", 5), p["q"]),
            lambda p: alt_nr_rhs(vec(p, "a", 5), p["lam"], p["q"]),
            a5_wide, _lam_in_window(5), guards=_nr_guards, tol=NESTED_TOL,
            terms=_altnr_terms,
            group="symmetrization",
        ),
        IdentityCase(
            "compNR", "idem sum of five 8W7 equals a single 8W7",
            lambda p: alt_nr_rhs(vec(p, "a", 5), p["lam"], p["q"]) * qpoch_infinite(p["q"], p["q"]) / TWO_PI,
            lambda p: 2 * qpoch_infinite(p["q"], p["q"]) / TWO_PI * nr_rhs(vec(p, "a", 5), p["lam"], p["q"]),
            a5_wide, _lam_in_window(5), guards=_nr_guards, tol=NESTED_TOL,
            terms=_altnr_terms,
            group="symmetrization",
        ),
        IdentityCase(
            "sum-6W5", "idem sum of four 6W5 is an infinite product",
            lambda p: sum_6w5_series(vec(p, "a", 4), p["q"]),
            lambda p: sum_6w5_product(vec(p, "a", 4), p["q"]),
            ring("a", 3, 0.6, 0.95, width=0.6), _sum6w5_derive, guards=_a_guards(4), tol=NESTED_TOL,
            terms=lambda p: sum_6w5_terms(vec(p, "a", 4), p["q"]),
            group="symmetrization",
        ),
    ]


def sum_6w5_terms(a, q):
    return _idem_terms(a, lambda x: [], lambda x: [], q / prod(a), q)


def sum_6w5_series(a, q):
    return sum(sum_6w5_terms(a, q))


def sum_6w5_theta(a, q):
    a4 = prod(a)
    total = 0j
    for k, ak in enumerate(a):
        rest = others(a, k)
        total += thetas([ak ** -2] + pairs(rest), q) / thetas([a4] + [v / ak for v in rest], q)
    return qpoch_infinite(a4, q) / qpochs(pairs(a), q) * total


def sum_6w5_product(a, q):
    return 2 * qpoch_infinite(prod(a), q) / qpochs(pairs(a), q)
