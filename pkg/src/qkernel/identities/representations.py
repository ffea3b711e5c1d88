"""Integral representations of nonterminating series and the A=B=C=D=2 symmetrisation."""

from __future__ import annotations

import cmath
import math

from ..qcore import principal_sqrt, qpochs, thetas
from ..qseries import phi
from .base import Annulus, Guards, IdentityCase
from .common import TWO_PI
from .gmt import contour_integral

#: the contour radius must sit at least this factor inside each pole set
SEPARATION = 1.1


def contour_radius(den_in, den_out) -> float:
    """Geometric midpoint between the inner poles |den_out| and the outer poles 1/|den_in|."""
    lo = max(abs(v) for v in den_out)
    hi = 1 / max(abs(v) for v in den_in)
    return math.sqrt(lo * hi)


def separated(den_in, den_out) -> bool:
    lo = max(abs(v) for v in den_out)
    hi = 1 / max(abs(v) for v in den_in)
    return hi > SEPARATION ** 2 * lo


def _separating_integral(num_in, num_out, den_in, den_out, q):
    return contour_integral(num_in, num_out, den_in, den_out, q, contour_radius(den_in, den_out))


def _best_f(p, ratio):
    # f is free; keep theta(f, f ratio) away from its zeros
    q = p["q"]
    candidates = [p["f"] * cmath.exp(2j * math.pi * k / 8) for k in range(8)]
    p["f"] = max(candidates, key=lambda f: abs(thetas([f, f * ratio], q)))


# ---------------------------------------------------------------------------
# 2phi1, first representation
# ---------------------------------------------------------------------------


def _phi21a_poles(p):
    a, b, c, z = p["a"], p["b"], p["c"], p["z"]
    B, C, Z = principal_sqrt(b), principal_sqrt(c), principal_sqrt(z)
    r = C / (B * Z)
    return r, B, C, Z, [r, 1 / r], [a / r, C * Z / B]


def phi21_integral_a(p):
    q, f, a, b, c, z = (p[k] for k in ("q", "f", "a", "b", "c", "z"))
    r, B, C, Z, den_in, den_out = _phi21a_poles(p)
    integral = _separating_integral([f * r, q / (f * r)], [f * r, q / (f * r), B * C * Z], den_in, den_out, q)
    return qpochs([q, a, c / b, a * b * z / c], q) / (TWO_PI * thetas([f, f * c / (b * z)], q)
                                                      * qpochs([c], q)) * integral


def _phi21a_derive(p, rng):
    p["c"] = p["b"] * p["z"] * p["c"]
    _best_f(p, p["c"] / (p["b"] * p["z"]))


def _phi21_series(p):
    return phi([p["a"], p["b"]], [p["c"]], p["q"], p["z"])


# ---------------------------------------------------------------------------
# 2phi1, second representation
# ---------------------------------------------------------------------------


def _phi21b_poles(p):
    a, b, c, z = p["a"], p["b"], p["c"], p["z"]
    # one branch for each root so that the products stay consistent
    A, B, C = principal_sqrt(a), principal_sqrt(b), principal_sqrt(c)
    r = A * B / C
    return r, [r, 1 / r], [A * C / B, B * C / A, r * z]


def phi21_integral_b(p):
    q, f, a, b, c, z = (p[k] for k in ("q", "f", "a", "b", "c", "z"))
    r, den_in, den_out = _phi21b_poles(p)
    integral = _separating_integral([f * r, q / (f * r)], [f * r, q / (f * r)], den_in, den_out, q)
    return qpochs([q, a, b, c / a, c / b, a * b * z / c], q) / (
        TWO_PI * thetas([f, f * a * b / c], q) * qpochs([c], q)) * integral


def _phi21b_derive(p, rng):
    p["c"] = p["a"] * p["b"] * p["c"]
    _best_f(p, p["a"] * p["b"] / p["c"])


def _phi21_guards(ratio_key):
    def guards(p):
        a, b, c, z = p["a"], p["b"], p["c"], p["z"]
        f = p["f"]
        ratio = c / (b * z) if ratio_key == "a" else a * b / c
        return Guards(denom=[c, c / a, c / b, a * b * z / c, b * z / c], theta=[f, f * ratio, ratio])

    return guards


def _phi21_constraint(poles):
    def ok(p):
        den_in, den_out = poles(p)[-2:]
        return separated(den_in, den_out)

    return ok


# ---------------------------------------------------------------------------
# well-poised 3phi2
# ---------------------------------------------------------------------------


def _phi32_poles(p):
    q, a, b, c, x = (p[k] for k in ("q", "a", "b", "c", "x"))
    s = principal_sqrt(x)
    r1, r2 = principal_sqrt(a * x), principal_sqrt(q * a * x)
    return s, [s, 1 / s], [r1, -r1, r2, -r2, q * a * s / (b * c)]


def phi32_series(p):
    q, a, b, c, x = (p[k] for k in ("q", "a", "b", "c", "x"))
    return phi([a, b, c], [q * a / b, q * a / c], q, q * a * x / (b * c))


def phi32_integral(p):
    q, f, a, b, c, x = (p[k] for k in ("q", "f", "a", "b", "c", "x"))
    s, den_in, den_out = _phi32_poles(p)
    integral = _separating_integral([f * s, q / (f * s)],
                                    [f * s, q / (f * s), q * a * s / b, q * a * s / c, a * x * s],
                                    den_in, den_out, q)
    return qpochs([q, a, q * a / (b * c)], q) / (
        TWO_PI * thetas([f, f * x], q) * qpochs([q * a / b, q * a / c], q)) * integral


def _phi32_derive(p, rng):
    _best_f(p, p["x"])


def _phi32_constraint(p):
    q, a, b, c, x = (p[k] for k in ("q", "a", "b", "c", "x"))
    _, den_in, den_out = _phi32_poles(p)
    return abs(q * a * x) < abs(b * c) and separated(den_in, den_out)


def _phi32_guards(p):
    q, a, b, c, x, f = (p[k] for k in ("q", "a", "b", "c", "x", "f"))
    return Guards(denom=[q * a / b, q * a / c], theta=[f, f * x, x])


# ---------------------------------------------------------------------------
# sums of two 4phi3
# ---------------------------------------------------------------------------


def _pair_term(E, F, t, a, b, c, d, g, h, q, closed=False):
    pref = qpochs([E * t * c, E * t * d, a / E, b / E], q) / qpochs([E * t * g, E * t * h, F / E], q)
    if closed:
        return pref * q_gauss(E * t * g, E * t * h, q * E / F, q)
    return pref * phi([E * t * g, E * t * h, q * E / a, q * E / b], [E * t * c, E * t * d, q * E / F], q,
                      a * b / (E * F))


def pair_sum(t, e, f, a, b, c, d, g, h, q):
    """Idem sum over (e; f) of the 4phi3 terms in the A=B=C=D=2 symmetrisation."""
    return _pair_term(e, f, t, a, b, c, d, g, h, q) + _pair_term(f, e, t, a, b, c, d, g, h, q)


def q_gauss(A, B, C, q):
    """Closed form of 2phi1(A, B; C; q, C/(AB))."""
    return qpochs([C / A, C / B], q) / qpochs([C, C / (A * B)], q)


EIGHT = ("a", "b", "c", "d", "e", "f", "g", "h")


def _abcd_args(p):
    return [p[k] for k in EIGHT]


def _abcd_lhs(p):
    a, b, c, d, e, f, g, h = _abcd_args(p)
    return pair_sum(p["t"], e, f, a, b, c, d, g, h, p["q"])


def _abcd_rhs(p):
    a, b, c, d, e, f, g, h = _abcd_args(p)
    return pair_sum(p["t"], g, h, c, d, a, b, e, f, p["q"])


def _abcd_terms(p):
    a, b, c, d, e, f, g, h = _abcd_args(p)
    t, q = p["t"], p["q"]
    return [[_pair_term(e, f, t, a, b, c, d, g, h, q), _pair_term(f, e, t, a, b, c, d, g, h, q)],
            [_pair_term(g, h, t, c, d, a, b, e, f, q), _pair_term(h, g, t, c, d, a, b, e, f, q)]]


def _abcd_domains(free_t):
    dom = {k: Annulus(0.2, 0.6, sector=(i, 4)) for i, k in enumerate("abcd")}
    dom.update({k: Annulus(0.7, 0.95, sector=(i, 4)) for i, k in enumerate("efgh")})
    if free_t:
        dom["t"] = Annulus(0.5, 1.2)
    return dom


def _abcd_derive(free_t):
    def derive(p, rng):
        if not free_t:
            p["t"] = 1 + 0j

    return derive


def _abcd_guards(p):
    a, b, c, d, e, f, g, h = _abcd_args(p)
    t = p["t"]
    g_ = Guards(distinct=[(e, f), (g, h)])
    for E in (e, f):
        g_.denom += [E * t * g, E * t * h, E * t * c, E * t * d]
    for G in (g, h):
        g_.denom += [G * t * e, G * t * f, G * t * a, G * t * b]
    return g_


# q-Gauss reduction: (e, f, a, b, c, d) -> (e, f, k e, q f/k, q/(k e), k/f) and
# (g, h) -> (1/(m e), m/f) turn every 4phi3 into a summable 2phi1 at argument q.
# Both sides then vanish, so the check pairs the e and g terms (series) against
# the f and h terms (summed in closed form).


def _gauss_params(p):
    q, e, f, k, m = p["q"], p["e"], p["f"], p["kappa"], p["mu"]
    return dict(a=k * e, b=q * f / k, c=q / (k * e), d=k / f, e=e, f=f, g=1 / (m * e), h=m / f)


def _gauss_lhs(p):
    v, q = _gauss_params(p), p["q"]
    a, b, c, d, e, f, g, h = (v[k] for k in EIGHT)
    return _pair_term(e, f, 1, a, b, c, d, g, h, q) + _pair_term(g, h, 1, c, d, a, b, e, f, q)


def _gauss_rhs(p):
    v, q = _gauss_params(p), p["q"]
    a, b, c, d, e, f, g, h = (v[k] for k in EIGHT)
    return -(_pair_term(f, e, 1, a, b, c, d, g, h, q, closed=True)
             + _pair_term(h, g, 1, c, d, a, b, e, f, q, closed=True))


def _gauss_terms(p):
    v, q = _gauss_params(p), p["q"]
    a, b, c, d, e, f, g, h = (v[k] for k in EIGHT)
    return [[_pair_term(e, f, 1, a, b, c, d, g, h, q), _pair_term(g, h, 1, c, d, a, b, e, f, q)],
            [_pair_term(f, e, 1, a, b, c, d, g, h, q, closed=True),
             _pair_term(h, g, 1, c, d, a, b, e, f, q, closed=True)]]


def _gauss_guards(p):
    v = _gauss_params(p)
    g = _abcd_guards({**v, "t": 1})
    a, b, c, d, e, f = (v[k] for k in "abcdef")
    g.denom += [a / e, b / e, a / f, b / f, c / v["g"], d / v["g"], c / v["h"], d / v["h"]]
    return g


def cases() -> list[IdentityCase]:
    phi21_dom = {"a": Annulus(0.2, 0.6, sector=(0, 2)), "b": Annulus(0.2, 0.6, sector=(1, 2)),
                 "z": Annulus(0.1, 0.5), "f": Annulus(0.6, 1.4)}
    return [
        IdentityCase(
            "2phi1-intA", "nonterminating 2phi1 as a theta-weighted contour integral (pole pair sqrt(c/bz))",
            _phi21_series, phi21_integral_a,
            {**phi21_dom, "c": Annulus(0.7, 1.4)}, _phi21a_derive,
            constraint=_phi21_constraint(_phi21a_poles), guards=_phi21_guards("a"), group="representations",
        ),
        IdentityCase(
            "2phi1-intB", "nonterminating 2phi1 as a theta-weighted contour integral (pole pair sqrt(ab/c))",
            _phi21_series, phi21_integral_b,
            {**phi21_dom, "a": Annulus(0.3, 0.6, sector=(0, 2)), "b": Annulus(0.3, 0.6, sector=(1, 2)),
             "c": Annulus(0.8, 1.25)}, _phi21b_derive,
            constraint=_phi21_constraint(_phi21b_poles), guards=_phi21_guards("b"), group="representations",
        ),
        IdentityCase(
            "3phi2-int", "well-poised 3phi2 as a theta-weighted contour integral",
            phi32_series, phi32_integral,
            {"a": Annulus(0.1, 0.45), "b": Annulus(0.7, 0.95, sector=(0, 2)), "c": Annulus(0.7, 0.95, sector=(1, 2)),
             "x": Annulus(0.85, 1.15), "f": Annulus(0.6, 1.4)}, _phi32_derive,
            constraint=_phi32_constraint, guards=_phi32_guards, group="representations",
        ),
        IdentityCase(
            "abcd2", "sum of two 4phi3 over (e; f) equals the sum over (g; h) with (a,b) and (c,d) swapped",
            _abcd_lhs, _abcd_rhs, _abcd_domains(True), _abcd_derive(True), guards=_abcd_guards, terms=_abcd_terms,
            tol=1e-6, group="symmetrization",
        ),
        IdentityCase(
            "symcor", "t = 1 case of the two-4phi3 symmetrisation",
            _abcd_lhs, _abcd_rhs, _abcd_domains(False), _abcd_derive(False), guards=_abcd_guards, terms=_abcd_terms,
            tol=1e-6, group="symmetrization",
        ),
        IdentityCase(
            "qGauss-reduction", "specialisation of the symmetrisation where each 4phi3 is a q-Gauss sum",
            _gauss_lhs, _gauss_rhs,
            {"e": Annulus(0.5, 0.9, sector=(0, 2)), "f": Annulus(0.5, 0.9, sector=(1, 2)),
             "kappa": Annulus(0.5, 1.5), "mu": Annulus(0.5, 1.5)},
            guards=_gauss_guards, terms=_gauss_terms, tol=1e-6, group="symmetrization",
        ),
    ]
