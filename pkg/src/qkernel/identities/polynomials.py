"""Integral representations and generating functions for Askey-Wilson type polynomials."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .. import effort
from ..qcore import principal_sqrt, qpoch_finite, qpoch_infinite, qpochs, thetas
from ..qseries import SERIES_POLICY, phi
from ..polyortho import alsalam_chihara, askey_wilson, cdqhahn
from ..quadrature import integrate_periodic
from .base import Annulus, Choice, Guards, IdentityCase, Interval, ring
from .common import TWO_PI, others, pairs, partial_sum, prod, vec

# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------


def _angle(p):
    th = p["theta"]
    return math.cos(th), cmath.exp(1j * th)


def _best_f(p, rng):
    # f is free; pick the phase keeping theta(f, f e^{2i theta}) largest
    q, e2 = p["q"], cmath.exp(2j * p["theta"])
    candidates = [p["f"] * cmath.exp(2j * math.pi * k / 8) for k in range(8)]
    p["f"] = max(candidates, key=lambda f: abs(thetas([f, f * e2], q)))


def _qpoch_grid(x, q, n):
    out = np.ones_like(x)
    for k in range(n):
        out = out * (1 - x * q ** k)
    return out


def _inf(x, q):
    return qpoch_infinite(x, q)


def _kernel(f, e, num_out, den_out, q, sigma):
    """Integrand factory for the f-theta kernel shared by all representations.

    Returns g(psi) giving the infinite-product part
    (f e, q/(f e)) sigma/z and (f e, q/(f e), num_out) z/sigma over
    (e^{+-} sigma/z, den_out z/sigma), plus the grids u = sigma/z, w = z/sigma.
    """

    def g(psi):
        z = np.exp(1j * psi)
        u, w = sigma / z, z / sigma
        val = _inf(f * e * u, q) * _inf(q / (f * e) * u, q) * _inf(f * e * w, q) * _inf(q / (f * e) * w, q)
        for v in num_out:
            val = val * _inf(v * w, q)
        val = val / (_inf(e * u, q) * _inf(u / e, q))
        for v in den_out:
            val = val / _inf(v * w, q)
        return val, u, w

    return g


def _pref(q, f, e, params, n):
    """(q, params e^{+-}; q)_inf (pairs; q)_n / (2 pi theta(f, f e^2) (pairs; q)_inf)."""
    pr = pairs(params)
    num = qpochs([q] + [v * e for v in params] + [v / e for v in params], q)
    return num * qpochs(pr, q, n) / (TWO_PI * thetas([f, f * e * e], q) * qpochs(pr, q))


def _nested_radius(a, b, c):
    # the (1/ab, 1/ac, 1/bc) z/sigma and abc e^{+-} sigma/z poles leave the
    # window (1/min|pair|, 1/|abc|); take its geometric midpoint
    lo = 1 / min(abs(a * b), abs(a * c), abs(b * c))
    hi = 1 / abs(a * b * c)
    return math.sqrt(lo * hi)


# ---------------------------------------------------------------------------
# Askey-Wilson representations
# ---------------------------------------------------------------------------


def iraw(n, x_e, a, b, c, d, f, sigma, q):
    """Askey-Wilson p_n from the single contour integral with (d sigma/z; q)_n."""
    _, e = x_e
    abc = a * b * c
    kern = _kernel(f, e, [abc], [a, b, c], q, sigma)

    def g(psi):
        val, u, w = kern(psi)
        return val * _qpoch_grid(d * u, q, n) / _qpoch_grid(abc * w, q, n) * w ** n

    return _pref(q, f, e, [a, b, c], n) * integrate_periodic(g)


def iraw2(n, x_e, a, b, c, d, f, q, with_d=True):
    """Askey-Wilson p_n (continuous dual q-Hahn when ``with_d`` is false) from the reflected contour."""
    _, e = x_e
    abc = a * b * c
    s = _nested_radius(a, b, c)

    def g(psi):
        z = np.exp(1j * psi)
        u, w = s / z, z / s
        val = (_inf(f * abc * e * u, q) * _inf(q / f * abc / e * u, q) * _inf(f / abc * e * w, q)
               * _inf(q / f / (abc * e) * w, q) * _inf(q ** n * w, q))
        val = val / (_inf(abc * e * u, q) * _inf(abc / e * u, q) * _inf(w / (a * b), q)
                     * _inf(w / (a * c), q) * _inf(w / (b * c), q))
        if with_d:
            val = val * _qpoch_grid(abc * d * u, q, n)
        return val * (w / abc) ** n

    return _pref(q, f, e, [a, b, c], n) * integrate_periodic(g)


def ircdq_e(n, x_e, a, b, c, f, sigma, q):
    _, e = x_e
    kern = _kernel(f, e, [], [a, b], q, sigma)

    def g(psi):
        val, u, w = kern(psi)
        return val * _qpoch_grid(c * u, q, n) * w ** n

    return _pref(q, f, e, [a, b], n) * integrate_periodic(g)


def ircdq_f(n, x_e, a, b, c, f, sigma, q):
    _, e = x_e
    kern = _kernel(f, e, [a * b * c * q ** n], [a, b, c], q, sigma)

    def g(psi):
        val, _, w = kern(psi)
        return val * w ** n

    return _pref(q, f, e, [a, b, c], n) * integrate_periodic(g)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def _poly_domains(count, rmax=0.8, extra=None):
    dom = {"theta": Interval(0.05, math.pi - 0.05), "n": Choice(tuple(range(7))),
           "f": Annulus(0.5, 1.5), "sigma": Interval(0.8, 0.97)}
    dom.update(ring("a", count, 0.1, rmax))
    if extra:
        dom.update(extra)
    return dom


def _poly_derive(scaled):
    def derive(p, rng):
        # |a_k| < sigma keeps the (a_k z/sigma) poles outside the contour
        for i in range(scaled):
            p[f"a{i + 1}"] = p[f"a{i + 1}"] * p["sigma"]
        _best_f(p, rng)

    return derive


def _gf_derive(special=None):
    """Generating-function samplers: t is drawn opposite the distinguished a_p.

    The closed forms carry 1/(t/a_p; q)_inf in two terms that cancel as
    t -> a_p; a phase at least pi/2 away from a_p keeps |1 - t/a_p| >= 1.
    """
    base = _poly_derive(0)

    def derive(p, rng):
        base(p, rng)
        k = p.get("p", 0) if special is None else special
        ap = p[f"a{k + 1}"]
        phase = cmath.phase(ap) + math.pi + rng.uniform(-math.pi / 2, math.pi / 2)
        p["t"] = abs(p["t"]) * cmath.exp(1j * phase)

    return derive


def _poly_guards(count):
    def guards(p):
        a = vec(p, "a", count)
        _, e = _angle(p)
        f = p["f"]
        return Guards(theta=[f, f * e * e, e * e], denom=pairs(a) + [v * e for v in a] + [v / e for v in a])

    return guards


def _gf_guards(count, extra):
    base = _poly_guards(count)

    def guards(p):
        g = base(p)
        g.denom += extra(p)
        return g

    return guards


def _aw(p, n=None):
    x, _ = _angle(p)
    a = vec(p, "a", 4)
    return askey_wilson(p["n"] if n is None else n, x, *a, p["q"])


def _cdq(p, n=None):
    x, _ = _angle(p)
    return cdqhahn(p["n"] if n is None else n, x, *vec(p, "a", 3), p["q"])


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------


def _ordered(a, k):
    return [a[k]] + others(a, k)


def genfun2ask_lhs(p):
    q, t, k = p["q"], p["t"], p["p"]
    x, _ = _angle(p)
    a = vec(p, "a", 4)
    ap, os = a[k], others(a, k)
    a4 = prod(a)
    return partial_sum(lambda n: t ** n * qpoch_finite(a4 / q, q, n) * askey_wilson(n, x, *_ordered(a, k), q)
                       / (qpoch_finite(q, q, n) * qpochs([ap * v for v in os], q, n)))


def genfun2ask_terms(p):
    q, t, k = p["q"], p["t"], p["p"]
    _, e = _angle(p)
    a = vec(p, "a", 4)
    ap, os = a[k], others(a, k)
    a4 = prod(a)
    r1, r0 = principal_sqrt(a4 / q), principal_sqrt(a4)
    first = qpochs([t * a4 / (q * ap)], q) / qpochs([t / ap], q) * phi(
        [r1, -r1, r0, -r0, ap * e, ap / e], [ap * v for v in os] + [t * a4 / (q * ap), q * ap / t], q, q)
    s = t / ap
    second = qpochs([t * v for v in os] + [a4 / q, ap * e, ap / e], q) / qpochs(
        [ap * v for v in os] + [ap / t, t * e, t / e], q) * phi(
        [s * r1, -s * r1, s * r0, -s * r0, t * e, t / e], [t * v for v in os] + [a4 / q * s * s, q * s], q, q)
    return [first, second]


def genfun2ask_rhs(p):
    return sum(genfun2ask_terms(p))


def _genfun2ask_extra(p):
    q, t = p["q"], p["t"]
    _, e = _angle(p)
    a = vec(p, "a", 4)
    ap, os = a[p["p"]], others(a, p["p"])
    a4 = prod(a)
    return ([t / ap, ap / t, t * e, t / e, t * a4 / (q * ap), q * ap / t, a4 / q * (t / ap) ** 2, q * t / ap]
            + [t * v for v in os])


def awgf2_lhs(p):
    q, t = p["q"], p["t"]
    x, _ = _angle(p)
    a, b, c, d = vec(p, "a", 4)
    return partial_sum(lambda n: t ** n * askey_wilson(n, x, a, b, c, d, q)
                       / (qpoch_finite(q, q, n) * qpochs([a * d, b * c], q, n)))


def awgf2_rhs(p):
    q, t = p["q"], p["t"]
    _, e = _angle(p)
    a, b, c, d = vec(p, "a", 4)
    return phi([a * e, d * e], [a * d], q, t / e) * phi([b / e, c / e], [b * c], q, t * e)


def _phi32_grid(d_u, ab, ac, abc_w, ad, tw, q):
    """3phi2(d u, ab, ac; abc w, ad; q, t w) on a grid, summed with the series stop rule."""
    total = np.zeros_like(d_u)
    term = np.ones_like(d_u)
    small = 0
    n = 0
    while n < SERIES_POLICY.n_max:
        total = total + term
        if np.max(np.abs(term)) <= SERIES_POLICY.eps_term * max(1.0, float(np.max(np.abs(total)))):
            small += 1
            if small >= SERIES_POLICY.k_consecutive:
                break
        else:
            small = 0
        qn = q ** n
        term = term * (1 - d_u * qn) * (1 - ab * qn) * (1 - ac * qn) / (
            (1 - q * qn) * (1 - abc_w * qn) * (1 - ad * qn)) * tw
        n += 1
    effort.note_terms(n + 1)
    return total


def awgf2_integral(p):
    q, t, f, s = p["q"], p["t"], p["f"], p["sigma"]
    _, e = _angle(p)
    a, b, c, d = vec(p, "a", 4)
    kern = _kernel(f, e, [a * b * c], [a, b, c], q, s)

    def g(psi):
        val, u, w = kern(psi)
        return val * _phi32_grid(d * u, a * b, a * c, a * b * c * w, a * d, t * w, q)

    return integrate_periodic(g)


def awgf2_product(p):
    q, f = p["q"], p["f"]
    _, e = _angle(p)
    a, b, c, d = vec(p, "a", 4)
    pref = TWO_PI * thetas([f, f * e * e], q) * qpochs([a * b, a * c, b * c], q) / qpochs(
        [q, a * e, a / e, b * e, b / e, c * e, c / e], q)
    return pref * awgf2_rhs(p)


def genfun2cdh_lhs(p):
    q, t, k = p["q"], p["t"], p["p"]
    x, _ = _angle(p)
    a = vec(p, "a", 3)
    ap, os = a[k], others(a, k)
    return partial_sum(lambda n: t ** n * cdqhahn(n, x, *a, q) / (qpoch_finite(q, q, n)
                                                                 * qpochs([ap * v for v in os], q, n)))


def genfun2cdh_terms(p):
    q, t, k = p["q"], p["t"], p["p"]
    _, e = _angle(p)
    a = vec(p, "a", 3)
    ap, os = a[k], others(a, k)
    first = phi([ap * e, ap / e, 0, 0], [ap * v for v in os] + [q * ap / t], q, q) / qpochs([t / ap], q)
    second = qpochs([t * v for v in os] + [ap * e, ap / e], q) / qpochs(
        [ap * v for v in os] + [ap / t, t * e, t / e], q) * phi([t * e, t / e, 0, 0], [t * v for v in os] + [q * t / ap],
                                                                q, q)
    return [first, second]


def genfun2cdh_rhs(p):
    return sum(genfun2cdh_terms(p))


def _cdh_extra(p):
    q, t = p["q"], p["t"]
    _, e = _angle(p)
    a = vec(p, "a", 3)
    ap, os = a[p["p"]], others(a, p["p"])
    return [t / ap, ap / t, t * e, t / e, q * ap / t, q * t / ap] + [t * v for v in os]


def nonstan_lhs(p):
    q, t = p["q"], p["t"]
    x, _ = _angle(p)
    a = vec(p, "a", 3)
    abc = prod(a)
    return partial_sum(lambda n: t ** n * cdqhahn(n, x, *a, q) / (qpoch_finite(q, q, n) * qpoch_finite(t * abc, q, n)))


def nonstan_rhs(p):
    q, t = p["q"], p["t"]
    _, e = _angle(p)
    a = vec(p, "a", 3)
    return qpochs([t * v for v in a], q) / qpochs([t * prod(a), t * e, t / e], q)


def missing_lhs(p):
    q, t, g = p["q"], p["t"], p["gamma"]
    x, _ = _angle(p)
    a, b, c = vec(p, "a", 3)
    return partial_sum(lambda n: t ** n * qpoch_finite(g, q, n) * cdqhahn(n, x, a, b, c, q)
                       / (qpoch_finite(q, q, n) * qpochs([a * b, a * c], q, n)))


def missing_terms(p):
    q, t, g = p["q"], p["t"], p["gamma"]
    _, e = _angle(p)
    a, b, c = vec(p, "a", 3)
    first = qpochs([a * b, a * c, g * t / a], q) / qpochs([a * e, a / e, t / a], q) * phi(
        [g, a * e, a / e, 0], [a * b, a * c, q * a / t], q, q)
    second = qpochs([t * b, t * c, g], q) / qpochs([t * e, t / e, a / t], q) * phi(
        [g * t / a, t * e, t / e, 0], [t * b, t * c, q * t / a], q, q)
    pref = qpochs([a * e, a / e], q) / qpochs([a * b, a * c], q)
    return [pref * first, pref * second]


def missing_rhs(p):
    return sum(missing_terms(p))


def _missing_extra(p):
    q, t = p["q"], p["t"]
    _, e = _angle(p)
    a, b, c = vec(p, "a", 3)
    return [t / a, a / t, t * e, t / e, q * a / t, q * t / a, t * b, t * c]


def asc_lhs(p):
    q, t, g = p["q"], p["t"], p["gamma"]
    x, _ = _angle(p)
    a, b = vec(p, "a", 2)
    return partial_sum(lambda n: t ** n * qpoch_finite(g, q, n) * alsalam_chihara(n, x, a, b, q)
                       / (qpoch_finite(q, q, n) * qpoch_finite(a * b, q, n)))


def asc_terms(p):
    q, t, g = p["q"], p["t"], p["gamma"]
    _, e = _angle(p)
    a, b = vec(p, "a", 2)
    first = qpochs([a * b, g * t / a], q) / qpochs([a * e, a / e, t / a], q) * phi(
        [g, a * e, a / e], [a * b, q * a / t], q, q)
    second = qpochs([t * b, g], q) / qpochs([t * e, t / e, a / t], q) * phi(
        [g * t / a, t * e, t / e], [t * b, q * t / a], q, q)
    pref = qpochs([a * e, a / e], q) / qpochs([a * b], q)
    return [pref * first, pref * second]


def asc_rhs(p):
    """Sum of two 3phi2 at argument q."""
    return sum(asc_terms(p))


def asc_single(p):
    """Single 3phi2 form obtained by a nonterminating transformation."""
    q, t, g = p["q"], p["t"], p["gamma"]
    _, e = _angle(p)
    a, b = vec(p, "a", 2)
    return qpochs([g * t * e], q) / qpochs([t * e], q) * phi([g, a * e, b * e], [a * b, g * t * e], q, t / e)


def _asc_extra(p):
    q, t = p["q"], p["t"]
    _, e = _angle(p)
    a, b = vec(p, "a", 2)
    return [t / a, a / t, t * e, t / e, q * a / t, q * t / a, t * b, p["gamma"] * t * e]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

T_DOMAIN = Annulus(0.1, 0.5)


def _poly_rep(p, fn, count, **kw):
    x_e = _angle(p)
    a = vec(p, "a", count)
    return fn(p["n"], x_e, *a, p["f"], p["sigma"], p["q"], **kw)


def cases() -> list[IdentityCase]:
    gf_dom4 = _poly_domains(4, extra={"t": T_DOMAIN})
    gf_dom3 = _poly_domains(3, extra={"t": T_DOMAIN})
    return [
        IdentityCase(
            "IRAW", "Askey-Wilson polynomial as a theta-weighted contour integral",
            _aw,
            lambda p: iraw(p["n"], _angle(p), *vec(p, "a", 4), p["f"], p["sigma"], p["q"]),
            _poly_domains(4), _poly_derive(3), guards=_poly_guards(4), group="polynomials",
        ),
        IdentityCase(
            "IRAW2", "Askey-Wilson polynomial from the reflected contour integral",
            _aw,
            lambda p: iraw2(p["n"], _angle(p), *vec(p, "a", 4), p["f"], p["q"]),
            _poly_domains(4), _poly_derive(0), guards=_poly_guards(4), group="polynomials",
        ),
        IdentityCase(
            "genfun2ask", "Rahman generating function as two balanced 6phi5",
            genfun2ask_lhs, genfun2ask_rhs,
            {**gf_dom4, "p": Choice((0, 1, 2, 3))}, _gf_derive(),
            guards=_gf_guards(4, _genfun2ask_extra), group="polynomials", terms=genfun2ask_terms,
        ),
        IdentityCase(
            "AWgf2", "Askey-Wilson generating function as a product of two 2phi1",
            awgf2_lhs, awgf2_rhs, gf_dom4, _poly_derive(0),
            guards=_gf_guards(4, lambda p: [p["a1"] * p["a4"], p["a2"] * p["a3"]]), group="polynomials",
        ),
        IdentityCase(
            "AWgf2-int", "product of two 2phi1 as a contour integral over a 3phi2",
            awgf2_integral, awgf2_product, gf_dom4, _poly_derive(3),
            guards=_gf_guards(4, lambda p: [p["a1"] * p["a4"], p["a2"] * p["a3"]]), group="polynomials",
        ),
        IdentityCase(
            "IRcdqE", "continuous dual q-Hahn polynomial from a two-parameter kernel",
            _cdq,
            lambda p: _poly_rep(p, ircdq_e, 3),
            _poly_domains(3), _poly_derive(2), guards=_poly_guards(3), group="polynomials",
        ),
        IdentityCase(
            "IRcdqF", "continuous dual q-Hahn polynomial from a three-parameter kernel",
            _cdq,
            lambda p: _poly_rep(p, ircdq_f, 3),
            _poly_domains(3), _poly_derive(3), guards=_poly_guards(3), group="polynomials",
        ),
        IdentityCase(
            "IRcdqH2", "continuous dual q-Hahn polynomial from the reflected, symmetric contour integral",
            _cdq,
            lambda p: iraw2(p["n"], _angle(p), *vec(p, "a", 3), 0.0, p["f"], p["q"], with_d=False),
            _poly_domains(3), _poly_derive(0), guards=_poly_guards(3), group="polynomials",
        ),
        IdentityCase(
            "genfun2cdH", "continuous dual q-Hahn generating function as two 4phi3",
            genfun2cdh_lhs, genfun2cdh_rhs,
            {**gf_dom3, "p": Choice((0, 1, 2))}, _gf_derive(),
            guards=_gf_guards(3, _cdh_extra), group="polynomials", terms=genfun2cdh_terms,
        ),
        IdentityCase(
            "nonstan", "non-standard continuous dual q-Hahn generating function",
            nonstan_lhs, nonstan_rhs, gf_dom3, _poly_derive(0),
            guards=_gf_guards(3, lambda p: [p["t"] * prod(vec(p, "a", 3))]), group="polynomials",
        ),
        IdentityCase(
            "missing", "continuous dual q-Hahn generating function with a (gamma; q)_n weight",
            missing_lhs, missing_rhs,
            {**gf_dom3, "gamma": Annulus(0.1, 1.5)}, _gf_derive(),
            guards=_gf_guards(3, _missing_extra), group="polynomials", terms=missing_terms,
        ),
        IdentityCase(
            "ASC-gf", "Al-Salam-Chihara generating function with a (gamma; q)_n weight",
            asc_lhs, asc_rhs,
            _poly_domains(2, extra={"t": T_DOMAIN, "gamma": Annulus(0.1, 1.5)}), _gf_derive(),
            guards=_gf_guards(2, _asc_extra), group="polynomials", terms=asc_terms,
        ),
    ]
