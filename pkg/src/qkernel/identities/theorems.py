"""The G_{m,t}, H and J families and their integral identities."""

from __future__ import annotations

import cmath
import math

from ..qcore import qpoch_infinite, thetas
from .base import Annulus, Choice, Guards, IdentityCase, Interval, ring
from .common import TWO_PI, vec
from .gmt import (
    H_qintegral,
    H_terms,
    J_terms,
    contour_integral,
    eval_G_integral,
    eval_G_series_c,
    eval_G_series_d,
    eval_H,
    eval_J,
    qq_integral,
    qq_integral_mirror,
)

# ---------------------------------------------------------------------------
# G_{m,t}
# ---------------------------------------------------------------------------


def _g_sets(p, sizes):
    A, B, C, D = sizes
    return vec(p, "a", A), vec(p, "b", B), vec(p, "c", C), vec(p, "d", D)


def _g_domains(sizes, with_m=True):
    A, B, C, D = sizes
    dom = {"t": Annulus(0.6, 1.4), "sigma": Interval(0.8, 1.25)}
    if with_m:
        dom["m"] = Choice((-2, -1, 0, 1, 2))
    # raw moduli are fractions of the hypothesis bounds; rescaled in _g_derive
    dom.update(ring("d", D, 0.35, 0.85))
    dom.update(ring("c", C, 0.35, 0.85))
    dom.update(ring("b", B, 0.1, 0.8))
    dom.update(ring("a", A, 0.1, 0.8))
    return dom


def _g_derive(sizes):
    A, B, C, D = sizes

    def derive(p, rng):
        q, t, s = abs(p["q"]), abs(p["t"]), p["sigma"]
        dmin = cmin = math.inf
        for i in range(D):
            p[f"d{i + 1}"] = p[f"d{i + 1}"] / s
            dmin = min(dmin, abs(p[f"d{i + 1}"]))
        for i in range(C):
            p[f"c{i + 1}"] = p[f"c{i + 1}"] * s / t
            cmin = min(cmin, abs(p[f"c{i + 1}"]))
        # |b| < |q| |d| and |a| < |q| |c| keep both series arguments inside
        # the unit disk for |m| <= 2 when the sets have equal size
        for i in range(B):
            p[f"b{i + 1}"] = p[f"b{i + 1}"] * q * (dmin if D else 1.0)
        for i in range(A):
            p[f"a{i + 1}"] = p[f"a{i + 1}"] * q * (cmin if C else 1.0)

    return derive


def _g_guards(sizes):
    def guards(p):
        a, b, c, d = _g_sets(p, sizes)
        t = p["t"]
        g = Guards()
        g.denom += [t * dk * ck for dk in d for ck in c]
        g.distinct += [(d[i], d[j]) for i in range(len(d)) for j in range(i + 1, len(d))]
        g.distinct += [(c[i], c[j]) for i in range(len(c)) for j in range(i + 1, len(c))]
        g.denom += [t * dk * v for dk in d for v in a] + [t * ck * v for ck in c for v in b]
        return g

    return guards


G_SYM_SIZES = (1, 2, 2, 1)
G_SERIES_SIZES = (2, 2, 2, 2)


def _g_sym_lhs(p):
    a, b, c, d = _g_sets(p, G_SYM_SIZES)
    return eval_G_integral(p["m"], p["t"], a, b, c, d, p["sigma"], p["q"])


def _g_sym_rhs(p):
    a, b, c, d = _g_sets(p, G_SYM_SIZES)
    sigma2 = abs(p["t"]) / p["sigma"]
    return eval_G_integral(-p["m"], p["t"], b, a, d, c, sigma2, p["q"])


def _g_d(p):
    a, b, c, d = _g_sets(p, G_SERIES_SIZES)
    return eval_G_series_d(p["m"], p["t"], a, b, c, d, p["q"])


def _g_c(p):
    a, b, c, d = _g_sets(p, G_SERIES_SIZES)
    return eval_G_series_c(p["m"], p["t"], a, b, c, d, p["q"])


# ---------------------------------------------------------------------------
# symmetrisation lemmas: two contour integrals with the roles of the sets swapped
# ---------------------------------------------------------------------------


def _lemma_domains(sizes, free_t):
    A, B, C, D = sizes
    dom = {"sigma": Interval(0.8, 1.25), "tau": Interval(0.8, 1.25)}
    if free_t:
        dom["t"] = Annulus(0.6, 1.4)
    dom.update(ring("d", D, 0.4, 0.85))
    dom.update(ring("c", C, 0.4, 0.85))
    dom.update(ring("b", B, 0.1, 0.35))
    dom.update(ring("a", A, 0.1, 0.35))
    return dom


def _lemma_derive(sizes, free_t):
    A, B, C, D = sizes

    def derive(p, rng):
        if not free_t:
            p["t"] = 1 + 0j
        t, s, u = abs(p["t"]), p["sigma"], p["tau"]
        ud = min(u / t, 1 / s)
        uc = min(s / t, 1 / u)
        for name, count, bound in (("d", D, ud), ("b", B, ud), ("c", C, uc), ("a", A, uc)):
            for i in range(count):
                p[f"{name}{i + 1}"] = p[f"{name}{i + 1}"] * bound

    return derive


def _lemma_sides(sizes):
    def lhs(p):
        a, b, c, d = _g_sets(p, sizes)
        t = p["t"]
        return contour_integral(b, [t * v for v in a], d, [t * v for v in c], p["q"], p["sigma"])

    def rhs(p):
        a, b, c, d = _g_sets(p, sizes)
        t = p["t"]
        return contour_integral(a, [t * v for v in b], c, [t * v for v in d], p["q"], p["tau"])

    return lhs, rhs


INTLEM_SIZES = (1, 2, 2, 3)
INTLEM2_SIZES = (2, 1, 3, 2)

# ---------------------------------------------------------------------------
# H and J
# ---------------------------------------------------------------------------


def _hj_domains(A, C):
    dom = {"f": Annulus(0.5, 1.5), "sigma": Interval(0.97, 1.03)}
    dom.update(ring("a", A, 0.05, 0.25))
    dom.update(ring("c", C, 0.75, 0.93))
    dom["d1"] = Annulus(0.75, 0.93, sector=(0, 2))
    dom["d2"] = Annulus(0.75, 0.93, sector=(1, 2))
    return dom


def _hj_derive(p, rng):
    # f is free; keep theta(f, f d1/d2) away from its zeros so the quadrature does not cancel
    q, r = p["q"], p["d1"] / p["d2"]
    candidates = [p["f"] * cmath.exp(2j * math.pi * k / 8) for k in range(8)]
    p["f"] = max(candidates, key=lambda f: abs(thetas([f, f * r], q)))


def _hj_sets(p, A, C):
    return vec(p, "a", A), vec(p, "c", C), p["d1"], p["d2"]


def _hj_guards(A, C):
    def guards(p):
        a, c, d1, d2 = _hj_sets(p, A, C)
        f = p["f"]
        g = Guards(theta=[f, f * d1 / d2])
        g.distinct.append((d1, d2))
        g.denom += [d1 * v for v in c] + [d2 * v for v in c]
        g.distinct += [(c[i], c[j]) for i in range(C) for j in range(i + 1, C)]
        g.theta += [f * v * d1 for v in c] + [f / (v * d2) for v in c]
        return g

    return guards


def _hj_constraint(A, C):
    def ok(p):
        a, c, d1, d2 = _hj_sets(p, A, C)
        if C != A + 2:
            return True
        num = abs(p["q"])
        for v in a:
            num *= abs(v)
        den = abs(d1 * d2)
        for v in c:
            den *= abs(v)
        return num < den

    return ok


def _h_closed(p, A, C):
    a, c, d1, d2 = _hj_sets(p, A, C)
    q, f = p["q"], p["f"]
    return TWO_PI * thetas([f, f * d1 / d2], q) / qpoch_infinite(q, q) * eval_H(a, c, d1, d2, q)


def _h_integral(p, A, C):
    a, c, d1, d2 = _hj_sets(p, A, C)
    return qq_integral(a, c, d1, d2, p["f"], p["sigma"], p["q"])


def _j_closed(p, A, C):
    a, c, d1, d2 = _hj_sets(p, A, C)
    q = p["q"]
    return TWO_PI / qpoch_infinite(q, q) * eval_J(a, c, d1, d2, p["f"], q)


def _mirror_integral(p, B, D):
    b, d, c1, c2 = _hj_sets(p, B, D)
    return qq_integral_mirror(b, d, c1, c2, p["f"], p["sigma"], p["q"])


def _h_qint(p, A, C):
    a, c, d1, d2 = _hj_sets(p, A, C)
    return H_qintegral(a, c, d1, d2, p["s"], p["q"])


def _int_vs_qint_rhs(p, A, C):
    a, c, d1, d2 = _hj_sets(p, A, C)
    q, f = p["q"], p["f"]
    return TWO_PI * thetas([f, f * d1 / d2], q) / qpoch_infinite(q, q) * H_qintegral(a, c, d1, d2, p["s"], q)


def _h_split(p, A, C):
    return H_terms(*_hj_sets(p, A, C), p["q"])


def _j_split(p, A, C):
    a, c, d1, d2 = _hj_sets(p, A, C)
    return J_terms(a, c, d1, d2, p["f"], p["q"])


def _hj_case(case_id, title, A, C, lhs, rhs, extra=None, split=_h_split):
    dom = _hj_domains(A, C)
    if extra:
        dom.update(extra)
    return IdentityCase(
        case_id, title, lambda p: lhs(p, A, C), lambda p: rhs(p, A, C), dom, _hj_derive,
        constraint=_hj_constraint(A, C), guards=_hj_guards(A, C), group="theorems",
        terms=lambda p: split(p, A, C),
    )


def cases() -> list[IdentityCase]:
    return [
        IdentityCase(
            "G-sym", "G_{m,t}(a,b,c,d) = G_{-m,t}(b,a,d,c) under psi -> -psi",
            _g_sym_lhs, _g_sym_rhs, _g_domains(G_SYM_SIZES), _g_derive(G_SYM_SIZES),
            guards=_g_guards(G_SYM_SIZES), group="theorems",
        ),
        IdentityCase(
            "G-d-vs-c", "residue sums of G_{m,t} over the d poles and over the c poles agree (D=B, C=A)",
            _g_d, _g_c, _g_domains(G_SERIES_SIZES), _g_derive(G_SERIES_SIZES),
            guards=_g_guards(G_SERIES_SIZES), group="symmetrization",
        ),
        _hj_case("H-int", "theta-weighted contour integral equals H", 1, 2, _h_integral, _h_closed),
        _hj_case("J-int", "theta-weighted contour integral equals J (C = A + 2)", 1, 3, _h_integral, _j_closed,
                 split=_j_split),
        _hj_case("H-qint", "H as a Jackson q-integral", 2, 3, lambda p, A, C: eval_H(*_hj_sets(p, A, C), p["q"]),
                 _h_qint, {"s": Annulus(0.5, 1.5)}),
        _hj_case("Int-vs-qint", "contour integral equals a Jackson q-integral", 1, 2, _h_integral,
                 _int_vs_qint_rhs, {"s": Annulus(0.5, 1.5)}),
        _hj_case("mirror-corollary", "mirrored contour integral equals J with the roles of b, d and c swapped",
                 1, 3, _mirror_integral, _j_closed, split=_j_split),
        IdentityCase(
            "intlem", "contour integral is invariant under (a,b,c,d,sigma) -> (b,a,d,c,tau)",
            *_lemma_sides(INTLEM_SIZES), _lemma_domains(INTLEM_SIZES, True), _lemma_derive(INTLEM_SIZES, True),
            group="symmetrization",
        ),
        IdentityCase(
            "intlem2", "t = 1 case of the integral symmetrisation",
            *_lemma_sides(INTLEM2_SIZES), _lemma_domains(INTLEM2_SIZES, False), _lemma_derive(INTLEM2_SIZES, False),
            group="symmetrization",
        ),
    ]
