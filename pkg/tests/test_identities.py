import cmath
import math

import numpy as np
import pytest

from qkernel.errors import QKernelError
from qkernel.identities import audit_sampler, case_ids, get_case, run_case
from qkernel.identities.base import (
    COND_MAX,
    Annulus,
    IdentityCase,
    condition_number,
    draw_admissible,
    evaluate_sample,
    relative_residual,
    sample_rng,
)
from qkernel.identities.common import vec
from qkernel.identities.gmt import eval_H
from qkernel.identities.polynomials import asc_rhs, asc_single, genfun2cdh_lhs, genfun2cdh_rhs, missing_lhs, missing_rhs
from qkernel.identities.qbeta import sum_6w5_product, sum_6w5_series, sum_6w5_theta

from conftest import rel

REQUIRED = """G-sym G-d-vs-c H-int J-int H-qint Int-vs-qint mirror-corollary AWint NRint NR-to-AW Rint
Rint-to-NR ARint Gint Gint-to-AR fourfour fourfour-to-Gint genRah sym-10W9 altNR compNR sum-6W5 2phi1-intA
2phi1-intB 3phi2-int intlem intlem2 abcd2 symcor qGauss-reduction IRAW IRAW2 genfun2ask AWgf2 AWgf2-int
IRcdqE IRcdqF IRcdqH2 genfun2cdH nonstan missing ASC-gf""".split()


def draws(case_id, n, seed=3):
    case = get_case(case_id)
    return [draw_admissible(case, seed, i)[0] for i in range(n)]


def holds(case_id, p, tol=None):
    case = get_case(case_id)
    assert case.admissible(p) is None
    rec = evaluate_sample(case, p, tol=tol)
    assert rec.passed, (rec.rel_res, rec.error)


# ---------------------------------------------------------------------------
# registry structure
# ---------------------------------------------------------------------------


def test_registry_contents():
    ids = case_ids()
    assert len(ids) == len(set(ids))
    assert sorted(ids) == sorted(REQUIRED)
    assert 38 <= len(ids) <= 44


def test_get_case_unknown():
    with pytest.raises(KeyError):
        get_case("nosuchcase")


@pytest.mark.parametrize("case_id", REQUIRED)
def test_sampler_audit(case_id):
    assert audit_sampler(get_case(case_id), seed=0, draws=100) >= 0.95


@pytest.mark.parametrize("case_id", REQUIRED)
def test_case_holds_at_other_seed(case_id):
    recs = run_case(get_case(case_id), seed=5, n_samples=4)
    assert all(r.passed for r in recs), [(r.rel_res, r.error) for r in recs]


# ---------------------------------------------------------------------------
# harness contracts
# ---------------------------------------------------------------------------


def test_sampling_is_deterministic():
    case = get_case("NRint")
    p1, _ = draw_admissible(case, 42, 3)
    p2, _ = draw_admissible(case, 42, 3)
    assert p1 == p2
    p3, _ = draw_admissible(case, 43, 3)
    assert p1 != p3
    assert sample_rng(2 ** 32 + 7, "x", 0).random() == sample_rng(7, "x", 0).random()


def test_nome_rotation():
    case = get_case("AWint")
    qs = [draw_admissible(case, 1, i)[0]["q"] for i in range(4)]
    assert qs[:3] == [0.3, 0.5, 0.7]
    assert abs(qs[3] - 0.5 * cmath.exp(1j * math.pi / 7)) < 1e-15


def test_relative_residual():
    assert relative_residual(1 + 0j, 1 + 0j) == (0.0, 0.0)
    a, r = relative_residual(2 + 0j, 1 + 0j)
    assert a == 1 and r == 0.5
    assert relative_residual(0j, 0j)[1] == 0


def test_condition_number():
    assert condition_number([1, 2, 3]) == 1
    assert condition_number([1e4, -1e4 + 1]) == pytest.approx(2e4 - 1)
    assert condition_number([1, -1]) == math.inf
    assert COND_MAX >= 1e3


def test_failures_become_records():
    def boom(p):
        raise QKernelError("nope")

    case = IdentityCase("boom", "always fails", boom, lambda p: 1, {"x": Annulus(0.1, 0.2)})
    recs = run_case(case, 1, 3)
    assert len(recs) == 3 and not any(r.passed for r in recs)
    assert recs[0].error.startswith("QKernelError")

    never = IdentityCase("never", "never admissible", lambda p: 1, lambda p: 1, {"x": Annulus(0.1, 0.2)},
                         constraint=lambda p: False)
    rec = run_case(never, 1, 1)[0]
    assert rec.error.startswith("SamplerExhausted")
    with pytest.raises(ValueError):
        run_case(case, 1, 0)


def test_tolerance_override():
    case = get_case("AWint")
    recs = run_case(case, 1, 2, tol=1e-30)
    assert all(r.tol == 1e-30 for r in recs)
    assert not all(r.passed for r in recs)


def test_annulus_sectors():
    rng = np.random.default_rng(0)
    dom = Annulus(0.5, 0.6, sector=(1, 4), width=0.5)
    for _ in range(200):
        z = dom.draw(rng)
        assert 0.5 <= abs(z) <= 0.6
        assert math.pi / 2 + math.pi / 8 - 1e-12 <= cmath.phase(z) % (2 * math.pi) <= math.pi - math.pi / 8 + 1e-12


# ---------------------------------------------------------------------------
# alternative closed forms and free-parameter independence
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", draws("sum-6W5", 4))
def test_sum_6w5_three_forms(p):
    a, q = vec(p, "a", 4), p["q"]
    product = sum_6w5_product(a, q)
    assert rel(sum_6w5_theta(a, q), product) < 1e-10
    assert rel(sum_6w5_series(a, q), product) < 1e-6


@pytest.mark.parametrize("p", draws("ASC-gf", 4))
def test_asc_single_form(p):
    assert rel(asc_single(p), asc_rhs(p)) < 1e-8


@pytest.mark.parametrize("p", draws("missing", 5))
def test_missing_reduces_to_genfun2cdh(p):
    p0 = dict(p, gamma=0.0, p=0)
    assert rel(missing_rhs(p0), genfun2cdh_rhs(p0)) < 1e-8
    assert rel(missing_lhs(p0), genfun2cdh_lhs(p0)) < 1e-12


@pytest.mark.parametrize("case_id", ["H-int", "Int-vs-qint", "H-qint"])
def test_h_symmetric_in_d(case_id):
    A, C = {"H-int": (1, 2), "Int-vs-qint": (1, 2), "H-qint": (2, 3)}[case_id]
    for p in draws(case_id, 4):
        a, c, q = vec(p, "a", A), vec(p, "c", C), p["q"]
        assert rel(eval_H(a, c, p["d1"], p["d2"], q), eval_H(a, c, p["d2"], p["d1"], q)) < 1e-9


def test_h_qintegral_independent_of_s():
    for p in draws("H-qint", 4):
        for s in (0.7, 1.3 * cmath.exp(0.4j)):
            holds("H-qint", dict(p, s=s))


@pytest.mark.parametrize("case_id,key,factors", [
    ("H-int", "sigma", (0.98, 1.02)),
    ("intlem", "tau", (0.97, 1.03)),
])
def test_free_parameter_independence(case_id, key, factors):
    for p in draws(case_id, 4):
        for s in factors:
            holds(case_id, dict(p, **{key: p[key] * s}))


@pytest.mark.parametrize("case_id", ["H-int", "ARint", "Gint", "fourfour", "IRAW", "IRcdqE", "IRcdqF"])
def test_f_independence(case_id):
    checked = 0
    for p in draws(case_id, 6):
        p2 = dict(p, f=p["f"] * 1.1 * cmath.exp(0.7j))
        if get_case(case_id).admissible(p2) is None:
            holds(case_id, p2)
            checked += 1
    assert checked >= 3


def test_ircdq_h2_symmetric():
    case = get_case("IRcdqH2")
    for p in draws("IRcdqH2", 3):
        base = case.rhs(p)
        for perm in ((2, 1, 3), (3, 1, 2)):
            p2 = dict(p, **{f"a{i + 1}": p[f"a{j}"] for i, j in enumerate(perm)})
            assert rel(case.rhs(p2), base) < 1e-8
