import json
from pathlib import Path

import pytest

from descent2.local_factor import (
    factor_over_padic,
    poly_eval,
    poly_from_ratpoly,
    poly_mul,
    roots_in_field,
)
from descent2.local_fields import LocalField
from descent2.polynomials import RatPoly
from descent2.qp2 import Qp2

FIXTURES = Path(__file__).parent / "fixtures" / "qp2_factorizations.json"


@pytest.fixture(scope="module")
def q2():
    return LocalField.q2(96)


def test_x2_minus_1_non_coprime_branch(q2):
    fz = factor_over_padic(q2, RatPoly([-1, 0, 1]))
    assert fz.shape() == [(1, 1, 1), (1, 1, 1)]
    roots = sorted(r.lift_fraction() % 8 for r in (-f.poly[0] for f in fz.factors))
    assert roots == [1, 7]  # 1 and -1 mod 8


def test_unramified_quadratic(q2):
    fz = factor_over_padic(q2, RatPoly([1, 1, 1]))
    assert fz.shape() == [(2, 1, 2)]
    assert fz.factors[0].certified_irreducible


def test_x5_minus_x_plus_1(q2):
    fz = factor_over_padic(q2, RatPoly([1, -1, 0, 0, 0, 1]))
    assert fz.shape() == [(2, 1, 2), (3, 1, 3)]


def test_rejects_nonseparable(q2):
    with pytest.raises(ValueError):
        factor_over_padic(q2, RatPoly([0, 0, 1]))


def test_roots_in_field_examples(q2):
    assert sorted(r.lift_fraction() % 4 for r in roots_in_field(q2, RatPoly([-1, 0, 1]))) == [1, 3]
    assert roots_in_field(q2, RatPoly([-2, 0, 1])) == []
    rs = roots_in_field(q2, RatPoly([-17, 0, 1]))
    assert len(rs) == 2
    assert q2.is_zero_to_prec(rs[0] + rs[1])
    for r in rs:
        assert q2.is_zero_to_prec(r * r - q2.from_int(17))


def test_factor_fields_expose_roots(q2):
    f = RatPoly([1, -1, 0, 0, 0, 1])
    fz = factor_over_padic(q2, f)
    for fac in fz.factors:
        K = fac.field
        val = poly_eval(K, poly_from_ratpoly(K, f), K.gen())
        assert K.is_zero_to_prec(val)


def test_idempotence_factoring_emitted_factor(q2):
    fz = factor_over_padic(q2, RatPoly([1, -1, 0, 0, 0, 1]))
    quad = fz.factors[0]
    again = factor_over_padic(q2, quad.poly)
    assert again.shape() == [(2, 1, 2)]


def test_relative_factorisation_over_factor_field(q2):
    f = RatPoly([1, -1, 0, 0, 0, 1])
    fz = factor_over_padic(q2, f)
    K = fz.factors[0].field  # unramified quadratic
    rel = factor_over_padic(K, poly_from_ratpoly(K, f))
    assert rel.shape() == [(1, 1, 1), (1, 1, 1), (3, 1, 3)]
    L = fz.factors[1].field  # unramified cubic
    rel2 = factor_over_padic(L, poly_from_ratpoly(L, f))
    assert rel2.shape() == [(1, 1, 1), (1, 1, 1), (1, 1, 1), (2, 1, 2)]


def _load_fixture_entries():
    data = json.loads(FIXTURES.read_text())
    return data["entries"]


@pytest.mark.parametrize("entry", _load_fixture_entries(), ids=lambda e: e["name"])
def test_fixture_corpus(entry, q2):
    poly = RatPoly(entry["coeffs"])
    fz = factor_over_padic(q2, poly)
    assert [list(t) for t in fz.shape()] == entry["expected"], entry["derivation"]
    # independent product reconstruction check
    K = q2
    prod = [fz.content]
    for fac in fz.factors:
        prod = poly_mul(K, prod, fac.poly)
    target = poly_from_ratpoly(K, poly)
    assert len(prod) == len(target)
    for a, b in zip(prod, target):
        diff = a - b
        assert K.is_zero_to_prec(diff) and K.zero_depth(diff) > K.precision // 4
    # degree bookkeeping: sum of e*f over factors equals the input degree
    assert sum(f.e * f.f_res for f in fz.factors) == poly.degree


def test_fixture_corpus_has_enough_variety():
    entries = _load_fixture_entries()
    assert len(entries) >= 30
    assert any("wild" in e["name"] for e in entries)
    rams = [e for e in entries if any(t[1] > 1 for t in e["expected"])]
    assert len(rams) >= 8
