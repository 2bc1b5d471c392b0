import random
from fractions import Fraction

import pytest

from descent2.qp2 import EXACT, PrecisionError, Qp2
from descent2.residue import (
    FF2,
    STEP_POLYS,
    _poly_is_irreducible_f2,
    fp_divmod,
    fp_factor,
    fp_is_irreducible,
    fp_mul,
    fp_roots,
    fp_squarefree_decomposition,
)

N = 64


def q(x, prec=N):
    return Qp2.from_fraction(Fraction(x), prec)


# -- scalar arithmetic -------------------------------------------------------------


def test_valuations():
    assert q(12).valuation() == 2
    assert q(Fraction(3, 8)).valuation() == -3
    assert Qp2.zero().is_exact_zero
    with pytest.raises(PrecisionError):
        Qp2.zero().valuation()


def test_add_mul_roundtrip_against_rationals():
    rng = random.Random(2)
    for _ in range(200):
        a = Fraction(rng.randrange(-99, 100), rng.randrange(1, 50) * 2 + 1)
        b = Fraction(rng.randrange(-99, 100), rng.randrange(1, 50) * 2 + 1)
        qa, qb = q(a), q(b)
        for op, fop in (
            (qa + qb, a + b),
            (qa * qb, a * b),
            (qa - qb, a - b),
        ):
            expect = q(fop, op.abs_prec)
            assert (op - expect).is_zero


def test_division_and_inverse():
    a = q(Fraction(7, 3))
    assert ((a * a.inverse()) - q(1)).is_zero
    b = q(40)
    assert (b / q(8)).valuation() == 0


def test_ultrametric_valuation_rules():
    rng = random.Random(3)
    for _ in range(200):
        x = Fraction(rng.randrange(1, 300)) * 2 ** rng.randrange(0, 5)
        y = Fraction(rng.randrange(1, 300)) * 2 ** rng.randrange(0, 5)
        qx, qy = q(x), q(y)
        assert (qx * qy).valuation() == qx.valuation() + qy.valuation()
        s = qx + qy
        if qx.valuation() != qy.valuation():
            assert s.valuation() == min(qx.valuation(), qy.valuation())
        elif not s.is_zero:
            assert s.valuation() >= qx.valuation()


def test_precision_tracking_on_cancellation():
    a = q(1, 10)
    b = q(-1, 10)
    s = a + b
    assert s.is_zero and s.v == 10 and not s.is_exact_zero


def test_sqrt_hensel():
    for n in (17, 25, 41, 73, 9):
        r = q(n).sqrt()
        assert ((r * r) - q(n, r.abs_prec + r.v)).is_zero
    with pytest.raises(ValueError):
        q(3).sqrt()
    with pytest.raises(ValueError):
        q(2).sqrt()


def test_truncate_and_repr():
    x = q(Fraction(5, 2))
    t = x.truncate(4)
    assert t.abs_prec == 4
    assert "Qp2" in repr(x)


# -- residue fields ------------------------------------------------------------------


def test_step_polys_are_irreducible():
    for deg, bits in STEP_POLYS.items():
        if deg > 1:
            assert _poly_is_irreducible_f2(bits), deg


def test_ff2_field_axioms_sampled():
    F = FF2(4)
    rng = random.Random(5)
    for _ in range(100):
        a, b, c = (rng.randrange(F.order) for _ in range(3))
        assert F.mul(a, b) == F.mul(b, a)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    for a in range(1, F.order):
        assert F.mul(a, F.inv(a)) == 1
        s = F.sqrt(a)
        assert F.mul(s, s) == a


def test_element_degree_and_minpoly():
    F = FF2(6)
    g = F.find_generator()
    assert F.element_degree(g) == 6
    mp = F.min_poly_bits(g)
    assert mp.bit_length() - 1 == 6
    assert _poly_is_irreducible_f2(mp)
    assert F.element_degree(1) == 1


def test_trace_and_artin_schreier():
    for f in (1, 2, 3, 4):
        F = FF2(f)
        c = 1
        solvable = 0
        for s in range(F.order):
            t = F.artin_schreier_solve(c, s)
            if t is not None:
                assert F.mul(t, t) ^ F.mul(c, t) == s
                solvable += 1
        assert solvable == F.order // 2


def test_poly_factor_over_f2():
    F = FF2(1)
    # x^5 + x + 1 = (x^2+x+1)(x^3+x^2+1) over F2
    p = [1, 1, 0, 0, 0, 1]
    fac = fp_factor(F, p)
    assert sorted(len(f) - 1 for f, _ in fac) == [2, 3]
    rebuilt = [1]
    for fpoly, mult in fac:
        for _ in range(mult):
            rebuilt = fp_mul(F, rebuilt, fpoly)
    assert rebuilt == p


def test_poly_factor_with_multiplicity_and_frobenius_squares():
    F = FF2(2)
    # (x + w)^2 * (x^2 + x + w) over F4, w a generator
    w = 2
    sq = fp_mul(F, [w, 1], [w, 1])
    p = fp_mul(F, sq, [w, 1, 1])
    fac = fp_factor(F, p)
    assert sorted((len(f) - 1, m) for f, m in fac) == [(1, 2), (2, 1)]
    dec = fp_squarefree_decomposition(F, p)
    assert sorted(m for _, m in dec) == [1, 2]


def test_fp_roots_and_irreducibility():
    F = FF2(3)
    p = [0, 1]  # x
    assert fp_roots(F, p) == [0]
    # x^2 + x + 1 has roots exactly in fields of even degree
    assert fp_roots(F, [1, 1, 1]) == []
    assert fp_is_irreducible(F, [1, 1, 1])
    F4 = FF2(2)
    assert len(fp_roots(F4, [1, 1, 1])) == 2


def test_random_factor_rebuild():
    rng = random.Random(11)
    for f in (1, 2, 3):
        F = FF2(f)
        for _ in range(20):
            deg = rng.randrange(2, 7)
            p = [rng.randrange(F.order) for _ in range(deg)] + [1]
            fac = fp_factor(F, p)
            rebuilt = [1]
            for fpoly, mult in fac:
                assert fpoly[-1] == 1
                for _ in range(mult):
                    rebuilt = fp_mul(F, rebuilt, fpoly)
            assert rebuilt == p
            for fpoly, _ in fac:
                assert fp_is_irreducible(F, fpoly)
