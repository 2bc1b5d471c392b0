import random
from fractions import Fraction

import pytest

from descent2.local_fields import (
    Embedding,
    LocalField,
    extend_eisenstein,
    extend_unramified,
    relative_norm,
)
from descent2.qp2 import PrecisionError, Qp2


@pytest.fixture(scope="module")
def q2():
    return LocalField.q2(96)


@pytest.fixture(scope="module")
def unram2(q2):
    return extend_unramified(q2, [1, 1, 1])


@pytest.fixture(scope="module")
def ram2(q2):
    return extend_eisenstein(q2, (q2.from_int(-2), q2.zero()))


def test_valuations_basics(q2, unram2, ram2):
    assert q2.valuation(q2.from_int(12)) == 2
    assert q2.valuation(q2.from_fraction(Fraction(3, 8))) == -3
    assert ram2.valuation(ram2.pi) == Fraction(1, 2)
    assert unram2.valuation(unram2.gen()) == 0
    with pytest.raises(PrecisionError):
        q2.valuation(q2.zero())


def test_valuation_is_multiplicative_and_ultrametric(ram2):
    rng = random.Random(8)
    K = ram2
    elts = []
    for _ in range(12):
        a = K.from_int(rng.randrange(1, 50)) + K.gen() * K.from_int(rng.randrange(1, 50))
        elts.append(a)
    for a in elts[:6]:
        for b in elts[6:]:
            va, vb = K.valuation(a), K.valuation(b)
            assert K.valuation(a * b) == va + vb
            s = a + b
            if va != vb:
                assert K.valuation(s) == min(va, vb)
            elif not K.is_zero_to_prec(s):
                assert K.valuation(s) >= va


def test_residue_field_structure(q2, unram2):
    assert q2.residue(q2.from_int(5)) == 1
    assert q2.residue(q2.from_int(4)) == 0
    assert unram2.resfield.order == 4
    r = unram2.residue(unram2.omega)
    assert unram2.resfield.element_degree(r) == 2


def test_inverse_roundtrip(unram2, ram2):
    rng = random.Random(9)
    for K in (unram2, ram2):
        for _ in range(8):
            x = K.from_int(rng.randrange(1, 90)) + K.gen() * K.from_int(rng.randrange(1, 90))
            inv = K.inverse(x)
            assert K.is_zero_to_prec(x * inv - K.one())


def test_relative_norm_explicit_conjugate_formula(q2):
    # Q2(sqrt(3)): Nm(a + b*sqrt3) = a^2 - 3b^2
    K = extend_eisenstein(q2, (q2.from_int(-2), q2.zero()))  # use sqrt2: a^2-2b^2
    emb = Embedding.tower_inclusion(q2, K)
    rng = random.Random(10)
    for _ in range(6):
        a, b = rng.randrange(-20, 20) or 1, rng.randrange(-20, 20) or 3
        x = K.from_int(a) + K.gen() * K.from_int(b)
        nm = relative_norm(x, emb)
        expect = q2.from_int(a * a - 2 * b * b)
        assert (nm - expect).is_zero


def test_relative_norm_identity_embedding(q2, unram2):
    emb = Embedding.tower_inclusion(unram2, unram2)
    x = unram2.gen() + unram2.from_int(3)
    assert unram2.is_zero_to_prec(relative_norm(x, emb) - x)


def test_norm_transitivity_through_tower(q2, unram2):
    # degree-6 tower: unramified quadratic then x^3 - 2 on top
    L = extend_eisenstein(
        unram2, (unram2.from_int(-2), unram2.zero(), unram2.zero())
    )
    rng = random.Random(11)
    x = L.gen() + L.promote(unram2.gen(), unram2) + L.from_int(3)
    emb_mid = Embedding.tower_inclusion(unram2, L)
    emb_bot = Embedding.tower_inclusion(q2, unram2)
    nm_step = relative_norm(relative_norm(x, emb_mid), emb_bot)
    nm_abs = L.absolute_norm(x)
    assert (nm_step - nm_abs).is_zero


def test_is_square_and_witness(q2, unram2, ram2):
    ok, w = q2.is_square(q2.from_int(17))
    assert ok and ((w * w) - q2.from_int(17)).is_zero
    assert not q2.is_square(q2.from_int(2))[0]
    assert not q2.is_square(q2.from_int(3))[0]
    assert q2.is_square(q2.from_int(-7))[0]
    rng = random.Random(12)
    for K in (q2, unram2, ram2):
        for _ in range(10):
            x = K.from_int(rng.randrange(1, 60))
            if K.base is not None:
                x = x + K.gen() * K.from_int(rng.randrange(0, 60))
            if K.is_zero_to_prec(x):
                continue
            sq = x * x
            ok, w = K.is_square(sq)
            assert ok
            assert K.is_zero_to_prec(w * w - sq)


def test_square_class_key_is_homomorphism(q2, unram2, ram2):
    rng = random.Random(13)
    for K in (q2, unram2, ram2):
        for _ in range(12):
            x = K.from_int(rng.randrange(1, 99) * 2 ** rng.randrange(0, 3))
            y = K.from_int(rng.randrange(1, 99))
            if K.base is not None:
                x = x + K.gen() * K.from_int(rng.randrange(0, 40))
                y = y + K.gen() * K.from_int(rng.randrange(0, 40))
            if K.is_zero_to_prec(x) or K.is_zero_to_prec(y):
                continue
            assert K.square_class_key(x * y) == K.square_class_key(x) ^ K.square_class_key(y)


def test_square_class_basis_dimension_and_keys(q2, unram2, ram2):
    for K in (q2, unram2, ram2):
        basis = K.square_class_basis()
        assert len(basis) == K.degree + 2
        for i, b in enumerate(basis):
            assert K.square_class_key(b) == 1 << i
        # multiplying a representative by a square must not change its key
        for b in basis:
            shifted = b * K.from_int(9)
            assert K.square_class_key(shifted) == K.square_class_key(b)


def test_q2_square_classes_match_mod_16_enumeration(q2):
    """Q2^x/(Q2^x)^2 has order 8: classes determined by v mod 2 and unit mod 8."""
    seen = {}
    for v in (0, 1):
        for u in (1, 3, 5, 7):
            x = q2.from_int(2**v * u)
            key = q2.square_class_key(x)
            seen.setdefault(key, set()).add((v, u))
    assert len(seen) == 8
    sq = q2.square_class_key(q2.from_int(25))
    assert sq == 0


def test_arithmetic_is_deterministic(q2, unram2):
    a = unram2.from_int(37) + unram2.gen() * unram2.from_int(11)
    b = unram2.from_int(5) + unram2.gen() * unram2.from_int(29)
    r1 = [(c.v, c.u, c.rp) for c in __import__("descent2.local_fields", fromlist=["flatten"]).flatten(a * b + unram2.inverse(a))]
    r2 = [(c.v, c.u, c.rp) for c in __import__("descent2.local_fields", fromlist=["flatten"]).flatten(a * b + unram2.inverse(a))]
    assert r1 == r2


def test_relative_norm_sqrt3_conjugate_formula(q2):
    from descent2.local_factor import factor_over_padic
    from descent2.polynomials import RatPoly
    from descent2.local_fields import Embedding, relative_norm

    K = factor_over_padic(q2, RatPoly([-3, 0, 1])).factors[0].field
    emb = Embedding.tower_inclusion(q2, K)
    for a, b in ((1, 1), (5, 2), (-3, 7)):
        x = K.from_int(a) + K.gen() * K.from_int(b)
        nm = relative_norm(x, emb)
        assert (nm - q2.from_int(a * a - 3 * b * b)).is_zero


def test_valuation_zero_marker(q2):
    assert q2.valuation_or_none(q2.zero()) is None
