import pytest

from descent2.groupcoh import (
    FiniteGroup,
    FiniteModule,
    ModuleExtension,
    Subgroup,
    boundary_of_extension,
    classes_equal_h2,
    cup11,
    h1_order,
    hom_module,
    is_cocycle1,
    is_cocycle2,
    verify_shapiro_cup,
    verify_twist_identity,
    z1_generators,
)


Z2 = FiniteGroup.cyclic(2)


def test_group_constructors_validate():
    with pytest.raises(ValueError):
        FiniteGroup(2, ((0, 1), (1, 1)), 0)  # broken inverses/associativity
    s3 = FiniteGroup.symmetric(3)
    assert s3.order == 6
    v4 = FiniteGroup.product(Z2, Z2)
    assert v4.order == 4 and all(v4.mul(g, g) == v4.identity for g in range(4))


def test_h1_dimension_catalogue():
    """Involution-module catalogue at finite level."""
    triv = FiniteModule.trivial(Z2, 2, 1)
    assert h1_order(triv) == 2  # Hom(Z/2, F2)
    neg4 = FiniteModule.from_generator_matrices(Z2, 4, {1: [[3]]})
    assert h1_order(neg4) == 2  # the sign module at level 4
    triv4 = FiniteModule.from_generator_matrices(Z2, 4, {1: [[1]]})
    assert h1_order(triv4) == 2  # Hom(Z/2, Z/4) = Z/2
    reg = FiniteModule.from_generator_matrices(Z2, 2, {1: [[0, 1], [1, 0]]})
    assert h1_order(reg) == 1  # regular module is cohomologically trivial
    reg4 = FiniteModule.from_generator_matrices(Z2, 4, {1: [[0, 1], [1, 0]]})
    assert h1_order(reg4) == 1


def test_cocycles_are_cocycles():
    reg = FiniteModule.from_generator_matrices(Z2, 2, {1: [[0, 1], [1, 0]]})
    for M in (FiniteModule.trivial(Z2, 2, 2), reg):
        for phi in z1_generators(M):
            assert is_cocycle1(M, phi)


def test_split_extension_boundary_is_trivial():
    M = FiniteModule.trivial(Z2, 2, 1)
    ext = ModuleExtension.split(M, M)
    for alpha in z1_generators(M):
        b = boundary_of_extension(ext, alpha)
        assert classes_equal_h2(M, b, {k: (0,) for k in b})


def test_trivial_group_extension_boundary_zero():
    G1 = FiniteGroup.cyclic(1)
    M = FiniteModule.trivial(G1, 2, 1)

    def rho(g, en):  # the shifted 4-element extension with trivial group
        return en

    ext = ModuleExtension(M, M, rho)
    alpha = {0: (0,)}
    b = boundary_of_extension(ext, alpha)
    assert all(v == (0,) for v in b.values())


def test_z4_negation_extension_boundary_nontrivial():
    """The 4-element shadow of the cyclotomic self-extension has a nonzero map."""
    M = FiniteModule.trivial(Z2, 2, 1)

    def rho(g, en):
        m, n = en
        if g == 0:
            return (m, n)
        return (m, ((n[0] + m[0]) % 2,))

    ext = ModuleExtension(M, M, rho)
    ext.check()
    alpha = {0: (0,), 1: (1,)}
    b = boundary_of_extension(ext, alpha)
    assert not classes_equal_h2(M, b, {k: (0,) for k in b})


def test_cup_product_properties():
    M = FiniteModule.trivial(Z2, 2, 1)

    def pairing(g1, a, b):
        return ((a[0] * b[0]) % 2,)

    nt = {0: (0,), 1: (1,)}
    zero = {0: (0,), 1: (0,)}
    c = cup11(M, M, pairing, nt, nt)
    assert is_cocycle2(M, c)
    # nontrivial square class in H^2 (the order-4 extension exists)
    assert not classes_equal_h2(M, c, {k: (0,) for k in c})
    cz = cup11(M, M, pairing, nt, zero)
    assert classes_equal_h2(M, cz, {k: (0,) for k in cz})
    # bilinearity in the second slot
    for a in (zero, nt):
        lhs = cup11(M, M, pairing, nt, a)
        rhs = {k: (lhs[k][0] % 2,) for k in lhs}
        assert lhs == rhs


def test_twist_identity_zero_twist():
    M = FiniteModule.trivial(Z2, 2, 1)
    ext = ModuleExtension.split(M, M)
    hom = hom_module(M, M)
    zero = {g: hom.zero() for g in range(2)}
    assert verify_twist_identity(ext, hom, zero)


def test_twist_identity_klein_four():
    V4 = FiniteGroup.product(Z2, Z2)
    M = FiniteModule.trivial(V4, 2, 1)
    ext = ModuleExtension.split(M, M)
    hom = hom_module(M, M)
    for c in z1_generators(hom):
        assert verify_twist_identity(ext, hom, c)


def test_shapiro_index_one_is_plain_cup():
    G = Z2
    sub = Subgroup(G, (0, 1))
    M = FiniteModule.trivial(G, 2, 1)
    theta = {0: (0,), 1: (1,)}
    psi = {0: (0,), 1: (1,)}
    assert verify_shapiro_cup(sub, M, theta, psi)


def test_shapiro_z4_over_z2():
    Z4 = FiniteGroup.cyclic(4)
    sub = Subgroup(Z4, (0, 2))
    M = FiniteModule.trivial(Z4, 2, 1)
    theta = {0: (0,), 1: (1,)}
    psi = {0: (0,), 1: (1,)}
    assert verify_shapiro_cup(sub, M, theta, psi)


def test_shapiro_s3_over_z3():
    S3 = FiniteGroup.symmetric(3)
    cyc = None
    for g in range(6):
        if g != S3.identity and S3.mul(g, S3.mul(g, g)) == S3.identity and S3.mul(g, g) != S3.identity:
            cyc = (S3.identity, g, S3.mul(g, g))
            break
    sub = Subgroup(S3, tuple(sorted(cyc)))
    M = FiniteModule.trivial(S3, 2, 1)
    H = sub.as_group()
    theta = {h: (0,) for h in range(3)}
    psi = {h: (0,) for h in range(3)}
    assert verify_shapiro_cup(sub, M, theta, psi)
