"""Explicit cochain-level cohomology of finite groups on small modules.

Coefficients are (Z/2)^n or (Z/4)^n with an action given by one invertible
matrix per group element.  Everything reduces to linear algebra over Z/2^k,
done in Howell-style echelon form (pivots 1 or 2), which supports kernel
generation, image membership, and order counting.  The module exists to
verify, by exhaustive computation, the structural identities the descent
machinery relies on: the twisted-extension boundary formula and the
compatibility of corestriction with cup products through induced modules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

Vec = Tuple[int, ...]


# -- groups -----------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: Tuple[Tuple[int, ...], ...]  # table[a][b] = a*b
    identity: int

    def __post_init__(self):
        n = self.order
        if n > 64:
            raise ValueError("group order capped at 64")
        for a in range(n):
            if self.table[self.identity][a] != a or self.table[a][self.identity] != a:
                raise ValueError("identity fails")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("associativity fails")
        for a in range(n):
            if all(self.table[a][b] != self.identity for b in range(n)):
                raise ValueError("inverses fail")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == self.identity:
                return b
        raise AssertionError

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return cls(n, table, 0)

    @classmethod
    def product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        n = g.order * h.order

        def enc(a, b):
            return a * h.order + b

        table = [[0] * n for _ in range(n)]
        for a1 in range(g.order):
            for b1 in range(h.order):
                for a2 in range(g.order):
                    for b2 in range(h.order):
                        table[enc(a1, b1)][enc(a2, b2)] = enc(g.mul(a1, a2), h.mul(b1, b2))
        return cls(n, tuple(tuple(r) for r in table), enc(g.identity, h.identity))

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}

        def compose(p, q):  # (p*q)(x) = p(q(x))
            return tuple(p[q[x]] for x in range(n))

        table = tuple(
            tuple(index[compose(p, q)] for q in perms) for p in perms
        )
        return cls(len(perms), table, index[tuple(range(n))])


# -- modules ----------------------------------------------------------------------------


@dataclass
class FiniteModule:
    group: FiniteGroup
    ring: int  # 2 or 4
    rank: int
    action: Dict[int, Tuple[Tuple[int, ...], ...]]  # g -> matrix rows

    def __post_init__(self):
        if self.ring not in (2, 4):
            raise ValueError("coefficient ring must be Z/2 or Z/4")
        if self.rank > 8:
            raise ValueError("module rank capped at 8")
        G = self.group
        for g in range(G.order):
            for h in range(G.order):
                lhs = _mat_mul(self.action[g], self.action[h], self.ring)
                rhs = self.action[G.mul(g, h)]
                if lhs != rhs:
                    raise ValueError("action is not a homomorphism")

    @classmethod
    def trivial(cls, G: FiniteGroup, ring: int, rank: int) -> "FiniteModule":
        ident = tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
        return cls(G, ring, rank, {g: ident for g in range(G.order)})

    @classmethod
    def from_generator_matrices(
        cls, G: FiniteGroup, ring: int, images: Dict[int, Sequence[Sequence[int]]]
    ) -> "FiniteModule":
        """Action from matrices for a generating set (completed by products)."""
        rank = len(next(iter(images.values())))
        known: Dict[int, Tuple[Tuple[int, ...], ...]] = {
            G.identity: tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
        }
        for g, m in images.items():
            known[g] = tuple(tuple(int(x) % ring for x in row) for row in m)
        changed = True
        while changed:
            changed = False
            for a in list(known):
                for b in list(known):
                    c = G.mul(a, b)
                    if c not in known:
                        known[c] = _mat_mul(known[a], known[b], ring)
                        changed = True
        if len(known) != G.order:
            raise ValueError("generators do not generate the group")
        return cls(G, ring, rank, known)

    def act(self, g: int, v: Vec) -> Vec:
        m = self.action[g]
        return tuple(sum(m[i][j] * v[j] for j in range(self.rank)) % self.ring for i in range(self.rank))

    def zero(self) -> Vec:
        return (0,) * self.rank

    def elements(self):
        return itertools.product(range(self.ring), repeat=self.rank)

    def add(self, a: Vec, b: Vec) -> Vec:
        return tuple((x + y) % self.ring for x, y in zip(a, b))

    def sub(self, a: Vec, b: Vec) -> Vec:
        return tuple((x - y) % self.ring for x, y in zip(a, b))


def _mat_mul(a, b, ring):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % ring for j in range(n))
        for i in range(n)
    )


def hom_module(M: FiniteModule, N: FiniteModule) -> FiniteModule:
    """Hom(M, N) with the conjugation action; matrices flattened row-major."""
    if M.ring != N.ring or M.group is not N.group:
        raise ValueError("need same ring and group")
    G, ring = M.group, M.ring
    rank = M.rank * N.rank
    action = {}
    for g in range(G.order):
        ginv = G.inv(g)
        # (g.phi) = N(g) phi M(g^-1): entry-wise linear map on phi
        rows = []
        for i_out in range(N.rank):
            for j_out in range(M.rank):
                row = [0] * rank
                for i_in in range(N.rank):
                    for j_in in range(M.rank):
                        row[i_in * M.rank + j_in] = (
                            N.action[g][i_out][i_in] * M.action[ginv][j_in][j_out]
                        ) % ring
                rows.append(tuple(row))
        action[g] = tuple(rows)
    return FiniteModule(G, ring, rank, action)


def apply_hom(M: FiniteModule, N: FiniteModule, phi: Vec, v: Vec) -> Vec:
    """Apply a Hom(M,N)-vector (row-major N.rank x M.rank) to v in M."""
    out = []
    for i in range(N.rank):
        out.append(sum(phi[i * M.rank + j] * v[j] for j in range(M.rank)) % N.ring)
    return tuple(out)


# -- linear algebra over Z/2^k -------------------------------------------------------------


class HowellSolver:
    """Row-space normal form over Z/2 or Z/4 with membership and kernel support."""

    def __init__(self, width: int, ring: int) -> None:
        self.width = width
        self.ring = ring
        self.rows: List[List[int]] = []

    def _reduce(self, vec: List[int]) -> List[int]:
        for row in self.rows:
            p = next(i for i, x in enumerate(row) if x)
            lead = row[p]
            if vec[p] % self.ring == 0:
                continue
            if lead == 1 or lead % 2 == 1:
                f = (vec[p] * pow(lead, -1, self.ring)) % self.ring
            else:  # lead = 2 over Z/4
                if vec[p] % 2:
                    continue
                f = (vec[p] // 2) % 2 * 1
                f = f if lead * f % self.ring == vec[p] % self.ring else f + 2
            vec = [(a - f * b) % self.ring for a, b in zip(vec, row)]
        return vec

    def insert(self, vec: Sequence[int]) -> bool:
        vec = [x % self.ring for x in vec]
        vec = self._reduce(vec)
        if all(x == 0 for x in vec):
            return False
        p = next(i for i, x in enumerate(vec) if x)
        if vec[p] % 2 == 1:
            inv = pow(vec[p], -1, self.ring)
            vec = [(x * inv) % self.ring for x in vec]
        self.rows.append(vec)
        self.rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
        # re-reduce upper rows for canonicality
        stable = False
        while not stable:
            stable = True
            for i in range(len(self.rows)):
                others = self.rows[:i] + self.rows[i + 1 :]
                sub = HowellSolver(self.width, self.ring)
                sub.rows = others
                red = sub._reduce(self.rows[i][:])
                if red != self.rows[i]:
                    if all(x == 0 for x in red):
                        self.rows.pop(i)
                    else:
                        self.rows[i] = red
                    stable = False
                    break
        if self.ring == 4:
            # ensure 2*row is represented when the pivot is a unit (Howell closure)
            for row in list(self.rows):
                dbl = [(2 * x) % 4 for x in row]
                red = self._reduce(dbl)
                if any(red):
                    self.rows.append(red)
                    self.rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
        return True

    def contains(self, vec: Sequence[int]) -> bool:
        red = self._reduce([x % self.ring for x in vec])
        return all(x == 0 for x in red)

    def space_order(self) -> int:
        order = 1
        seen_pivots = {}
        for row in self.rows:
            p = next(i for i, x in enumerate(row) if x)
            lead = row[p]
            size = self.ring if lead % 2 == 1 else 2
            if p in seen_pivots:
                seen_pivots[p] = max(seen_pivots[p], size)
            else:
                seen_pivots[p] = size
        for v in seen_pivots.values():
            order *= v
        return order


def image_solver(vectors: List[Sequence[int]], width: int, ring: int) -> HowellSolver:
    s = HowellSolver(width, ring)
    for v in vectors:
        s.insert(v)
    return s


def kernel_generators(
    vectors: List[Sequence[int]], width: int, ring: int
) -> List[Tuple[int, ...]]:
    """Generators of {x : sum x_i vectors[i] = 0} inside (Z/ring)^len(vectors)."""
    n = len(vectors)
    aug = []
    for i, v in enumerate(vectors):
        row = list(v) + [0] * n
        row[width + i] = 1
        aug.append(row)
    s = HowellSolver(width + n, ring)
    for row in aug:
        s.insert(row)
    if ring == 4:
        for row in aug:
            s.insert([(2 * x) % 4 for x in row])
    gens = []
    for row in s.rows:
        if all(x == 0 for x in row[:width]):
            gens.append(tuple(row[width:]))
    return gens


# -- cochains -------------------------------------------------------------------------------


Cochain1 = Dict[int, Vec]
Cochain2 = Dict[Tuple[int, int], Vec]


def coboundary1(M: FiniteModule, phi: Cochain1) -> Cochain2:
    G = M.group
    out: Cochain2 = {}
    for g1 in range(G.order):
        for g2 in range(G.order):
            v = M.act(g1, phi[g2])
            v = M.sub(v, phi[G.mul(g1, g2)])
            v = M.add(v, phi[g1])
            out[(g1, g2)] = v
    return out


def is_cocycle1(M: FiniteModule, phi: Cochain1) -> bool:
    G = M.group
    for g1 in range(G.order):
        for g2 in range(G.order):
            lhs = phi[G.mul(g1, g2)]
            rhs = M.add(M.act(g1, phi[g2]), phi[g1])
            if lhs != rhs:
                return False
    return True


def is_cocycle2(M: FiniteModule, f: Cochain2) -> bool:
    G = M.group
    for g1 in range(G.order):
        for g2 in range(G.order):
            for g3 in range(G.order):
                lhs = M.add(M.act(g1, f[(g2, g3)]), f[(g1, G.mul(g2, g3))])
                rhs = M.add(f[(G.mul(g1, g2), g3)], f[(g1, g2)])
                if lhs != rhs:
                    return False
    return True


def _c1_to_vec(M: FiniteModule, phi: Cochain1) -> List[int]:
    G = M.group
    out = []
    for g in range(G.order):
        out.extend(phi[g])
    return out


def _vec_to_c1(M: FiniteModule, vec: Sequence[int]) -> Cochain1:
    G = M.group
    return {
        g: tuple(vec[g * M.rank : (g + 1) * M.rank]) for g in range(G.order)
    }


def _c2_to_vec(M: FiniteModule, f: Cochain2) -> List[int]:
    G = M.group
    out = []
    for g1 in range(G.order):
        for g2 in range(G.order):
            out.extend(f[(g1, g2)])
    return out


def z1_generators(M: FiniteModule) -> List[Cochain1]:
    """Generating 1-cocycles (as a Z/ring-module)."""
    G = M.group
    n = G.order * M.rank
    cols = []
    # linear condition: phi(g1 g2) - g1 phi(g2) - phi(g1) = 0 for all pairs
    # unknowns: phi(g) per g; build the relation matrix columns per unknown basis vector
    basis_vectors = []
    for g in range(G.order):
        for r in range(M.rank):
            phi = {h: M.zero() for h in range(G.order)}
            vec = [0] * M.rank
            vec[r] = 1
            phi[g] = tuple(vec)
            rel = []
            for g1 in range(G.order):
                for g2 in range(G.order):
                    v = M.sub(
                        phi[G.mul(g1, g2)], M.add(M.act(g1, phi[g2]), phi[g1])
                    )
                    rel.extend(v)
            basis_vectors.append(rel)
    gens = kernel_generators(basis_vectors, len(basis_vectors[0]), M.ring)
    out = []
    for gen in gens:
        phi = {h: M.zero() for h in range(G.order)}
        for g in range(G.order):
            for r in range(M.rank):
                c = gen[g * M.rank + r]
                if c:
                    vec = list(phi[g])
                    vec[r] = (vec[r] + c) % M.ring
                    phi[g] = tuple(vec)
        if any(any(phi[g]) for g in range(G.order)):
            out.append(phi)
    for phi in out:
        if not is_cocycle1(M, phi):
            raise AssertionError("kernel generator fails the cocycle identity")
    return out


def b1_solver(M: FiniteModule) -> HowellSolver:
    G = M.group
    vecs = []
    for r in range(M.rank):
        m = [0] * M.rank
        m[r] = 1
        mv = tuple(m)
        phi = {g: M.sub(M.act(g, mv), mv) for g in range(G.order)}
        vecs.append(_c1_to_vec(M, phi))
        if M.ring == 4:
            phi2 = {g: tuple((2 * x) % 4 for x in phi[g]) for g in range(G.order)}
            vecs.append(_c1_to_vec(M, phi2))
    return image_solver(vecs, G.order * M.rank, M.ring)


def b2_solver(M: FiniteModule) -> HowellSolver:
    cached = getattr(M, "_b2_cache", None)
    if cached is not None:
        return cached
    G = M.group
    vecs = []
    for g in range(G.order):
        for r in range(M.rank):
            phi = {h: M.zero() for h in range(G.order)}
            vec = [0] * M.rank
            vec[r] = 1
            phi[g] = tuple(vec)
            vecs.append(_c2_to_vec(M, coboundary1(M, phi)))
            if M.ring == 4:
                phi2 = {h: tuple((2 * x) % 4 for x in phi[h]) for h in range(G.order)}
                vecs.append(_c2_to_vec(M, coboundary1(M, phi2)))
    solver = image_solver(vecs, G.order * G.order * M.rank, M.ring)
    M._b2_cache = solver
    return solver


def h1_order(M: FiniteModule) -> int:
    z1 = z1_generators(M)
    zsolver = image_solver([_c1_to_vec(M, p) for p in z1], M.group.order * M.rank, M.ring)
    border = b1_solver(M).space_order()
    return zsolver.space_order() // border


def h1_representatives(M: FiniteModule) -> List[Cochain1]:
    """Cocycle representatives generating H^1 (possibly redundant-free)."""
    b1 = b1_solver(M)
    reps = []
    carrier = HowellSolver(M.group.order * M.rank, M.ring)
    for row in b1.rows:
        carrier.insert(row)
    for phi in z1_generators(M):
        v = _c1_to_vec(M, phi)
        if not carrier.contains(v):
            carrier.insert(v)
            reps.append(phi)
    return reps


def classes_equal_h2(M: FiniteModule, f1: Cochain2, f2: Cochain2) -> bool:
    diff = {k: M.sub(f1[k], f2[k]) for k in f1}
    return b2_solver(M).contains(_c2_to_vec(M, diff))


# -- extensions ------------------------------------------------------------------------------


@dataclass
class ModuleExtension:
    """0 -> N -> E -> M -> 0 with a set-theoretic section of E -> M.

    E is presented concretely: its elements are pairs (m, n) with the section
    s(m) = (m, 0) and an action rho that reduces to the actions of M and N.
    """

    M: FiniteModule
    N: FiniteModule
    rho: Callable[[int, Tuple[Vec, Vec]], Tuple[Vec, Vec]]

    def check(self) -> None:
        G = self.M.group
        for g in range(G.order):
            for h in range(G.order):
                for m in self.M.elements():
                    for n in self.N.elements():
                        a = self.rho(g, self.rho(h, (m, n)))
                        b = self.rho(G.mul(g, h), (m, n))
                        if a != b:
                            raise ValueError("extension action is not a homomorphism")

    @classmethod
    def split(cls, M: FiniteModule, N: FiniteModule) -> "ModuleExtension":
        def rho(g, en):
            m, n = en
            return (M.act(g, m), N.act(g, n))

        return cls(M, N, rho)

    @classmethod
    def twisted(
        cls, base: "ModuleExtension", c: Cochain1, hom: FiniteModule
    ) -> "ModuleExtension":
        """Twist by a cocycle valued in Hom(M, N): rho_c(g)(e) = rho(g)e + c(g)(gm)."""
        M, N = base.M, base.N

        def rho(g, en):
            m, n = en
            m2, n2 = base.rho(g, (m, n))
            corr = apply_hom(M, N, c[g], m2)
            return (m2, N.add(n2, corr))

        return cls(M, N, rho)


def boundary_of_extension(ext: ModuleExtension, alpha: Cochain1) -> Cochain2:
    """Connecting map on a 1-cocycle via the section s(m) = (m, 0)."""
    M, N = ext.M, ext.N
    if not is_cocycle1(M, alpha):
        raise ValueError("input is not a 1-cocycle")
    G = M.group
    out: Cochain2 = {}
    for g1 in range(G.order):
        for g2 in range(G.order):
            lift_prod = (alpha[G.mul(g1, g2)], N.zero())
            m2, n2 = ext.rho(g1, (alpha[g2], N.zero()))
            total = (M.sub(lift_prod[0], M.add(m2, alpha[g1])), N.sub(lift_prod[1], n2))
            if any(total[0]):
                raise AssertionError("boundary lands outside the subobject")
            out[(g1, g2)] = total[1]
    if not is_cocycle2(N, out):
        raise AssertionError("connecting image is not a 2-cocycle")
    return out


def cup11(M: FiniteModule, N: FiniteModule, pairing, c1: Cochain1, c2: Cochain1) -> Cochain2:
    """Cup product of 1-cocycles via a coefficient pairing into N."""
    G = M.group
    out: Cochain2 = {}
    for g1 in range(G.order):
        for g2 in range(G.order):
            out[(g1, g2)] = pairing(g1, c1[g1], c2[g2])
    if not is_cocycle2(N, out):
        raise AssertionError("cup value is not a 2-cocycle")
    return out


def verify_twist_identity(ext: ModuleExtension, hom: FiniteModule, c: Cochain1) -> bool:
    """Connecting map of the twist equals the base one plus cup with the twisting class."""
    M, N = ext.M, ext.N
    if not is_cocycle1(hom, c):
        raise ValueError("twisting datum is not a cocycle")
    twisted = ModuleExtension.twisted(ext, c, hom)

    def pairing(g1, cval, alpha_val):
        return apply_hom(M, N, cval, M.act(g1, alpha_val))

    for alpha in z1_generators(M):
        lhs = boundary_of_extension(twisted, alpha)
        base = boundary_of_extension(ext, alpha)
        cup = cup11(M, N, pairing, c, alpha)
        rhs = {k: N.add(base[k], cup[k]) for k in base}
        if not classes_equal_h2(N, lhs, rhs):
            return False
    return True


# -- induced modules and corestriction ---------------------------------------------------------


@dataclass
class Subgroup:
    G: FiniteGroup
    elements: Tuple[int, ...]

    def __post_init__(self):
        s = set(self.elements)
        if self.G.identity not in s:
            raise ValueError("subgroup must contain the identity")
        for a in s:
            for b in s:
                if self.G.mul(a, b) not in s:
                    raise ValueError("not closed under multiplication")
        self.index = {h: i for i, h in enumerate(self.elements)}
        # right coset representatives: G = union of H g_i
        reps = []
        seen = set()
        for g in range(self.G.order):
            if g in seen:
                continue
            reps.append(g)
            for h in self.elements:
                seen.add(self.G.mul(h, g))
        self.reps = reps

    def decompose(self, g: int) -> Tuple[int, int]:
        """g = h * g_i: returns (h, i)."""
        for i, rep in enumerate(self.reps):
            h = self.G.mul(g, self.G.inv(rep))
            if h in self.index:
                return h, i
        raise AssertionError

    def as_group(self) -> FiniteGroup:
        n = len(self.elements)
        table = tuple(
            tuple(self.index[self.G.mul(a, b)] for b in self.elements)
            for a in self.elements
        )
        return FiniteGroup(n, table, self.index[self.G.identity])


def induced_module(sub: Subgroup, M_H: FiniteModule) -> FiniteModule:
    """Ind_H^G of an H-module, components indexed by right cosets H g_i."""
    G = sub.G
    k = len(sub.reps)
    rank = k * M_H.rank
    action = {}
    for g in range(G.order):
        rows = [[0] * rank for _ in range(rank)]
        for i in range(k):
            # component i of g.F reads component n(g_i g) acted by gamma(g_i g)
            h, j = sub.decompose(G.mul(sub.reps[i], g))
            h_idx = sub.index[h]
            hmat = M_H.action[h_idx]
            for r in range(M_H.rank):
                for c2 in range(M_H.rank):
                    rows[i * M_H.rank + r][j * M_H.rank + c2] = hmat[r][c2]
        action[g] = tuple(tuple(row) for row in rows)
    return FiniteModule(G, M_H.ring, rank, action)


def restrict_module(sub: Subgroup, M_G: FiniteModule) -> FiniteModule:
    H = sub.as_group()
    action = {
        sub.index[h]: M_G.action[h] for h in sub.elements
    }
    return FiniteModule(H, M_G.ring, M_G.rank, action)


def shapiro_project(sub: Subgroup, M_H: FiniteModule, phi: Cochain1) -> Cochain1:
    """Restriction to H followed by evaluation at the trivial coset."""
    identity_coset = next(i for i, r in enumerate(sub.reps) if r in sub.index)
    out: Cochain1 = {}
    for h_idx, h in enumerate(sub.elements):
        v = phi[h]
        out[h_idx] = tuple(
            v[identity_coset * M_H.rank + r] for r in range(M_H.rank)
        )
    return out


def shapiro_lift(sub: Subgroup, M_H: FiniteModule, ind: FiniteModule, theta: Cochain1) -> Cochain1:
    """A 1-cocycle on G with Shapiro image cohomologous to theta (linear solve)."""
    H = sub.as_group()
    if not is_cocycle1(_as_H_module(sub, M_H), theta):
        raise ValueError("input is not an H-cocycle")
    gens = z1_generators(ind)
    width = len(sub.elements) * M_H.rank
    targets = []
    for phi in gens:
        proj = shapiro_project(sub, M_H, phi)
        targets.append(_flatten_H_cochain(sub, M_H, proj))
    # solve: sum x_i proj(gen_i) = theta modulo B^1(H, M)
    MH = _as_H_module(sub, M_H)
    bsolver = b1_solver(MH)
    bvecs = [row for row in bsolver.rows]
    vectors = targets + bvecs
    theta_vec = _flatten_H_cochain(sub, M_H, theta)
    sol = _solve_combination(vectors, theta_vec, M_H.ring)
    if sol is None:
        raise AssertionError("Shapiro lift solve failed")
    out = {g: ind.zero() for g in range(sub.G.order)}
    for i, phi in enumerate(gens):
        c = sol[i] % M_H.ring
        if c:
            for g in range(sub.G.order):
                out[g] = ind.add(out[g], tuple((c * x) % M_H.ring for x in phi[g]))
    if not is_cocycle1(ind, out):
        raise AssertionError("Shapiro lift is not a cocycle")
    return out


def _as_H_module(sub: Subgroup, M_H: FiniteModule) -> FiniteModule:
    return M_H


def _flatten_H_cochain(sub: Subgroup, M_H: FiniteModule, phi: Cochain1) -> List[int]:
    out = []
    for h_idx in range(len(sub.elements)):
        out.extend(phi[h_idx])
    return out


def _solve_combination(vectors: List[Sequence[int]], target: Sequence[int], ring: int):
    """x with sum x_i v_i = target over Z/ring, or None."""
    n = len(vectors)
    width = len(target)
    aug = []
    for i, v in enumerate(vectors):
        row = list(v) + [0] * n
        row[width + i] = 1
        aug.append(row)
    s = HowellSolver(width + n, ring)
    for row in aug:
        s.insert(row)
        if ring == 4:
            s.insert([(2 * x) % 4 for x in row])
    red = s._reduce(list(target) + [0] * n)
    if any(red[:width]):
        return None
    return [(-x) % ring for x in red[width:]]


def corestriction2(sub: Subgroup, M_G: FiniteModule, f: Cochain2) -> Cochain2:
    """Transfer of a 2-cocycle on H (with G-module coefficients) up to G."""
    G = sub.G
    out: Cochain2 = {}
    for x1 in range(G.order):
        for x2 in range(G.order):
            acc = M_G.zero()
            for i, rep in enumerate(sub.reps):
                h1, j = sub.decompose(G.mul(rep, x1))
                h2, _ = sub.decompose(G.mul(sub.reps[j], x2))
                val = f[(sub.index[h1], sub.index[h2])]
                acc = M_G.add(acc, M_G.act(G.inv(rep), val))
            out[(x1, x2)] = acc
    if not is_cocycle2(M_G, out):
        raise AssertionError("corestriction image is not a 2-cocycle")
    return out


def verify_shapiro_cup(
    sub: Subgroup, M_G: FiniteModule, theta: Cochain1, psi: Cochain1
) -> bool:
    """cores(theta cup psi) equals the cup of the induced classes, in H^2(G, M).

    theta is an H-cocycle in the restriction of M_G; psi an H-cocycle with
    trivial coefficients R = Z/ring.  Both are lifted through Shapiro's
    isomorphism; the induced cup is contracted back to M_G by the trace form
    on the induced modules.
    """
    G = sub.G
    H = sub.as_group()
    ring = M_G.ring
    M_res = restrict_module(sub, M_G)
    R_H = FiniteModule.trivial(H, ring, 1)
    if not is_cocycle1(M_res, theta) or not is_cocycle1(R_H, psi):
        raise ValueError("inputs must be H-cocycles")
    ind_M = induced_module(sub, M_res)
    ind_R = induced_module(sub, R_H)
    theta_t = shapiro_lift(sub, M_res, ind_M, theta)
    psi_t = shapiro_lift(sub, R_H, ind_R, psi)
    k = len(sub.reps)

    # cup with the trace pairing: sum_i g_i^{-1} (F_i * psi_i)
    def pairing(g1, fval, pval_translated):
        acc = M_G.zero()
        for i, rep in enumerate(sub.reps):
            scalar = pval_translated[i] % ring
            if scalar:
                comp = tuple(
                    (scalar * fval[i * M_G.rank + r]) % ring for r in range(M_G.rank)
                )
                acc = M_G.add(acc, M_G.act(G.inv(rep), comp))
        return acc

    lhs: Cochain2 = {}
    for g1 in range(G.order):
        for g2 in range(G.order):
            pv = ind_R.act(g1, psi_t[g2])
            lhs[(g1, g2)] = pairing(g1, theta_t[g1], pv)
    if not is_cocycle2(M_G, lhs):
        raise AssertionError("induced cup value is not a 2-cocycle")

    def hpair(h1, tv, pv):
        return tuple((pv[0] * x) % ring for x in tv)

    cup_h = cup11(M_res, M_res, hpair, theta, psi)
    rhs = corestriction2(sub, M_G, cup_h)
    return classes_equal_h2(M_G, lhs, rhs)
