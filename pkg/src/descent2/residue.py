"""Arithmetic and polynomial factorisation over F_{2^f}.

Elements are ints used as coefficient bitmasks over a fixed defining
polynomial.  Fields stay tiny (f <= 12 here), so carry-less multiplication
with explicit reduction is plenty.  Factorisation is squarefree split +
distinct-degree + equal-degree with the characteristic-2 trace trick.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

# fixed irreducible defining polynomials per degree (bitmask, bit i = x^i)
STEP_POLYS: Dict[int, int] = {
    1: 0b10,  # x  (unused placeholder; F_2 needs no modulus)
    2: 0b111,  # x^2+x+1
    3: 0b1011,  # x^3+x+1
    4: 0b10011,  # x^4+x+1
    5: 0b100101,  # x^5+x^2+1
    6: 0b1011011,  # x^6+x^4+x^3+x+1
    7: 0b10000011,  # x^7+x+1
    8: 0b100011011,  # x^8+x^4+x^3+x+1
    9: 0b1000010001,  # x^9+x^4+1
    10: 0b10000001001,  # x^10+x^3+1
    11: 0b100000000101,  # x^11+x^2+1
    12: 0b1000001010011,  # x^12+x^6+x^4+x+1
}


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _clmod(a: int, mod: int) -> int:
    dm = mod.bit_length() - 1
    da = a.bit_length() - 1
    while da >= dm:
        a ^= mod << (da - dm)
        da = a.bit_length() - 1
    return a


class FF2(object):
    """The field F_{2^f} = F_2[y]/(modulus)."""

    def __init__(self, f: int, modulus: int | None = None) -> None:
        if modulus is None:
            modulus = STEP_POLYS[f] if f > 1 else 0b10
        if f > 1 and modulus.bit_length() - 1 != f:
            raise ValueError("modulus degree mismatch")
        self.f = f
        self.modulus = modulus
        self.order = 1 << f
        if f > 1 and not _poly_is_irreducible_f2(modulus):
            raise ValueError("modulus is reducible over F2")

    def mul(self, a: int, b: int) -> int:
        if self.f == 1:
            return a & b
        return _clmod(_clmul(a, b), self.modulus)

    def pow(self, a: int, n: int) -> int:
        r, base = 1, a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_{2^f}")
        return self.pow(a, self.order - 2)

    def sqrt(self, a: int) -> int:
        """Every element has a unique square root in characteristic 2."""
        return self.pow(a, 1 << (self.f - 1))

    def frob(self, a: int) -> int:
        return self.mul(a, a)

    def trace(self, a: int) -> int:
        t, x = 0, a
        for _ in range(self.f):
            t ^= x
            x = self.mul(x, x)
        if t not in (0, 1):
            raise AssertionError("trace landed outside F2")
        return t

    def element_degree(self, a: int) -> int:
        """Degree of F_2(a) over F_2 (Frobenius orbit size)."""
        x = self.frob(a)
        d = 1
        while x != a:
            x = self.frob(x)
            d += 1
        return d

    def min_poly_bits(self, a: int) -> int:
        """Minimal polynomial of a over F_2 as a bitmask."""
        orbit = [a]
        x = self.frob(a)
        while x != a:
            orbit.append(x)
            x = self.frob(x)
        poly = [1]  # coefficients in F_{2^f}, ascending
        for r in orbit:
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] ^= c
                nxt[i] ^= self.mul(c, r)
            poly = nxt
        bits = 0
        for i, c in enumerate(poly):
            if c not in (0, 1):
                raise AssertionError("minimal polynomial has non-F2 coefficient")
            bits |= c << i
        return bits

    def find_generator(self, candidates: List[int] | None = None) -> int:
        """An element of full degree f over F_2."""
        if self.f == 1:
            return 1
        it = candidates if candidates is not None else range(2, self.order)
        for a in it:
            if a and self.element_degree(a) == self.f:
                return a
        raise AssertionError("no field generator found")

    def artin_schreier_solve(self, c: int, s: int) -> int | None:
        """Solve t^2 + c*t = s, or None if unsolvable; c must be nonzero."""
        if c == 0:
            raise ValueError("need c != 0")
        img = [self.mul(1 << j, 1 << j) ^ self.mul(c, 1 << j) for j in range(self.f)]
        sel = [1 << j for j in range(self.f)]
        rhs, x = s, 0
        used = [False] * self.f
        for bit in range(self.f):
            piv = next(
                (i for i in range(self.f) if not used[i] and (img[i] >> bit) & 1), None
            )
            if piv is None:
                continue
            used[piv] = True
            for i in range(self.f):
                if i != piv and ((img[i] >> bit) & 1):
                    img[i] ^= img[piv]
                    sel[i] ^= sel[piv]
            if (rhs >> bit) & 1:
                rhs ^= img[piv]
                x ^= sel[piv]
        return x if rhs == 0 else None


# -- polynomials over F_{2^f}: lists of ints, ascending ----------------------------------


def _poly_is_irreducible_f2(bits: int) -> bool:
    """Irreducibility over F_2 for a bitmask polynomial (brute trial division)."""
    n = bits.bit_length() - 1
    if n <= 1:
        return n == 1
    for d in range(2, 1 << ((n // 2) + 1)):
        if d.bit_length() - 1 < 1:
            continue
        if d.bit_length() - 1 > n // 2:
            break
        if _clmod(bits, d) == 0:
            return False
    return True


def fp_trim(p: List[int]) -> List[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def fp_degree(p: List[int]) -> int:
    return len(p) - 1


def fp_add(p: List[int], q: List[int]) -> List[int]:
    n = max(len(p), len(q))
    return fp_trim([(p[i] if i < len(p) else 0) ^ (q[i] if i < len(q) else 0) for i in range(n)])


def fp_mul(F: FF2, p: List[int], q: List[int]) -> List[int]:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] ^= F.mul(a, b)
    return fp_trim(out)

def fp_scale(F: FF2, p: List[int], c: int) -> List[int]:
    return fp_trim([F.mul(a, c) for a in p])


def fp_divmod(F: FF2, p: List[int], q: List[int]) -> Tuple[List[int], List[int]]:
    if not q:
        raise ZeroDivisionError
    p = p[:]
    dq = fp_degree(q)
    inv_lc = F.inv(q[-1])
    quo = [0] * max(0, len(p) - dq)
    while fp_degree(p) >= dq and p:
        k = fp_degree(p) - dq
        c = F.mul(p[-1], inv_lc)
        quo[k] = c
        for i in range(dq + 1):
            p[k + i] ^= F.mul(c, q[i])
        fp_trim(p)
    return fp_trim(quo), p


def fp_gcd(F: FF2, p: List[int], q: List[int]) -> List[int]:
    a, b = p[:], q[:]
    while b:
        a, b = b, fp_divmod(F, a, b)[1]
    if a:
        a = fp_scale(F, a, F.inv(a[-1]))
    return a


def fp_powmod(F: FF2, p: List[int], n: int, mod: List[int]) -> List[int]:
    r, base = [1], fp_divmod(F, p, mod)[1]
    while n:
        if n & 1:
            r = fp_divmod(F, fp_mul(F, r, base), mod)[1]
        base = fp_divmod(F, fp_mul(F, base, base), mod)[1]
        n >>= 1
    return r


def fp_derivative(p: List[int]) -> List[int]:
    return fp_trim([p[i] if i % 2 else 0 for i in range(1, len(p))])


def fp_sqrt(F: FF2, p: List[int]) -> List[int]:
    """Square root of p(x) = q(x)^2 (all odd coefficients vanish)."""
    out = []
    for i in range(0, len(p), 2):
        out.append(F.sqrt(p[i]))
    return fp_trim(out)


def fp_squarefree_decomposition(F: FF2, p: List[int]) -> List[Tuple[List[int], int]]:
    """Yun-style decomposition adapted to characteristic 2: [(g_i, mult_i)]."""
    result: List[Tuple[List[int], int]] = []

    def rec(g: List[int], mult: int) -> None:
        if fp_degree(g) <= 0:
            return
        d = fp_derivative(g)
        if not d:
            rec(fp_sqrt(F, g), 2 * mult)
            return
        s = fp_gcd(F, g, d)
        w = fp_divmod(F, g, s)[0]
        i = 1
        while fp_degree(w) > 0:
            y = fp_gcd(F, w, s)
            z = fp_divmod(F, w, y)[0]
            if fp_degree(z) > 0:
                result.append((fp_scale(F, z, F.inv(z[-1])), i * mult))
            w = y
            s = fp_divmod(F, s, y)[0]
            i += 1
        if fp_degree(s) > 0:
            rec(s, mult)

    rec(fp_scale(F, p, F.inv(p[-1])), 1)
    return result


def fp_distinct_degree(F: FF2, p: List[int]) -> List[Tuple[List[int], int]]:
    """For squarefree monic p: [(product of irreducible factors of degree d, d)]."""
    out = []
    x = [0, 1]
    h = x[:]
    rest = p[:]
    d = 0
    while fp_degree(rest) > 0:
        d += 1
        if 2 * d > fp_degree(rest):
            out.append((rest, fp_degree(rest)))
            break
        h = fp_powmod(F, h, F.order, rest)
        g = fp_gcd(F, fp_add(h, x), rest)
        if fp_degree(g) > 0:
            out.append((g, d))
            rest = fp_divmod(F, rest, g)[0]
            h = fp_divmod(F, h, rest)[1]
    return out


def _graded_polys(F: FF2, max_deg: int):
    """All nonzero polynomials over F of degree <= max_deg, by degree."""
    import itertools

    for deg in range(1, max_deg + 1):
        for lead in range(1, F.order):
            for tail in itertools.product(range(F.order), repeat=deg):
                yield list(tail) + [lead]


def fp_equal_degree_split(F: FF2, p: List[int], d: int) -> List[List[int]]:
    """Split a squarefree monic product of degree-d irreducibles into them.

    Deterministic: sweeps trace arguments over all polynomials of degree
    below deg(p); some argument always separates two distinct factors.
    """
    n = fp_degree(p)
    if n == d:
        return [p]
    for u in _graded_polys(F, n - 1):
        t = [0]
        w = fp_divmod(F, u, p)[1]
        for _ in range(F.f * d):
            t = fp_add(t, w)
            w = fp_divmod(F, fp_mul(F, w, w), p)[1]
        for cand in (t, fp_add(t, [1])):
            g = fp_gcd(F, cand, p)
            if 0 < fp_degree(g) < n:
                return fp_equal_degree_split(F, g, d) + fp_equal_degree_split(
                    F, fp_divmod(F, p, g)[0], d
                )
    raise AssertionError("no trace argument separates the equal-degree factors")


def fp_factor(F: FF2, p: List[int]) -> List[Tuple[List[int], int]]:
    """Monic irreducible factors with multiplicities."""
    if fp_degree(p) < 1:
        raise ValueError("need degree >= 1")
    out: List[Tuple[List[int], int]] = []
    for part, mult in fp_squarefree_decomposition(F, p):
        for prod, d in fp_distinct_degree(F, part):
            for irr in fp_equal_degree_split(F, prod, d):
                out.append((irr, mult))
    out.sort(key=lambda t: (fp_degree(t[0]), t[0]))
    return out


def fp_roots(F: FF2, p: List[int]) -> List[int]:
    """Roots in F_{2^f} (without multiplicity)."""
    return [f[0] for f, _ in fp_factor(F, p) if fp_degree(f) == 1]


def fp_is_irreducible(F: FF2, p: List[int]) -> bool:
    fac = fp_factor(F, p)
    return len(fac) == 1 and fac[0][1] == 1
