"""Exact univariate polynomial algebra over Q.

Coefficients are ``fractions.Fraction`` stored in ascending degree.  The zero
polynomial has degree -1 and most operations reject it explicitly.  Real root
isolation is Sturm-based with exact bisection only; sign evaluation at an
isolated algebraic root is certified via a shared-root resultant test plus
interval refinement, so every returned sign is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy


class ZeroPolynomialError(ValueError):
    pass


class NotSeparableError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RatPoly:
    """Dense univariate polynomial with Fraction coefficients (ascending)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence) -> None:
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    # -- construction helpers -------------------------------------------------
    @classmethod
    def zero(cls) -> "RatPoly":
        return cls([])

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> "RatPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # -- basic structure -------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.degree else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "RatPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "RatPoly(" + " + ".join(terms) + ")"

    # -- ring operations --------------------------------------------------------
    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        if self.is_zero or other.is_zero:
            return RatPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    def scale(self, c) -> "RatPoly":
        c = _frac(c)
        return RatPoly([a * c for a in self.coeffs])

    def monic(self) -> "RatPoly":
        return self.scale(1 / self.lc)

    def divmod(self, other: "RatPoly") -> Tuple["RatPoly", "RatPoly"]:
        if other.is_zero:
            raise ZeroPolynomialError("division by zero polynomial")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lcd = other.degree, other.lc
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lcd
            q[k] = f
            for i in range(d + 1):
                rem[k + i] -= f * other.coeffs[i]
            rem.pop()
        return RatPoly(q), RatPoly(rem)

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[0]

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    # -- calculus / evaluation ----------------------------------------------------
    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else None
        if acc is None:
            # generic Horner for ring elements (p-adics, poly composition, ...)
            if self.is_zero:
                raise ValueError("evaluate zero polynomial generically via caller")
            acc = None
            for c in reversed(self.coeffs):
                acc = c if acc is None else acc * x + c
            return acc
        for c in reversed(self.coeffs):
            acc = acc * _frac(x) + c
        return acc

    def eval_frac(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a) -> "RatPoly":
        """p(x + a)."""
        a = _frac(a)
        out = RatPoly.zero()
        xa = RatPoly([a, 1])
        for c in reversed(self.coeffs):
            out = out * xa + RatPoly.const(c)
        return out

    def scale_arg(self, c) -> "RatPoly":
        """p(c*x)."""
        c = _frac(c)
        pw = Fraction(1)
        cs = []
        for a in self.coeffs:
            cs.append(a * pw)
            pw *= c
        return RatPoly(cs)

    # -- integer normalisation -------------------------------------------------------
    def denominator_lcm(self) -> int:
        l = 1
        for c in self.coeffs:
            l = l * c.denominator // math.gcd(l, c.denominator)
        return l

    def int_coeffs(self) -> List[int]:
        """Coefficients after clearing denominators (primitive, sign of lc kept)."""
        if self.is_zero:
            return []
        l = self.denominator_lcm()
        ints = [int(c * l) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, abs(v))
        return [v // g for v in ints]

    def primitive(self) -> "RatPoly":
        if self.is_zero:
            return self
        return RatPoly(self.int_coeffs())


# -- resultants and discriminants ------------------------------------------------


def _bareiss_det(m: List[List[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Res(f, g) via a fraction-free Sylvester determinant."""
    if f.is_zero or g.is_zero:
        raise ZeroPolynomialError("resultant of zero polynomial")
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    lf = f.denominator_lcm()
    lg = g.denominator_lcm()
    fi = [int(c * lf) for c in f.coeffs]
    gi = [int(c * lg) for c in g.coeffs]
    size = n + m
    rows = []
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(fi)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(gi)):
            row[i + j] = c
        rows.append(row)
    det = _bareiss_det(rows)
    return Fraction(det, lf**m * lg**n)


def discriminant(f: RatPoly) -> Fraction:
    if f.is_zero or f.degree < 1:
        raise ZeroPolynomialError("discriminant needs degree >= 1")
    n = f.degree
    if n == 1:
        return Fraction(1)
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r / f.lc


def is_separable(f: RatPoly) -> bool:
    return f.degree >= 1 and discriminant(f) != 0


def gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd over Q (zero polynomial if both zero)."""
    a, b = f, g
    while not b.is_zero:
        a, b = b, (a % b).primitive() if not (a % b).is_zero else RatPoly.zero()
    if a.is_zero:
        return a
    return a.monic()


# -- Sturm sequences and real root isolation ------------------------------------------


def sturm_sequence(f: RatPoly) -> List[RatPoly]:
    seq = [f.primitive(), f.derivative().primitive()]
    while seq[-1].degree > 0:
        rem = seq[-2] % seq[-1]
        if rem.is_zero:
            break
        seq.append((-rem).primitive())
    return [p for p in seq if not p.is_zero]


def _sign_changes(seq: List[RatPoly], x: Fraction) -> int:
    signs = []
    for p in seq:
        v = p.eval_frac(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_changes_at_inf(seq: List[RatPoly], positive: bool) -> int:
    signs = []
    for p in seq:
        s = 1 if p.lc > 0 else -1
        if not positive and p.degree % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f: RatPoly) -> int:
    if not is_separable(f):
        raise NotSeparableError("root counting requires a separable polynomial")
    seq = sturm_sequence(f)
    return _sign_changes_at_inf(seq, False) - _sign_changes_at_inf(seq, True)


def cauchy_root_bound(f: RatPoly) -> Fraction:
    lcabs = abs(f.lc)
    return 1 + max((abs(c) / lcabs for c in f.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootInterval:
    """Half-open isolating interval (lo, hi] containing one root of poly."""

    lo: Fraction
    hi: Fraction
    poly: RatPoly

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refine(self, steps: int = 1) -> "RootInterval":
        iv = self
        seq = sturm_sequence(iv.poly)
        for _ in range(steps):
            mid = iv.midpoint()
            if _sign_changes(seq, iv.lo) - _sign_changes(seq, mid) == 1:
                iv = RootInterval(iv.lo, mid, iv.poly)
            else:
                iv = RootInterval(mid, iv.hi, iv.poly)
        return iv

    def refine_below(self, width: Fraction) -> "RootInterval":
        iv = self
        while iv.width() > width:
            iv = iv.refine()
        return iv


def isolate_real_roots(f: RatPoly) -> List[RootInterval]:
    """Disjoint isolating intervals, sorted ascending, one per real root."""
    if not is_separable(f):
        raise NotSeparableError("isolation requires a separable polynomial")
    seq = sturm_sequence(f)
    bound = cauchy_root_bound(f)
    lo, hi = -bound - 1, bound
    total = _sign_changes(seq, lo) - _sign_changes(seq, hi)
    out: List[RootInterval] = []

    def split(a: Fraction, b: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append(RootInterval(a, b, f))
            return
        mid = (a + b) / 2
        left = _sign_changes(seq, a) - _sign_changes(seq, mid)
        split(a, mid, left)
        split(mid, b, count - left)

    split(lo, hi, total)
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out


def _interval_eval(p: RatPoly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Enclosure of p([lo, hi]) by interval Horner."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def sign_at_root(g: RatPoly, r: RootInterval) -> int:
    """Exact sign of g at the unique root of r.poly inside r."""
    p = r.poly
    if g.is_zero:
        return 0
    h = g % p
    if h.is_zero:
        return 0
    common = gcd(p, h)
    if common.degree > 0:
        seq = sturm_sequence(common)
        if _sign_changes(seq, r.lo) - _sign_changes(seq, r.hi) > 0:
            return 0
    iv = r
    while True:
        lo, hi = _interval_eval(h, iv.lo, iv.hi)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        iv = iv.refine()


# -- misc exact constructions --------------------------------------------------------


def _frac_sqrt(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    pn, pd = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if pn * pn == c.numerator and pd * pd == c.denominator:
        return Fraction(pn, pd)
    return None


def poly_sqrt(p: RatPoly) -> Optional[RatPoly]:
    """q with q*q == p, or None.  Sign convention: lc(q) > 0."""
    if p.is_zero:
        return RatPoly.zero()
    if p.degree % 2:
        return None
    m = p.degree // 2
    lead = _frac_sqrt(p.lc)
    if lead is None:
        return None
    q = [Fraction(0)] * (m + 1)
    q[m] = lead
    for i in range(m - 1, -1, -1):
        # match coefficient of x^(m+i)
        acc = Fraction(0)
        for j in range(i + 1, m):
            k = m + i - j
            if i + 1 <= k <= m:
                acc += q[j] * q[k]
        q[i] = (p[m + i] - acc) / (2 * lead)
    cand = RatPoly(q)
    return cand if cand * cand == p else None


def interpolate(points: Sequence[Tuple[Fraction, Fraction]]) -> RatPoly:
    """Newton-form interpolation through distinct x-values."""
    xs = [_frac(x) for x, _ in points]
    ys = [_frac(y) for _, y in points]
    n = len(xs)
    coef = ys[:]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RatPoly.zero()
    for i in range(n - 1, -1, -1):
        poly = poly * RatPoly([-xs[i], 1]) + RatPoly.const(coef[i])
    return poly


# -- factorisation over Q (library-backed plumbing) -------------------------------------


_X = sympy.Symbol("x")


def factor_over_q(f: RatPoly) -> Tuple[Fraction, List[Tuple[RatPoly, int]]]:
    """Factor into irreducibles over Q: returns (constant, [(monic factor, mult)])."""
    if f.is_zero:
        raise ZeroPolynomialError("cannot factor zero")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _X**i for i, c in enumerate(f.coeffs))
    const, factors = sympy.Poly(expr, _X, domain="QQ").factor_list()
    out = []
    cval = Fraction(sympy.Rational(const).p, sympy.Rational(const).q)
    for poly, mult in factors:
        cs = [Fraction(sympy.Rational(c).p, sympy.Rational(c).q) for c in reversed(poly.all_coeffs())]
        rp = RatPoly(cs)
        cval *= rp.lc ** mult
        out.append((rp.monic(), mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return cval, out


def is_irreducible_over_q(f: RatPoly) -> bool:
    if f.degree < 1:
        return False
    _, factors = factor_over_q(f)
    return len(factors) == 1 and factors[0][1] == 1
