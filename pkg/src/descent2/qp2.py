"""Capped-precision arithmetic in Q2.

A nonzero scalar is ``2^v * u`` with ``u`` odd and known modulo ``2^rp``
(``rp`` = relative precision), so the absolute precision is ``v + rp``.
Zero-to-precision is a separate state: the element is only known to vanish
modulo ``2^zprec``.  Every decision that needs a certainly-nonzero value
raises :class:`PrecisionError` instead of guessing.
"""

from __future__ import annotations

from fractions import Fraction

EXACT = 10**9  # sentinel absolute precision for exact zero


class PrecisionError(ArithmeticError):
    """Raised when a decision cannot be certified at current precision."""


def v2(n: int) -> int:
    if n == 0:
        raise ValueError("v2(0) undefined")
    return (n & -n).bit_length() - 1


class Qp2:
    __slots__ = ("v", "u", "rp")

    def __init__(self, v: int, u: int, rp: int) -> None:
        # zero state: u == 0, rp == 0, v = zero-precision
        if u == 0:
            object.__setattr__(self, "v", v)
            object.__setattr__(self, "u", 0)
            object.__setattr__(self, "rp", 0)
            return
        if rp <= 0:
            object.__setattr__(self, "v", v)
            object.__setattr__(self, "u", 0)
            object.__setattr__(self, "rp", 0)
            return
        t = v2(u) if u % 2 == 0 else 0
        if t:
            u >>= t
            v += t
            rp -= t
            if rp <= 0:
                object.__setattr__(self, "v", v + rp)
                object.__setattr__(self, "u", 0)
                object.__setattr__(self, "rp", 0)
                return
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "u", u % (1 << rp))
        object.__setattr__(self, "rp", rp)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Qp2 is immutable")

    # -- constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, zprec: int = EXACT) -> "Qp2":
        return cls(zprec, 0, 0)

    @classmethod
    def from_int(cls, n: int, abs_prec: int) -> "Qp2":
        if n == 0:
            return cls.zero()
        v = v2(n)
        return cls(v, n >> v, abs_prec - v)

    @classmethod
    def from_fraction(cls, q: Fraction, abs_prec: int) -> "Qp2":
        if q == 0:
            return cls.zero()
        num, den = q.numerator, q.denominator
        vn = v2(num)
        vd = v2(den)
        v = vn - vd
        rp = abs_prec - v
        if rp <= 0:
            return cls.zero(abs_prec)
        un = num >> vn
        ud = den >> vd
        u = (un * pow(ud, -1, 1 << rp)) % (1 << rp)
        return cls(v, u, rp)

    # -- state -------------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.u == 0

    @property
    def is_exact_zero(self) -> bool:
        return self.u == 0 and self.v >= EXACT

    @property
    def abs_prec(self) -> int:
        return self.v if self.u == 0 else self.v + self.rp

    def valuation(self) -> int:
        if self.u == 0:
            raise PrecisionError(
                "element is zero to precision 2^%d; valuation unknown" % min(self.v, EXACT)
            )
        return self.v

    def valuation_or_none(self):
        return None if self.u == 0 else self.v

    # -- arithmetic ----------------------------------------------------------------
    def __add__(self, other: "Qp2") -> "Qp2":
        if self.u == 0 and other.u == 0:
            return Qp2.zero(min(self.v, other.v))
        if self.u == 0:
            return other._truncate_abs(self.v)
        if other.u == 0:
            return self._truncate_abs(other.v)
        v = min(self.v, other.v)
        cap = min(self.abs_prec, other.abs_prec)
        rp = cap - v
        if rp <= 0:
            return Qp2.zero(cap)
        a = ((self.u << (self.v - v)) + (other.u << (other.v - v))) % (1 << rp)
        if a == 0:
            return Qp2.zero(cap)
        return Qp2(v, a, rp)

    def __neg__(self) -> "Qp2":
        if self.u == 0:
            return self
        return Qp2(self.v, (1 << self.rp) - self.u, self.rp)

    def __sub__(self, other: "Qp2") -> "Qp2":
        return self + (-other)

    def _coerce(self, other) -> "Qp2":
        if isinstance(other, Qp2):
            return other
        q = Fraction(other)
        if q == 0:
            return Qp2.zero()
        vq = v2(q.numerator) - v2(q.denominator)
        return Qp2.from_fraction(q, vq + max(self.rp, 8) + 8)

    def __mul__(self, other) -> "Qp2":
        if not isinstance(other, Qp2):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = self._coerce(other)
        if self.u == 0 or other.u == 0:
            return Qp2.zero(min(self.v + other.v, EXACT))
        rp = min(self.rp, other.rp)
        return Qp2(self.v + other.v, (self.u * other.u) % (1 << rp), rp)

    __rmul__ = __mul__

    def inverse(self) -> "Qp2":
        if self.u == 0:
            raise PrecisionError("cannot invert zero-to-precision element")
        return Qp2(-self.v, pow(self.u, -1, 1 << self.rp), self.rp)

    def __truediv__(self, other: "Qp2") -> "Qp2":
        return self * other.inverse()

    def shift(self, k: int) -> "Qp2":
        """Multiply by 2^k."""
        if self.u == 0:
            return Qp2.zero(min(self.v + k, EXACT))
        return Qp2(self.v + k, self.u, self.rp)

    def _truncate_abs(self, cap: int) -> "Qp2":
        if self.u == 0:
            return Qp2.zero(min(self.v, cap))
        rp = cap - self.v
        if rp <= 0:
            return Qp2.zero(cap)
        if rp >= self.rp:
            return self
        return Qp2(self.v, self.u % (1 << rp), rp)

    def truncate(self, abs_prec: int) -> "Qp2":
        return self._truncate_abs(abs_prec)

    # -- predicates -------------------------------------------------------------------
    def is_unit(self) -> bool:
        return self.u != 0 and self.v == 0

    def residue_bit(self) -> int:
        """Unit's residue mod 2 (i.e. 1), or 0 for non-units/zero; mostly a guard."""
        return 1 if (self.u != 0 and self.v == 0) else 0

    def unit_mod(self, k: int) -> int:
        """The odd part mod 2^k; requires enough relative precision."""
        if self.u == 0:
            raise PrecisionError("no unit part: zero to precision")
        if self.rp < k:
            raise PrecisionError("relative precision %d < %d" % (self.rp, k))
        return self.u % (1 << k)

    def sqrt(self) -> "Qp2":
        """Square root of an even-valuation element whose unit is 1 mod 8."""
        if self.u == 0:
            raise PrecisionError("sqrt of zero-to-precision element")
        if self.v % 2:
            raise ValueError("odd valuation: not a square")
        if self.rp < 3 or self.u % 8 != 1:
            if self.rp < 3:
                raise PrecisionError("need unit mod 8 to attempt sqrt")
            raise ValueError("unit not congruent to 1 mod 8: not a square")
        n = self.rp
        y = 1
        for i in range(3, n):
            if ((y * y - self.u) >> i) & 1:
                y += 1 << (i - 1)
        return Qp2(self.v // 2, y, n - 1)

    def __eq__(self, other) -> bool:
        """Exact representation equality (same value and precision)."""
        if not isinstance(other, Qp2):
            return NotImplemented
        return (self.u, self.v, self.rp) == (other.u, other.v, other.rp)

    def __hash__(self):
        return hash((self.u, self.v, self.rp))

    def eq_to_prec(self, other: "Qp2") -> bool:
        return (self - other).is_zero

    def __repr__(self) -> str:
        if self.u == 0:
            if self.v >= EXACT:
                return "Qp2(0)"
            return f"Qp2(O(2^{self.v}))"
        return f"Qp2(2^{self.v}*{self.u} + O(2^{self.abs_prec}))"

    def lift_fraction(self) -> Fraction:
        """A rational representative (the stored truncation)."""
        if self.u == 0:
            return Fraction(0)
        return Fraction(self.u) * Fraction(2) ** self.v
