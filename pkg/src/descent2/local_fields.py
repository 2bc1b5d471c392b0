"""Finite extension towers of Q2 with capped-precision arithmetic.

A field is a chain of monic extension steps over Q2.  Each field carries
certified "normal data": the ramification index e, residue degree f, a
uniformizer pi (v(pi) = 1/e), an integral element omega whose residue
generates the residue field, and the change-of-basis matrix for the integral
basis {omega^j * pi^i}.  With that basis, valuations and residues reduce to a
cached linear solve plus an ultrametric minimum, which keeps every downstream
computation (square classes, Hilbert symbols, Newton polygons) fast and
certifiable.

Construction paths that introduce new fields guarantee the normal data by
construction (unramified step, Eisenstein step, totally-ramified single-slope
step); factor fields produced by the factorisation module compute their data
inside the ambient search tower and pass it in explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .qp2 import EXACT, PrecisionError, Qp2
from .qplinalg import invert_matrix, mat_vec, determinant, solve_square
from .residue import FF2, fp_trim

DEFAULT_PRECISION = 128
MAX_PRECISION = 1024

Elt = Union[Qp2, "LocalElt"]


class LocalElt:
    """Element of an extension field, coordinates over the top power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: "LocalField", coords: Tuple[Elt, ...]) -> None:
        self.field = field
        self.coords = coords

    # -- ring operations -------------------------------------------------------
    def __add__(self, other: "LocalElt") -> "LocalElt":
        return LocalElt(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LocalElt") -> "LocalElt":
        return LocalElt(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LocalElt":
        return LocalElt(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other) -> "LocalElt":
        if isinstance(other, LocalElt) and other.field is self.field:
            return self.field._mul(self, other)
        if isinstance(other, (int, Fraction)):
            q = Qp2.from_fraction(Fraction(other), self.field.precision + 64)
            return self.scale(q)
        if isinstance(other, Qp2):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, q: Qp2) -> "LocalElt":
        def sc(x):
            if isinstance(x, Qp2):
                return x * q
            return LocalElt(x.field, tuple(sc(c) for c in x.coords))

        return sc(self)

    def __truediv__(self, other: "LocalElt") -> "LocalElt":
        return self * self.field.inverse(other)

    def __pow__(self, n: int) -> "LocalElt":
        if n < 0:
            return self.field.inverse(self) ** (-n)
        r = self.field.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero if isinstance(c, Qp2) else c.is_zero for c in self.coords)

    def __repr__(self) -> str:
        return f"LocalElt({self.field.name}, {self.coords!r})"


def flatten(x: Elt) -> List[Qp2]:
    if isinstance(x, Qp2):
        return [x]
    out: List[Qp2] = []
    for c in x.coords:
        out.extend(flatten(c))
    return out


def _elt_exact_zero(x: Elt) -> bool:
    if isinstance(x, Qp2):
        return x.u == 0 and x.v >= EXACT
    return all(_elt_exact_zero(c) for c in x.coords)


class LocalField:
    """One step of an extension tower (base None means Q2 itself)."""

    def __init__(
        self,
        base: Optional["LocalField"],
        defpoly_low: Optional[Tuple[Elt, ...]],
        precision: int,
        name: str = "",
    ) -> None:
        self.base = base
        self.defpoly_low = defpoly_low
        self.rel_degree = 1 if base is None else len(defpoly_low)
        self.degree = self.rel_degree * (1 if base is None else base.degree)
        self.precision = precision
        self.name = name or ("Q2" if base is None else f"{base.name}[x]/deg{self.rel_degree}")
        # normal data, set by constructors below
        self.e: int = 1
        self.f: int = 1
        self.omega: Elt = None  # type: ignore
        self.pi: Elt = None  # type: ignore
        self.resfield: FF2 = None  # type: ignore
        # caches
        self._basis_elts: Optional[List[Elt]] = None
        self._nf_inv: Optional[List[List[Qp2]]] = None
        self._nf_vals: Optional[List[Fraction]] = None
        self._pi_inv: Optional[Elt] = None
        self._c2e_res: Optional[int] = None
        self._sc_basis: Optional[List[Elt]] = None
        self._tower_basis_vals: Optional[List[Fraction]] = None
        self._zero_cache: Optional[Elt] = None
        self._one_cache: Optional[Elt] = None

    # -- constructors ----------------------------------------------------------------
    @classmethod
    def q2(cls, precision: int = DEFAULT_PRECISION) -> "LocalField":
        k = cls(None, None, precision, name="Q2")
        k.e = k.f = 1
        k.omega = Qp2.from_int(1, precision)
        k.pi = Qp2.from_int(2, precision)
        k.resfield = FF2(1)
        return k

    def tower(self) -> List["LocalField"]:
        chain: List[LocalField] = []
        cur: Optional[LocalField] = self
        while cur is not None:
            chain.append(cur)
            cur = cur.base
        return chain[::-1]

    def tower_polys(self) -> List[List[Fraction]]:
        """Defining data for reports: one ascending coefficient list per level."""
        out = []
        for level in self.tower()[1:]:
            coeffs = []
            for c in level.defpoly_low:
                coeffs.append([q.lift_fraction() for q in flatten(c)])
            out.append(coeffs)
        return out

    # -- element constructors -----------------------------------------------------------
    def zero(self) -> Elt:
        if self._zero_cache is not None:
            return self._zero_cache
        if self.base is None:
            z: Elt = Qp2.zero()
        else:
            z = LocalElt(self, tuple(self.base.zero() for _ in range(self.rel_degree)))
        self._zero_cache = z
        return z

    def one(self) -> Elt:
        if self._one_cache is None:
            self._one_cache = self.from_int(1)
        return self._one_cache

    def from_int(self, n: int) -> Elt:
        return self.from_fraction(Fraction(n))

    def from_fraction(self, q: Fraction) -> Elt:
        if self.base is None:
            return Qp2.from_fraction(q, self.precision)
        c0 = self.base.from_fraction(q)
        rest = tuple(self.base.zero() for _ in range(self.rel_degree - 1))
        return LocalElt(self, (c0,) + rest)

    def from_qp2(self, q: Qp2) -> Elt:
        if self.base is None:
            return q
        c0 = self.base.from_qp2(q)
        rest = tuple(self.base.zero() for _ in range(self.rel_degree - 1))
        return LocalElt(self, (c0,) + rest)

    def gen(self) -> Elt:
        if self.base is None:
            raise ValueError("Q2 has no generator")
        coords = [self.base.zero() for _ in range(self.rel_degree)]
        if self.rel_degree == 1:
            # degree-1 step: generator is the (negated) constant of the step poly
            return LocalElt(self, (-self.defpoly_low[0],))
        coords[1] = self.base.one()
        return LocalElt(self, tuple(coords))

    def promote(self, x: Elt, src: Optional["LocalField"] = None) -> Elt:
        """Embed an element of an ancestor field (tower inclusion)."""
        src_field = src
        if src_field is None:
            src_field = x.field if isinstance(x, LocalElt) else None
        chain = self.tower()
        if src_field is None:
            idx = 0  # Qp2 scalar lives at the Q2 level
        else:
            idx = next(i for i, k in enumerate(chain) if k is src_field)
        cur = x
        for k in chain[idx + 1 :]:
            coords = [cur] + [k.base.zero() for _ in range(k.rel_degree - 1)]
            cur = LocalElt(k, tuple(coords))
        return cur

    def from_coords(self, coords: Sequence[Elt]) -> Elt:
        if self.base is None:
            raise ValueError("Q2 elements are plain scalars")
        return LocalElt(self, tuple(coords))

    def eval_ratpoly(self, coeffs: Sequence[Fraction], x: Elt) -> Elt:
        """Evaluate a rational polynomial (ascending coefficients) at x."""
        acc = self.zero()
        for c in reversed(list(coeffs)):
            acc = acc * x + self.from_fraction(Fraction(c))
        return acc

    def eval_poly(self, coeffs: Sequence[Elt], x: Elt) -> Elt:
        acc = self.zero()
        for c in reversed(list(coeffs)):
            acc = acc * x + c
        return acc

    # -- multiplication ---------------------------------------------------------------------
    def _mul(self, a: LocalElt, b: LocalElt) -> LocalElt:
        d = self.rel_degree
        base = self.base
        prod: List[Elt] = [base.zero() for _ in range(2 * d - 1)]
        ac, bc = a.coords, b.coords
        for i in range(d):
            ai = ac[i]
            if _elt_exact_zero(ai):
                continue
            for j in range(d):
                prod[i + j] = prod[i + j] + ai * bc[j]
        low = self.defpoly_low
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if _elt_exact_zero(c):
                continue
            for i in range(d):
                prod[k - d + i] = prod[k - d + i] - c * low[i]
        return LocalElt(self, tuple(prod[:d]))

    # -- flat bases -------------------------------------------------------------------------
    def basis_elts(self) -> List[Elt]:
        """Tower power-product basis, in flatten() coordinate order."""
        if self._basis_elts is not None:
            return self._basis_elts
        if self.base is None:
            self._basis_elts = [Qp2.from_int(1, self.precision)]
            return self._basis_elts
        out: List[Elt] = []
        sub = self.base.basis_elts()
        zero = self.base.zero()
        for i in range(self.rel_degree):
            for s in sub:
                coords = [zero] * self.rel_degree
                coords[i] = s
                out.append(LocalElt(self, tuple(coords)))
        self._basis_elts = out
        return out

    def unflatten(self, vec: Sequence[Qp2]) -> Elt:
        if self.base is None:
            return vec[0]
        nb = self.base.degree
        coords = []
        for i in range(self.rel_degree):
            coords.append(self.base.unflatten(vec[i * nb : (i + 1) * nb]))
        return LocalElt(self, tuple(coords))

    # -- normal data -----------------------------------------------------------------------------
    def finalize(self) -> None:
        """Build the integral-basis change matrix and sanity-check normal data."""
        n = self.degree
        if self.e * self.f != n:
            raise AssertionError("e*f != degree")
        cols: List[List[Qp2]] = []
        vals: List[Fraction] = []
        om_pows: List[Elt] = [self.one()]
        for _ in range(self.f - 1):
            om_pows.append(om_pows[-1] * self.omega)
        pi_pow = self.one()
        for i in range(self.e):
            for j in range(self.f):
                cols.append(flatten(om_pows[j] * pi_pow))
                vals.append(Fraction(i, self.e))
            if i + 1 < self.e:
                pi_pow = pi_pow * self.pi
        rows = [[cols[k][i] for k in range(n)] for i in range(n)]
        self._nf_inv = invert_matrix(rows)
        self._nf_vals = vals
        if self.base is not None:
            self._pi_inv = self.inverse(self.pi)
        # consistency: residue of omega^f must match the residue-field modulus
        if self.f > 1:
            r = self.residue(om_pows[-1] * self.omega)
            expected = self.resfield.modulus ^ (1 << self.f)
            if r != expected:
                raise AssertionError("residue generator inconsistent with residue field")

    def nf_coords(self, x: Elt) -> List[Qp2]:
        if self._nf_inv is None:
            self.finalize()
        return mat_vec(self._nf_inv, flatten(x))

    def valuation(self, x: Elt) -> Fraction:
        """v(x) normalised so v(2) = 1; raises on zero-to-precision input."""
        if self.base is None:
            return Fraction(x.valuation())
        c = self.nf_coords(x)
        best: Optional[Fraction] = None
        floor: Optional[Fraction] = None
        for q, bv in zip(c, self._nf_vals):
            if q.u == 0:
                fl = q.v + bv
                floor = fl if floor is None else min(floor, fl)
            else:
                val = q.v + bv
                best = val if best is None else min(best, val)
        if best is None:
            raise PrecisionError("element is zero to working precision")
        if floor is not None and floor <= best:
            raise PrecisionError("valuation not certified at current precision")
        return best

    def valuation_or_none(self, x: Elt) -> Optional[Fraction]:
        try:
            return self.valuation(x)
        except PrecisionError:
            if self.is_zero_to_prec(x):
                return None
            raise

    def is_zero_to_prec(self, x: Elt) -> bool:
        return all(q.u == 0 for q in flatten(x))

    def zero_depth(self, x: Elt) -> Fraction:
        """Certified lower bound for v(x) of a zero-to-precision element."""
        if self.base is None:
            return Fraction(min(x.v, EXACT))
        if self._tower_basis_vals is None:
            self._tower_basis_vals = [self.valuation(b) for b in self.basis_elts()]
        return min(
            Fraction(q.v) + bv for q, bv in zip(flatten(x), self._tower_basis_vals)
        )

    def truncate_elt(self, x: Elt, abs_prec: Fraction) -> Elt:
        """Reduce the claimed precision of x to (certified) abs_prec."""
        import math

        if self.base is None:
            return x.truncate(int(math.floor(abs_prec)))
        if self._tower_basis_vals is None:
            self._tower_basis_vals = [self.valuation(b) for b in self.basis_elts()]
        mv = min(self._tower_basis_vals)
        t = int(math.floor(abs_prec - min(mv, Fraction(0))))
        flat = [q.truncate(t) for q in flatten(x)]
        return self.unflatten(flat)

    def residue(self, x: Elt) -> int:
        """Residue in the residue field (bitmask over its power basis)."""
        if self.base is None:
            if x.u == 0:
                if x.v <= 0:
                    raise PrecisionError("residue unknown")
                return 0
            if x.v < 0:
                raise ValueError("non-integral element has no residue")
            return 1 if x.v == 0 else 0
        c = self.nf_coords(x)
        bits = 0
        for k, (q, bv) in enumerate(zip(c, self._nf_vals)):
            if q.u == 0:
                if q.v + bv <= 0:
                    raise PrecisionError("residue unknown at current precision")
                continue
            if q.v + bv < 0:
                raise ValueError("non-integral element has no residue")
            if bv == 0 and q.v == 0:
                j = k % self.f
                bits |= (q.u & 1) << j
        return bits

    def lift_res(self, rbits: int) -> Elt:
        out = self.zero()
        om_pow = self.one()
        j = 0
        while rbits:
            if rbits & 1:
                out = out + om_pow
            rbits >>= 1
            om_pow = om_pow * self.omega
            j += 1
        return out

    # -- inverses and norms ------------------------------------------------------------------------
    def mult_matrix_rows(self, x: Elt) -> List[List[Qp2]]:
        cols = [flatten(x * b) for b in self.basis_elts()]
        n = self.degree
        return [[cols[k][i] for k in range(n)] for i in range(n)]

    def inverse(self, x: Elt) -> Elt:
        if self.base is None:
            return x.inverse()
        rows = self.mult_matrix_rows(x)
        rhs = flatten(self.one())
        sol = solve_square(rows, rhs)
        return self.unflatten(sol)

    def pi_inverse(self) -> Elt:
        if self.base is None:
            return self.pi.inverse()
        if self._pi_inv is None:
            self._pi_inv = self.inverse(self.pi)
        return self._pi_inv

    def absolute_norm(self, x: Elt) -> Qp2:
        if self.base is None:
            return x
        return determinant(self.mult_matrix_rows(x))

    def valuation_by_norm(self, x: Elt) -> Fraction:
        """Valuation via the absolute norm; slow, used only during construction."""
        if self.base is None:
            return Fraction(x.valuation())
        return Fraction(self.absolute_norm(x).valuation(), self.degree)

    # -- square classes ------------------------------------------------------------------------------
    def odd_levels(self) -> List[int]:
        return [j for j in range(1, 2 * self.e) if j % 2 == 1]

    def sq_dim(self) -> int:
        return self.degree + 2

    def _c2e_residue(self) -> int:
        """Residue of 2/pi^(2e) * pi^e = 2/pi^e, the Artin-Schreier constant."""
        if self._c2e_res is None:
            two = self.from_int(2)
            val = two
            piinv = self.pi_inverse()
            for _ in range(self.e):
                val = val * piinv
            self._c2e_res = self.residue(val)
            if self._c2e_res == 0:
                raise AssertionError("Artin-Schreier constant must be a unit")
        return self._c2e_res

    def square_class_key(self, x: Elt) -> int:
        """Coordinates of x modulo squares over the canonical basis.

        Bit layout: bit 0 = parity of e*v(x); bits 1..e*f = the f-bit residues
        recorded at each odd level j < 2e (ascending); top bit = the
        Artin-Schreier defect at level 2e.  All-zero key == square.
        """
        key, _ = self._square_reduce(x, want_witness=False)
        return key

    def is_square(self, x: Elt) -> Tuple[bool, Optional[Elt]]:
        key, wit = self._square_reduce(x, want_witness=True)
        if key != 0:
            return False, None
        return True, wit

    def _square_reduce(self, x: Elt, want_witness: bool) -> Tuple[int, Optional[Elt]]:
        """Coordinates of x over the square-class basis.

        The unit part is tracked as a fraction num/den so that removing a
        basis representative multiplies den instead of inverting elements;
        filtration levels are read off num - den, scaled by cached powers of
        1/pi, with a single residue-field division for the level datum.
        """
        if self.is_zero_to_prec(x):
            raise PrecisionError("square test on zero-to-precision element")
        e, f = self.e, self.f
        v = self.valuation(x)
        V = int(v * e)
        if Fraction(V, e) != v:
            raise AssertionError("valuation outside value group")
        key = (V % 2) & 1
        num = x
        if V > 0:
            num = num * self._pi_inv_power(V)
        elif V < 0:
            num = num * self._pi_pos_power(-V)
        den = self.one()
        wit_a = self.one() if want_witness else None  # witness = wit_a / wit_b (times sqrt)
        wit_b = self.one() if want_witness else None
        if want_witness and V % 2 == 0 and V != 0:
            half = V // 2
            wit_a = self._pi_pos_power(half) if half > 0 else self._pi_inv_power(-half)
        # level 0: clear the Teichmueller part
        r = self.residue(num)
        if r == 0:
            raise PrecisionError("unit part has zero residue: precision loss")
        if r != 1:
            t = self.lift_res(self.resfield.sqrt(self.resfield.inv(r)))
            num = num * t * t
            if want_witness:
                wit_b = wit_b * t
        level_bits = {j: 0 for j in self.odd_levels()}
        guard = 0
        while True:
            guard += 1
            if guard > 8 * e + 16:
                raise PrecisionError("square-class reduction did not terminate")
            w = num - den
            level = self._level_and_residue(w)
            if level is None:
                break
            jj, s = level
            if jj > 2 * e:
                break
            if jj < 2 * e and jj % 2 == 1:
                level_bits[jj] ^= s
                for i in range(f):
                    if (s >> i) & 1:
                        den = den * (self.one() + self.lift_res(1 << i) * self._pi_pos_power(jj))
            elif jj < 2 * e:
                troot = self.lift_res(self.resfield.sqrt(s))
                adj = self.one() + troot * self._pi_pos_power(jj // 2)
                den = den * adj * adj
                if want_witness:
                    wit_a = wit_a * adj
            else:  # jj == 2e: Artin-Schreier level
                cbar = self._c2e_residue()
                t = self.resfield.artin_schreier_solve(cbar, s)
                if t is None:
                    key |= 1 << (1 + e * f)
                    den = den * self._eta()
                    continue
                adj = self.one() + self.lift_res(t) * self._pi_pos_power(e)
                den = den * adj * adj
                if want_witness:
                    wit_a = wit_a * adj
        bitpos = 1
        for j in self.odd_levels():
            key |= level_bits[j] << bitpos
            bitpos += f
        if key == 0 and want_witness:
            u = num * self.inverse(den)
            wit = wit_a * self.inverse(wit_b) * self._deep_unit_sqrt(u)
            return key, wit
        return key, None

    def _level_and_residue(self, w: Elt) -> Optional[Tuple[int, int]]:
        """(pi-adic level jj of w, residue of w/pi^jj) or None when w ~ 0 deeply.

        One integral-coordinate solve: with w = sum c ω^j π^i and 2^m = π^(em)
        times the unit 2/π^e, the level-jj residue collects (unit of c mod 2)
        ω^j c2^m over coordinates with e*v2(c) + i == jj.
        """
        e = self.e
        if self.base is None:
            if w.u == 0:
                if w.v <= 2:
                    raise PrecisionError("square-class reduction lost too much precision")
                return None
            return w.v, 1
        coords = self.nf_coords(w)
        best: Optional[int] = None
        floor_val: Optional[Fraction] = None
        for q, bv in zip(coords, self._nf_vals):
            if q.u == 0:
                fl = q.v + bv
                floor_val = fl if floor_val is None else min(floor_val, fl)
            else:
                lvl = q.v * e + int(bv * e)
                best = lvl if best is None else min(best, lvl)
        if best is None:
            if floor_val is not None and floor_val <= 2:
                raise PrecisionError("square-class reduction lost too much precision")
            return None
        if floor_val is not None and floor_val * e <= best:
            raise PrecisionError("filtration level not certified at current precision")
        if best > 2 * e:
            return best, 0
        cbar = self._c2e_residue()
        s = 0
        for k, (q, bv) in enumerate(zip(coords, self._nf_vals)):
            if q.u == 0 or q.v * e + int(bv * e) != best:
                continue
            if q.u & 1:
                j = k % self.f
                s ^= self.resfield.mul(1 << j, self.resfield.pow(cbar, q.v))
        if s == 0:
            raise AssertionError("leading digit of a nonzero level vanished")
        return best, s

    def _pi_power(self, k: int) -> Elt:
        return self._pi_pos_power(k)

    def _pi_pos_power(self, k: int) -> Elt:
        if not hasattr(self, "_pi_pow_cache"):
            self._pi_pow_cache = [self.one()]
        cache = self._pi_pow_cache
        while len(cache) <= k:
            cache.append(cache[-1] * self.pi)
        return cache[k]

    def _pi_inv_power(self, k: int) -> Elt:
        if not hasattr(self, "_pi_inv_pow_cache"):
            self._pi_inv_pow_cache = [self.one()]
        cache = self._pi_inv_pow_cache
        while len(cache) <= k:
            cache.append(cache[-1] * self.pi_inverse())
        return cache[k]

    def _eta(self) -> Elt:
        """Fixed unit representing the nontrivial class at level 2e."""
        cbar = self._c2e_residue()
        for s in range(1, self.resfield.order):
            if self.resfield.artin_schreier_solve(cbar, s) is None:
                return self.one() + self.lift_res(s) * self._pi_power(2 * self.e)
        raise AssertionError("no Artin-Schreier non-image found")

    def _deep_unit_sqrt(self, u: Elt) -> Elt:
        """Square root of a unit with v(u-1) > 2e, by Newton iteration."""
        y = self.one()
        half = None
        target = self.precision - 2
        for _ in range(self.precision + 8):
            err = y * y - u
            if self.is_zero_to_prec(err):
                return y
            ev = self.valuation_or_none(err)
            if ev is not None and ev >= target:
                return y
            # y <- y - err / (2y)
            denom = (self.from_int(2)) * y
            y = y - err * self.inverse(denom)
        raise PrecisionError("deep unit square root did not converge")

    def square_class_basis(self) -> List[Elt]:
        """Representatives matching the key layout: pi, unit levels, eta."""
        if self._sc_basis is not None:
            return self._sc_basis
        reps = [self.pi]
        for j in self.odd_levels():
            for i in range(self.f):
                reps.append(self.one() + self.lift_res(1 << i) * self._pi_power(j))
        reps.append(self._eta())
        self._sc_basis = reps
        return reps

    def element_from_key(self, key: int) -> Elt:
        out = self.one()
        for i, rep in enumerate(self.square_class_basis()):
            if (key >> i) & 1:
                out = out * rep
        return out

    def residue_system(self) -> List[Elt]:
        """Lifts of all residue-field elements."""
        return [self.lift_res(r) for r in range(self.resfield.order)]

    def __repr__(self) -> str:
        return f"LocalField({self.name}, n={self.degree}, e={self.e}, f={self.f})"


# -- step constructors -------------------------------------------------------------------


def extend_unramified(K: LocalField, resfactor: List[int], name: str = "") -> LocalField:
    """Adjoin a root of an irreducible residue polynomial (unramified step)."""
    from .residue import fp_is_irreducible

    d = len(resfactor) - 1
    if d < 1 or resfactor[-1] != 1:
        raise ValueError("need a monic residue polynomial of degree >= 1")
    if not fp_is_irreducible(K.resfield, resfactor):
        raise ValueError("residue polynomial is reducible")
    low = tuple(K.lift_res(c) for c in resfactor[:-1])
    L = LocalField(K, low, K.precision, name=name or f"{K.name}+ur{d}")
    L.e = K.e
    L.f = K.f * d
    L.pi = L.promote(K.pi, K)
    # find a residue-field generator expressed over (omega_K, t)
    kK = K.resfield
    t_poly = [0, 1]
    gen_poly = None
    # residue field of L modelled as kK[T]/(resfactor)
    def knew_mul(a: List[int], b: List[int]) -> List[int]:
        from .residue import fp_divmod, fp_mul

        return fp_divmod(kK, fp_mul(kK, a, b), resfactor)[1]

    def knew_frob(a: List[int]) -> List[int]:
        return knew_mul(a, a)

    def knew_degree(a: List[int]) -> int:
        x = knew_frob(a)
        deg = 1
        while x != a:
            x = knew_frob(x)
            deg += 1
        return deg

    candidates: List[List[int]] = [t_poly]
    for wbit in range(1, min(kK.order, 16)):
        candidates.append(fp_trim([wbit, 1]))
        candidates.append(fp_trim([0, wbit]))
    for c in range(2, 16):
        candidates.append(fp_trim([c % kK.order, 1]))
    found = None
    for cand in candidates:
        cand = [x % kK.order for x in cand]
        if not cand:
            continue
        if knew_degree(cand) == L.f:
            found = cand
            break
    if found is None:
        raise AssertionError("no generator of the composite residue field found")
    # minimal polynomial of the generator over F2 via its Frobenius orbit
    orbit = [found]
    x = knew_frob(found)
    while x != found:
        orbit.append(x)
        x = knew_frob(x)
    poly: List[List[int]] = [[1]]
    for r in orbit:
        nxt: List[List[int]] = [[] for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            nxt[i + 1] = [a ^ b for a, b in _zip_pad(nxt[i + 1], c)]
            prod = knew_mul(c, r)
            nxt[i] = [a ^ b for a, b in _zip_pad(nxt[i], prod)]
        poly = [fp_trim(p) for p in nxt]
    bits = 0
    for i, c in enumerate(poly):
        if c == [1]:
            bits |= 1 << i
        elif c:
            raise AssertionError("generator minimal polynomial not over F2")
    L.resfield = FF2(L.f, bits)
    # lift the generator: omega_L = sum lift(c_i) * gen^i
    g = L.gen()
    om = L.zero()
    gp = L.one()
    for c in found:
        om = om + L.promote(K.lift_res(c), K) * gp
        gp = gp * g
    L.omega = om
    L.finalize()
    return L


def _zip_pad(a: List[int], b: List[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def extend_eisenstein(K: LocalField, low: Sequence[Elt], name: str = "") -> LocalField:
    """Adjoin a root of a relative Eisenstein polynomial x^l + ... (low coeffs given)."""
    l = len(low)
    for i, c in enumerate(low):
        v = K.valuation(c) if not K.is_zero_to_prec(c) else None
        need = Fraction(1, K.e)
        if v is not None and v < need:
            raise ValueError("coefficient %d too small for Eisenstein step" % i)
    v0 = K.valuation(low[0])
    if v0 != Fraction(1, K.e):
        raise ValueError("constant term must be an exact uniformizer multiple")
    L = LocalField(K, tuple(low), K.precision, name=name or f"{K.name}+eis{l}")
    L.e = K.e * l
    L.f = K.f
    L.resfield = K.resfield
    L.omega = L.promote(K.omega, K)
    L.pi = L.gen()
    L.finalize()
    return L


def extend_totally_ramified_root(K: LocalField, low: Sequence[Elt], slope_num: int, name: str = "") -> LocalField:
    """Adjoin a root of a monic polynomial with a single Newton slope h/deg, gcd(h,deg)=1.

    The root is then a generator of a totally ramified extension; a uniformizer
    is produced from an extended-gcd power combination of the root and pi_K.
    """
    deg = len(low)
    h = slope_num
    import math

    if math.gcd(h, deg) != 1:
        raise ValueError("slope numerator and degree must be coprime")
    L = LocalField(K, tuple(low), K.precision, name=name or f"{K.name}+tr{deg}")
    L.e = K.e * deg
    L.f = K.f
    L.resfield = K.resfield
    L.omega = L.promote(K.omega, K)
    # solve a*h + b*deg = 1: pi = root^a * pi_K^b
    a, b = _ext_gcd(h, deg)
    root = L.gen()
    piK = L.promote(K.pi, K)
    pi = L.one()
    pi = pi * (root**a if a >= 0 else L.inverse(root) ** (-a))
    pi = pi * (piK**b if b >= 0 else L.inverse(piK) ** (-b))
    L.pi = pi
    L.finalize()
    return L


def _ext_gcd(a: int, b: int) -> Tuple[int, int]:
    """(x, y) with a*x + b*y = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def make_factor_field(
    K: LocalField,
    minpoly_low: Sequence[Elt],
    e: int,
    f: int,
    omega_coords: Sequence[Elt],
    pi_coords: Sequence[Elt],
    res_modulus: int,
    name: str = "",
) -> LocalField:
    """Field K[x]/(m) with externally computed normal data (from a search tower)."""
    L = LocalField(K, tuple(minpoly_low), K.precision, name=name or f"{K.name}+fac{len(minpoly_low)}")
    L.e = e
    L.f = f
    L.resfield = FF2(f, res_modulus) if f > 1 else FF2(1)
    L.omega = LocalElt(L, tuple(omega_coords)) if K is not None else None
    L.pi = LocalElt(L, tuple(pi_coords))
    L.finalize()
    return L


class Embedding:
    """Field embedding given by images of each tower-level generator."""

    def __init__(self, src: LocalField, dst: LocalField, gen_images: List[Elt]) -> None:
        self.src = src
        self.dst = dst
        self.gen_images = gen_images  # bottom extension level first
        levels = src.tower()[1:]
        if len(gen_images) != len(levels):
            raise ValueError("need one generator image per extension level")

    @classmethod
    def tower_inclusion(cls, src: LocalField, dst: LocalField) -> "Embedding":
        imgs = []
        for level in src.tower()[1:]:
            imgs.append(dst.promote(level.gen(), level))
        return cls(src, dst, imgs)

    def apply(self, x: Elt) -> Elt:
        levels = self.src.tower()[1:]

        def ev(val: Elt, lvl: int) -> Elt:
            if lvl < 0:
                return self.dst.from_qp2(val)  # type: ignore[arg-type]
            img = self.gen_images[lvl]
            acc = self.dst.zero()
            for c in reversed(val.coords):  # type: ignore[union-attr]
                acc = acc * img + ev(c, lvl - 1)
            return acc

        if isinstance(x, Qp2):
            return self.dst.from_qp2(x)
        return ev(x, levels.index(x.field))

    def check(self, zero_floor: int = 16) -> bool:
        """Verify every defining polynomial vanishes on its generator image."""
        levels = self.src.tower()[1:]
        for lvl, level in enumerate(levels):
            img = self.gen_images[lvl]
            acc = self.dst.zero()
            coeffs = list(level.defpoly_low) + [level.base.one()]
            for c in reversed(coeffs):
                if isinstance(c, Qp2):
                    lowered = self.dst.from_qp2(c)
                else:
                    lowered = self.apply(c)
                acc = acc * img + lowered
            val = self.dst.valuation_or_none(acc)
            if val is not None and val < zero_floor:
                return False
        return True

    def compose(self, outer: "Embedding") -> "Embedding":
        """outer ∘ self : src -> outer.dst."""
        if outer.src is not self.dst:
            raise ValueError("embedding composition mismatch")
        return Embedding(self.src, outer.dst, [outer.apply(g) for g in self.gen_images])


def relative_norm(x: Elt, emb: Embedding, w_candidates: Optional[List[Elt]] = None) -> Elt:
    """Norm of x from emb.dst down to emb.src along the embedding.

    Implemented as the determinant of multiplication-by-x on L viewed as a
    K-vector space, with the K-basis completed from powers of a primitive
    element of L over the embedded K.
    """
    K, L = emb.src, emb.dst
    if L.degree % K.degree:
        raise ValueError("degree mismatch")
    m = L.degree // K.degree
    if m == 1:
        # the embedding is onto: express x in terms of it via linear algebra
        return _preimage_under_embedding(x, emb)
    k_basis = [emb.apply(b) for b in K.basis_elts()]
    cands = list(w_candidates or [])
    if L.base is not None:
        cands.append(L.gen())
    cands.append(L.pi)
    cands.append(L.omega + L.pi)
    if L.base is not None:
        cands.append(L.gen() + L.one())
        cands.append(L.gen() * L.omega + L.pi)
    last_err: Optional[Exception] = None
    for w in cands:
        try:
            return _norm_with_basis(x, emb, k_basis, w, m)
        except PrecisionError as err:
            last_err = err
    raise last_err or PrecisionError("no primitive element candidate worked")


def _norm_with_basis(x: Elt, emb: Embedding, k_basis: List[Elt], w: Elt, m: int) -> Elt:
    K, L = emb.src, emb.dst
    n = L.degree
    wp: List[Elt] = [L.one()]
    for _ in range(m - 1):
        wp.append(wp[-1] * w)
    full_basis: List[Elt] = []
    for i in range(m):
        for kb in k_basis:
            full_basis.append(kb * wp[i])
    cols = [flatten(b) for b in full_basis]
    rows = [[cols[k][i] for k in range(n)] for i in range(n)]
    inv = invert_matrix(rows)
    nk = K.degree
    matrix_entries: List[List[Elt]] = [[None] * m for _ in range(m)]  # type: ignore[list-item]
    for i in range(m):
        target = flatten(x * wp[i])
        coords = mat_vec(inv, target)
        for i2 in range(m):
            kcoords = coords[i2 * nk : (i2 + 1) * nk]
            matrix_entries[i2][i] = K.unflatten(kcoords)
    return _det_over_field(K, matrix_entries)


def _preimage_under_embedding(x: Elt, emb: Embedding) -> Elt:
    K, L = emb.src, emb.dst
    k_basis = [emb.apply(b) for b in K.basis_elts()]
    cols = [flatten(b) for b in k_basis]
    n = L.degree
    rows = [[cols[k][i] for k in range(n)] for i in range(n)]
    coords = solve_square(rows, flatten(x))
    return K.unflatten(coords)


def _det_over_field(K: LocalField, m: List[List[Elt]]) -> Elt:
    n = len(m)
    a = [row[:] for row in m]
    det = K.one()
    for col in range(n):
        piv, piv_v = None, None
        for r in range(col, n):
            if not K.is_zero_to_prec(a[r][col]):
                v = K.valuation(a[r][col])
                if piv_v is None or v < piv_v:
                    piv, piv_v = r, v
        if piv is None:
            return K.zero()
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = K.inverse(a[col][col])
        for r in range(col + 1, n):
            if not K.is_zero_to_prec(a[r][col]):
                fct = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] = a[r][c] - fct * a[col][c]
    return det
