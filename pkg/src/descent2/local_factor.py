"""Certified factorisation of separable polynomials over 2-adic field towers.

The driver finds one root of the input inside an explicitly constructed
extension tower (Newton-polygon analysis, Hensel splitting on coprime residue
factorisations, unramified and ramified extension steps, shifts), takes the
minimal polynomial of that root over the base by linear algebra, divides it
out and repeats.  Minimal polynomials are irreducible by construction, so
every emitted factor is certified; the product of the emitted factors is
re-checked against the input to working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .polynomials import RatPoly
from .qp2 import PrecisionError, Qp2
from .qplinalg import SpanSolver, mat_vec, saturate_lattice
from .residue import STEP_POLYS, fp_factor, fp_mul, fp_roots
from .gf2 import F2Matrix, f2_rank_kernel
from .local_fields import (
    Elt,
    Embedding,
    LocalElt,
    LocalField,
    _elt_exact_zero,
    extend_eisenstein,
    extend_totally_ramified_root,
    extend_unramified,
    flatten,
    make_factor_field,
)

Poly = List[Elt]  # ascending coefficients, leading coefficient included


# -- polynomial helpers over a field ------------------------------------------------------


def poly_promote(K: LocalField, p: Poly, src: LocalField) -> Poly:
    return [K.promote(c, src) for c in p]


def poly_from_ratpoly(K: LocalField, p: RatPoly) -> Poly:
    return [K.from_fraction(c) for c in p.coeffs]


def poly_eval(K: LocalField, p: Poly, x: Elt) -> Elt:
    acc = K.zero()
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(K: LocalField, p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [K.zero() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def poly_derivative(K: LocalField, p: Poly) -> Poly:
    return [c * i for i, c in enumerate(p)][1:]


def poly_divmod_monic(K: LocalField, p: Poly, d: Poly) -> Tuple[Poly, Poly]:
    """Divide by a monic divisor (no inversions needed)."""
    p = list(p)
    nd = len(d) - 1
    if nd == 0:
        return p, []
    q: List[Elt] = [K.zero() for _ in range(max(0, len(p) - nd))]
    for k in range(len(p) - nd - 1, -1, -1):
        c = p[k + nd]
        q[k] = c
        for i in range(nd + 1):
            p[k + i] = p[k + i] - c * d[i]
    return q, p[:nd]


def poly_is_zero(K: LocalField, p: Poly) -> bool:
    return all(K.is_zero_to_prec(c) for c in p)


# -- Newton polygons ----------------------------------------------------------------------------


def lower_hull(points: List[Tuple[int, Fraction]]) -> List[Tuple[int, Fraction]]:
    pts = sorted(points)
    hull: List[Tuple[int, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(K: LocalField, p: Poly) -> List[Tuple[int, Fraction]]:
    """Vertices of the lower Newton polygon of a monic polynomial.

    Coefficients that vanish to precision must have a certified depth above
    the hull, otherwise a PrecisionError is raised.
    """
    n = len(p) - 1
    pts: List[Tuple[int, Fraction]] = []
    floors: List[Tuple[int, Fraction]] = []
    for i, c in enumerate(p):
        if K.is_zero_to_prec(c):
            if i == n:
                raise ValueError("leading coefficient vanishes")
            floors.append((i, K.zero_depth(c)))
        else:
            pts.append((i, K.valuation(c)))
    hull = lower_hull(pts)
    for i, fl in floors:
        if i < hull[0][0]:
            raise PrecisionError(
                "low coefficients vanish to precision: Newton polygon truncated"
            )
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2:
                hull_y = y1 + (y2 - y1) * (i - x1) / (x2 - x1)
                if fl <= hull_y:
                    raise PrecisionError(
                        "zero-to-precision coefficient could change the Newton polygon"
                    )
    return hull


# -- Hensel lifting of a coprime residue split ------------------------------------------------------


def _res_poly(K: LocalField, p: Poly) -> List[int]:
    return [K.residue(c) for c in p]


def _lift_res_poly(K: LocalField, rp: List[int]) -> Poly:
    return [K.lift_res(c) for c in rp]


def hensel_split(K: LocalField, g: Poly, abar: List[int], bbar: List[int]) -> Tuple[Poly, Poly]:
    """Lift a coprime monic residue factorisation gbar = abar*bbar.

    Returns monic (A, B) with A*B == g to working precision.
    """
    from .residue import fp_divmod, fp_trim

    kk = K.resfield

    # Bezout over the residue field: s*abar + t*bbar = 1
    def ext_gcd(a: List[int], b: List[int]):
        r0, r1 = a[:], b[:]
        s0, s1 = [1], []
        t0, t1 = [], [1]
        while r1:
            q, r = fp_divmod(kk, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fp_sub(kk, s0, fp_mul(kk, q, s1))
            t0, t1 = t1, _fp_sub(kk, t0, fp_mul(kk, q, t1))
        return r0, s0, t0

    def _fp_sub(F, a, b):
        n = max(len(a), len(b))
        return fp_trim([(a[i] if i < len(a) else 0) ^ (b[i] if i < len(b) else 0) for i in range(n)])

    gcd_r, sbar, tbar = ext_gcd(abar, bbar)
    if len(gcd_r) != 1:
        raise ValueError("residue factors are not coprime")
    inv = kk.inv(gcd_r[0])
    sbar = [kk.mul(c, inv) for c in sbar]
    tbar = [kk.mul(c, inv) for c in tbar]

    A = _lift_res_poly(K, abar)
    B = _lift_res_poly(K, bbar)
    S = _lift_res_poly(K, sbar)
    T = _lift_res_poly(K, tbar)
    target = Fraction(K.precision * 3, 4)
    one = [K.one()]

    def _fit(p: Poly, length: int, what: str) -> Poly:
        """Trim to the expected length; overflow belongs to the next-order error."""
        for c in p[length:]:
            if not K.is_zero_to_prec(c) and K.valuation(c) <= 0:
                raise PrecisionError(f"Hensel update overflow in {what}")
        p = p[:length]
        while len(p) < length:
            p.append(K.zero())
        return p

    for _ in range(64):
        E = _poly_sub(K, g, poly_mul(K, A, B))
        depth = _poly_depth(K, E)
        if depth is None or depth >= target:
            break
        # E = A*dB + B*dA with dB = (S*E mod B), dA = A*q + T*E where S*E = q*B + dB
        q, dB = poly_divmod_monic(K, poly_mul(K, S, E), B)
        dA = _poly_add(K, poly_mul(K, A, q), poly_mul(K, T, E))
        dA = _fit(dA, len(A) - 1, "factor A")
        dB = _fit(dB, len(B) - 1, "factor B")
        A = [a + d for a, d in zip(A[:-1], dA)] + [A[-1]]
        B = [b + d for b, d in zip(B[:-1], dB)] + [B[-1]]
        # refine the Bezout pair against the updated factors
        e2 = _poly_sub(K, one, _poly_add(K, poly_mul(K, S, A), poly_mul(K, T, B)))
        d2 = _poly_depth(K, e2)
        if d2 is not None and d2 < target:
            q2, dS = poly_divmod_monic(K, poly_mul(K, S, e2), B)
            dT = _poly_add(K, poly_mul(K, T, e2), poly_mul(K, A, q2))
            S = _poly_add(K, S, dS)
            T = _poly_add(K, T, dT)
            # keep the pair in normal form: deg S < deg B, adjusting T to preserve S*A+T*B
            if len(S) >= len(B):
                qs, S = poly_divmod_monic(K, S, B)
                T = _poly_add(K, T, poly_mul(K, qs, A))
            if len(T) > max(len(A) - 1, 1):
                T = _fit(T, max(len(A) - 1, 1), "Bezout cofactor")
    E = _poly_sub(K, g, poly_mul(K, A, B))
    depth = _poly_depth(K, E)
    if depth is not None and depth < Fraction(K.precision, 2):
        raise PrecisionError("Hensel lifting stalled before reaching target precision")
    # cut claimed coefficient precision to the verified agreement depth
    if depth is None:
        depth = min(
            (K.zero_depth(c) for c in E), default=Fraction(K.precision)
        )
    A = [K.truncate_elt(c, depth) for c in A[:-1]] + [A[-1]]
    B = [K.truncate_elt(c, depth) for c in B[:-1]] + [B[-1]]
    return A, B


def _poly_add(K: LocalField, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else K.zero()
        y = b[i] if i < len(b) else K.zero()
        out.append(x + y)
    while out and K.is_zero_to_prec(out[-1]) and K.zero_depth(out[-1]) > Fraction(7 * K.precision, 8):
        out.pop()
    return out


def _poly_sub(K: LocalField, a: Poly, b: Poly) -> Poly:
    return _poly_add(K, a, [-c for c in b])


def _poly_depth(K: LocalField, p: Poly) -> Optional[Fraction]:
    """Smallest coefficient valuation, None if all vanish to precision."""
    best: Optional[Fraction] = None
    for c in p:
        if K.is_zero_to_prec(c):
            continue
        v = K.valuation(c)
        best = v if best is None else min(best, v)
    return best


# -- single root construction -----------------------------------------------------------------------


@dataclass
class RootResult:
    tower: LocalField
    root: Elt


def _scale_poly(K: LocalField, g: Poly, m: int) -> Poly:
    """g(pi^m * x) / pi^(m*deg): multiplies coeff i by pi^(m*(i-deg))."""
    d = len(g) - 1
    out = []
    pi = K.pi
    piinv = K.pi_inverse()
    for i, c in enumerate(g):
        k = m * (i - d)
        if k == 0:
            out.append(c)
            continue
        mul = pi if k > 0 else piinv
        x = c
        for _ in range(abs(k)):
            x = x * mul
        out.append(x)
    return out


def _shift_poly(K: LocalField, g: Poly, c: Elt) -> Poly:
    """g(x + c) by repeated Horner."""
    out = list(g)
    n = len(g) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            out[j] = out[j] + out[j + 1] * c
    return out


def one_root(K: LocalField, g_in: Poly) -> RootResult:
    """A root of monic separable g_in, in an explicit extension tower of K."""
    T = K
    g = list(g_in)
    mulA: Elt = T.one()
    addB: Elt = T.zero()
    guard = 0
    max_guard = 40 * len(g_in) + 8 * T.precision

    while True:
        guard += 1
        if guard > max_guard:
            raise PrecisionError("root search did not terminate; retry at higher precision")
        d = len(g) - 1
        if d == 1:
            root = -g[0]
            return RootResult(T, mulA * root + addB)
        const = g[0]
        if _elt_exact_zero(const):
            return RootResult(T, addB)
        if not T.is_zero_to_prec(const):
            # Newton convergence criterion at 0
            dg = poly_derivative(T, g)
            d0 = poly_eval(T, dg, T.zero())
            if not T.is_zero_to_prec(d0):
                a = T.valuation(const)
                b = T.valuation(d0)
                if a > 2 * b:
                    root = _newton_refine(T, g, T.zero())
                    return RootResult(T, mulA * root + addB)
        else:
            dg = poly_derivative(T, g)
            d0 = poly_eval(T, dg, T.zero())
            if not T.is_zero_to_prec(d0) and T.zero_depth(const) > 2 * T.valuation(d0):
                root = _newton_refine(T, g, T.zero())
                return RootResult(T, mulA * root + addB)

        hull = newton_polygon(T, g)
        # smallest root valuation = -(last segment slope)
        (x1, y1), (x2, y2) = hull[-2], hull[-1]
        mu = -Fraction(y2 - y1, x2 - x1)
        eT = T.e
        m = math.floor(mu * eT)
        if m != 0:
            g = _scale_poly(T, g, m)
            pw = T.pi if m > 0 else T.pi_inverse()
            fac = T.one()
            for _ in range(abs(m)):
                fac = fac * pw
            mulA = mulA * fac
            mu = mu - Fraction(m, eT)
            hull = [(x, y + Fraction(m, eT) * (x - (len(g) - 1))) for x, y in hull]
        if mu > 0:
            # fractional smallest slope: mu = h/l in pi_T-units, l > 1
            rel = mu * eT
            h, l = rel.numerator, rel.denominator
            if len(hull) == 2 and l == d:
                # single slope h/d with gcd(h, d) = 1: irreducible, totally ramified
                T2 = extend_totally_ramified_root(T, tuple(g[:-1]), h)
                root = T2.gen()
                return RootResult(T2, T2.promote(mulA, T) * root + T2.promote(addB, T))
            T2 = extend_eisenstein(
                T, (-T.pi,) + tuple(T.zero() for _ in range(l - 1))
            )
            g = poly_promote(T2, g, T)
            mulA = T2.promote(mulA, T)
            addB = T2.promote(addB, T)
            T = T2
            continue
        # mu == 0: residue analysis
        try:
            rp = _res_poly(T, g)
        except PrecisionError:
            raise
        rfac = fp_factor(T.resfield, rp)
        if len(rfac) > 1:
            abar = [1]
            for _ in range(rfac[0][1]):
                abar = fp_mul(T.resfield, abar, rfac[0][0])
            bbar = [1]
            for fb, mult in rfac[1:]:
                for _ in range(mult):
                    bbar = fp_mul(T.resfield, bbar, fb)
            A, B = hensel_split(T, g, abar, bbar)
            g = A if len(A) <= len(B) else B
            continue
        phibar, mult = rfac[0]
        if len(phibar) - 1 >= 2:
            T2 = extend_unramified(T, phibar)
            g = poly_promote(T2, g, T)
            mulA = T2.promote(mulA, T)
            addB = T2.promote(addB, T)
            T = T2
            continue
        # phibar linear: shift by its root
        c = T.lift_res(phibar[0])
        g = _shift_poly(T, g, c)
        addB = addB + mulA * c


def _newton_refine(T: LocalField, g: Poly, x0: Elt) -> Elt:
    """Newton iteration; the result's claimed precision is cut to v(g(x)) - v(g'(x))."""
    dg = poly_derivative(T, g)
    x = x0

    def _finish(x: Elt, fx: Elt) -> Elt:
        dfx = poly_eval(T, dg, x)
        vd = T.valuation(dfx)
        vf = T.zero_depth(fx) if T.is_zero_to_prec(fx) else T.valuation(fx)
        return T.truncate_elt(x, vf - vd)

    target = Fraction(T.precision * 3, 4)
    for _ in range(T.precision + 16):
        fx = poly_eval(T, g, x)
        if T.is_zero_to_prec(fx):
            return _finish(x, fx)
        if T.valuation(fx) >= target:
            return _finish(x, fx)
        dfx = poly_eval(T, dg, x)
        x = x - fx * T.inverse(dfx)
    return x


def hensel_simple_roots(L: LocalField, g: Poly) -> List[Elt]:
    """Roots of g in L whose residues are simple roots of the residue polynomial."""
    depth = _poly_depth(L, g)
    if depth is None:
        raise ValueError("zero polynomial")
    if depth < 0:
        raise ValueError("need integral coefficients")
    rp = _res_poly(L, g)
    rdp = [rp[i] if i % 2 else 0 for i in range(1, len(rp))]  # derivative in char 2
    out = []
    for rbar in fp_roots(L.resfield, rp):
        val, pw = 0, 1
        for c in rdp:
            val ^= L.resfield.mul(c, pw)
            pw = L.resfield.mul(pw, rbar)
        if val == 0:
            continue
        out.append(_newton_refine(L, g, L.lift_res(rbar)))
    return out


# -- minimal polynomials over the base ------------------------------------------------------------------


def min_poly_over(K: LocalField, T: LocalField, theta: Elt, max_deg: int) -> Poly:
    """Minimal polynomial of theta over K (K an ancestor of T), as a monic Poly over K."""
    kbasis = [T.promote(b, K) for b in K.basis_elts()]
    solver = SpanSolver(T.degree, zero_floor=max(8, K.precision // 8))
    power = T.one()
    powers: List[Elt] = []
    for r in range(max_deg):
        for kb in kbasis:
            solver.insert(flatten(kb * power))
        powers.append(power)
        power = power * theta
        coords = solver.coordinates(flatten(power))
        if coords is not None:
            nk = len(kbasis)
            low: List[Elt] = []
            for a in range(r + 1):
                chunk = coords[a * nk : (a + 1) * nk]
                low.append(-K.unflatten(chunk))
            return low + [K.one()]
    raise PrecisionError("no K-linear dependency found up to the degree bound")


def _divisors(n: int) -> List[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def field_from_root(K: LocalField, T: LocalField, theta: Elt, m_low: Poly) -> Tuple[LocalField, Embedding]:
    """Build K[x]/(m) with certified normal data computed inside T."""
    r = len(m_low)
    n_sub = r * K.degree

    def _emb(L: LocalField, top_image: Elt) -> Embedding:
        imgs = [T.promote(level.gen(), level) for level in K.tower()[1:]]
        imgs.append(top_image)
        return Embedding(L, T, imgs)

    if r == 1:
        L = make_factor_field(
            K,
            m_low,
            e=K.e,
            f=K.f,
            omega_coords=(K.omega,),
            pi_coords=(K.pi,),
            res_modulus=K.resfield.modulus,
        )
        return L, _emb(L, T.promote(-m_low[0], K))

    kbasis = [T.promote(b, K) for b in K.basis_elts()]
    solver = SpanSolver(T.degree, zero_floor=max(8, K.precision // 8))
    theta_pows: List[Elt] = [T.one()]
    for a in range(1, r):
        theta_pows.append(theta_pows[-1] * theta)
    for a in range(r):
        for kb in kbasis:
            if not solver.insert(flatten(kb * theta_pows[a])):
                raise PrecisionError("powers of the root are unexpectedly dependent")

    def coords_to_K(coords: List[Qp2]) -> List[Elt]:
        nk = len(kbasis)
        return [K.unflatten(coords[a * nk : (a + 1) * nk]) for a in range(r)]

    # residue degree: largest admissible d with a root of the degree-d step poly in the span
    f_abs: Optional[int] = None
    omega_coords: Optional[List[Elt]] = None
    res_mod = 0
    for d in sorted(_divisors(n_sub), reverse=True):
        if d == 1:
            f_abs = 1
            omega_coords = [K.one()] + [K.zero()] * (r - 1)
            res_mod = 0b10
            break
        if K.f > 1 and d % K.f:
            continue
        if T.f % d:
            continue
        ud = [Fraction((STEP_POLYS[d] >> i) & 1) for i in range(d + 1)]
        upoly = [T.from_fraction(c) for c in ud]
        found = None
        for rho in hensel_simple_roots(T, upoly):
            coords = solver.coordinates(flatten(rho))
            if coords is not None:
                found = (rho, coords)
                break
        if found is None:
            continue
        rho, coords = found
        f_abs = d
        omega_coords = coords_to_K(coords)
        res_mod = T.resfield.min_poly_bits(T.residue(rho))
        if res_mod.bit_length() - 1 != d:
            raise AssertionError("residue generator has wrong degree")
        break
    assert f_abs is not None and omega_coords is not None
    e_abs = n_sub // f_abs

    # uniformizer
    pi_coords: Optional[List[Elt]] = None
    if e_abs == K.e:
        pi_coords = [K.pi] + [K.zero()] * (r - 1)
    else:
        vt = T.valuation_or_none(theta)
        if vt is not None and vt != 0:
            hv = vt * e_abs
            step = e_abs // K.e
            if hv.denominator == 1 and math.gcd(hv.numerator, step) == 1:
                a, b = _ext_gcd_pair(hv.numerator, step)
                cand = (theta**a) * (T.promote(K.pi, K) ** b)
                if T.valuation(cand) == Fraction(1, e_abs):
                    coords = solver.coordinates(flatten(cand))
                    if coords is not None:
                        pi_coords = coords_to_K(coords)
    if pi_coords is None:
        pi_coords = _uniformizer_by_lattice(K, T, solver, kbasis, theta_pows, e_abs, coords_to_K)

    L = make_factor_field(
        K,
        m_low,
        e=e_abs,
        f=f_abs,
        omega_coords=omega_coords,
        pi_coords=pi_coords,
        res_modulus=res_mod,
    )
    return L, _emb(L, theta)


def _ext_gcd_pair(a: int, b: int) -> Tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def _uniformizer_by_lattice(K, T, solver, kbasis, theta_pows, e_abs, coords_to_K):
    """Uniformizer of K(theta) via lattice saturation in T's integral coordinates."""
    span_elts: List[Elt] = []
    for a in range(len(theta_pows)):
        for kb in kbasis:
            span_elts.append(kb * theta_pows[a])
    vecs = []
    for x in span_elts:
        nf = T.nf_coords(x)
        m = min((q.v for q in nf if q.u != 0), default=0)
        if m < 0:
            nf = [q.shift(-m) for q in nf]
        vecs.append(nf)
    lattice = saturate_lattice(vecs)
    # generators of the maximal-ideal part: residue-zero combinations plus 2*basis
    n = len(lattice[0])
    f_T = T.f
    res_rows = []
    for i in range(n):
        bv = T._nf_vals[i]
        row = 0
        for rno, v in enumerate(lattice):
            if bv == 0 and v[i].u != 0 and v[i].v == 0:
                row |= (v[i].u & 1) << rno
        res_rows.append(row)
    _, kern = f2_rank_kernel(F2Matrix.from_bitrows(res_rows, len(lattice)))
    gens: List[List[Qp2]] = []
    for kv in kern:
        acc = None
        for i in range(len(lattice)):
            if (kv >> i) & 1:
                acc = lattice[i][:] if acc is None else [x + y for x, y in zip(acc, lattice[i])]
        if acc is not None:
            gens.append(acc)
    two = Qp2.from_int(2, T.precision)
    for v in lattice:
        gens.append([x * two for x in v])
    best = None
    best_v = None
    for gvec in gens:
        elt = T.unflatten(mat_vec(_nf_to_flat_rows(T), gvec))
        val = T.valuation_or_none(elt)
        if val is None or val <= 0:
            continue
        if best_v is None or val < best_v:
            best, best_v = elt, val
    if best is None or best_v != Fraction(1, e_abs):
        raise PrecisionError("uniformizer search failed (lattice route)")
    coords = solver.coordinates(flatten(best))
    if coords is None:
        raise PrecisionError("uniformizer not expressible over the root power basis")
    return coords_to_K(coords)


def _nf_to_flat_rows(T: LocalField):
    """Rows of the integral-basis matrix (normal coords -> flat coords)."""
    if getattr(T, "_nf_fwd", None) is None:
        cols = []
        om_pows = [T.one()]
        for _ in range(T.f - 1):
            om_pows.append(om_pows[-1] * T.omega)
        pi_pow = T.one()
        for i in range(T.e):
            for j in range(T.f):
                cols.append(flatten(om_pows[j] * pi_pow))
            if i + 1 < T.e:
                pi_pow = pi_pow * T.pi
        n = T.degree
        T._nf_fwd = [[cols[k][i] for k in range(n)] for i in range(n)]
    return T._nf_fwd


# -- public factorisation API ----------------------------------------------------------------------------


@dataclass
class LocalFactor:
    poly: Poly
    field: LocalField
    e: int
    f_res: int
    certified_irreducible: bool
    root_embedding: Optional[Embedding] = None

    @property
    def degree(self) -> int:
        return len(self.poly) - 1


@dataclass
class LocalFactorization:
    base: LocalField
    input_poly: Poly
    content: Elt
    factors: List[LocalFactor] = dc_field(default_factory=list)

    def shape(self) -> List[Tuple[int, int, int]]:
        """Sorted (degree, e, f) triples, with e and f relative to the base."""
        out = []
        for fac in self.factors:
            out.append((fac.degree, fac.e // self.base.e, fac.f_res // self.base.f))
        return sorted(out)


def factor_over_padic(K: LocalField, g: Sequence[Elt] | RatPoly) -> LocalFactorization:
    """Complete certified factorisation of a separable polynomial over K."""
    if isinstance(g, RatPoly):
        from .polynomials import discriminant

        if g.degree >= 2 and discriminant(g) == 0:
            raise ValueError("input polynomial is not separable")
        gp = poly_from_ratpoly(K, g)
    else:
        gp = list(g)
    while gp and K.is_zero_to_prec(gp[-1]):
        gp.pop()
    if len(gp) < 2:
        raise ValueError("need degree >= 1")
    content = gp[-1]
    if not (isinstance(content, Qp2) and content.u == 1 and content.v == 0):
        inv = K.inverse(content)
        monic = [c * inv for c in gp[:-1]] + [K.one()]
    else:
        monic = gp
    result = LocalFactorization(K, list(gp), content)
    remaining = monic
    while len(remaining) > 2:
        rr = one_root(K, remaining)
        m = min_poly_over(K, rr.tower, rr.root, len(remaining) - 1)
        # verify the minimal polynomial annihilates the root
        img = poly_eval(rr.tower, [rr.tower.promote(c, K) for c in m], rr.root)
        if not rr.tower.is_zero_to_prec(img):
            if rr.tower.valuation(img) < Fraction(K.precision, 4):
                raise PrecisionError("minimal polynomial fails to annihilate its root")
        quo, rem = poly_divmod_monic(K, remaining, m)
        if _poly_depth(K, rem) is not None and _poly_depth(K, rem) < Fraction(K.precision, 4):
            raise PrecisionError("candidate factor does not divide the input")
        fld, emb = field_from_root(K, rr.tower, rr.root, m[:-1])
        result.factors.append(
            LocalFactor(m, fld, fld.e, fld.f, True, root_embedding=emb)
        )
        remaining = quo
    if len(remaining) == 2:
        m = remaining
        fld, emb = field_from_root(K, K, -m[0], m[:-1])
        result.factors.append(LocalFactor(m, fld, fld.e, fld.f, True, root_embedding=None))
        remaining = [K.one()]
    # final product verification
    prod = [content]
    for fac in result.factors:
        prod = poly_mul(K, prod, fac.poly)
    diff = _poly_sub(K, prod, list(gp))
    depth = _poly_depth(K, diff)
    if depth is not None and depth < Fraction(K.precision, 4):
        raise PrecisionError("factor product deviates from the input")
    result.factors.sort(key=lambda fa: (fa.degree, fa.e, fa.f_res))
    return result


def roots_in_field(L: LocalField, g: Sequence[Elt] | RatPoly) -> List[Elt]:
    """All roots of a separable polynomial that lie in L."""
    fz = factor_over_padic(L, g)
    out = []
    for fac in fz.factors:
        if fac.degree == 1:
            out.append(-fac.poly[0])
    return out
