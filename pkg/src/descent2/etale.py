"""Etale-algebra decompositions attached to an odd-degree Weierstrass polynomial.

Globally, the algebra generated by sums of two distinct roots of f is modelled
by the resolvent polynomial H whose roots are alpha+beta+lam*alpha*beta over
unordered root pairs (lam = 0 unless the plain sum fails to separate pairs).
Locally at 2 the module builds, by certified 2-adic factorisation:

* the field factors of f (with their distinguished roots),
* places of the ordered-pair algebra (a second root adjoined),
* places of the ordered-triple algebra (a third root adjoined),

together with the incidence maps onto the factors of H and the embeddings the
boundary formulas pair norms against.  At the real place everything reduces
to exact sign queries at the real roots of H through Sturm machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .polynomials import (
    RatPoly,
    RootInterval,
    discriminant,
    interpolate,
    isolate_real_roots,
    poly_sqrt,
    resultant,
    sign_at_root,
)
from .qp2 import PrecisionError, Qp2
from .qplinalg import SpanSolver
from .local_fields import Elt, Embedding, LocalField, flatten
from .local_factor import (
    LocalFactor,
    factor_over_padic,
    poly_divmod_monic,
    poly_eval,
    poly_from_ratpoly,
)


class ResolventDegenerateError(ValueError):
    """Distinct root pairs of f share a resolvent value."""


@dataclass(frozen=True)
class ResolventModel:
    """Global model of the two-distinct-roots subalgebra.

    H is the monic *integral* minimal polynomial of the generator
    scale*(alpha+beta+lam*alpha*beta); clearing denominators keeps every
    2-adic tower built on factors of H free of negative-valuation generators.
    """

    f: RatPoly
    genus: int
    H: RatPoly
    lam: int
    scale: int

    @property
    def pair_count(self) -> int:
        return self.genus * (2 * self.genus + 1)


@dataclass
class GlobalElement:
    """Element of Q[theta]/(H) as rational coordinates in the power basis."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def as_poly(self) -> RatPoly:
        return RatPoly(list(self.coords))

    @classmethod
    def one(cls, n: int) -> "GlobalElement":
        return cls(tuple([Fraction(1)] + [Fraction(0)] * (n - 1)))

    def mul_mod(self, other: "GlobalElement", H: RatPoly) -> "GlobalElement":
        prod = (self.as_poly() * other.as_poly()) % H
        coords = [prod[i] for i in range(H.degree)]
        return GlobalElement(tuple(coords))


def _resolvent_raw(f: RatPoly, lam: int) -> Tuple[RatPoly, RatPoly]:
    """(Pi over ordered pairs (x - theta), diagonal part) for theta = a+b+lam*ab."""
    f0 = f.monic()
    n = f0.degree
    deg_r = n * n
    xs: List[Fraction] = []
    ys: List[Fraction] = []
    x0 = Fraction(0)
    step = 0
    max_attempts = deg_r + 40
    while len(xs) < deg_r + 1:
        if step > max_attempts:
            # -1/lam is a root of f: this generator choice degenerates
            return RatPoly.zero(), RatPoly.zero()
        # G(x0, y) = sum f0_k (x0 - y)^k (1 + lam*y)^(n-k)
        acc = RatPoly.zero()
        base1 = RatPoly([x0, -1])  # x0 - y
        base2 = RatPoly([1, lam])  # 1 + lam*y
        p1 = [RatPoly([1])]
        p2 = [RatPoly([1])]
        for _ in range(n):
            p1.append(p1[-1] * base1)
            p2.append(p2[-1] * base2)
        for k in range(n + 1):
            if f0[k]:
                acc = acc + (p1[k] * p2[n - k]).scale(f0[k])
        if acc.degree == n:
            xs.append(x0)
            ys.append(resultant(f0, acc))
        step += 1
        x0 = Fraction(step if step % 2 else -step)
    big = interpolate(list(zip(xs, ys)))
    # diagonal: product over roots of (x - 2b - lam b^2)
    deg_d = f0.degree
    xs2, ys2 = [], []
    x0 = Fraction(0)
    step = 0
    while len(xs2) < deg_d + 1:
        q = RatPoly([x0, -2, -lam]) if lam else RatPoly([x0, -2])
        xs2.append(x0)
        ys2.append(resultant(f0, q))
        step += 1
        x0 = Fraction(step if step % 2 else -step)
    diag = interpolate(list(zip(xs2, ys2)))
    return big, diag


def build_resolvent(f: RatPoly, allow_fallback: bool = False, max_lam: int = 64) -> ResolventModel:
    """Resolvent model of the two-distinct-roots subalgebra.

    With allow_fallback the generator is moved to alpha+beta+lam*alpha*beta
    for the least lam that separates the pairs; otherwise a collision raises
    ResolventDegenerateError.
    """
    if f.degree < 3 or f.degree % 2 == 0:
        raise ValueError("need separable f of odd degree >= 3")
    if discriminant(f) == 0:
        raise ValueError("f is not separable")
    g = (f.degree - 1) // 2
    lams = range(0, max_lam + 1) if allow_fallback else (0,)
    for lam in lams:
        big, diag = _resolvent_raw(f, lam)
        if diag.is_zero or big.is_zero:
            continue
        quo, rem = big.divmod(diag)
        if not rem.is_zero:
            continue
        h = poly_sqrt(quo)
        if h is None:
            continue
        h = h.monic()
        if h.degree != g * (2 * g + 1):
            continue
        if discriminant(h) != 0:
            h, scale = _integral_rescale(h)
            return ResolventModel(f, g, h, lam, scale)
    raise ResolventDegenerateError(
        "resolvent values collide for every tried generator"
        if allow_fallback
        else "pairwise root sums of f are not distinct"
    )


def _integral_rescale(h: RatPoly) -> Tuple[RatPoly, int]:
    """Monic integral d^n h(x/d) together with the minimal clearing scale d."""
    lcm = h.denominator_lcm()
    d = 1
    while d <= lcm:
        cand = h.scale_arg(Fraction(1, d)).scale(Fraction(d) ** h.degree)
        if all(c.denominator == 1 for c in cand.coeffs):
            return cand, d
        d += 1
    cand = h.scale_arg(Fraction(1, lcm)).scale(Fraction(lcm) ** h.degree)
    return cand, lcm


# -- local decomposition at 2 ----------------------------------------------------------------


@dataclass
class PairPlace:
    index: int
    field: LocalField
    h_factor: List[Elt]
    s: Elt
    p: Elt


@dataclass
class OrderedPairPlace:
    field: LocalField
    f_factor_index: int
    alpha: Elt
    beta: Elt
    pair_index: int
    theta_image: Elt
    embed_pair: Embedding


@dataclass
class TriplePlace:
    field: LocalField
    alpha: Elt
    beta: Elt
    gamma: Elt
    pi1: int
    pi2: int
    emb_pi1: Embedding
    emb_pi2: Embedding
    ordered_pair_ref: int


@dataclass
class LocalDecomposition:
    model: ResolventModel
    q2: LocalField
    f_factors: List[LocalFactor]
    f_roots: List[Elt]
    pairs: List[PairPlace]
    ordered_pairs: List[OrderedPairPlace]
    triples: List[TriplePlace]

    def check_degrees(self) -> None:
        g = self.model.genus
        n = 2 * g + 1
        if sum(p.field.degree for p in self.pairs) != g * n:
            raise AssertionError("pair place degrees do not sum to g(2g+1)")
        if sum(p.field.degree for p in self.ordered_pairs) != n * (n - 1):
            raise AssertionError("ordered-pair degrees do not sum to n(n-1)")
        if sum(t.field.degree for t in self.triples) != n * (n - 1) * (n - 2):
            raise AssertionError("triple place degrees do not sum to n(n-1)(n-2)")


def _subfield_preimage(emb: Embedding, value: Elt) -> Elt:
    """Preimage in emb.src of an element of emb.dst lying in the image."""
    src, dst = emb.src, emb.dst
    solver = SpanSolver(dst.degree, zero_floor=max(8, dst.precision // 8))
    basis_imgs = [emb.apply(b) for b in src.basis_elts()]
    for b in basis_imgs:
        solver.insert(flatten(b))
    coords = solver.coordinates(flatten(value))
    if coords is None:
        raise PrecisionError("value does not lie in the embedded subfield")
    return src.unflatten(coords)


def _promote_h_coeff(L: LocalField, c: Elt) -> Elt:
    """Promote a Q2-level coefficient into L."""
    if isinstance(c, Qp2):
        return L.from_qp2(c)
    return L.promote(c, c.field)


def _integral_root_model(f0: RatPoly) -> Tuple[RatPoly, int]:
    """Monic integral polynomial whose roots are d times the roots of f0."""
    return _integral_rescale(f0)


def decompose_at_2(model: ResolventModel, precision: int = 128) -> LocalDecomposition:
    """Pair and triple places of the etale algebras of f over Q2."""
    q2 = LocalField.q2(precision)
    fpoly = model.f
    f0 = fpoly.monic()
    lam = model.lam
    fint, fscale = _integral_root_model(f0)
    inv_fscale = Fraction(1, fscale)

    hz = factor_over_padic(q2, model.H)
    pairs: List[PairPlace] = []
    for i, fac in enumerate(hz.factors):
        pairs.append(PairPlace(i, fac.field, fac.poly, None, None))  # s, p filled below

    ffac = factor_over_padic(q2, fint)
    f_factors = list(ffac.factors)
    f_roots: List[Elt] = []
    for fac in f_factors:
        scaled = fac.field.gen() if fac.field.base is not None else -fac.poly[0]
        f_roots.append(scaled * inv_fscale)

    threshold = Fraction(precision, 2)
    ordered_pairs: List[OrderedPairPlace] = []
    triples: List[TriplePlace] = []

    def theta_of(a: Elt, b: Elt, L: LocalField) -> Elt:
        t = a + b
        if lam:
            t = t + a * b * lam
        return t * model.scale

    for a_idx, fac in enumerate(f_factors):
        Fa = fac.field
        alpha = f_roots[a_idx]
        alpha_scaled = alpha * fscale
        f_over = poly_from_ratpoly(Fa, fint)
        cof, rem = poly_divmod_monic(Fa, f_over, [-alpha_scaled, Fa.one()])
        if not all(Fa.is_zero_to_prec(c) for c in rem):
            raise AssertionError("distinguished root fails to divide f")
        rel = factor_over_padic(Fa, cof)
        for gfac in rel.factors:
            if gfac.degree == 1:
                Mb, beta = Fa, -gfac.poly[0] * inv_fscale
                alpha_b = alpha
            else:
                Mb = gfac.field
                beta = Mb.gen() * inv_fscale
                alpha_b = Mb.promote(alpha, Fa)
            theta = theta_of(alpha_b, beta, Mb)
            hits = []
            for pl in pairs:
                img = poly_eval(Mb, [_promote_h_coeff(Mb, c) for c in pl.h_factor], theta)
                if Mb.is_zero_to_prec(img) or Mb.valuation(img) > threshold:
                    hits.append(pl.index)
            if len(hits) != 1:
                raise PrecisionError("pair incidence ambiguous: %s" % hits)
            pair_idx = hits[0]
            emb = Embedding(pairs[pair_idx].field, Mb, [theta])
            ordered_pairs.append(
                OrderedPairPlace(Mb, a_idx, alpha_b, beta, pair_idx, theta, emb)
            )

    # recover s, p on each pair place from any ordered place above it, and verify
    for pl in pairs:
        for op in ordered_pairs:
            if op.pair_index != pl.index:
                continue
            s_val = op.alpha + op.beta
            p_val = op.alpha * op.beta
            s_pre = _subfield_preimage(op.embed_pair, s_val)
            p_pre = _subfield_preimage(op.embed_pair, p_val)
            if pl.s is None:
                pl.s, pl.p = s_pre, p_pre
            else:
                K = pl.field
                if not (K.is_zero_to_prec(pl.s - s_pre) and K.is_zero_to_prec(pl.p - p_pre)):
                    raise AssertionError("inconsistent pair data across ordered places")
        if pl.s is None:
            raise AssertionError("pair place with no ordered place above it")
        # x^2 - s x + p must divide f over the pair field
        K = pl.field
        fK = poly_from_ratpoly(K, f0)
        quad = [pl.p, -pl.s, K.one()]
        _, r2 = poly_divmod_monic(K, fK, quad)
        for c in r2:
            if not K.is_zero_to_prec(c) and K.valuation(c) <= threshold:
                raise AssertionError("quadratic divisor condition fails on a pair place")

    # triples: adjoin a third root over each ordered pair place
    for b_idx, op in enumerate(ordered_pairs):
        Mb = op.field
        f_over = poly_from_ratpoly(Mb, fint)
        cof, _ = poly_divmod_monic(Mb, f_over, [-(op.alpha * fscale), Mb.one()])
        cof, rem = poly_divmod_monic(Mb, cof, [-(op.beta * fscale), Mb.one()])
        if not all(Mb.is_zero_to_prec(c) or Mb.valuation(c) > threshold for c in rem):
            raise AssertionError("second root fails to divide the cofactor")
        rel = factor_over_padic(Mb, cof)
        for hfac in rel.factors:
            if hfac.degree == 1:
                Lk, gamma = Mb, -hfac.poly[0] * inv_fscale
                alpha_k, beta_k = op.alpha, op.beta
                theta1 = op.theta_image
            else:
                Lk = hfac.field
                gamma = Lk.gen() * inv_fscale
                alpha_k = Lk.promote(op.alpha, Mb)
                beta_k = Lk.promote(op.beta, Mb)
                theta1 = Lk.promote(op.theta_image, Mb)
            theta2 = theta_of(beta_k, gamma, Lk)
            hits = []
            for pl in pairs:
                img = poly_eval(Lk, [_promote_h_coeff(Lk, c) for c in pl.h_factor], theta2)
                if Lk.is_zero_to_prec(img) or Lk.valuation(img) > threshold:
                    hits.append(pl.index)
            if len(hits) != 1:
                raise PrecisionError("triple incidence ambiguous: %s" % hits)
            pi2 = hits[0]
            emb1 = Embedding(pairs[op.pair_index].field, Lk, [theta1])
            emb2 = Embedding(pairs[pi2].field, Lk, [theta2])
            triples.append(
                TriplePlace(Lk, alpha_k, beta_k, gamma, op.pair_index, pi2, emb1, emb2, b_idx)
            )

    dec = LocalDecomposition(model, q2, f_factors, f_roots, pairs, ordered_pairs, triples)
    dec.check_degrees()
    return dec


# -- real places -----------------------------------------------------------------------------


@dataclass
class RealPlaceData:
    model: ResolventModel
    lead_sign: int
    real_roots: List[RootInterval]
    d: int
    h_real_roots: List[RootInterval]
    pair_of_h_root: List[Optional[Tuple[int, int]]]

    @property
    def r1(self) -> int:
        return len(self.real_roots)

    def rho_indices(self) -> List[int]:
        return [k for k, pr in enumerate(self.pair_of_h_root) if pr is None]

    def h_root_of_pair(self, i: int, j: int) -> int:
        """Index of the H-root realising the (i, j) real-root pair (1-based i<j)."""
        target = (i, j)
        for k, pr in enumerate(self.pair_of_h_root):
            if pr == target:
                return k
        raise KeyError(target)

    def iota_sign(self, z: GlobalElement, i: int, j: int) -> int:
        k = self.h_root_of_pair(i, j)
        return sign_at_root(z.as_poly() % self.model.H, self.h_real_roots[k])

    def rho_sign(self, z: GlobalElement, which: int) -> int:
        k = self.rho_indices()[which]
        return sign_at_root(z.as_poly() % self.model.H, self.h_real_roots[k])


def real_places(model: ResolventModel) -> RealPlaceData:
    f = model.f
    lam = model.lam
    roots = isolate_real_roots(f)
    r1 = len(roots)
    if r1 % 2 == 0:
        raise AssertionError("odd-degree real polynomial with even root count")
    d = (r1 - 1) // 2
    hroots = isolate_real_roots(model.H)
    expected = d * (2 * d + 1) + (model.genus - d)
    if len(hroots) != expected:
        raise AssertionError(
            "real resolvent root count %d != C(2d+1,2)+(g-d) = %d" % (len(hroots), expected)
        )
    # match pairwise values to H-roots by interval refinement
    pair_of: List[Optional[Tuple[int, int]]] = [None] * len(hroots)
    pending = [(i, j) for i in range(1, r1 + 1) for j in range(i + 1, r1 + 1)]
    work_roots = list(roots)
    work_h = list(hroots)
    for _ in range(200):
        enclosures = []
        for (i, j) in pending:
            a, b = work_roots[i - 1], work_roots[j - 1]
            lo = a.lo + b.lo
            hi = a.hi + b.hi
            if lam:
                cands = [
                    a.lo * b.lo,
                    a.lo * b.hi,
                    a.hi * b.lo,
                    a.hi * b.hi,
                ]
                lo = lo + lam * min(cands)
                hi = hi + lam * max(cands)
            enclosures.append((lo * model.scale, hi * model.scale))
        # try to match each enclosure to exactly one H-interval
        matches = {}
        ambiguous = False
        for idx, (lo, hi) in enumerate(enclosures):
            touching = [
                k for k, iv in enumerate(work_h) if not (hi <= iv.lo or lo >= iv.hi)
            ]
            if len(touching) != 1:
                ambiguous = True
                break
            matches[idx] = touching[0]
        if not ambiguous and len(set(matches.values())) == len(pending):
            for idx, (i, j) in enumerate(pending):
                pair_of[matches[idx]] = (i, j)
            lead_sign = 1 if f.lc > 0 else -1
            return RealPlaceData(model, lead_sign, work_roots, d, work_h, pair_of)
        work_roots = [iv.refine() for iv in work_roots]
        work_h = [iv.refine() for iv in work_h]
    raise PrecisionError("real pair/root matching did not separate")


def embed_global_at_pair(z: GlobalElement, place: PairPlace) -> Elt:
    K = place.field
    return poly_eval(K, [K.from_fraction(c) for c in z.coords], K.gen())
