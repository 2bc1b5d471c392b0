"""Per-curve certification pipeline and batch driver.

A curve enters as an odd-degree separable polynomial plus its (supplied)
Mordell-Weil rank; class-group data arrives through an optional certificate.
Six conditions are evaluated in order, later stages being skipped after the
first failure:

1. the polynomial is irreducible over Q;
2. its coefficients lie in Z[1/2];
3. the pair resolvent has full degree g(2g+1) and is irreducible over Q;
4. odd primes dividing the discriminant divide neither the leading
   coefficient nor make the reduction inseparable;
5. the certified 2-valuations of the two class numbers agree;
6. the rank of the combined 2-adic and real obstruction maps clears the
   local excess (both reading conventions of the threshold are evaluated and
   reported; when S-unit generators are certified, the kernel-dimension route
   decides the verdict).

Precision-sensitive stages retry with doubled 2-adic working precision up to
a hard cap, then record a precision-exhausted outcome instead of failing.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .gf2 import F2Matrix, f2_rank_kernel, rank as f2_rank
from .polynomials import RatPoly, discriminant, is_irreducible_over_q
from .qp2 import PrecisionError
from .etale import (
    GlobalElement,
    LocalDecomposition,
    RealPlaceData,
    ResolventDegenerateError,
    ResolventModel,
    build_resolvent,
    decompose_at_2,
    real_places,
)
from .boundary import (
    RealSignModel,
    WedgeBoundary,
    indecomposable_h1_counts,
    real_h1_dims,
    theta_r_matrix,
)
from .local_factor import poly_eval


SCHEMA_VERSION = 1


@dataclass
class CurveInput:
    label: str
    f: RatPoly
    mw_rank: int

    def __post_init__(self):
        if self.f.degree < 3 or self.f.degree % 2 == 0:
            raise ValueError("need an odd-degree model of degree >= 3")
        if discriminant(self.f) == 0:
            raise ValueError("polynomial is not separable")

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2


@dataclass
class GlobalCertificate:
    label: str
    cl2_kf: int
    cl2_kf2: int
    s_units: Optional[List[List[Fraction]]] = None
    source: str = ""

    @classmethod
    def from_json(cls, data: dict) -> "GlobalCertificate":
        su = data.get("s_units")
        if su is not None:
            su = [[Fraction(str(c)) for c in row] for row in su]
        return cls(
            label=data["label"],
            cl2_kf=int(data["cl2_kf"]),
            cl2_kf2=int(data["cl2_kf2"]),
            s_units=su,
            source=data.get("source", ""),
        )

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "cl2_kf": self.cl2_kf,
            "cl2_kf2": self.cl2_kf2,
            "source": self.source,
        }
        if self.s_units is not None:
            out["s_units"] = [[str(c) for c in row] for row in self.s_units]
        return out


@dataclass
class PipelineConfig:
    precision_start: int = 128
    precision_max: int = 1024
    condition6_orientation: str = "rank_ge"  # or "literal_lt"
    spec_count_adjust: int = 0  # optional -1 for the cyclotomic reading
    allow_lambda_fallback: bool = True


PASS, FAIL, SKIP, PREC = "pass", "fail", "skipped", "precision-exhausted"


@dataclass
class CertReport:
    label: str
    conditions: Dict[str, str] = dc_field(default_factory=dict)
    quantities: Dict[str, object] = dc_field(default_factory=dict)
    notes: List[str] = dc_field(default_factory=list)
    verdict: str = "not-certified"

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "label": self.label,
            "conditions": dict(sorted(self.conditions.items())),
            "quantities": {k: _jsonable(v) for k, v in sorted(self.quantities.items())},
            "notes": list(self.notes),
            "verdict": self.verdict,
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _poly_mod_p(f: RatPoly, p: int) -> List[int]:
    out = []
    for c in f.coeffs:
        den = c.denominator % p
        if den == 0:
            raise ValueError("denominator divisible by p")
        out.append((c.numerator * pow(den, -1, p)) % p)
    while out and out[-1] == 0:
        out.pop()
    return out


def _fp_gcd_deg(a: List[int], b: List[int], p: int) -> int:
    a, b = a[:], b[:]
    while b:
        # a mod b
        while len(a) >= len(b) and a:
            f = a[-1] * pow(b[-1], -1, p) % p
            k = len(a) - len(b)
            for i in range(len(b)):
                a[k + i] = (a[k + i] - f * b[i]) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _odd_primes_of(n: int) -> List[int]:
    n = abs(n)
    out = []
    while n % 2 == 0:
        n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


@dataclass
class _LocalState:
    model: ResolventModel
    dec: LocalDecomposition
    real: RealPlaceData
    wedge: WedgeBoundary


def run_conditions(
    curve: CurveInput,
    cert: Optional[GlobalCertificate] = None,
    config: Optional[PipelineConfig] = None,
) -> CertReport:
    config = config or PipelineConfig()
    rep = CertReport(curve.label)
    g = curve.genus
    rep.quantities["genus"] = g
    rep.quantities["mw_rank"] = curve.mw_rank
    rep.quantities["crystalline_free_bound"] = (3 * g - 2) * (g + 1) // 2
    rep.quantities["kernel_bound"] = (3 * g * g + g) // 2
    rep.quantities["rank_margin_display"] = {
        "crystalline_free": (3 * g - 2) * (g + 1) // 2 - curve.mw_rank,
        "kernel": (3 * g * g + g) // 2 - curve.mw_rank,
    }
    if cert is not None and cert.label != curve.label:
        raise ValueError("certificate label does not match the curve")

    order = ["1_irreducible", "2_coefficients", "3_resolvent", "4_bad_primes", "5_class_groups", "6_theta_rank"]

    def skip_rest(from_idx: int) -> CertReport:
        for name in order[from_idx:]:
            rep.conditions[name] = SKIP
        return rep

    # (1) irreducibility over Q
    if not is_irreducible_over_q(curve.f):
        rep.conditions[order[0]] = FAIL
        return skip_rest(1)
    rep.conditions[order[0]] = PASS

    # (2) coefficients in Z[1/2]
    ok2 = all((c.denominator & (c.denominator - 1)) == 0 for c in curve.f.coeffs)
    rep.conditions[order[1]] = PASS if ok2 else FAIL
    if not ok2:
        return skip_rest(2)

    # (3) resolvent degree and irreducibility
    try:
        model = build_resolvent(curve.f, allow_fallback=config.allow_lambda_fallback)
    except ResolventDegenerateError:
        rep.conditions[order[2]] = FAIL
        rep.notes.append("resolvent degenerate: pair values collide; model unusable")
        return skip_rest(3)
    rep.quantities["deg_H"] = model.H.degree
    rep.quantities["lambda"] = model.lam
    rep.quantities["resolvent_scale"] = model.scale
    if model.lam:
        rep.notes.append(
            "primitive-element fallback engaged: generator includes %d * alpha*beta" % model.lam
        )
    ok3 = model.H.degree == g * (2 * g + 1) and is_irreducible_over_q(model.H)
    rep.conditions[order[2]] = PASS if ok3 else FAIL
    if not ok3:
        return skip_rest(3)

    # (4) odd bad primes: the reduction may acquire at most a single node,
    # i.e. p divides the discriminant exactly once and not the lead coefficient
    disc = discriminant(curve.f)
    bad = _odd_primes_of(disc.numerator * disc.denominator)
    rep.quantities["odd_bad_primes"] = bad
    ok4 = True
    for p in bad:
        lead = curve.f.lc
        if lead.numerator % p == 0:
            ok4 = False
            break
        v = 0
        n = abs(disc.numerator)
        while n % p == 0:
            n //= p
            v += 1
        if disc.denominator % p == 0 or v > 1:
            ok4 = False
            break
    rep.conditions[order[3]] = PASS if ok4 else FAIL
    if not ok4:
        return skip_rest(4)

    # (5) class-group 2-valuations
    if cert is None:
        rep.conditions[order[4]] = SKIP
        rep.notes.append("no class-group certificate: condition 5 skipped (counts as fail)")
        return skip_rest(5)
    rep.quantities["cl2_kf"] = cert.cl2_kf
    rep.quantities["cl2_kf2"] = cert.cl2_kf2
    ok5 = cert.cl2_kf == cert.cl2_kf2
    rep.conditions[order[4]] = PASS if ok5 else FAIL
    if not ok5:
        return skip_rest(5)

    # (6) theta-rank test, with precision retries
    precision = config.precision_start
    state: Optional[_LocalState] = None
    while True:
        try:
            dec = decompose_at_2(model, precision)
            real = real_places(model)
            wedge = WedgeBoundary(dec)
            state = _LocalState(model, dec, real, wedge)
            break
        except PrecisionError as err:
            if precision >= config.precision_max:
                rep.conditions[order[5]] = PREC
                rep.notes.append(f"precision exhausted at 2^{precision}: {err}")
                rep.verdict = "not-certified"
                return rep
            precision *= 2
    rep.quantities["working_precision"] = precision
    _condition6(rep, curve, cert, config, state)
    if all(rep.conditions[name] == PASS for name in order):
        rep.verdict = "finite-certified"
    return rep


def _condition6(
    rep: CertReport,
    curve: CurveInput,
    cert: Optional[GlobalCertificate],
    config: PipelineConfig,
    st: _LocalState,
) -> None:
    g = curve.genus
    dec, real, wedge = st.dec, st.real, st.wedge
    m_pairs = len(dec.pairs)
    m_f = len(dec.f_factors)
    d = real.d
    rep.quantities["spec_kf2_at_2"] = m_pairs
    rep.quantities["spec_kf_at_2"] = m_f
    rep.quantities["d_real_pairs"] = d
    rep.quantities["r1"] = real.r1
    dims = real_h1_dims(g, real.r1)
    rep.quantities["real_h1_dims"] = list(dims)
    rep.quantities["real_h1_recounts"] = list(indecomposable_h1_counts(g, real.r1))
    if indecomposable_h1_counts(g, real.r1)[0] != dims[0]:
        rep.notes.append(
            "real lattice H1 recount (%d) differs from the closed formula (%d); both reported"
            % (indecomposable_h1_counts(g, real.r1)[0], dims[0])
        )
    rep.notes.append("exterior-square first term paired at its own place index")
    rep.notes.append("third-root norms taken along the first-incidence embedding")
    rep.notes.append(
        "real quadruple family selected by lead sign: %s"
        % ("even blocks" if real.lead_sign > 0 else "odd blocks")
    )

    mat2 = wedge.matrix_on_kernel()
    rank2 = f2_rank(mat2)
    rep.quantities["theta2_domain_dim"] = wedge.kernel_data.dim
    rep.quantities["theta2_rank"] = rank2

    sign_model = RealSignModel(real)
    dr_kernel = sign_model.kernel()
    tmat = theta_r_matrix(real)
    imgs = [tmat.mat_vec(v) for v in dr_kernel]
    cols = len(dr_kernel)
    rrows = []
    for r in range(tmat.rows):
        bits = 0
        for c, img in enumerate(imgs):
            if (img >> r) & 1:
                bits |= 1 << c
        rrows.append(bits)
    rankR = f2_rank(F2Matrix.from_bitrows(rrows, cols)) if cols else 0
    rep.quantities["thetaR_domain_dim"] = len(dr_kernel)
    rep.quantities["thetaR_rank"] = rankR
    rep.quantities["thetaR_components"] = tmat.rows

    rank_sum = rank2 + rankR
    threshold = m_pairs - m_f + d * (d - 1) + config.spec_count_adjust
    rep.quantities["theta_rank_sum"] = rank_sum
    rep.quantities["literal_threshold"] = threshold
    literal_lt = rank_sum < threshold
    surrogate_ge = rank_sum >= threshold
    rep.quantities["condition6_literal_lt"] = literal_lt
    rep.quantities["condition6_rank_ge"] = surrogate_ge
    rep.notes.append(
        "condition-6 threshold printed with both orientations; verdict uses %s"
        % ("kernel route (S-units)" if cert and cert.s_units else config.condition6_orientation
           )
    )

    kernel_ok: Optional[bool] = None
    if cert is not None and cert.s_units:
        kernel_ok = _kernel_route(rep, curve, cert, st)
    if kernel_ok is not None:
        ok6 = kernel_ok
    elif config.condition6_orientation == "rank_ge":
        ok6 = surrogate_ge
    else:
        ok6 = literal_lt
    rep.conditions["6_theta_rank"] = PASS if ok6 else FAIL


def _kernel_route(
    rep: CertReport, curve: CurveInput, cert: GlobalCertificate, st: _LocalState
) -> Optional[bool]:
    """dim(Ker thetaR ∩ Ker theta2) on the S-unit image < (3g^2+g)/2 - rank."""
    g = curve.genus
    dec, real, wedge = st.dec, st.real, st.wedge
    space = wedge.space
    sign_model = RealSignModel(real)
    vectors = []  # (pair keys bits, sign bits)
    H = st.model.H
    for row in cert.s_units:
        if len(row) != H.degree:
            rep.notes.append("certificate generator has wrong coordinate length; ignored")
            continue
        z = GlobalElement(tuple(row))
        keys = []
        ok = True
        for pl in dec.pairs:
            K = pl.field
            val = poly_eval(K, [K.from_fraction(c) for c in z.coords], K.gen())
            if K.is_zero_to_prec(val):
                ok = False
                break
            keys.append(K.square_class_key(val))
        if not ok:
            rep.notes.append("certificate generator vanishes at a 2-adic place; ignored")
            continue
        joined = space.join(keys)
        if not wedge.kernel_data.contains(joined):
            rep.notes.append(
                "certificate generator is outside the 2-adic norm kernel; ignored"
            )
            continue
        try:
            signs = sign_model.signs_of_global(z)
        except ValueError:
            rep.notes.append("certificate generator vanishes at a real place; ignored")
            continue
        vectors.append((joined, signs))
    rep.quantities["s_unit_generators_used"] = len(vectors)
    if not vectors:
        return None
    width2 = space.total
    widthR = sign_model.total
    rows = [b2 | (bR << width2) for (b2, bR) in vectors]
    span = F2Matrix.from_bitrows(rows, width2 + widthR)
    dim_span = f2_rank(span)
    rep.quantities["s_unit_image_dim"] = dim_span
    # combined obstruction on each generator
    tmat = theta_r_matrix(real)
    img_rows = []
    for (b2, bR) in vectors:
        ob2 = wedge.apply(space.split(b2)).as_int()
        obR = tmat.mat_vec(bR)
        img_rows.append(ob2 | (obR << len(dec.pairs)))
    width_img = len(dec.pairs) + tmat.rows
    # kernel of the combined map restricted to the span
    gen_matrix = F2Matrix.from_bitrows(rows, width2 + widthR)
    img_matrix_rows = []
    for r in range(width_img):
        bits = 0
        for c, img in enumerate(img_rows):
            if (img >> r) & 1:
                bits |= 1 << c
        img_matrix_rows.append(bits)
    img_mat = F2Matrix.from_bitrows(img_matrix_rows, len(vectors))
    _, comb_kernel = f2_rank_kernel(img_mat)
    # dimension of the image in the span of combinations with zero obstruction
    ker_vecs = []
    for cmb in comb_kernel:
        acc = 0
        for i in range(len(vectors)):
            if (cmb >> i) & 1:
                acc ^= rows[i]
        ker_vecs.append(acc)
    inter_dim = f2_rank(F2Matrix.from_bitrows(ker_vecs, width2 + widthR)) if ker_vecs else 0
    rep.quantities["kernel_intersection_dim"] = inter_dim
    bound = (3 * g * g + g) // 2 - curve.mw_rank
    rep.quantities["kernel_intersection_bound"] = bound
    return inter_dim < bound


# -- ingestion -----------------------------------------------------------------------------


@dataclass
class IngestReport:
    accepted: List[CurveInput]
    errors: List[Tuple[int, str]]


def ingest_lmfdb(path: str) -> IngestReport:
    """CSV rows: label, f_coeffs (semicolon-separated, ascending), mw_rank."""
    accepted: List[CurveInput] = []
    errors: List[Tuple[int, str]] = []
    seen = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 3:
                errors.append((lineno, "expected 3 comma-separated fields"))
                continue
            label, coeffs_raw, rank_raw = (p.strip() for p in parts)
            if not label:
                errors.append((lineno, "empty label"))
                continue
            if label in seen:
                errors.append((lineno, f"duplicate label {label}"))
                continue
            try:
                coeffs = [Fraction(c) for c in coeffs_raw.split(";")]
                f = RatPoly(coeffs)
                mw = int(rank_raw)
                curve = CurveInput(label, f, mw)
            except (ValueError, ZeroDivisionError) as err:
                errors.append((lineno, str(err)))
                continue
            seen.add(label)
            accepted.append(curve)
    return IngestReport(accepted, errors)


# -- batch ----------------------------------------------------------------------------------


STAGE_ROWS = [
    ("1_irreducible", "model polynomial not irreducible"),
    ("2_coefficients", "coefficient issues"),
    ("3_resolvent", "pair resolvent not of full degree"),
    ("4_bad_primes", "bad odd primes"),
    ("5_class_groups", "class-group 2-parts differ or unknown"),
    ("6_theta_rank", "obstruction rank below the local excess"),
]


def batch_run(
    curves: Sequence[CurveInput],
    certs: Dict[str, GlobalCertificate],
    config: Optional[PipelineConfig] = None,
    jobs: int = 1,
) -> dict:
    config = config or PipelineConfig()

    def work(curve: CurveInput) -> CertReport:
        try:
            return run_conditions(curve, certs.get(curve.label), config)
        except PrecisionError as err:
            rep = CertReport(curve.label)
            rep.conditions["6_theta_rank"] = PREC
            rep.notes.append(str(err))
            return rep

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(work, curves))
    else:
        reports = [work(c) for c in curves]
    reports.sort(key=lambda r: r.label)
    histogram: Dict[str, int] = {name: 0 for name, _ in STAGE_ROWS}
    histogram["precision-exhausted"] = 0
    verified = 0
    for r in reports:
        if r.verdict == "finite-certified":
            verified += 1
            continue
        placed = False
        for name, _ in STAGE_ROWS:
            status = r.conditions.get(name)
            if status in (FAIL, SKIP, PREC) and not placed:
                if status == PREC:
                    histogram["precision-exhausted"] += 1
                else:
                    histogram[name] += 1
                placed = True
        if not placed:
            histogram["precision-exhausted"] += 1
    return {
        "schema": SCHEMA_VERSION,
        "total": len(reports),
        "verified": verified,
        "histogram": {k: histogram[k] for k in sorted(histogram)},
        "reports": [r.to_json() for r in reports],
    }


def stats_table(report: dict) -> str:
    """Human-readable stage table derived from the JSON report."""
    lines = []
    lines.append("%-46s | %6d" % ("curves examined", report["total"]))
    label_of = dict(STAGE_ROWS)
    for name, _ in STAGE_ROWS:
        lines.append("%-46s | %6d" % (label_of[name], report["histogram"].get(name, 0)))
    lines.append(
        "%-46s | %6d" % ("precision exhausted", report["histogram"].get("precision-exhausted", 0))
    )
    lines.append("%-46s | %6d" % ("verified finite at depth two", report["verified"]))
    return "\n".join(lines)
