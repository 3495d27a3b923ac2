"""Local factorization over completions and their finite extensions.

The engine: Newton polygons split a monic polynomial by root valuation,
residual polynomials (over the residue field) split each slope further,
and a gauge-weighted quadratic Hensel lift turns the graded splits into
factors at full working precision.  When a residual factor appears with
multiplicity, the piece is refined by recentering x at an approximate
root; inputs that defeat the refinement budget raise NotRegular, which
callers handle by shifting the input (a generic shift of a squarefree
polynomial is regular).

All gauges use the integer-scaled valuation vstar of the coefficient
field (vstar(uniformizer) = 1), so the same code factors over Q_p,
k((u)), and extensions of either.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .arith import kernels as K
from .arith.factor import DEFAULT_SEED, factor_with_multiplicity
from .arith.poly import Poly
from .errors import (
    IndeterminateValuation,
    InternalInvariantError,
    NotCoprime,
    NotRegular,
    VFError,
)
from .localfield import INF, LocalExtension

_PAD = 6


def _lb(field, c):
    """Certified lower bound for vstar(c): the valuation when readable,
    otherwise the precision bound of a zero-at-precision element."""
    try:
        return field.vstar(c)
    except IndeterminateValuation:
        return field.precision_star(c)


def _gauge(field, coeffs, s: Fraction):
    """min_i (vstar lower bound of c_i + s*i); INF for an exact zero."""
    out = INF
    for i, c in enumerate(coeffs):
        b = _lb(field, c)
        if b == INF:
            continue
        out = min(out, b + s * i)
    return out


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    root_valuation: Fraction  # in base-normalized units (display)
    length: int
    start: int                # x-degree where the segment begins
    num: int                  # root valuation in field units = num/den,
    den: int                  # lowest terms, den >= 1


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple          # ((i, valuation as Fraction), ...) hull order
    segments: tuple          # Segment, hull order (descending root valuation)
    vanishing_order: int     # multiplicity of the root x = 0


def newton_polygon(f: Poly, field=None) -> NewtonPolygon:
    """Lower convex hull of (i, v(a_i)); segments carry root valuations
    (the negated hull slopes) and horizontal lengths."""
    field = field or f.field
    coeffs = list(f.coeffs)
    if not coeffs:
        raise VFError("newton polygon of the zero polynomial")
    m = 0
    while m < len(coeffs) and field.is_zero(coeffs[m]):
        m += 1
    pts = []
    for i in range(m, len(coeffs)):
        c = coeffs[i]
        if field.is_zero(c):
            continue
        pts.append((i, field.vstar(c)))  # may raise IndeterminateValuation
    # lower convex hull, left to right
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    e_abs = field.e_abs
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        rv_star = Fraction(y1 - y2, x2 - x1)
        segments.append(
            Segment(
                root_valuation=rv_star / e_abs,
                length=x2 - x1,
                start=x1,
                num=rv_star.numerator,
                den=rv_star.denominator,
            )
        )
    vertices = tuple((i, Fraction(v, e_abs)) for i, v in hull)
    return NewtonPolygon(vertices=vertices, segments=tuple(segments), vanishing_order=m)


def residual_polynomial(f: Poly, seg: Segment, field=None) -> Poly:
    """Residue-field polynomial of a polygon segment: coefficient j is the
    residue of a_{start+j*den} scaled to the segment line."""
    field = field or f.field
    R = field.residue_field()
    h, e = seg.num, seg.den
    dres = seg.length // e
    w0 = field.vstar(f.coeffs[seg.start])
    out = []
    for j in range(dres + 1):
        i = seg.start + j * e
        line = w0 - j * h
        c = f.coeff(i)
        if field.is_zero(c):
            out.append(R.zero())
            continue
        scaled = field.mul(c, field.unif_pow(-line))
        b = _lb(field, scaled)
        if b == INF or b > 0:
            out.append(R.zero())
        elif b == 0:
            out.append(field.residue(scaled))
        else:
            raise InternalInvariantError("coefficient below its own Newton segment")
    return Poly(R, out)


# ---------------------------------------------------------------------------
# gauge-weighted Hensel lifting
# ---------------------------------------------------------------------------


def _truncate_poly(field, coeffs, s, target):
    out = []
    for i, c in enumerate(coeffs):
        out.append(field.truncate(c, math.ceil(target - s * i) + _PAD))
    return out


def _gauged_lift(field, f, A, B, t, s: Fraction, target: Fraction, rounds: int):
    """Refine f ~ A*B to gauge w_s(f - A*B) >= target.  A monic; t is an
    approximate inverse of B modulo A with positive-gauge defect."""
    prev = None
    stall = 0
    for _ in range(rounds):
        quo, err = K.divmod_poly(f, A, field)
        B = quo
        w = _gauge(field, err, s)
        if w >= target:
            return Poly(field, A), Poly(field, B)
        if prev is not None and w <= prev:
            stall += 1
            if stall >= 2:
                raise NotCoprime("gauged Hensel lift stalled (factors not separated)")
        else:
            stall = 0
        prev = w
        delta = K.rem(K.mul(t, err, field), A, field)
        A = K.add(A, delta, field)
        A = _truncate_poly(field, A, s, target)
        # refresh t <- t(2 - B t) mod A
        Bt = K.rem(K.mul(B, t, field), A, field)
        t = K.rem(K.sub(K.add(t, t, field), K.mul(t, Bt, field), field), A, field)
        t = _truncate_poly(field, t, s, target)
    raise NotCoprime("gauged Hensel lift did not reach the target precision")


def hensel_lift(F: Poly, g0: Poly, h0: Poly, target_prec: int):
    """Classical Hensel lifting (gauge 0): refine F ~ g0*h0 to absolute
    precision target_prec (base-normalized), g monic of g0's degree.
    Raises NotCoprime when the reductions share a factor."""
    field = F.field
    R = field.residue_field()
    g0 = g0.monic() if not g0.is_monic() else g0
    gbar = _residue_reduce(g0, field)
    hbar = _residue_reduce(h0, field)
    g_res, s_res, _ = K.ext_gcd(list(hbar.coeffs), list(gbar.coeffs), R)
    if K.deg(g_res) != 0:
        raise NotCoprime("initial factors share a root modulo the maximal ideal")
    t0 = [field.lift_residue(c) for c in s_res]
    target = Fraction(target_prec * field.e_abs)
    rounds = 2 * (int(target) + 2).bit_length() + 24
    A, B = _gauged_lift(
        field, list(F.coeffs), list(g0.coeffs), list(h0.coeffs), t0,
        Fraction(0), target, rounds,
    )
    return A, B


def _residue_reduce(f: Poly, field) -> Poly:
    R = field.residue_field()
    out = []
    for c in f.coeffs:
        b = _lb(field, c)
        if b == INF or b > 0:
            out.append(R.zero())
        elif b == 0:
            out.append(field.residue(c))
        else:
            raise NotCoprime("initial factor is not integral")
    return Poly(R, out)


# ---------------------------------------------------------------------------
# local factors
# ---------------------------------------------------------------------------


@dataclass
class LocalFactor:
    """One irreducible factor of a polynomial over a local field, with its
    ramification index e and residue degree f (relative to that field)."""

    poly: Poly
    e: int
    f: int
    degree: int
    slope: object            # root valuation (base-normalized Fraction), INF for x
    cert_shift: object       # field element c: poly(x + c) is slope-pure
    slope_num: int           # root valuation in field units = slope_num/slope_den
    slope_den: int
    residual: Poly           # irreducible residual over the residue field
    field: object = dfield(repr=False, default=None)

    def sort_key(self):
        rv = Fraction(10 ** 9) if self.slope == INF else Fraction(self.slope)
        res_key = tuple(self.residual.field.canonical_key(c) for c in self.residual.coeffs)
        return (-rv, self.degree, res_key, _exact_elem_key(self.field, self.cert_shift))

    def make_extension(self, name: str = "y") -> LocalExtension:
        return LocalExtension(
            self.field,
            self.poly,
            self.cert_shift,
            self.slope_num,
            self.slope_den,
            self.residual,
            name=name,
        )

    def __repr__(self):
        return f"LocalFactor(deg={self.degree}, e={self.e}, f={self.f}, slope={self.slope})"


def local_factor(f: Poly, prec: int, seed: int = DEFAULT_SEED, field=None):
    """Factor a monic squarefree polynomial over a local field into
    irreducible LocalFactors.  The product of the factor polynomials
    agrees with f coefficient-wise to absolute precision prec (in
    base-normalized valuation units)."""
    field = field or f.field
    if not f.is_monic():
        raise VFError("local_factor requires a monic input")
    n = f.degree
    if n == 0:
        return []
    estar = field.e_abs
    nstar_goal = prec * estar
    budget = max(2 * n, 8)
    out = []
    _split_pieces(f, field, field.zero(), nstar_goal, seed, budget, out)
    out.sort(key=lambda lf: lf.sort_key())
    _verify_reconstruction(f, field, out, nstar_goal)
    return out


def _emit(piece: Poly, field, shift_acc, seg: Segment, residual: Poly, out):
    shifted_back = piece.shift(field.neg(shift_acc)) if not field.is_zero(shift_acc) else piece
    # root valuation of the emitted factor itself: all roots share it, so
    # it can be read off the constant term (sum of root valuations).
    const = shifted_back.coeffs[0]
    if field.is_zero(const):
        slope = INF
    else:
        slope = Fraction(field.vstar(const), shifted_back.degree * field.e_abs)
    out.append(
        LocalFactor(
            poly=shifted_back,
            e=seg.den,
            f=max(residual.degree, 1),
            degree=piece.degree,
            slope=slope,
            cert_shift=shift_acc,
            slope_num=seg.num,
            slope_den=seg.den,
            residual=residual,
            field=field,
        )
    )


def _emit_linear(piece: Poly, field, shift_acc, out):
    """Degree-1 pieces are irreducible outright."""
    root = field.neg(piece.coeffs[0])
    R = field.residue_field()
    if field.is_zero(root):
        seg = Segment(INF, 1, 0, 0, 1)
        residual = Poly(R, [R.zero(), R.one()])
    else:
        v = field.vstar(root)
        seg = Segment(Fraction(v, field.e_abs), 1, 0, v, 1)
        scaled = field.mul(root, field.unif_pow(-v))
        residual = Poly(R, [R.neg(field.residue(scaled)), R.one()])
    _emit(piece, field, shift_acc, seg, residual, out)


def _split_pieces(g: Poly, field, shift_acc, nstar, seed, budget, out):
    """Recursive polygon/residual refinement of a monic piece g, which
    divides the original input recentered by shift_acc."""
    n = g.degree
    if n == 0:
        return
    if n == 1:
        _emit_linear(g, field, shift_acc, out)
        return
    # exact root at 0 splits off immediately
    if field.is_zero(g.coeffs[0]):
        x = Poly(field, [field.zero(), field.one()])
        _emit_linear(x, field, shift_acc, out)
        _split_pieces(g // x, field, shift_acc, nstar, seed, budget, out)
        return
    polygon = newton_polygon(g, field)
    if len(polygon.segments) > 1:
        A, B = _split_polygon(g, polygon, field, nstar)
        _split_pieces(A, field, shift_acc, nstar, seed, budget, out)
        _split_pieces(B, field, shift_acc, nstar, seed, budget, out)
        return
    seg = polygon.segments[0]
    residual = residual_polynomial(g, seg, field)
    res_factors = factor_with_multiplicity(residual.monic(), seed=seed)
    if len(res_factors) > 1:
        A, B = _split_residual(g, seg, res_factors, field, nstar)
        _split_pieces(A, field, shift_acc, nstar, seed, budget, out)
        _split_pieces(B, field, shift_acc, nstar, seed, budget, out)
        return
    rho, mult = res_factors[0]
    if mult == 1:
        _emit(g, field, shift_acc, seg, rho, out)
        return
    # repeated residual factor: refine by recentering at an approximate root
    if seg.den != 1 or rho.degree != 1:
        raise NotRegular(
            "repeated residual factor with e > 1 or residue degree > 1; "
            "shift the input and retry"
        )
    if budget <= 0:
        raise NotRegular("refinement budget exhausted; shift the input and retry")
    R = residual.field
    root = R.neg(R.div(rho.coeffs[0], rho.coeffs[1]))
    phi = field.mul(field.lift_residue(root), field.unif_pow(seg.num))
    g_shifted = g.shift(phi)
    _split_pieces(g_shifted, field, field.add(shift_acc, phi), nstar, seed, budget - 1, out)


def _split_polygon(g: Poly, polygon, field, nstar):
    """Split off the first (largest root valuation) segment."""
    seg = polygon.segments[0]
    ell = seg.length
    s = Fraction(seg.num, seg.den)
    coeffs = list(g.coeffs)
    a_vertex = coeffs[ell]
    inv_vertex = field.inv(a_vertex)
    A0 = [field.mul(c, inv_vertex) for c in coeffs[: ell + 1]]
    B0 = coeffs[ell:]
    t0 = [inv_vertex]
    target = Fraction(nstar) + max(Fraction(0), s * g.degree) + _PAD
    rounds = 2 * (int(target) + 2).bit_length() + 24
    A, B = _gauged_lift(field, coeffs, A0, B0, t0, s, target, rounds)
    return A, B


def _unscale(res_poly, weight, seg: Segment, field):
    """Lift a residual-ring polynomial to the field: xi^j becomes
    lift(coeff) * pi^(weight - j*num) * x^(j*den)."""
    h, e = seg.num, seg.den
    out = [field.zero()] * (res_poly.degree * e + 1)
    R = res_poly.field
    for j, c in enumerate(res_poly.coeffs):
        if R.is_zero(c):
            continue
        out[j * e] = field.mul(field.lift_residue(c), field.unif_pow(weight - j * h))
    return out


def _split_residual(g: Poly, seg: Segment, res_factors, field, nstar):
    """Split a slope-pure piece along a coprime residual factorization."""
    R = res_factors[0][0].field
    rho, mult = res_factors[0]
    a_bar = [R.one()]
    for _ in range(mult):
        a_bar = K.mul(a_bar, list(rho.coeffs), R)
    b_bar = [R.one()]
    for rho2, mult2 in res_factors[1:]:
        for _ in range(mult2):
            b_bar = K.mul(b_bar, list(rho2.coeffs), R)
    _, s_bar, _ = K.ext_gcd(b_bar, a_bar, R)
    h = seg.num
    dA = K.deg(a_bar)
    dB = K.deg(b_bar)
    A0 = _unscale(Poly(R, a_bar), dA * h, seg, field)
    B0 = _unscale(Poly(R, b_bar), dB * h, seg, field)
    t0 = _unscale(Poly(R, s_bar), -dB * h, seg, field)
    s = Fraction(seg.num, seg.den)
    target = Fraction(nstar) + max(Fraction(0), s * g.degree) + _PAD
    rounds = 2 * (int(target) + 2).bit_length() + 24
    A, B = _gauged_lift(field, list(g.coeffs), A0, B0, t0, s, target, rounds)
    return A, B


def _verify_reconstruction(f: Poly, field, factors, nstar_goal):
    if sum(lf.degree for lf in factors) != f.degree:
        raise InternalInvariantError("local factor degrees do not sum to deg f")
    prod = Poly(field, [field.one()])
    for lf in factors:
        prod = prod * lf.poly
    diff = prod - f
    for i, c in enumerate(diff.coeffs):
        if _lb(field, c) < nstar_goal:
            raise IndeterminateValuation(
                "reconstruction check failed at the working precision; "
                "raise the working precision"
            )
