"""Completions (Q_p and k((t-a)), k((1/t))) and their finite extensions.

Elements track an absolute precision: an element is known modulo
(uniformizer)^prec.  Exact zero is distinguished from "zero at the
current precision"; reading the valuation of the latter raises
IndeterminateValuation rather than guessing.

Valuations are normalized so the uniformizer of the *base* completion
has valuation 1; a degree-d extension with ramification index e takes
values in (1/e)Z.  Internally each field also exposes an integer-scaled
valuation vstar (vstar = e * v), which is what the Newton-polygon code
works with.

A finite extension is represented as base[y']/(H_cert) where H_cert is a
local factor in "certified" coordinates: a single Newton slope h/e in
lowest terms and an irreducible residual polynomial of degree f.  In
those coordinates the rescaled power basis is orthogonal, which gives
exact valuations and residues by direct formulas (no elimination):

    vstar(sum a_k y'^k) = min_k (e * vstar_base(a_k) + k*h).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import kernels as K
from .arith.fields import ExtensionField, PrimeField, RatFunc, RationalFunctionField
from .arith.poly import Poly
from .errors import (
    DivisionByExactZero,
    IndeterminateValuation,
    NotAUnit,
    PrecisionUnderflow,
    VFError,
)

INF = math.inf

#: marker for the place at infinity of k(t)
INFINITY = "inf"


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_fraction(q: Fraction, p: int) -> int:
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


class PadicElement:
    """p^v * unit with unit stored mod p^(prec - v); unit == 0 encodes a
    zero (exact iff prec is infinite)."""

    __slots__ = ("field", "v", "unit", "prec")

    def __init__(self, field, v, unit, prec):
        self.field = field
        self.v = v
        self.unit = unit
        self.prec = prec

    def is_exact_zero(self):
        return self.unit == 0 and self.prec == INF

    def is_zeroish(self):
        return self.unit == 0

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.sub(self, other)

    def __neg__(self):
        return self.field.neg(self)

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __truediv__(self, other):
        return self.field.div(self, other)

    def __repr__(self):
        if self.unit == 0:
            return "0" if self.prec == INF else f"O({self.field.p}^{self.prec})"
        p = self.field.p
        if self.prec == INF:
            return f"{self.unit}*{p}^{self.v}"
        return f"{self.unit}*{p}^{self.v} + O({p}^{self.prec})"


class LaurentElement:
    """u^v * (c_0 + c_1 u + ...) with c_0 != 0; coefficients in the
    constant field; empty coefficients encode a zero."""

    __slots__ = ("field", "v", "coeffs", "prec")

    def __init__(self, field, v, coeffs, prec):
        self.field = field
        self.v = v
        self.coeffs = coeffs
        self.prec = prec

    def is_exact_zero(self):
        return not self.coeffs and self.prec == INF

    def is_zeroish(self):
        return not self.coeffs

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.sub(self, other)

    def __neg__(self):
        return self.field.neg(self)

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __truediv__(self, other):
        return self.field.div(self, other)

    def __repr__(self):
        u = self.field.var
        k = self.field.constant_field
        terms = [
            f"({k.repr_elem(c)})*{u}^{self.v + i}"
            for i, c in enumerate(self.coeffs)
            if not k.is_zero(c)
        ]
        body = " + ".join(terms) if terms else "0"
        if self.prec == INF:
            return body
        return f"{body} + O({u}^{self.prec})"


class _CompletionBase:
    """Shared Field-protocol plumbing for completions (so polynomial
    kernels can run over them; is_zero means *exactly* zero)."""

    e_abs = 1

    def is_zero(self, x):
        return x.is_exact_zero()

    def eq(self, x, y):
        return self.sub(x, y).is_zeroish()

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def vstar(self, x):
        """Integer-normalized valuation; INF for exact zero; raises
        IndeterminateValuation for a zero-at-precision element."""
        if x.is_exact_zero():
            return INF
        if x.is_zeroish():
            raise IndeterminateValuation(
                f"element is zero at precision {x.prec}; raise the working precision"
            )
        return x.v

    def valuation(self, x):
        v = self.vstar(x)
        return v if v == INF else Fraction(v, self.e_abs)

    def precision_star(self, x):
        return x.prec

    def characteristic(self):
        raise NotImplementedError


class PadicCompletion(_CompletionBase):
    """Q_p at working absolute precision cap."""

    def __init__(self, p: int, cap: int):
        if cap < 1:
            raise PrecisionUnderflow("precision cap must be >= 1")
        self.p = p
        self.cap = cap
        self._res = PrimeField(p)

    def _make(self, v, unit, prec):
        prec = min(prec, self.cap) if prec != INF else INF
        if unit == 0:
            if prec == INF:
                return PadicElement(self, 0, 0, INF)
            return PadicElement(self, 0, 0, prec)
        p = self.p
        w = _vp_int(unit, p)
        if w:
            unit //= p ** w
            v += w
        if prec != INF:
            if v >= prec:
                return PadicElement(self, 0, 0, prec)
            unit %= p ** (prec - v)
            if unit == 0:
                return PadicElement(self, 0, 0, prec)
        return PadicElement(self, v, unit, prec)

    # -- constructors ------------------------------------------------------

    def zero(self):
        return PadicElement(self, 0, 0, INF)

    def one(self):
        return PadicElement(self, 0, 1, INF)

    def from_int(self, n):
        if n == 0:
            return self.zero()
        return self._make(0, n, INF)

    def embed_exact(self, q: Fraction):
        """Embed an exact rational; denominators force truncation at cap."""
        q = Fraction(q)
        if q == 0:
            return self.zero()
        v = _vp_fraction(q, self.p)
        num = q.numerator
        den = q.denominator
        pv = self.p ** abs(v)
        if v > 0:
            num //= pv
        elif v < 0:
            den //= pv
        if den in (1, -1):
            return self._make(v, num * den, INF)
        rel = max(self.cap - v, 1)
        unit = num * pow(den, -1, self.p ** rel) % self.p ** rel
        return self._make(v, unit, self.cap)

    def unif_pow(self, m: int):
        return PadicElement(self, m, 1, INF)

    def uniformizer(self):
        return self.unif_pow(1)

    # -- arithmetic --------------------------------------------------------

    def add(self, x, y):
        prec = min(x.prec, y.prec)
        if x.unit == 0 and y.unit == 0:
            return self._make(0, 0, prec)
        if x.unit == 0:
            return self._make(y.v, y.unit, prec)
        if y.unit == 0:
            return self._make(x.v, x.unit, prec)
        v = min(x.v, y.v)
        unit = x.unit * self.p ** (x.v - v) + y.unit * self.p ** (y.v - v)
        return self._make(v, unit, prec)

    def neg(self, x):
        return self._make(x.v, -x.unit, x.prec)

    def mul(self, x, y):
        if x.is_exact_zero() or y.is_exact_zero():
            return self.zero()
        if x.unit == 0 or y.unit == 0:
            # fuzzy zero: bound only
            bound = min(
                (x.prec if x.unit == 0 else x.v) + (y.prec if y.unit == 0 else y.v),
                self.cap,
            )
            return self._make(0, 0, bound)
        prec = min(x.prec + y.v, y.prec + x.v)
        return self._make(x.v + y.v, x.unit * y.unit, prec)

    def inv(self, x):
        if x.is_exact_zero():
            raise DivisionByExactZero("division by exact zero")
        if x.unit == 0:
            raise IndeterminateValuation(
                "division by an element that is zero at the current precision"
            )
        rel = x.prec - x.v if x.prec != INF else self.cap - (-x.v)
        rel = max(int(min(rel, self.cap - (-x.v))), 1)
        unit = pow(x.unit, -1, self.p ** rel)
        return self._make(-x.v, unit, -x.v + rel)

    def truncate(self, x, prec_star):
        if x.is_exact_zero():
            return x
        return self._make(x.v, x.unit, min(x.prec, max(int(math.ceil(prec_star)), 1)))

    # -- residue -----------------------------------------------------------

    def residue_field(self):
        return self._res

    def residue(self, x):
        if x.unit == 0 or x.v != 0:
            raise NotAUnit("residue requires valuation exactly 0")
        return x.unit % self.p

    def lift_residue(self, r):
        return self.from_int(int(r))

    def to_exact(self, x):
        """Exact rational representative of the retained digits."""
        if x.unit == 0:
            return Fraction(0)
        if x.v >= 0:
            return Fraction(x.unit * self.p ** x.v)
        return Fraction(x.unit, self.p ** (-x.v))

    def exact_field(self):
        from .arith.fields import QQ

        return QQ

    def characteristic(self):
        return 0

    def residue_characteristic(self):
        return self.p

    def with_cap(self, cap):
        return PadicCompletion(self.p, cap)

    def digits(self, x, n):
        """First n uniformizer-digits of the unit part."""
        out = []
        u = x.unit
        for _ in range(n):
            out.append(u % self.p)
            u //= self.p
        return out

    def __repr__(self):
        return f"Q_{self.p} (prec {self.cap})"

    def __eq__(self, other):
        return isinstance(other, PadicCompletion) and other.p == self.p and other.cap == self.cap

    def __hash__(self):
        return hash(("padic", self.p, self.cap))


class LaurentCompletion(_CompletionBase):
    """k((u)) where u is t - a (a in k) or 1/t, at precision cap."""

    def __init__(self, constant_field, center, cap: int, var: str = "t"):
        if cap < 1:
            raise PrecisionUnderflow("precision cap must be >= 1")
        self.constant_field = constant_field
        self.center = center  # element of k, or INFINITY
        self.cap = cap
        self.var = var

    def _make(self, v, coeffs, prec):
        prec = min(prec, self.cap) if prec != INF else INF
        k = self.constant_field
        coeffs = list(coeffs)
        while coeffs and k.is_zero(coeffs[0]):
            coeffs.pop(0)
            v += 1
        if prec != INF:
            if v >= prec:
                coeffs = []
            else:
                coeffs = coeffs[: prec - v]
        while coeffs and k.is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            return LaurentElement(self, 0, (), prec)
        return LaurentElement(self, v, tuple(coeffs), prec)

    # -- constructors ------------------------------------------------------

    def zero(self):
        return LaurentElement(self, 0, (), INF)

    def one(self):
        return LaurentElement(self, 0, (self.constant_field.one(),), INF)

    def from_int(self, n):
        return self.from_constant(self.constant_field.from_int(n))

    def from_constant(self, c):
        if self.constant_field.is_zero(c):
            return self.zero()
        return LaurentElement(self, 0, (c,), INF)

    def unif_pow(self, m: int):
        return LaurentElement(self, m, (self.constant_field.one(),), INF)

    def uniformizer(self):
        return self.unif_pow(1)

    def embed_exact(self, r):
        """Embed an exact rational function of t (RatFunc) or constant."""
        k = self.constant_field
        if not isinstance(r, RatFunc):
            return self.from_constant(r)
        num, den = list(r.num), list(r.den)
        if not num:
            return self.zero()
        if self.center == INFINITY:
            # t = 1/u: p(t) = u^-deg(p) * reverse(p)(u)
            dn, dd = len(num) - 1, len(den) - 1
            num_u = list(reversed(num))
            den_u = list(reversed(den))
            shift = dd - dn
        else:
            num_u = K.shift_var(num, self.center, k)
            den_u = K.shift_var(den, self.center, k)
            shift = 0
        vn = next(i for i, c in enumerate(num_u) if not k.is_zero(c))
        vd = next(i for i, c in enumerate(den_u) if not k.is_zero(c))
        v = vn - vd + shift
        nu = num_u[vn:]
        du = den_u[vd:]
        if len(du) == 1:
            inv0 = k.inv(du[0])
            return self._make(v, [k.mul(c, inv0) for c in nu], INF)
        rel = max(self.cap - v, 1)
        series = _series_div(nu, du, rel, k)
        return self._make(v, series, v + rel)

    # -- arithmetic --------------------------------------------------------

    def add(self, x, y):
        k = self.constant_field
        prec = min(x.prec, y.prec)
        if not x.coeffs and not y.coeffs:
            return self._make(0, (), prec)
        if not x.coeffs:
            return self._make(y.v, y.coeffs, prec)
        if not y.coeffs:
            return self._make(x.v, x.coeffs, prec)
        v = min(x.v, y.v)
        n = max(x.v + len(x.coeffs), y.v + len(y.coeffs)) - v
        out = [k.zero()] * n
        for i, c in enumerate(x.coeffs):
            out[x.v - v + i] = c
        for i, c in enumerate(y.coeffs):
            out[y.v - v + i] = k.add(out[y.v - v + i], c)
        return self._make(v, out, prec)

    def neg(self, x):
        return LaurentElement(self, x.v, tuple(self.constant_field.neg(c) for c in x.coeffs), x.prec)

    def mul(self, x, y):
        k = self.constant_field
        if x.is_exact_zero() or y.is_exact_zero():
            return self.zero()
        if not x.coeffs or not y.coeffs:
            bound = min(
                (x.prec if not x.coeffs else x.v) + (y.prec if not y.coeffs else y.v),
                self.cap,
            )
            return self._make(0, (), bound)
        prec = min(x.prec + y.v, y.prec + x.v)
        limit = (prec - (x.v + y.v)) if prec != INF else (len(x.coeffs) + len(y.coeffs) - 1)
        limit = int(min(limit, len(x.coeffs) + len(y.coeffs) - 1))
        out = [k.zero()] * max(limit, 0)
        for i, a in enumerate(x.coeffs):
            if k.is_zero(a):
                continue
            for j, b in enumerate(y.coeffs):
                if i + j >= limit:
                    break
                out[i + j] = k.add(out[i + j], k.mul(a, b))
        return self._make(x.v + y.v, out, prec)

    def inv(self, x):
        if x.is_exact_zero():
            raise DivisionByExactZero("division by exact zero")
        if not x.coeffs:
            raise IndeterminateValuation(
                "division by an element that is zero at the current precision"
            )
        k = self.constant_field
        rel = x.prec - x.v if x.prec != INF else INF
        rel = int(min(rel, self.cap + x.v)) if rel != INF else self.cap + x.v
        rel = max(rel, 1)
        series = _series_div([k.one()], list(x.coeffs), rel, k)
        return self._make(-x.v, series, -x.v + rel)

    def truncate(self, x, prec_star):
        if x.is_exact_zero():
            return x
        return self._make(x.v, x.coeffs, min(x.prec, max(int(math.ceil(prec_star)), 1)))

    # -- residue -----------------------------------------------------------

    def residue_field(self):
        return self.constant_field

    def residue(self, x):
        if not x.coeffs or x.v != 0:
            raise NotAUnit("residue requires valuation exactly 0")
        return x.coeffs[0]

    def lift_residue(self, r):
        return self.from_constant(r)

    def to_exact(self, x):
        """Exact k(u)-representative (u the local uniformizer)."""
        Ku = self.exact_field()
        if not x.coeffs:
            return Ku.zero()
        k = self.constant_field
        if x.v >= 0:
            return Ku.from_poly_coeffs([k.zero()] * x.v + list(x.coeffs))
        num = Ku.from_poly_coeffs(list(x.coeffs))
        den = Ku.from_poly_coeffs([k.zero()] * (-x.v) + [k.one()])
        return Ku.mul(num, Ku.inv(den))

    def exact_field(self):
        return RationalFunctionField(self.constant_field, "u")

    def characteristic(self):
        return self.constant_field.characteristic()

    def residue_characteristic(self):
        return self.constant_field.characteristic()

    def with_cap(self, cap):
        return LaurentCompletion(self.constant_field, self.center, cap, self.var)

    def digits(self, x, n):
        out = list(x.coeffs[:n])
        out += [self.constant_field.zero()] * (n - len(out))
        return out

    def __repr__(self):
        c = "1/t" if self.center == INFINITY else f"{self.var}-{self.constant_field.repr_elem(self.center)}"
        return f"{self.constant_field!r}(({c})) (prec {self.cap})"

    def __eq__(self, other):
        return (
            isinstance(other, LaurentCompletion)
            and other.constant_field == self.constant_field
            and other.cap == self.cap
            and other.var == self.var
            and _centers_equal(self, other)
        )

    def __hash__(self):
        return hash(("laurent", self.constant_field, self.cap, self.var))


def _centers_equal(a, b):
    if (a.center == INFINITY) != (b.center == INFINITY):
        return False
    if a.center == INFINITY:
        return True
    return a.constant_field.eq(a.center, b.center)


def _series_div(num, den, rel, k):
    """First rel coefficients of num/den in k[[u]]; den[0] must be a unit."""
    inv0 = k.inv(den[0])
    out = []
    cur = list(num) + [k.zero()] * max(0, rel - len(num))
    for n in range(rel):
        c = k.mul(cur[n], inv0)
        out.append(c)
        if not k.is_zero(c):
            for j in range(1, min(len(den), rel - n)):
                cur[n + j] = k.sub(cur[n + j], k.mul(c, den[j]))
    return out


# ---------------------------------------------------------------------------
# finite extensions of a completion
# ---------------------------------------------------------------------------


class LocalExtension(_CompletionBase):
    """base[y]/(H) with certified data: in shifted coordinates
    y' = y - shift the polynomial H_cert(y') has a single Newton slope
    h/e (lowest terms) and an irreducible residual polynomial of degree
    f over the base residue field.  Elements are coefficient tuples in
    the y'-power basis."""

    def __init__(self, base, h_orig: Poly, shift, slope_num: int, slope_den: int,
                 residual: Poly, name: str = "y"):
        self.base = base
        self.h_orig = h_orig
        self.shift = shift
        self.h = slope_num
        self.e = slope_den
        self.residual = residual
        self.f = max(residual.degree, 1)
        self.name = name
        d = h_orig.degree
        self.degree = d
        if d != self.e * self.f:
            raise VFError(
                f"local factor degree {d} != e*f = {self.e}*{self.f}"
            )
        self.e_abs = self.e
        self.h_cert = h_orig.shift(shift) if not base.is_zero(shift) else h_orig
        # residue field and the residual root zeta
        res = base.residue_field()
        if self.f == 1:
            self._res_field = res
            rho = residual.coeffs
            self._zeta = res.neg(res.div(rho[0], rho[1])) if residual.degree == 1 else res.zero()
        else:
            self._res_field = ExtensionField(res, residual.coeffs, gen_name="z")
            self._zeta = self._res_field.gen()
        self._zeta_pows = [self._res_field.one()]
        for _ in range(self.f - 1):
            self._zeta_pows.append(self._res_field.mul(self._zeta_pows[-1], self._zeta))
        # uniformizer pi = y'^a * u_base^b with a*h + b*e = 1, 0 <= a < e
        if self.e == 1:
            self._a, self._b = 0, 1
        else:
            self._a = pow(self.h, -1, self.e)
            self._b = (1 - self._a * self.h) // self.e
        self._pow_cache = {}
        self._yprime_inv = None

    # -- basic field protocol ----------------------------------------------

    def zero(self):
        return (self.base.zero(),) * self.degree

    def one(self):
        out = [self.base.zero()] * self.degree
        out[0] = self.base.one()
        return tuple(out)

    def from_int(self, n):
        out = [self.base.zero()] * self.degree
        out[0] = self.base.from_int(n)
        return tuple(out)

    def from_base(self, c):
        out = [self.base.zero()] * self.degree
        out[0] = c
        return tuple(out)

    def gen_image(self):
        """The class of y (a root of h_orig)."""
        if self.degree == 1:
            return (self.base.neg(self.h_orig.coeffs[0]),)
        out = [self.base.zero()] * self.degree
        out[0] = self.shift
        out[1] = self.base.one()
        return tuple(out)

    def yprime(self):
        if self.degree == 1:
            return (self.base.sub(self.base.neg(self.h_orig.coeffs[0]), self.shift),)
        out = [self.base.zero()] * self.degree
        out[1] = self.base.one()
        return tuple(out)

    def is_exact_zero(self, x):
        return all(c.is_exact_zero() for c in x)

    def is_zero(self, x):
        return self.is_exact_zero(x)

    def is_zeroish(self, x):
        return all(c.is_zeroish() for c in x)

    def eq(self, x, y):
        return self.is_zeroish(self.sub(x, y))

    def add(self, x, y):
        return tuple(self.base.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.base.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.base.neg(a) for a in x)

    def mul(self, x, y):
        base, d = self.base, self.degree
        if d == 1:
            return (base.mul(x[0], y[0]),)
        prod = [base.zero()] * (2 * d - 1)
        for i, a in enumerate(x):
            if a.is_zeroish() and a.prec == INF:
                continue
            for j, b in enumerate(y):
                prod[i + j] = base.add(prod[i + j], base.mul(a, b))
        hc = self.h_cert.coeffs
        for idx in range(2 * d - 2, d - 1, -1):
            c = prod[idx]
            if c.is_zeroish() and c.prec == INF:
                continue
            for j in range(d):
                prod[idx - d + j] = base.sub(prod[idx - d + j], base.mul(c, hc[j]))
        return tuple(prod[:d])

    # -- valuation / precision ----------------------------------------------

    def vstar(self, x):
        known = INF
        bound = INF
        for k, c in enumerate(x):
            w = k * self.h
            if c.is_exact_zero():
                continue
            if c.is_zeroish():
                bound = min(bound, self.e * c.prec + w)
            else:
                known = min(known, self.e * c.v + w)
                bound = min(bound, self.e * c.prec + w)
        if known == INF:
            if bound == INF:
                return INF
            raise IndeterminateValuation(
                "extension element is zero at the current precision"
            )
        if known < bound:
            return known
        raise IndeterminateValuation(
            "extension element valuation not determined at current precision"
        )

    def precision_star(self, x):
        out = INF
        for k, c in enumerate(x):
            out = min(out, self.e * c.prec + k * self.h)
        return out

    def truncate(self, x, prec_star):
        out = []
        for k, c in enumerate(x):
            target = Fraction(int(math.ceil(prec_star)) - k * self.h, self.e)
            out.append(self.base.truncate(c, int(math.ceil(target))))
        return tuple(out)

    # -- uniformizer and inversion ------------------------------------------

    def unif_pow(self, m: int):
        if m in self._pow_cache:
            return self._pow_cache[m]
        a, b = self._a * m, self._b * m
        if a >= 0:
            elem = self._yprime_pow(a)
        else:
            elem = self._power(self._get_yprime_inv(), -a)
        elem = tuple(self.base.mul(c, self.base.unif_pow(b)) for c in elem)
        self._pow_cache[m] = elem
        return elem

    def uniformizer(self):
        return self.unif_pow(1)

    def _yprime_pow(self, a):
        if self.degree == 1:
            return self._power(self.yprime(), a)
        if a < self.degree:
            out = [self.base.zero()] * self.degree
            out[a] = self.base.one()
            return tuple(out)
        return self._power(self.yprime(), a)

    def _power(self, x, n):
        out = self.one()
        base = x
        while n > 0:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def _get_yprime_inv(self):
        if self._yprime_inv is None:
            if self.degree == 1:
                self._yprime_inv = (self.base.inv(self.yprime()[0]),)
            else:
                c0 = self.h_cert.coeffs[0]
                inv_c0 = self.base.inv(c0)
                coeffs = [
                    self.base.neg(self.base.mul(c, inv_c0))
                    for c in self.h_cert.coeffs[1:]
                ]
                coeffs += [self.base.zero()] * (self.degree - len(coeffs))
                self._yprime_inv = tuple(coeffs[: self.degree])
        return self._yprime_inv

    def inv(self, x):
        if self.is_exact_zero(x):
            raise DivisionByExactZero("division by exact zero")
        m = self.vstar(x)  # raises IndeterminateValuation on fuzz
        unit = self.mul(x, self.unif_pow(-m)) if m else x
        r = self.residue(unit)
        b = self.from_residue(self._res_field.inv(r))
        # Newton iteration b <- b(2 - unit*b)
        pstar = min(self.precision_star(x), self.e * self.base.cap)
        two = self.from_int(2)
        guard = 0
        while True:
            err = self.sub(self.mul(unit, b), self.one())
            try:
                werr = self.vstar(err)
            except IndeterminateValuation:
                break
            if werr == INF or werr >= pstar:
                break
            b = self.mul(b, self.sub(two, self.mul(unit, b)))
            guard += 1
            if guard > 64:
                raise VFError("unit inversion did not converge")
        if m:
            b = self.mul(b, self.unif_pow(-m))
        return b

    # -- residue field -------------------------------------------------------

    def residue_field(self):
        return self._res_field

    def residue(self, x):
        try:
            v = self.vstar(x)
        except IndeterminateValuation:
            raise NotAUnit("residue requires valuation exactly 0")
        if v != 0:
            raise NotAUnit("residue requires valuation exactly 0")
        R = self._res_field
        res_base = self.base.residue_field()
        out = R.zero()
        for k1 in range(self.f):
            c = x[self.e * k1]
            scaled = self.base.mul(c, self.base.unif_pow(self.h * k1))
            if scaled.is_zeroish():
                continue
            if scaled.v > 0:
                continue
            r = self.base.residue(scaled)
            if self.f == 1:
                term = res_base.mul(r, self._zeta_pows[k1]) if k1 else r
                out = res_base.add(out, term)
            else:
                term = R.mul(R.from_base(r), self._zeta_pows[k1])
                out = R.add(out, term)
        return out

    def from_residue(self, r):
        """A lift of a residue-field element."""
        R = self._res_field
        if self.f == 1:
            return self.from_base(self.base.lift_residue(r))
        out = [self.base.zero()] * self.degree
        for k1, c in enumerate(R.coeffs(r)):
            lifted = self.base.lift_residue(c)
            out[self.e * k1] = self.base.mul(lifted, self.base.unif_pow(-self.h * k1))
        return tuple(out)

    def lift_residue(self, r):
        return self.from_residue(r)

    def to_exact_coeffs(self, x):
        return [self.base.to_exact(c) for c in x]

    def characteristic(self):
        return self.base.characteristic()

    def residue_characteristic(self):
        return self.base.residue_characteristic()

    def root_valuation(self):
        """Valuation of y' (base-normalized)."""
        return Fraction(self.h, self.e)

    def __repr__(self):
        return (
            f"{self.base!r}[{self.name}]/(deg {self.degree}, e={self.e}, f={self.f})"
        )


# ---------------------------------------------------------------------------
# the embed / element_valuation / residue operations
# ---------------------------------------------------------------------------


def embed(x, target, prec: int):
    """Embed an exact element into a completion with prec significant
    uniformizer-digits (absolute precision = valuation + prec)."""
    if prec < 1:
        raise PrecisionUnderflow(f"requested precision {prec} < 1")
    if isinstance(target, PadicCompletion):
        elem = target.embed_exact(Fraction(x))
    elif isinstance(target, LaurentCompletion):
        elem = target.embed_exact(x)
    elif isinstance(target, LocalExtension):
        return target.from_base(embed(x, target.base, prec))
    else:
        raise VFError(f"cannot embed into {target!r}")
    if elem.is_zeroish():
        return elem
    return target.truncate(elem, elem.v + prec)


def element_valuation(ext, alpha) -> Fraction:
    """Valuation of an element of a local extension, computed through the
    norm: v(Res(h_orig, alpha))/deg.  alpha is a Poly over the base
    completion in the extension generator (or an element tuple)."""
    base = ext.base
    if isinstance(alpha, tuple):
        coeffs = list(alpha)
        # element given in y'-coordinates; rewrite in y by shifting
        poly = Poly(base, coeffs)
        if not base.is_zero(ext.shift):
            poly = poly.shift(base.neg(ext.shift))
        alpha = poly
    coeffs = list(alpha.coeffs)
    if not coeffs:
        raise VFError("element_valuation of exact zero is infinite")
    d = ext.degree
    exact = base.exact_field()
    # scale to an integral representative
    vals = []
    precs = []
    for c in coeffs:
        precs.append(c.prec)
        if not c.is_zeroish():
            vals.append(c.v)
    if not vals:
        raise IndeterminateValuation("all digits of the element vanish")
    m = min(min(vals), 0)
    scaled = [base.mul(c, base.unif_pow(-m)) for c in coeffs]
    min_prec = min(p - m for p in precs)
    h_exact = [base.to_exact(c) for c in ext.h_orig.coeffs]
    a_exact = [base.to_exact(c) for c in scaled]
    a_exact = K.trim(list(a_exact), exact)
    if not a_exact:
        raise IndeterminateValuation("all digits of the element vanish")
    res = K.resultant(h_exact, a_exact, exact)
    if exact.is_zero(res):
        raise IndeterminateValuation(
            "norm vanishes at the current precision; raise precision"
        )
    v = _exact_valuation(res, base)
    if v >= min_prec:
        raise IndeterminateValuation(
            "norm valuation exceeds the certified precision; raise precision"
        )
    return Fraction(v, d) + m


def _exact_valuation(x, base):
    if isinstance(base, PadicCompletion):
        return _vp_fraction(x, base.p)
    # rational function in u: ord at u = 0
    k = base.constant_field
    vn = next(i for i, c in enumerate(x.num) if not k.is_zero(c))
    vd = next(i for i, c in enumerate(x.den) if not k.is_zero(c))
    return vn - vd


def residue(x, field=None):
    """Residue-field image of a valuation-0 element."""
    if field is None:
        field = x.field
    return field.residue(x)
