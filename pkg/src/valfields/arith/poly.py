"""Univariate polynomials over any supported exact field.

Poly is an immutable dense polynomial: coefficient index = degree, no
trailing zeros, with the coefficient field carried on the instance.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernels as K
from .fields import Field, QQ
from ..errors import Inseparable, VFError


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        self.field = field
        self.coeffs = tuple(K.trim(list(coeffs), field))

    @staticmethod
    def from_int_coeffs(field, ints):
        return Poly(field, [field.from_int(n) for n in ints])

    @staticmethod
    def x(field):
        return Poly(field, [field.zero(), field.one()])

    @staticmethod
    def constant(field, c):
        return Poly(field, [c])

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.field.eq(self.coeffs[0], self.field.one())

    def is_monic(self):
        return bool(self.coeffs) and self.field.eq(self.coeffs[-1], self.field.one())

    def leading(self):
        if not self.coeffs:
            raise VFError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero()

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and len(self.coeffs) == len(other.coeffs)
            and all(self.field.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((len(self.coeffs),))

    def __repr__(self):
        F = self.field
        terms = []
        for i, c in enumerate(self.coeffs):
            if F.is_zero(c):
                continue
            cs = F.repr_elem(c) if hasattr(F, "repr_elem") else str(c)
            if i == 0:
                terms.append(cs)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if cs == "1" else f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        return Poly(self.field, K.add(list(self.coeffs), list(other.coeffs), self.field))

    def __sub__(self, other):
        return Poly(self.field, K.sub(list(self.coeffs), list(other.coeffs), self.field))

    def __neg__(self):
        return Poly(self.field, K.neg(list(self.coeffs), self.field))

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(self.field, K.mul(list(self.coeffs), list(other.coeffs), self.field))
        return Poly(self.field, K.scal(list(self.coeffs), other, self.field))

    def __divmod__(self, other):
        q, r = K.divmod_poly(list(self.coeffs), list(other.coeffs), self.field)
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, c):
        return Poly(self.field, K.scal(list(self.coeffs), c, self.field))

    def monic(self):
        return Poly(self.field, K.monic(list(self.coeffs), self.field))

    def evaluate(self, x):
        return K.evaluate(list(self.coeffs), x, self.field)

    def derivative(self):
        return Poly(self.field, K.derivative(list(self.coeffs), self.field))

    def shift(self, c):
        """self(x + c)."""
        return Poly(self.field, K.shift_var(list(self.coeffs), c, self.field))

    def scale_var(self, c):
        """self(c * x)."""
        F = self.field
        out, p = [], F.one()
        for a in self.coeffs:
            out.append(F.mul(a, p))
            p = F.mul(p, c)
        return Poly(F, out)

    def reverse(self):
        """x^deg * self(1/x)."""
        return Poly(self.field, list(reversed(self.coeffs)))

    def map_coeffs(self, fn, new_field=None):
        return Poly(new_field or self.field, [fn(c) for c in self.coeffs])

    def divides(self, other) -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def canonical_key(self):
        F = self.field
        return tuple(F.canonical_key(c) for c in self.coeffs)


# -- the arith-module operations -------------------------------------------


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd with zero is the other argument made monic."""
    if a.field != b.field:
        raise VFError("gcd of polynomials over different fields")
    return Poly(a.field, K.gcd(list(a.coeffs), list(b.coeffs), a.field))


def resultant(a: Poly, b: Poly):
    """Resultant of two nonzero polynomials, as a field element."""
    if a.is_zero() or b.is_zero():
        raise VFError("resultant requires nonzero polynomials")
    return K.resultant(list(a.coeffs), list(b.coeffs), a.field)


def discriminant(f: Poly):
    """disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f)."""
    d = f.degree
    fp = f.derivative()
    if fp.is_zero():
        return f.field.zero()
    r = resultant(f, fp)
    r = f.field.div(r, f.leading())
    if (d * (d - 1) // 2) % 2:
        r = f.field.neg(r)
    return r


def squarefree_decomposition(f: Poly):
    """[(g_i, m_i)] with f = lc * prod g_i^{m_i}, g_i monic squarefree
    pairwise coprime.  In characteristic p, p-th powers are unwound via
    coefficient p-th roots, which needs a perfect coefficient field."""
    F = f.field
    if f.is_zero():
        raise VFError("squarefree decomposition of zero")
    f = f.monic()
    if f.degree == 0:
        return []
    p = F.characteristic()
    out = []
    fp = f.derivative()
    if fp.is_zero():
        return _unwind_pth_power(f, out, outer_mult=1)
    # Musser's loop on the separable-ish part
    a = poly_gcd(f, fp)
    b = f // a  # product of factors with multiplicity not divisible by p
    m = 1
    while b.degree > 0:
        c = poly_gcd(a, b)
        factor = b // c
        if factor.degree > 0:
            out.append((factor, m))
        a = a // c
        b = c
        m += 1
    if a.degree > 0:
        # leftover p-th power part
        out = _unwind_pth_power(a, out, outer_mult=1)
    return _merge_factors(out)


def _unwind_pth_power(f: Poly, out, outer_mult):
    F = f.field
    p = F.characteristic()
    if p == 0 or not F.is_perfect():
        raise Inseparable(
            "polynomial has vanishing derivative over an imperfect field"
        )
    # f = g(x^p) with g coefficients the p-th roots
    coeffs = []
    for i, c in enumerate(f.coeffs):
        if i % p == 0:
            coeffs.append(F.pth_root(c))
        elif not F.is_zero(c):
            raise Inseparable("derivative vanishes but polynomial is not a p-th power")
    g = Poly(F, coeffs)
    for h, m in squarefree_decomposition(g):
        out.append((h, m * p * outer_mult))
    return out


def _merge_factors(pairs):
    merged = []
    for g, m in pairs:
        for i, (h, n) in enumerate(merged):
            if g == h:
                merged[i] = (h, n + m)
                break
        else:
            merged.append((g, m))
    return merged


def squarefree_part(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of f."""
    F = f.field
    if f.is_zero():
        raise VFError("squarefree part of zero")
    if f.degree == 0:
        return Poly(F, [F.one()])
    parts = squarefree_decomposition(f)
    out = Poly(F, [F.one()])
    for g, _ in parts:
        out = out * g
    return out


def is_squarefree(f: Poly) -> bool:
    fp = f.derivative()
    if fp.is_zero():
        return f.degree == 0
    return poly_gcd(f, fp).degree == 0
