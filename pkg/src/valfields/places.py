"""Global fields, their places, and all extensions of a place to a
finite extension field.

A GlobalField is Q, k(t), or base[x]/(f) for a monic irreducible
separable f.  A BasePlace is a prime p of Q or a point of P^1 (a center
in k, or infinity) for k(t).  place_extensions identifies the places of
an extension field over a base place with the irreducible local factors
of the defining polynomial over the completion, each carrying its
ramification index e and residue degree f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import kernels as K
from .arith.factor import DEFAULT_SEED, factor_any
from .arith.fields import QQ, ExtensionField, RatFunc, RationalFunctionField
from .arith.poly import Poly, discriminant, is_squarefree
from .errors import (
    Inseparable,
    InternalInvariantError,
    NotRegular,
    NotRegularAfterShifts,
    VFError,
)
from .localfield import (
    INF,
    INFINITY,
    LaurentCompletion,
    PadicCompletion,
)
from .newton import LocalFactor, local_factor


class GlobalField:
    """Q, k(t), or a finite extension base[x]/(f)."""

    def __init__(self, base_field, defining: Poly | None, gen_name: str = "a",
                 validate: bool = True):
        self.base_field = base_field
        self.defining = defining
        self.gen_name = gen_name
        if defining is None:
            self.field = base_field
            self.degree = 1
        else:
            if not defining.is_monic():
                raise VFError("defining polynomial must be monic")
            if defining.degree < 1:
                raise VFError("defining polynomial must have degree >= 1")
            if validate:
                if defining.derivative().is_zero() or not is_squarefree(defining):
                    raise Inseparable("defining polynomial is not separable")
                if len(factor_any(defining)) != 1:
                    raise VFError("defining polynomial is not irreducible")
            self.field = ExtensionField(base_field, defining.coeffs, gen_name=gen_name)
            self.degree = defining.degree

    # -- constructors --------------------------------------------------------

    @staticmethod
    def rationals():
        return GlobalField(QQ, None, gen_name="1")

    @staticmethod
    def rational_function(constant_field, var: str = "t"):
        return GlobalField(RationalFunctionField(constant_field, var), None, gen_name=var)

    @staticmethod
    def extension(base_global: "GlobalField", defining: Poly, gen_name: str = "a",
                  validate: bool = True):
        if base_global.defining is not None:
            raise VFError("extensions are presented directly over Q or k(t)")
        return GlobalField(base_global.base_field, defining, gen_name, validate)

    # -- structure -----------------------------------------------------------

    def is_base(self):
        return self.defining is None

    def is_function_field(self):
        return isinstance(self.base_field, RationalFunctionField)

    def constant_field(self):
        if not self.is_function_field():
            return None
        return self.base_field.constant_field

    def canonical_generator(self):
        """Exact base-field element generating the base (0 for Q, t for k(t))."""
        if self.is_function_field():
            return self.base_field.gen()
        return Fraction(0)

    def separable(self):
        if self.defining is None:
            return True
        return not self.defining.derivative().is_zero() and is_squarefree(self.defining)

    def defining_or_virtual(self) -> Poly:
        """The defining polynomial, or x - (canonical generator) for a base."""
        if self.defining is not None:
            return self.defining
        F = self.base_field
        return Poly(F, [F.neg(self._gen_elem()), F.one()])

    def _gen_elem(self):
        g = self.canonical_generator()
        if self.is_function_field():
            return g
        return Fraction(0)

    def with_shifted_generator(self, c: int, validate: bool = False):
        """Same field presented by the generator s + c (defining f(x - c))."""
        if self.defining is None:
            raise VFError("cannot shift the generator of a base field")
        F = self.base_field
        shifted = self.defining.shift(F.neg(F.from_int(c)))
        return GlobalField(F, shifted, gen_name=self.gen_name, validate=validate)

    def __repr__(self):
        if self.defining is None:
            return f"{self.base_field!r}"
        return f"{self.base_field!r}[{self.gen_name}]/(deg {self.degree})"

    def __eq__(self, other):
        if not isinstance(other, GlobalField):
            return False
        if self.base_field != other.base_field:
            return False
        if (self.defining is None) != (other.defining is None):
            return False
        return self.defining is None or self.defining == other.defining

    def __hash__(self):
        return hash((self.base_field, self.degree))


class BasePlace:
    """A place of the base field: a prime of Q, or a point of P^1 for k(t)."""

    def __init__(self, kind, data):
        self.kind = kind  # "prime" | "center" | "infinity"
        self.data = data

    @staticmethod
    def prime(p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise VFError(f"{p} is not prime")
        return BasePlace("prime", p)

    @staticmethod
    def center(a):
        return BasePlace("center", a)

    @staticmethod
    def infinity():
        return BasePlace("infinity", INFINITY)

    def __repr__(self):
        if self.kind == "prime":
            return f"p={self.data}"
        if self.kind == "infinity":
            return "t=inf"
        return f"t={self.data!r}"

    def matches(self, other: "BasePlace", base_field) -> bool:
        if self.kind != other.kind:
            return False
        if self.kind == "prime":
            return self.data == other.data
        if self.kind == "infinity":
            return True
        k = base_field.constant_field
        return k.eq(self.data, other.data)


def completion_of(L: GlobalField, place: BasePlace, cap: int):
    """The base completion of L's base field at the place."""
    if L.is_function_field():
        if place.kind == "prime":
            raise VFError("prime places belong to Q, not k(t)")
        center = INFINITY if place.kind == "infinity" else place.data
        return LaurentCompletion(L.base_field.constant_field, center, cap,
                                 var=L.base_field.var)
    if place.kind != "prime":
        raise VFError("places of Q are primes")
    return PadicCompletion(place.data, cap)


def exact_place_valuation(x, place: BasePlace, base_field) -> int:
    """Exact valuation of a nonzero base-field element at a base place."""
    if isinstance(base_field, RationalFunctionField):
        k = base_field.constant_field
        num, den = list(x.num), list(x.den)
        if not num:
            raise VFError("valuation of zero")
        if place.kind == "infinity":
            return (len(den) - 1) - (len(num) - 1)
        a = place.data
        num_s = K.shift_var(num, a, k)
        den_s = K.shift_var(den, a, k)
        vn = next(i for i, c in enumerate(num_s) if not k.is_zero(c))
        vd = next(i for i, c in enumerate(den_s) if not k.is_zero(c))
        return vn - vd
    q = Fraction(x)
    if q == 0:
        raise VFError("valuation of zero")
    p = place.data
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def embed_poly(f: Poly, completion) -> Poly:
    return Poly(completion, [completion.embed_exact(c) for c in f.coeffs])


def default_precision(L: GlobalField, place: BasePlace) -> int:
    """Working precision N >= 2 v(disc) + 10 for the defining polynomial."""
    f = L.defining_or_virtual()
    if f.degree == 1:
        return 10
    d = discriminant(f)
    if L.base_field.is_zero(d):
        raise Inseparable("defining polynomial has vanishing discriminant")
    v = exact_place_valuation(d, place, L.base_field)
    return 2 * max(v, 0) + 10


@dataclass
class PlaceExtension:
    """One place of L above a base place: an irreducible local factor of
    the defining polynomial with its ramification and residue data."""

    parent: GlobalField
    base_place: BasePlace
    factor: LocalFactor
    index: int
    e: int
    f: int
    local_degree: int
    shift: int              # the canonical successful shift of the presentation
    precision: int
    base_completion: object

    _extension_cache: object = None

    def completion(self):
        """The local field L-hat = K-hat[y]/(factor) for this place."""
        if self._extension_cache is None:
            self._extension_cache = self.factor.make_extension(name="y")
        return self._extension_cache

    def __repr__(self):
        return (
            f"PlaceExtension(#{self.index} of {self.parent!r} at {self.base_place!r},"
            f" e={self.e}, f={self.f})"
        )


def place_extensions(L: GlobalField, place: BasePlace, prec: int | None = None,
                     shift_budget: int = 20, seed: int = DEFAULT_SEED):
    """All places of L above the given base place, one per irreducible
    local factor of the defining polynomial over the completion.  The
    fundamental identity sum(e_i f_i) = [L : base] is asserted."""
    if not L.separable():
        raise Inseparable("place_extensions requires a separable extension")
    f = L.defining_or_virtual()
    n = f.degree
    base_prec = prec if prec is not None else default_precision(L, place)
    last_exc = None
    for attempt in range(3):
        N = base_prec * (2 ** attempt)
        try:
            return _place_extensions_once(L, place, f, N, shift_budget, seed)
        except (NotRegularAfterShifts, VFError) as exc:
            if isinstance(exc, NotRegularAfterShifts):
                raise
            last_exc = exc
    raise last_exc


def _place_extensions_once(L, place, f, N, shift_budget, seed):
    n = f.degree
    # generous representative cap: covers internal lift targets
    vmax = 0
    for c in f.coeffs:
        if not L.base_field.is_zero(c):
            vmax = max(vmax, exact_place_valuation(c, place, L.base_field))
    cap = N + n * max(vmax, 0) + 12
    completion = completion_of(L, place, cap)
    f_hat = embed_poly(f, completion)
    factors = None
    shift_used = 0
    for c in range(shift_budget + 1):
        c_exact = L.base_field.from_int(c)
        c_hat = completion.embed_exact(c_exact) if c else completion.zero()
        try:
            shifted = f_hat.shift(c_hat) if c else f_hat
            factors = local_factor(shifted, N, seed=seed, field=completion)
            shift_used = c
            break
        except NotRegular:
            continue
    if factors is None:
        raise NotRegularAfterShifts(
            f"no shift in 0..{shift_budget} produced a regular factorization"
        )
    if shift_used:
        factors = [_unshift_factor(lf, completion, c_hat) for lf in factors]
        factors.sort(key=lambda lf: lf.sort_key())
    if sum(lf.e * lf.f for lf in factors) != n:
        raise InternalInvariantError("sum of e*f does not match the degree")
    out = []
    for i, lf in enumerate(factors):
        out.append(
            PlaceExtension(
                parent=L,
                base_place=place,
                factor=lf,
                index=i,
                e=lf.e,
                f=lf.f,
                local_degree=lf.e * lf.f,
                shift=shift_used,
                precision=N,
                base_completion=completion,
            )
        )
    return out


def _unshift_factor(lf: LocalFactor, field, delta) -> LocalFactor:
    """Factor of f(x + delta) rewritten as a factor of f."""
    poly = lf.poly.shift(field.neg(delta))
    const = poly.coeffs[0]
    slope = INF if field.is_zero(const) else Fraction(
        field.vstar(const), poly.degree * field.e_abs
    )
    return LocalFactor(
        poly=poly,
        e=lf.e,
        f=lf.f,
        degree=lf.degree,
        slope=slope,
        cert_shift=field.add(lf.cert_shift, delta),
        slope_num=lf.slope_num,
        slope_den=lf.slope_den,
        residual=lf.residual,
        field=field,
    )


def ramification_index(pe: PlaceExtension) -> int:
    return pe.e


def residue_degree(pe: PlaceExtension) -> int:
    return pe.f


def is_tame(pe: PlaceExtension) -> bool:
    """True iff the residue characteristic does not divide e (residue
    characteristic 0 is always tame)."""
    p = pe.base_completion.residue_characteristic()
    if p == 0:
        return True
    return pe.e % p != 0
