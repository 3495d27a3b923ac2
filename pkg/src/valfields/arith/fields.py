"""Exact coefficient fields: Q, GF(p), extension towers, and k(t).

Field objects bundle the arithmetic of their elements; all generic code
(polynomials, factorization, local fields) goes through the field-object
methods rather than operator dispatch, so element representations stay
cheap: rationals are fractions.Fraction, prime-field elements are plain
ints in [0, p), extension elements are coefficient tuples over the base,
and rational functions are normalized numerator/denominator pairs.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernels as K
from ..errors import VFError

Rational = Fraction  # value-group elements and Q-coefficients


class Field:
    """Shared defaults; concrete fields override the primitive ops."""

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def from_fraction(self, q: Fraction):
        num = self.from_int(q.numerator)
        if q.denominator == 1:
            return num
        return self.div(num, self.from_int(q.denominator))

    def is_finite(self):
        return False

    def order(self):
        return None

    def is_perfect(self):
        # Finite fields and characteristic-0 fields are perfect.
        return self.characteristic() == 0 or self.is_finite()


class RationalField(Field):
    """The field Q; elements are fractions.Fraction."""

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def characteristic(self):
        return 0

    def canonical_key(self, a):
        return (a.numerator, a.denominator)

    def repr_elem(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField(Field):
    """GF(p) for prime p; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2:
            raise VFError("prime field characteristic must be >= 2")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def neg(self, a):
        return (self.p - a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, -1, self.p)

    def characteristic(self):
        return self.p

    def is_finite(self):
        return True

    def order(self):
        return self.p

    def pth_root(self, a):
        return a  # Frobenius is the identity on GF(p)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def canonical_key(self, a):
        return a

    def repr_elem(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField(Field):
    """base[y]/(modulus) for a monic irreducible modulus over base.

    Elements are coefficient tuples of fixed length deg(modulus).  Covers
    number fields (base Q), non-prime finite fields (base GF(p)), residue
    field extensions, and finite extensions of rational function fields.
    """

    def __init__(self, base: Field, modulus, gen_name: str = "y"):
        # modulus: sequence of base elements, monic, degree >= 1
        mod = list(modulus)
        if len(mod) < 2:
            raise VFError("extension modulus must have degree >= 1")
        if not base.eq(mod[-1], base.one()):
            raise VFError("extension modulus must be monic")
        self.base = base
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.gen_name = gen_name
        # reduction table: y^k mod modulus for k in [degree, 2*degree - 1)
        d = self.degree
        table = []
        cur = K.rem([base.zero()] * d + [base.one()], mod, base)
        for _ in range(max(0, d - 1)):
            table.append(self._pad(cur))
            cur = K.rem(K.mul(cur, [base.zero(), base.one()], base), mod, base)
        self._red_table = table

    def _pad(self, coeffs):
        d = self.degree
        out = list(coeffs) + [self.base.zero()] * (d - len(coeffs))
        return tuple(out[:d])

    def zero(self):
        return self._pad([])

    def one(self):
        return self._pad([self.base.one()])

    def gen(self):
        return self._pad([self.base.zero(), self.base.one()])

    def from_int(self, n):
        return self._pad([self.base.from_int(n)])

    def from_base(self, c):
        return self._pad([c])

    def coeffs(self, a):
        return list(a)

    def is_zero(self, a):
        return all(self.base.is_zero(c) for c in a)

    def eq(self, a, b):
        return all(self.base.eq(x, y) for x, y in zip(a, b))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        base, d = self.base, self.degree
        prod = [base.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if base.is_zero(c):
                continue
            red = self._red_table[k - d]
            for i in range(d):
                out[i] = base.add(out[i], base.mul(c, red[i]))
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in extension field")
        g, s, _ = K.ext_gcd(K.trim(list(a), self.base), list(self.modulus), self.base)
        if K.deg(g) != 0:
            raise VFError("extension modulus is not irreducible")
        return self._pad(s)

    def characteristic(self):
        return self.base.characteristic()

    def is_finite(self):
        return self.base.is_finite()

    def order(self):
        q = self.base.order()
        return None if q is None else q ** self.degree

    def pth_root(self, a):
        q = self.order()
        if q is None:
            raise VFError("pth_root only on finite fields")
        p = self.characteristic()
        # a^(q/p) is the p-th root in GF(q)
        n = q // p
        result = self.one()
        base = a
        while n > 0:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(self.degree))

    def canonical_key(self, a):
        return tuple(self.base.canonical_key(c) for c in a)

    def repr_elem(self, a):
        terms = []
        for i, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            cs = self.base.repr_elem(c)
            if i == 0:
                terms.append(cs)
            else:
                mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                terms.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and len(other.modulus) == len(self.modulus)
            and all(self.base.eq(x, y) for x, y in zip(other.modulus, self.modulus))
        )

    def __hash__(self):
        return hash(("ext", self.base, self.degree))

    def __repr__(self):
        return f"{self.base!r}[{self.gen_name}]/(deg {self.degree})"


def GF(p: int, d: int = 1, modulus=None):
    """GF(p^d).  The modulus, when not given, is the lexicographically
    least monic irreducible of degree d over GF(p) (deterministic)."""
    base = PrimeField(p)
    if d == 1:
        return base
    if modulus is None:
        modulus = _least_irreducible(base, d)
    return ExtensionField(base, modulus, gen_name="w")


def _least_irreducible(base: PrimeField, d: int):
    p = base.p
    for tail in range(p ** d):
        coeffs = []
        n = tail
        for _ in range(d):
            coeffs.append(n % p)
            n //= p
        coeffs.append(1)
        if _is_irreducible_prime_field(coeffs, base):
            return coeffs
    raise VFError("no irreducible polynomial found")  # unreachable


def _is_irreducible_prime_field(coeffs, base: PrimeField):
    f = K.trim(list(coeffs), base)
    d = K.deg(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    p = base.p
    x = [0, 1]
    # x^(p^d) == x mod f and gcd(x^(p^(d/l)) - x, f) == 1 for prime l | d
    xq = K.pow_mod(x, p ** d, f, base)
    if K.trim(K.sub(xq, x, base), base):
        return False
    for l in _prime_divisors(d):
        xr = K.pow_mod(x, p ** (d // l), f, base)
        g = K.gcd(K.sub(xr, x, base), f, base)
        if K.deg(g) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class RatFunc:
    """A rational function num/den; normalized: den monic, gcd(num, den)=1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = tuple(num)
        self.den = tuple(den)

    def __repr__(self):
        return f"RatFunc({list(self.num)}, {list(self.den)})"


class RationalFunctionField(Field):
    """k(t): rational functions over an exact constant field k."""

    def __init__(self, constant_field: Field, var: str = "t"):
        self.constant_field = constant_field
        self.var = var

    def _make(self, num, den):
        k = self.constant_field
        num = K.trim(list(num), k)
        den = K.trim(list(den), k)
        if not den:
            raise ZeroDivisionError("zero denominator in rational function")
        if not num:
            return RatFunc([], [k.one()])
        g = K.gcd(num, den, k)
        if K.deg(g) > 0:
            num = K.divmod_poly(num, g, k)[0]
            den = K.divmod_poly(den, g, k)[0]
        lc = den[-1]
        if not k.eq(lc, k.one()):
            c = k.inv(lc)
            num = [k.mul(x, c) for x in num]
            den = [k.mul(x, c) for x in den]
        return RatFunc(num, den)

    def from_poly_coeffs(self, coeffs):
        return self._make(coeffs, [self.constant_field.one()])

    def from_constant(self, c):
        return self._make([c], [self.constant_field.one()])

    def gen(self):
        k = self.constant_field
        return self._make([k.zero(), k.one()], [k.one()])

    def zero(self):
        return self.from_poly_coeffs([])

    def one(self):
        return self.from_constant(self.constant_field.one())

    def from_int(self, n):
        return self.from_constant(self.constant_field.from_int(n))

    def is_zero(self, a):
        return not a.num

    def eq(self, a, b):
        k = self.constant_field
        return (
            len(a.num) == len(b.num)
            and len(a.den) == len(b.den)
            and all(k.eq(x, y) for x, y in zip(a.num, b.num))
            and all(k.eq(x, y) for x, y in zip(a.den, b.den))
        )

    def add(self, a, b):
        k = self.constant_field
        num = K.add(
            K.mul(list(a.num), list(b.den), k), K.mul(list(b.num), list(a.den), k), k
        )
        return self._make(num, K.mul(list(a.den), list(b.den), k))

    def neg(self, a):
        return RatFunc([self.constant_field.neg(x) for x in a.num], a.den)

    def mul(self, a, b):
        k = self.constant_field
        return self._make(
            K.mul(list(a.num), list(b.num), k), K.mul(list(a.den), list(b.den), k)
        )

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return self._make(a.den, a.num)

    def characteristic(self):
        return self.constant_field.characteristic()

    def is_perfect(self):
        return self.characteristic() == 0

    def is_polynomial(self, a):
        return len(a.den) == 1

    def poly_coeffs(self, a):
        """Numerator coefficients for a polynomial element (den == 1)."""
        if not self.is_polynomial(a):
            raise VFError("rational function is not a polynomial")
        return list(a.num)

    def degree_bound(self, a):
        return max(len(a.num) - 1, len(a.den) - 1, 0)

    def canonical_key(self, a):
        k = self.constant_field
        return (
            tuple(k.canonical_key(c) for c in a.num),
            tuple(k.canonical_key(c) for c in a.den),
        )

    def repr_elem(self, a):
        k = self.constant_field
        num = _poly_str(a.num, self.var, k)
        if len(a.den) == 1:
            return num
        return f"({num})/({_poly_str(a.den, self.var, k)})"

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.constant_field == self.constant_field
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ratfunc", self.constant_field, self.var))

    def __repr__(self):
        return f"{self.constant_field!r}({self.var})"


def _poly_str(coeffs, var, k):
    terms = []
    for i, c in enumerate(coeffs):
        if k.is_zero(c):
            continue
        cs = k.repr_elem(c)
        if i == 0:
            terms.append(cs)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if cs == "1" else f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"
