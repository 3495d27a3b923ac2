"""Exact univariate factorization over the supported coefficient fields.

Four engines behind one dispatcher:

* finite fields           -- squarefree split, distinct-degree, then
                             equal-degree (Cantor-Zassenhaus) with a
                             seeded RNG,
* rationals                -- factor mod a good prime, quadratic Hensel
                             lift to a coefficient bound, subset
                             recombination (desk scale: degree <= 12),
* rational function fields -- evaluate t at a good point, factor over
                             the constants, lift (t - t0)-adically,
                             recombine subsets,
* extension fields         -- Trager: shift the generator until the
                             norm (a resultant) is squarefree, factor
                             the norm over the base, pull back by gcds.

All results are monic; ordering is deterministic (degree, then a
canonical coefficient key).
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from . import kernels as K
from .fields import (
    QQ,
    ExtensionField,
    PrimeField,
    RationalFunctionField,
    RationalField,
)
from .poly import Poly, is_squarefree, poly_gcd, squarefree_decomposition
from ..errors import NotCoprime, VFError

DEFAULT_SEED = 0

#: documented desk-scale limit for rational factorization
RATIONAL_DEGREE_LIMIT = 12


def _sorted_factors(factors):
    return sorted(factors, key=lambda g: (g.degree, g.canonical_key()))


def _sorted_factor_pairs(pairs):
    return sorted(pairs, key=lambda gm: (gm[0].degree, gm[0].canonical_key()))


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------


def factor_finite_field(f: Poly, seed: int = DEFAULT_SEED):
    """Factor f over a finite field into [(monic irreducible, multiplicity)].

    The RNG only drives equal-degree splitting; the returned factor set is
    canonical and the list is deterministically ordered.
    """
    F = f.field
    if not F.is_finite():
        raise VFError("factor_finite_field requires a finite coefficient field")
    if f.is_zero():
        raise VFError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, mult in squarefree_decomposition(f):
        for h in _factor_squarefree_finite(g, rng):
            out.append((h, mult))
    return _sorted_factor_pairs(out)


def _factor_squarefree_finite(f: Poly, rng):
    F = f.field
    f = f.monic()
    if f.degree <= 1:
        return [f] if f.degree == 1 else []
    q = F.order()
    factors = []
    # distinct-degree splitting
    x = Poly.x(F)
    h = x
    g = f
    d = 0
    while g.degree > 0:
        d += 1
        if 2 * d > g.degree:
            factors.append((g, g.degree))
            break
        h = Poly(F, K.pow_mod(list(h.coeffs), q, list(g.coeffs), F))
        gd = poly_gcd(h - x, g)
        if gd.degree > 0:
            factors.append((gd, d))
            g = g // gd
            h = h % g
    out = []
    for part, d in factors:
        out.extend(_equal_degree_split(part, d, rng))
    return out


def _equal_degree_split(f: Poly, d: int, rng):
    """Split a product of distinct irreducibles, all of degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    q = F.order()
    p = F.characteristic()
    n = f.degree
    fc = list(f.coeffs)
    while True:
        r = [F.random_element(rng) for _ in range(n)]
        r = K.trim(r, F)
        if K.deg(r) < 1:
            continue
        if p == 2:
            # trace map over GF(2)
            m = q.bit_length() - 1  # q = 2^m
            acc = list(r)
            cur = list(r)
            for _ in range(d * m - 1):
                cur = K.rem(K.mul(cur, cur, F), fc, F)
                acc = K.add(acc, cur, F)
            t = acc
        else:
            e = (q ** d - 1) // 2
            t = K.sub(K.pow_mod(r, e, fc, F), [F.one()], F)
        g = poly_gcd(Poly(F, t), f)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)


# ---------------------------------------------------------------------------
# truncated-ring Hensel engine (shared by the rational and function-field
# lifts; polynomial arithmetic reuses the dense kernels)
# ---------------------------------------------------------------------------


class _ZModRing:
    """Z/p^k viewed through the Field protocol (units only for inv)."""

    def __init__(self, p, k):
        self.p = p
        self.k = k
        self.m = p ** k

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.m

    def is_zero(self, a):
        return a % self.m == 0

    def eq(self, a, b):
        return (a - b) % self.m == 0

    def add(self, a, b):
        return (a + b) % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def inv(self, a):
        return pow(a, -1, self.m)

    def val(self, a):
        a %= self.m
        if a == 0:
            return self.k
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v


class _SeriesRing:
    """k[u]/(u^B) through the Field protocol; elements are k-tuples."""

    def __init__(self, k, B):
        self.k = k
        self.B = B

    def _red(self, c):
        c = list(c[: self.B])
        while c and self.k.is_zero(c[-1]):
            c.pop()
        return tuple(c)

    def zero(self):
        return ()

    def one(self):
        return (self.k.one(),)

    def from_int(self, n):
        return self._red([self.k.from_int(n)])

    def from_constant(self, c):
        return self._red([c])

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def add(self, a, b):
        k = self.k
        n = max(len(a), len(b))
        out = [
            k.add(a[i] if i < len(a) else k.zero(), b[i] if i < len(b) else k.zero())
            for i in range(n)
        ]
        return self._red(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return tuple(self.k.neg(x) for x in a)

    def mul(self, a, b):
        k = self.k
        if not a or not b:
            return ()
        out = [k.zero()] * min(self.B, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if k.is_zero(x):
                continue
            for j, y in enumerate(b):
                if i + j >= self.B:
                    break
                out[i + j] = k.add(out[i + j], k.mul(x, y))
        return self._red(out)

    def inv(self, a):
        k = self.k
        if not a or k.is_zero(a[0]):
            raise ZeroDivisionError("series with zero constant term is not a unit")
        c0 = k.inv(a[0])
        out = [c0]
        for n in range(1, self.B):
            acc = k.zero()
            for i in range(1, min(n, len(a) - 1) + 1):
                acc = k.add(acc, k.mul(a[i], out[n - i]))
            out.append(k.neg(k.mul(c0, acc)))
        return self._red(out)

    def val(self, a):
        for i, c in enumerate(a):
            if not self.k.is_zero(c):
                return i
        return self.B


def _lift_pair(ring, f, g, h, t, cap):
    """Refine f ~ g*h to full ring precision; g, h monic lists over ring,
    t is an approximate inverse of h mod g.  Raises NotCoprime on stall."""
    prev = -1
    for _ in range(cap):
        e = K.sub(f, K.mul(g, h, ring), ring)
        if not e:
            return g, h
        v = min(ring.val(c) for c in e)
        if v <= prev:
            raise NotCoprime("Hensel lift stalled; initial factors not coprime")
        prev = v
        delta = K.rem(K.mul(t, e, ring), g, ring)
        g = K.add(g, delta, ring)
        h, _ = K.divmod_poly(f, g, ring)
        ht = K.rem(K.mul(h, t, ring), g, ring)
        t = K.rem(K.sub(K.add(t, t, ring), K.mul(t, ht, ring), ring), g, ring)
    raise NotCoprime("Hensel lift did not converge within the round budget")


def _lift_split(ring, res_field, f_ring, res_factors, embed, cap):
    """Lift a list of pairwise-coprime monic residue factors of f to full
    ring precision, recursively splitting the list in half."""
    if len(res_factors) == 1:
        return [f_ring]
    half = len(res_factors) // 2
    a_res = [res_field.one()]
    for fac in res_factors[:half]:
        a_res = K.mul(a_res, fac, res_field)
    b_res = [res_field.one()]
    for fac in res_factors[half:]:
        b_res = K.mul(b_res, fac, res_field)
    _, s, _ = K.ext_gcd(b_res, a_res, res_field)
    g0 = [embed(c) for c in a_res]
    h0 = [embed(c) for c in b_res]
    t0 = [embed(c) for c in s]
    g, h = _lift_pair(ring, f_ring, g0, h0, t0, cap)
    return _lift_split(ring, res_field, g, res_factors[:half], embed, cap) + _lift_split(
        ring, res_field, h, res_factors[half:], embed, cap
    )


# ---------------------------------------------------------------------------
# rationals (Zassenhaus at desk scale)
# ---------------------------------------------------------------------------


def factor_rationals(f: Poly):
    """Monic irreducible factors over Q of a squarefree polynomial.

    Intended for degree <= 12 (documented limit); factorization is mod-p
    plus Hensel lifting with subset recombination, which is ample for
    inputs of that size with moderate coefficients.
    """
    if not isinstance(f.field, RationalField):
        raise VFError("factor_rationals requires coefficients in Q")
    if f.degree < 1:
        return []
    if not is_squarefree(f):
        raise VFError("factor_rationals requires squarefree input")
    ints, lc = _to_monic_int_poly(f)
    factors = _factor_monic_int_squarefree(ints)
    out = []
    for g_ints in factors:
        g = Poly.from_int_coeffs(QQ, g_ints)
        if lc != 1:
            g = g.scale_var(Fraction(lc)).monic()
        out.append(g)
    return _sorted_factors(out)


def _to_monic_int_poly(f: Poly):
    """Return (integer coefficient list of a monic model, scale L) where
    roots of the model are L * (roots of f)."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = math.gcd(*ints) if len(ints) > 1 else abs(ints[0])
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    lc = ints[-1]
    if lc == 1:
        return ints, 1
    # y = lc * x makes it monic: lc^(n-1) f(y / lc)
    n = len(ints) - 1
    out = [c * lc ** (n - 1 - i) for i, c in enumerate(ints[:-1])] + [1]
    g = 1
    return out, lc


def _factor_monic_int_squarefree(ints):
    n = len(ints) - 1
    if n == 1:
        return [ints]
    p = _good_prime(ints)
    Fp = PrimeField(p)
    f_mod = [Fp.from_int(c) for c in ints]
    res_factors = [
        list(g.coeffs)
        for g, _ in factor_finite_field(Poly(Fp, f_mod), seed=DEFAULT_SEED)
    ]
    if len(res_factors) == 1:
        return [ints]
    # Mignotte-style bound on factor coefficients
    norm = math.isqrt(sum(c * c for c in ints)) + 1
    bound = 2 ** n * norm
    k = 1
    while p ** k < 2 * bound + 1:
        k += 1
    ring = _ZModRing(p, k)
    f_ring = [ring.from_int(c) for c in ints]
    lifted = _lift_split(
        ring, Fp, f_ring, res_factors, embed=lambda c: c % ring.m, cap=4 * k + 16
    )
    return _recombine_int(ints, lifted, ring)


def _good_prime(ints):
    p = 2
    while True:
        p = _next_prime(p)
        if ints[-1] % p == 0:
            continue
        Fp = PrimeField(p)
        fm = K.trim([c % p for c in ints], Fp)
        if K.deg(fm) != len(ints) - 1:
            continue
        d = K.derivative(fm, Fp)
        if d and K.deg(K.gcd(fm, d, Fp)) == 0:
            return p


def _next_prime(p):
    candidate = p + 1
    while True:
        if all(candidate % d for d in range(2, math.isqrt(candidate) + 1)):
            return candidate
        candidate += 1


def _symmetric(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _recombine_int(f_ints, lifted, ring):
    """Find true integer factors as subsets of the lifted modular factors."""
    m = ring.m
    remaining = list(range(len(lifted)))
    out = []
    f_cur = list(f_ints)
    size = 1
    while 2 * size <= len(remaining):
        hit = False
        for combo in itertools.combinations(remaining, size):
            prod = [1]
            for idx in combo:
                prod = [c % m for c in _int_mul(prod, lifted[idx])]
            cand = [_symmetric(c, m) for c in prod]
            quot = _int_poly_divide(f_cur, cand)
            if quot is not None:
                out.append(cand)
                f_cur = quot
                remaining = [i for i in remaining if i not in combo]
                hit = True
                break
        if not hit:
            size += 1
    if len(f_cur) > 1:
        out.append(f_cur)
    return out


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _int_poly_divide(f, g):
    """Exact division of integer polynomials with g monic, or None."""
    if len(g) > len(f):
        return None
    f = list(f)
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = f[k + len(g) - 1]
        q[k] = c
        for i, gi in enumerate(g):
            f[k + i] -= c * gi
    if any(f[: len(g) - 1]):
        return None
    return q


# ---------------------------------------------------------------------------
# rational function fields k(t)
# ---------------------------------------------------------------------------


def factor_function_field(f: Poly, seed: int = DEFAULT_SEED):
    """Monic irreducible factors over k(t) of a squarefree monic input."""
    Kt = f.field
    if not isinstance(Kt, RationalFunctionField):
        raise VFError("factor_function_field requires a k(t) coefficient field")
    if f.degree < 1:
        return []
    f = f.monic()
    k = Kt.constant_field
    # clear denominators: z = d*x turns f into a monic poly over k[t]
    den = [k.one()]
    for c in f.coeffs:
        g = K.gcd(den, list(c.den), k)
        den = K.mul(K.divmod_poly(den, g, k)[0], list(c.den), k)
    d_elem = Kt.from_poly_coeffs(den)
    n = f.degree
    work = []
    for i, c in enumerate(f.coeffs):
        scale = Kt.one()
        for _ in range(n - i):
            scale = Kt.mul(scale, d_elem)
        work.append(Kt.mul(c, scale))
    # coefficients of the cleared model, as k[t] lists
    coeff_polys = [Kt.poly_coeffs(c) for c in work]
    deg_t = max((len(c) - 1 for c in coeff_polys), default=0)
    factors_model = _factor_bivariate_monic(coeff_polys, k, Kt, deg_t, seed)
    # map back through z = d*x
    out = []
    for g in factors_model:
        out.append(g.scale_var(d_elem).monic())
    return _sorted_factors(out)


def _factor_bivariate_monic(coeff_polys, k, Kt, deg_t, seed=DEFAULT_SEED):
    """Factor a monic-in-z polynomial with k[t] coefficients over k(t)."""
    n = len(coeff_polys) - 1
    f_kt = Poly(Kt, [Kt.from_poly_coeffs(c) for c in coeff_polys])
    if n == 1:
        return [f_kt]
    t0 = _good_evaluation_point(coeff_polys, k)
    # recenter at u = t - t0
    u_coeffs = [K.shift_var(c, t0, k) for c in coeff_polys]
    f0 = K.trim([c[0] if c else k.zero() for c in u_coeffs], k)
    res_factors = [list(g.coeffs) for g, _ in _factor_constants(Poly(k, f0), seed)]
    if len(res_factors) == 1:
        return [f_kt]
    B = deg_t * n + 2
    ring = _SeriesRing(k, B)
    f_ring = [ring._red(c) for c in u_coeffs]
    lifted = _lift_split(
        ring,
        k,
        f_ring,
        res_factors,
        embed=ring.from_constant,
        cap=2 * B.bit_length() + 24,
    )
    return _recombine_series(f_kt, lifted, ring, t0, Kt)


def _good_evaluation_point(coeff_polys, k):
    n = len(coeff_polys) - 1
    for t0 in _constant_candidates(k):
        vals = K.trim([K.evaluate(c, t0, k) for c in coeff_polys], k)
        if K.deg(vals) != n:
            continue
        d = K.derivative(vals, k)
        if d and K.deg(K.gcd(vals, d, k)) == 0:
            return t0
    raise VFError(
        "no squarefree evaluation point in the constant field; "
        "desk-scale factorization over this k(t) needs a larger constant field"
    )


def _constant_candidates(k):
    if k.is_finite():
        if isinstance(k, PrimeField):
            yield from k.elements()
        else:
            import itertools as _it

            for tup in _it.product(list(k.base.elements()), repeat=k.degree):
                yield tuple(tup)
        return
    # characteristic 0: 0, 1, -1, 2, -2, ...
    yield k.zero()
    i = 1
    while True:
        yield k.from_int(i)
        yield k.from_int(-i)
        i += 1


def _recombine_series(f_kt, lifted, ring, t0, Kt):
    k = ring.k
    remaining = list(range(len(lifted)))
    out = []
    f_cur = f_kt
    size = 1
    while 2 * size <= len(remaining):
        hit = False
        for combo in itertools.combinations(remaining, size):
            prod = [ring.one()]
            for idx in combo:
                prod = K.mul(prod, lifted[idx], ring)
            cand = _series_poly_to_kt(prod, ring, t0, Kt)
            q, r = divmod(f_cur, cand)
            if r.is_zero():
                out.append(cand)
                f_cur = q
                remaining = [i for i in remaining if i not in combo]
                hit = True
                break
        if not hit:
            size += 1
    if f_cur.degree > 0:
        out.append(f_cur)
    return out


def _series_poly_to_kt(coeffs, ring, t0, Kt):
    k = ring.k
    neg_t0 = k.neg(t0)
    out = []
    for c in coeffs:
        out.append(Kt.from_poly_coeffs(K.shift_var(list(c), neg_t0, k)))
    return Poly(Kt, out)


# ---------------------------------------------------------------------------
# extension fields (Trager's norm method)
# ---------------------------------------------------------------------------


def factor_over_extension(f: Poly, seed: int = DEFAULT_SEED):
    """Monic irreducible factors over an extension field M = base[y]/(m)
    of a squarefree input, by the norm/resultant method."""
    M = f.field
    if not isinstance(M, ExtensionField):
        raise VFError("factor_over_extension requires an ExtensionField")
    if M.is_finite():
        return [g for g, _ in factor_finite_field(f, seed=seed)]
    if f.degree < 1:
        return []
    f = f.monic()
    base = M.base
    gen = M.gen()
    for c in _shift_candidates(base):
        shifted = _shift_by_generator(f, M, c)
        norm = _norm_poly(shifted, M)
        if norm is None or not is_squarefree(norm):
            continue
        norm_factors = factor_any(norm, seed=seed)
        out = []
        for nf in norm_factors:
            # pull back: gcd(f, nf(x + c*gen)) over M
            nf_M = nf.map_coeffs(M.from_base, M)
            nf_shifted = nf_M.shift(M.mul(M.from_base(c), gen))
            g = poly_gcd(f, nf_shifted)
            if g.degree > 0:
                out.append(g.monic())
        total = sum(g.degree for g in out)
        if total == f.degree:
            return _sorted_factors(out)
    raise VFError("no squarefree norm found within the shift budget")


def _shift_by_generator(f: Poly, M: ExtensionField, c):
    """f(x - c*gen) over M."""
    shift = M.neg(M.mul(M.from_base(c), M.gen()))
    return f.shift(shift)


def _shift_candidates(base, budget: int = 60):
    """Generator-shift multipliers: enough distinct base elements to make
    some norm squarefree for a separable input."""
    if isinstance(base, RationalFunctionField):
        k = base.constant_field
        count = 0
        for c in _constant_candidates(k):
            if k.is_zero(c):
                continue
            yield base.from_constant(c)
            count += 1
            if count >= budget // 2:
                break
        t = base.gen()
        i = 0
        while count < budget:
            yield base.add(t, base.from_int(i))
            i += 1
            count += 1
        return
    i = 1
    for _ in range(budget):
        yield base.from_int(i)
        i = -i if i > 0 else -i + 1


def _norm_poly(f: Poly, M: ExtensionField):
    """Norm of f from M[x] down to base[x], as Res_y(modulus(y), f(x; y))."""
    base = M.base
    L = RationalFunctionField(base, "x_norm")
    d = M.degree
    # f as a polynomial in y with coefficients in base[x] (embedded in L)
    y_coeffs = []
    for j in range(d):
        xs = [M.coeffs(c)[j] for c in f.coeffs]
        y_coeffs.append(L.from_poly_coeffs(xs))
    fy = K.trim(y_coeffs, L)
    mod_y = [L.from_constant(c) for c in M.modulus]
    r = K.resultant(mod_y, fy, L)
    if not L.is_polynomial(r):
        return None
    return Poly(base, L.poly_coeffs(r))


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------


def factor_any(f: Poly, seed: int = DEFAULT_SEED):
    """Monic irreducible factors of a squarefree f over any supported field."""
    F = f.field
    if F.is_finite():
        return [g for g, _ in factor_finite_field(f, seed=seed)]
    if isinstance(F, RationalField):
        return factor_rationals(f)
    if isinstance(F, RationalFunctionField):
        return factor_function_field(f, seed=seed)
    if isinstance(F, ExtensionField):
        return factor_over_extension(f, seed=seed)
    raise VFError(f"no factorization engine for field {F!r}")


def _factor_constants(f: Poly, seed: int = DEFAULT_SEED):
    """[(irreducible, mult)] over a constant field (finite or char 0)."""
    if f.field.is_finite():
        return factor_finite_field(f, seed=seed)
    out = []
    for g, m in squarefree_decomposition(f):
        for h in factor_any(g, seed=seed):
            out.append((h, m))
    return _sorted_factor_pairs(out)


def factor_with_multiplicity(f: Poly, seed: int = DEFAULT_SEED):
    """[(monic irreducible, multiplicity)] over any supported field."""
    out = []
    for g, m in squarefree_decomposition(f):
        for h in factor_any(g, seed=seed):
            out.append((h, m))
    return _sorted_factor_pairs(out)
