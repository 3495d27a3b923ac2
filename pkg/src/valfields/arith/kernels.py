"""Dense polynomial kernels over an arbitrary exact field object.

Polynomials are plain Python lists with index = degree and no trailing
zeros (the zero polynomial is the empty list).  Every function takes the
coefficient field as an explicit argument and only uses its arithmetic
methods, so the same code serves Q, GF(q), extension towers and rational
function fields.
"""

from __future__ import annotations


def trim(c, F):
    while c and F.is_zero(c[-1]):
        c.pop()
    return c


def deg(c):
    return len(c) - 1


def add(a, b, F):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero()
        y = b[i] if i < len(b) else F.zero()
        out.append(F.add(x, y))
    return trim(out, F)


def neg(a, F):
    return [F.neg(x) for x in a]


def sub(a, b, F):
    return add(a, neg(b, F), F)


def scal(a, c, F):
    if F.is_zero(c):
        return []
    return trim([F.mul(x, c) for x in a], F)


def mul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out, F)


def divmod_poly(a, b, F):
    """Quotient and remainder; the leading coefficient of b must be a unit."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = deg(b), b[-1]
    inv_lb = F.inv(lb)
    q = [F.zero()] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], inv_lb)
        k = len(a) - 1 - db
        q[k] = c
        for i in range(db + 1):
            a[k + i] = F.sub(a[k + i], F.mul(c, b[i]))
        a.pop()
        trim(a, F)
    return trim(q, F), a


def rem(a, b, F):
    return divmod_poly(a, b, F)[1]


def monic(a, F):
    if not a:
        return []
    return scal(a, F.inv(a[-1]), F)


def gcd(a, b, F):
    """Monic greatest common divisor (zero inputs handled)."""
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, F)
    return monic(a, F)


def ext_gcd(a, b, F):
    """Return (g, s, t) with g = gcd monic and s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one()], []
    t0, t1 = [], [F.one()]
    while r1:
        q, r = divmod_poly(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, F), F)
        t0, t1 = t1, sub(t0, mul(q, t1, F), F)
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return scal(r0, c, F), scal(s0, c, F), scal(t0, c, F)


def evaluate(a, x, F):
    acc = F.zero()
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(a, F):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(a[i], F.from_int(i)))
    return trim(out, F)


def shift_var(a, c, F):
    """a(x + c) by Horner composition."""
    out = []
    for coeff in reversed(a):
        out = mul(out, [c, F.one()], F)
        out = add(out, [coeff], F)
    return out


def pow_mod(a, n, m, F):
    """a**n mod m by square and multiply."""
    result = [F.one()]
    base = rem(a, m, F)
    while n > 0:
        if n & 1:
            result = rem(mul(result, base, F), m, F)
        base = rem(mul(base, base, F), m, F)
        n >>= 1
    return result


def resultant(a, b, F):
    """Resultant via the Euclidean recursion; exact over any field."""
    if not a or not b:
        return F.zero()
    r = F.one()
    sign = F.one()
    while True:
        da, db = deg(a), deg(b)
        if db == 0:
            return F.mul(r, F.mul(sign, _pow_elem(b[0], da, F)))
        rest = rem(a, b, F)
        if not rest:
            return F.zero()
        dr = deg(rest)
        r = F.mul(r, _pow_elem(b[-1], da - dr, F))
        if (da % 2) and (db % 2):
            sign = F.neg(sign)
        a, b = b, rest


def _pow_elem(x, n, F):
    out = F.one()
    for _ in range(n):
        out = F.mul(out, x)
    return out
