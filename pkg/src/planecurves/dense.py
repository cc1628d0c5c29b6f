"""Dense univariate polynomials over a :class:`~planecurves.field_arith.Field`.

Polynomials are lists of raw coefficients, lowest degree first, with no
trailing zeros (``[]`` is the zero polynomial).  Every function takes the
field as its first argument.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from .field_arith import ExtensionBoundExceeded, FieldError

_SCAN_LIMIT = 1 << 17  # field_order * degree below which roots are found by scanning


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _trim_zero(K, a):
    while a and K.is_zero(a[-1]):
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


def add(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return _trim_zero(K, out)


def sub(K, a, b):
    out = list(a) + [K.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = K.sub(out[i], c)
    return _trim_zero(K, out)


def neg(K, a):
    return [K.neg(c) for c in a]


def scale(K, a, c):
    if K.is_zero(c):
        return []
    return [K.mul(x, c) for x in a]


def mul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    kadd, kmul, zero = K.add, K.mul, K.zero
    for i, x in enumerate(a):
        if x == zero:
            continue
        for j, y in enumerate(b):
            if y != zero:
                out[i + j] = kadd(out[i + j], kmul(x, y))
    return _trim_zero(K, out)


def divmod_(K, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = K.inv(b[-1])
    quot = [K.zero] * (len(a) - db)
    ksub, kmul = K.sub, K.mul
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if K.is_zero(c):
            continue
        c = kmul(c, inv)
        quot[i - db] = c
        shift = i - db
        for j in range(db):
            if not K.is_zero(b[j]):
                a[shift + j] = ksub(a[shift + j], kmul(c, b[j]))
        a[i] = K.zero
    return _trim_zero(K, quot), _trim_zero(K, a[:db])


def rem(K, a, b):
    return divmod_(K, a, b)[1]


def monic(K, a):
    if not a:
        return []
    inv = K.inv(a[-1])
    return [K.mul(c, inv) for c in a]


def gcd(K, a, b):
    """Monic gcd by Euclid."""
    a, b = _trim_zero(K, list(a)), _trim_zero(K, list(b))
    if not a and not b:
        raise ValueError("gcd of two zero polynomials")
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def deriv(K, a):
    return _trim_zero(K, [K.mul(K.from_int(i), a[i]) for i in range(1, len(a))])


def evaluate(K, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def powmod(K, base, n: int, mod):
    result = [K.one]
    base = rem(K, base, mod)
    while n:
        if n & 1:
            result = rem(K, mul(K, result, base), mod)
        n >>= 1
        if n:
            base = rem(K, mul(K, base, base), mod)
    return rem(K, result, mod)


def pth_root(K, a):
    """``u`` with ``u^p = a`` for ``a`` a polynomial in ``X^p`` over a finite field."""
    p = K.characteristic
    e = K.order // p  # c^(q/p) is the p-th root of c in GF(q)
    out = []
    for i in range(0, len(a), p):
        out.append(K.pow(a[i], e))
    if any(not K.is_zero(a[i]) for i in range(len(a)) if i % p):
        raise ValueError("not a p-th power")
    return _trim_zero(K, out)


def radical(K, a):
    """Monic squarefree part (product of distinct irreducible factors)."""
    a = _trim_zero(K, list(a))
    if not a:
        raise ValueError("squarefree part of zero")
    if len(a) == 1:
        return [K.one]
    da = deriv(K, a)
    if not da:
        return radical(K, pth_root(K, a))
    g = gcd(K, a, da)
    r1 = divmod_(K, a, g)[0]
    # factors of g not already in r1 have multiplicity divisible by p
    h = gcd(K, g, r1)
    while len(h) > 1:
        g = divmod_(K, g, h)[0]
        h = gcd(K, g, r1)
    if len(g) > 1:
        r1 = mul(K, r1, radical(K, g))
    return monic(K, r1)


def is_squarefree(K, a) -> bool:
    return len(radical(K, a)) == len(_trim_zero(K, list(a)))


def splitting_degree(K, a, bound: int) -> int:
    """Smallest ``e`` such that ``a`` splits completely over the degree-``e``
    extension of the finite field ``K``."""
    h = radical(K, a)
    if len(h) <= 2:
        return 1
    Q = K.order
    x = [K.zero, K.one]
    cur = x
    for e in range(1, bound + 1):
        cur = powmod(K, cur, Q, h)
        if cur == rem(K, x, h):
            return e
    raise ExtensionBoundExceeded(
        f"polynomial of degree {len(a) - 1} does not split within degree {bound} over {K}")


def factor_degrees_lcm(K, a, limit: int = 64) -> int:
    """lcm of irreducible factor degrees via distinct-degree factorization."""
    h = radical(K, a)
    Q = K.order
    x = [K.zero, K.one]
    cur, e, result = x, 0, 1
    while len(h) > 1:
        e += 1
        if e > limit:
            raise ExtensionBoundExceeded("factor degree exceeds limit")
        if 2 * e > len(h) - 1:
            result = lcm(result, len(h) - 1)
            break
        cur = powmod(K, cur, Q, h)
        g = gcd(K, h, sub(K, cur, x))
        if len(g) > 1:
            result = lcm(result, e)
            h = divmod_(K, h, g)[0]
            cur = rem(K, cur, h)
    return result


def _split_linear(K, g, rng):
    """Roots of a monic product of distinct linear factors over finite K."""
    n = len(g) - 1
    if n == 0:
        return []
    if n == 1:
        return [K.neg(g[0])]
    Q = K.order
    if Q * n <= _SCAN_LIMIT:
        return [x for x in K.elements() if K.is_zero(evaluate(K, g, x))]
    while True:
        a = K.random_element(rng)
        if Q % 2:
            w = powmod(K, [a, K.one], (Q - 1) // 2, g)
            d = gcd(K, g, sub(K, w, [K.one]))
        else:
            m = K.degree
            base = [K.zero, a] if not K.is_zero(a) else [K.zero, K.one]
            term = rem(K, base, g)
            tr = term
            for _ in range(m - 1):
                term = rem(K, mul(K, term, term), g)
                tr = add(K, tr, term)
            if not tr:
                continue
            d = gcd(K, g, tr)
        if 1 < len(d) < len(g):
            return _split_linear(K, d, rng) + _split_linear(K, divmod_(K, g, d)[0], rng)


def distinct_roots(K, a) -> list:
    """Distinct roots of ``a`` lying in the finite field ``K``, sorted."""
    a = _trim_zero(K, list(a))
    if not a:
        raise ValueError("roots of zero polynomial")
    if len(a) == 1:
        return []
    h = radical(K, a)
    if len(h) == 2:
        return [K.neg(h[0])]
    x = [K.zero, K.one]
    g = gcd(K, h, sub(K, powmod(K, x, K.order, h), x))
    rng = random.Random(0x5EED)
    return sorted(_split_linear(K, monic(K, g), rng))


def _rational_roots(a):
    a = [Fraction(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    roots = []
    low = 0
    while low < len(a) and a[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    b = a[low:]
    if len(b) <= 1:
        return roots
    den = 1
    for c in b:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in b]
    c0, cn = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out, i = set(), 1
        while i * i <= n:
            if n % i == 0:
                out.update((i, n // i))
            i += 1
        return out

    for num in divisors(c0):
        for dd in divisors(cn):
            for sgn in (1, -1):
                r = Fraction(sgn * num, dd)
                acc = 0
                for c in reversed(ints):
                    acc = acc * r + c
                if acc == 0 and r not in roots:
                    roots.append(r)
    return sorted(roots)


def roots_with_multiplicity(K, a) -> list:
    """All roots in ``K`` repeated by multiplicity.  Over Q only rational roots."""
    a = _trim_zero(K, list(a))
    if not a:
        raise ValueError("roots of zero polynomial")
    if K.characteristic == 0:
        distinct = _rational_roots(a)
    else:
        distinct = distinct_roots(K, a)
    out = []
    for r in distinct:
        lin = [K.neg(r), K.one]
        f = a
        while True:
            q, rr = divmod_(K, f, lin)
            if rr:
                break
            out.append(r)
            f = q
    return out


def resultant(K, a, b, n: int | None = None, m: int | None = None):
    """Sylvester resultant Res_{n,m}(a, b) with formal degrees ``n``, ``m``.

    Formal degrees may exceed the actual ones (leading coefficients may have
    vanished after specialization).
    """
    a = _trim_zero(K, list(a))
    b = _trim_zero(K, list(b))
    n = len(a) - 1 if n is None else n
    m = len(b) - 1 if m is None else m
    if n < 0 or m < 0:
        raise ValueError("negative formal degree")
    if not a:
        return K.pow(b[0] if b else K.zero, n) if m == 0 else K.zero
    if not b:
        return K.pow(a[0], m) if n == 0 else K.zero
    na, mb = len(a) - 1, len(b) - 1
    factor = K.one
    if na < n and mb < m:
        return K.zero
    if na < n:
        # Res_{n,m} = (-1)^{m(n-na)} b_m^{n-na} Res_{na,m}
        factor = K.pow(b[-1], n - na)
        if (m * (n - na)) % 2:
            factor = K.neg(factor)
    elif mb < m:
        # Res_{n,m} = a_n^{m-mb} Res_{n,mb}; the signs cancel
        factor = K.pow(a[-1], m - mb)
    return K.mul(factor, _res_exact(K, a, b))


def _res_exact(K, a, b):
    n, m = len(a) - 1, len(b) - 1
    result = K.one
    while True:
        if m == 0:
            return K.mul(result, K.pow(b[0], n))
        if n == 0:
            return K.mul(result, K.pow(a[0], m))
        r = rem(K, a, b)
        if not r:
            return K.zero
        k = len(r) - 1
        f = K.pow(b[-1], n - k)
        if (n * m) % 2:
            f = K.neg(f)
        result = K.mul(result, f)
        a, b, n, m = b, r, m, k


def interpolate(K, xs, ys):
    """Newton interpolation through ``(xs[i], ys[i])``; xs pairwise distinct."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = K.div(K.sub(coef[i], coef[i - 1]), K.sub(xs[i], xs[i - j]))
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (X - xs[i]) + coef[i]
        shifted = [K.zero] + poly
        for t in range(len(poly)):
            shifted[t] = K.sub(shifted[t], K.mul(poly[t], xs[i]))
        shifted[0] = K.add(shifted[0], coef[i])
        poly = shifted
    return _trim_zero(K, poly)


def check_field(K):
    if K.characteristic == 0:
        raise FieldError("operation needs a finite field")
