"""Exact ground fields: the rationals, prime fields GF(p) and extensions GF(p^k).

A field object owns the arithmetic; elements are passed around as *raw*
values so polynomial code can run without wrapper overhead:

* ``Q``          -- :class:`fractions.Fraction`
* ``GF(p)``      -- ``int`` in ``[0, p)``
* ``GF(p^k)``    -- ``int`` packing the residue polynomial ``sum c_i t^i``
                    as ``sum c_i p^i`` (base-``p`` digits, ``0 <= c_i < p``)

:class:`FieldElem` wraps a raw value together with its field for user-facing
code (operators, printing, hashing).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
import random

__all__ = [
    "Field", "RationalField", "PrimeField", "ExtensionField", "FieldElem",
    "FieldError", "ExtensionBoundExceeded", "BadPrimeError",
    "QQ", "make_field", "gf", "parse_field", "is_prime", "embedding",
    "rational_reduce", "find_roots", "extend_to_split", "DEFAULT_EXT_BOUND",
]

DEFAULT_EXT_BOUND = 6
# extension fields up to this order get log/antilog (Zech) tables
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


class BadPrimeError(FieldError):
    """A rational has a denominator divisible by the reduction prime."""


class ExtensionBoundExceeded(FieldError):
    """Splitting would need a field extension beyond the allowed degree."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return tuple(out)


class Field:
    """Common interface. Subclasses implement raw-value arithmetic."""

    characteristic: int = 0
    degree: int = 1  # degree over the prime field

    # --- construction of raw values -------------------------------------
    zero = None
    one = None

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, fr: Fraction):
        num = self.from_int(fr.numerator)
        if fr.denominator == 1:
            return num
        den = self.from_int(fr.denominator)
        if self.is_zero(den):
            raise BadPrimeError(f"denominator {fr.denominator} vanishes in {self}")
        return self.div(num, den)

    # --- arithmetic ------------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    # --- misc ------------------------------------------------------------
    @property
    def order(self):
        return None

    def render(self, a) -> str:
        raise NotImplementedError

    def elements(self):
        raise FieldError(f"{self} is infinite")

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldError("descriptor mismatch")
            return value
        if isinstance(value, Fraction):
            return FieldElem(self, self.from_fraction(value))
        if isinstance(value, int):
            return FieldElem(self, self.from_int(value))
        if isinstance(value, str):
            return FieldElem(self, self.parse_element(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    __call__ = elem

    def parse_element(self, text: str):
        from .polynomial import parse_poly

        p = parse_poly(text, self, ())
        if p.is_zero():
            return self.zero
        return p.terms[()]

    def spec(self) -> str:
        """Field specification text accepted by :func:`parse_field`."""
        return str(self)

    def random_element(self, rng: random.Random):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, fr):
        return Fraction(fr)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def pow(self, a, n):
        return Fraction(a) ** n

    def render(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def random_element(self, rng):
        return Fraction(rng.randint(-20, 20), rng.randint(1, 20))


QQ = RationalField()


class PrimeField(Field):
    degree = 1
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.characteristic = p
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def order(self):
        return self.p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def neg(self, a):
        return self.p - a if a else 0

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def render(self, a):
        return str(a)

    def elements(self):
        return range(self.p)

    def random_element(self, rng):
        return rng.randrange(self.p)


# ---------------------------------------------------------------------------
# GF(p)[t] helpers on coefficient lists (low degree first), used for moduli
# ---------------------------------------------------------------------------

def _gfp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_mulmod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
    return _gfp_trim(prod[:k])


def _gfp_powmod(a, n, mod, p):
    result = [1]
    while n:
        if n & 1:
            result = _gfp_mulmod(result, a, mod, p)
        n >>= 1
        if n:
            a = _gfp_mulmod(a, a, mod, p)
    return result


def _gfp_rem(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        _gfp_trim(a)
    return a


def _gfp_gcd(a, b, p):
    a, b = _gfp_trim(list(a)), _gfp_trim(list(b))
    while b:
        a, b = b, _gfp_rem(a, b, p)
    return a


def _gfp_irreducible(mod, p) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    n = len(mod) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob_power(e):
        r = x
        for _ in range(e):
            r = _gfp_powmod(r, p, mod, p)
        return r

    if frob_power(n) != x:
        return False
    for r in _prime_factors(n):
        h = frob_power(n // r)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _gfp_gcd(mod, _gfp_trim(diff), p)
        if len(g) > 1:
            return False
    return True


def _t_order(mod, p):
    """Multiplicative order of t modulo an irreducible ``mod``."""
    n = len(mod) - 1
    group = p ** n - 1
    e = group
    for r in _prime_factors(group):
        while e % r == 0 and _gfp_powmod([0, 1], e // r, mod, p) == [1]:
            e //= r
    return e


class ExtensionField(Field):
    """GF(p^k) = GF(p)[t] / (modulus).  ``modulus`` is low-degree-first, monic."""

    def __init__(self, p: int, modulus):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        modulus = tuple(c % p for c in modulus)
        while modulus and modulus[-1] == 0:
            modulus = modulus[:-1]
        if len(modulus) < 2:
            raise FieldError("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if not _gfp_irreducible(list(modulus), p):
            raise FieldError(f"modulus {_render_t(modulus, p)} is reducible over GF({p})")
        self.characteristic = p
        self.p = p
        self.modulus = modulus
        self.degree = k = len(modulus) - 1
        self.q = p ** k
        self.zero = 0
        self.one = 1
        self._top = p ** (k - 1)
        self._logs = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # tables ---------------------------------------------------------------
    def _times_t(self, a):
        p, k = self.p, self.degree
        a *= p
        top, a = divmod(a, self.q)
        if top:
            digits = self._digits(a)
            for i in range(k):
                digits[i] = (digits[i] - top * self.modulus[i]) % p
            a = self._undigits(digits)
        return a

    def _build_tables(self):
        q, p = self.q, self.p
        mod = list(self.modulus)
        if _t_order(mod, p) == q - 1:
            exp = [1] * (q - 1)
            for i in range(1, q - 1):
                exp[i] = self._times_t(exp[i - 1])
        else:
            gen = self._find_generator_slow()
            exp = [1] * (q - 1)
            for i in range(1, q - 1):
                exp[i] = self._slow_mul(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        # zech[i] = log(1 + g^i), or -1 when 1 + g^i = 0
        zech = [0] * (q - 1)
        for i, v in enumerate(exp):
            d0 = v % p
            w = v - d0 + (d0 + 1) % p
            zech[i] = log[w] if w else -1
        self._exp, self._logs, self._zech = exp, log, zech

    def _find_generator_slow(self):
        group = self.q - 1
        factors = _prime_factors(group)
        for g in range(2, self.q):
            if all(self._slow_pow(g, group // r) != 1 for r in factors):
                return g
        raise FieldError("no generator found")

    # digits ---------------------------------------------------------------
    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _undigits(self, digits):
        a = 0
        for c in reversed(digits):
            a = a * self.p + c
        return a

    def _slow_mul(self, a, b):
        prod = _gfp_mulmod(_gfp_trim(self._digits(a)), _gfp_trim(self._digits(b)),
                           list(self.modulus), self.p)
        return self._undigits(prod + [0] * (self.degree - len(prod)))

    def _slow_pow(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = self._slow_mul(result, a)
            n >>= 1
            if n:
                a = self._slow_mul(a, a)
        return result

    # Field interface ------------------------------------------------------
    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def spec(self):
        return f"GF({self.p}^{self.degree}; modulus={_render_t(self.modulus, self.p)})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.p == self.p and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    @property
    def order(self):
        return self.q

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        logs = self._logs
        if logs is not None:
            la, lb = logs[a], logs[b]
            z = self._zech[(lb - la) % (self.q - 1)]
            if z < 0:
                return 0
            return self._exp[(la + z) % (self.q - 1)]
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        if self._logs is not None:
            # -1 = g^((q-1)/2) for odd q
            return self._exp[(self._logs[a] + (self.q - 1) // 2) % (self.q - 1)]
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        logs = self._logs
        if logs is not None:
            return self._exp[(logs[a] + logs[b]) % (self.q - 1)]
        return self._slow_mul(a, b)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self._logs is not None:
            return self._exp[(-self._logs[a]) % (self.q - 1)]
        return self._slow_pow(a, self.q - 2)

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError(f"division by zero in {self}")
        if not a:
            return 0
        if self._logs is not None:
            return self._exp[(self._logs[a] - self._logs[b]) % (self.q - 1)]
        return self._slow_mul(a, self.inv(b))

    def pow(self, a, n):
        if not a:
            if n < 0:
                raise ZeroDivisionError(f"division by zero in {self}")
            return 1 if n == 0 else 0
        if self._logs is not None:
            return self._exp[(self._logs[a] * n) % (self.q - 1)]
        if n < 0:
            a, n = self.inv(a), -n
        return self._slow_pow(a, n % (self.q - 1) if n else 0)

    def generator_element(self):
        """The class of t."""
        return self.p if self.degree > 1 else 0

    def render(self, a):
        return _render_t(self._digits(a), self.p)

    def elements(self):
        return range(self.q)

    def random_element(self, rng):
        return rng.randrange(self.q)


def _render_t(digits, p):
    parts = []
    for i in range(len(digits) - 1, -1, -1):
        c = digits[i] % p
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "t" if i == 1 else f"t^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# user-facing element wrapper
# ---------------------------------------------------------------------------

class FieldElem:
    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError(f"descriptor mismatch: {self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.elem(other).value
        return NotImplemented

    def _wrap(self, v):
        return FieldElem(self.field, v)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        try:
            b = self._coerce(other)
        except FieldError:
            return False
        if b is NotImplemented:
            return NotImplemented
        return self.value == b

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.render(self.value)

    def __repr__(self):
        return f"FieldElem({self.field}, {self})"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _parse_modulus(text: str, p: int):
    from .polynomial import parse_poly

    f = parse_poly(text, PrimeField(p), ("t",))
    if f.is_zero():
        raise FieldError("zero modulus")
    deg = f.degree()
    coeffs = [0] * (deg + 1)
    for (e,), c in f.terms.items():
        coeffs[e] = c
    return coeffs


def make_field(p: int, modulus=None) -> Field:
    """Validated field descriptor: ``Q`` for p=0, GF(p), or GF(p)[t]/(modulus).

    ``modulus`` may be polynomial text in ``t`` or a coefficient sequence
    (low degree first).
    """
    if p == 0:
        if modulus is not None:
            raise FieldError("an extension modulus needs positive characteristic")
        return QQ
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if modulus is None:
        return PrimeField(p)
    coeffs = _parse_modulus(modulus, p) if isinstance(modulus, str) else list(modulus)
    if len(coeffs) == 2 and coeffs[-1] % p == 1:
        return PrimeField(p)
    return ExtensionField(p, coeffs)


def _monic_candidates(p, n):
    # constant term first varies fastest; skip constant term 0 (reducible)
    for idx in range(p ** n):
        low = []
        v = idx
        for _ in range(n):
            v, r = divmod(v, p)
            low.append(r)
        if low[0] == 0:
            continue
        yield low + [1]


@lru_cache(maxsize=None)
def gf(p: int, k: int = 1) -> Field:
    """The canonical GF(p^k): first primitive monic modulus in scan order."""
    if k == 1:
        return PrimeField(p)
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    first_irreducible = None
    for cand in _monic_candidates(p, k):
        if _gfp_irreducible(cand, p):
            if first_irreducible is None:
                first_irreducible = cand
            if _t_order(cand, p) == p ** k - 1:
                return ExtensionField(p, cand)
    return ExtensionField(p, first_irreducible)


_FIELD_RE = re.compile(
    r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*modulus\s*=\s*([^)]*))?\)\s*$")


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``GF(p)``, ``GF(p^k)`` or ``GF(p^k; modulus=<poly in t>)``."""
    s = text.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = _FIELD_RE.match(s)
    if not m:
        raise FieldError(f"bad field specification {text!r}")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    mod = m.group(3)
    if mod is None:
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        return gf(p, k)
    field = make_field(p, mod)
    if field.degree != k:
        raise FieldError(f"modulus degree {field.degree} does not match k={k}")
    return field


def rational_reduce(a, p: int) -> int:
    """Image of a rational number in GF(p)."""
    a = Fraction(a)
    if a.denominator % p == 0:
        raise BadPrimeError(f"{a} has denominator divisible by {p}")
    return a.numerator * pow(a.denominator, -1, p) % p


_EMBED_CACHE: dict = {}


def embedding(src: Field, dst: Field):
    """Canonical embedding ``src -> dst`` of finite fields, as a raw-value map.

    The generator of ``src`` goes to the smallest-encoded root of its modulus
    in ``dst``; prime-field values are unchanged.
    """
    if src == dst:
        return lambda a: a
    if src.characteristic != dst.characteristic or src.characteristic == 0:
        raise FieldError(f"no embedding {src} -> {dst}")
    if dst.degree % src.degree:
        raise FieldError(f"{src} is not a subfield of {dst}")
    if src.degree == 1:
        return lambda a: dst.from_int(a)
    key = (src, dst)
    if key not in _EMBED_CACHE:
        from . import dense

        mod = [dst.from_int(c) for c in src.modulus]
        roots = sorted(dense.distinct_roots(dst, mod))
        if not roots:
            raise FieldError(f"modulus of {src} has no root in {dst}")
        r = roots[0]
        powers = [dst.one]
        for _ in range(src.degree - 1):
            powers.append(dst.mul(powers[-1], r))
        _EMBED_CACHE[key] = powers

    powers = _EMBED_CACHE[key]

    def embed(a):
        acc = dst.zero
        for i, c in enumerate(src._digits(a)):
            if c:
                acc = dst.add(acc, dst.mul(dst.from_int(c), powers[i]))
        return acc

    return embed


def find_roots(coeffs, field: Field) -> list:
    """Roots (with multiplicity, sorted) of a univariate polynomial in ``field``.

    ``coeffs`` are raw values, lowest degree first.
    """
    from . import dense

    return dense.roots_with_multiplicity(field, list(coeffs))


def extend_to_split(coeffs, field: Field, ext_bound: int = DEFAULT_EXT_BOUND):
    """Smallest extension of ``field`` over which the polynomial splits.

    Returns ``(new_field, roots)``; roots are raw values of ``new_field``
    (with multiplicity).  ``ext_bound`` caps the degree of the extension
    over ``field``.
    """
    from . import dense

    if field.characteristic == 0:
        raise FieldError("extend_to_split needs positive characteristic")
    f = dense.trim(list(coeffs))
    if not f:
        raise FieldError("zero polynomial")
    e = dense.splitting_degree(field, f, ext_bound)
    target = gf(field.characteristic, field.degree * e) if e > 1 else field
    emb = embedding(field, target)
    g = [emb(c) for c in f]
    return target, dense.roots_with_multiplicity(target, g)
