"""Sparse exact multivariate polynomials.

A :class:`MultiPoly` maps exponent tuples (one entry per declared variable) to
nonzero raw coefficients of a :class:`~planecurves.field_arith.Field`.  Values are
immutable; every operation returns a new polynomial.

Text grammar (the wire format for curve files and reports)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ['/' INT] | NAME | '(' expr ')'

Multiplication must be written explicitly.  ``t`` names the generator of an
extension field when it is not one of the declared variables.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from itertools import product
from math import comb

from . import dense
from .field_arith import ExtensionField, Field, FieldError, QQ


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MultiPoly:
    __slots__ = ("field", "variables", "terms", "_hash")

    def __init__(self, field: Field, variables, terms=None, _clean=False):
        self.field = field
        self.variables = tuple(variables)
        if terms is None:
            terms = {}
        elif not _clean:
            n = len(self.variables)
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                if not field.is_zero(c):
                    clean[e] = c
            terms = clean
        self.terms = terms
        self._hash = None

    # --- constructors ----------------------------------------------------
    @classmethod
    def constant(cls, field, variables, c):
        n = len(tuple(variables))
        return cls(field, variables, {(0,) * n: c})

    @classmethod
    def var(cls, field, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(field, variables, {tuple(e): field.one}, _clean=True)

    def _new(self, terms):
        return MultiPoly(self.field, self.variables, terms, _clean=True)

    def zero_like(self):
        return self._new({})

    def const_like(self, c):
        return MultiPoly.constant(self.field, self.variables, c)

    # --- basic predicates -----------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), self.field.zero)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        i = self._index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return len({sum(e) for e in self.terms}) == 1

    def _index(self, var) -> int:
        if isinstance(var, int):
            return var
        return self.variables.index(var)

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            return self._coerce(other)
        if other.field != self.field or other.variables != self.variables:
            raise FieldError("descriptor or variable mismatch")
        return other

    def _coerce(self, value):
        K = self.field
        if isinstance(value, Fraction):
            return self.const_like(K.from_fraction(value))
        if isinstance(value, int):
            return self.const_like(K.from_int(value))
        raise TypeError(f"cannot combine MultiPoly with {type(value).__name__}")

    # --- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        K = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = K.add(out[e], c)
                if K.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return self._new({e: K.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        K = self.field
        if not self.terms or not other.terms:
            return self.zero_like()
        out = {}
        kadd, kmul, iszero = K.add, K.mul, K.is_zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = kmul(c1, c2)
                if e in out:
                    out[e] = kadd(out[e], c)
                else:
                    out[e] = c
        return self._new({e: c for e, c in out.items() if not iszero(c)})

    __rmul__ = __mul__

    def scale(self, c):
        K = self.field
        if K.is_zero(c):
            return self.zero_like()
        return self._new({e: K.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.const_like(self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.field == other.field and self.variables == other.variables
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r} over {self.field})"

    def __str__(self):
        return format_poly(self)

    # --- structure -------------------------------------------------------
    def homogeneous_component(self, k: int):
        return self._new({e: c for e, c in self.terms.items() if sum(e) == k})

    def partial(self, var):
        i = self._index(var)
        K = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = K.mul(K.from_int(e[i]), c)
                if not K.is_zero(v):
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return self._new(out)

    def evaluate(self, values):
        """Evaluate at raw values (one per variable)."""
        K = self.field
        acc = K.zero
        cache = {}
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = K.pow(values[i], k)
                    t = K.mul(t, cache[key])
            acc = K.add(acc, t)
        return acc

    def __call__(self, *values):
        return self.evaluate(values)

    def substitute(self, mapping: dict):
        """Substitute polynomials (same field and variables) for variables."""
        idx = {self._index(k): v for k, v in mapping.items()}
        images = []
        for i, name in enumerate(self.variables):
            if i in idx:
                v = idx[i]
                images.append(v if isinstance(v, MultiPoly) else self._coerce(v))
            else:
                images.append(MultiPoly.var(self.field, self.variables, name))
        return compose(self, images)

    def map_coefficients(self, field: Field, func):
        return MultiPoly(field, self.variables,
                         {e: func(c) for e, c in self.terms.items()})

    def change_variables(self, variables, positions):
        """Re-key into ``variables``; old variable i goes to position ``positions[i]``."""
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if positions[i] is None:
                        raise ValueError("dropping a variable that occurs")
                    ne[positions[i]] += k
            out[tuple(ne)] = c
        return MultiPoly(self.field, variables, out, _clean=True)

    def coefficients_in(self, var) -> dict:
        """``{k: coefficient of var^k}`` with coefficients in the same ring."""
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: self._new(t) for k, t in out.items()}

    def univariate(self, var=None) -> list:
        """Dense coefficient list when only ``var`` occurs."""
        i = 0 if var is None else self._index(var)
        if not self.terms:
            return []
        deg = max(e[i] for e in self.terms)
        out = [self.field.zero] * (deg + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate")
            out[e[i]] = c
        return out

    def content_monomial(self):
        """Exponent-wise minimum over all terms."""
        if not self.terms:
            return (0,) * len(self.variables)
        return tuple(min(col) for col in zip(*self.terms))

    def leading_term(self):
        """Lex-largest exponent (variable order as declared) and coefficient."""
        e = max(self.terms)
        return e, self.terms[e]


# --- construction helpers -----------------------------------------------

def from_univariate(coeffs, field, variables, var):
    variables = tuple(variables)
    i = variables.index(var)
    out = {}
    for k, c in enumerate(coeffs):
        if not field.is_zero(c):
            e = [0] * len(variables)
            e[i] = k
            out[tuple(e)] = c
    return MultiPoly(field, variables, out, _clean=True)


def compose(f: MultiPoly, images) -> MultiPoly:
    """f(images[0], images[1], ...)."""
    if not images:
        return f
    K = f.field
    g0 = images[0]
    result = g0.zero_like()
    powers = [dict() for _ in images]

    def pw(i, k):
        cache = powers[i]
        if k not in cache:
            if k == 0:
                cache[k] = g0.const_like(K.one)
            elif k - 1 in cache:
                cache[k] = cache[k - 1] * images[i]
            else:
                cache[k] = images[i] ** k
        return cache[k]

    for e, c in f.terms.items():
        t = g0.const_like(c)
        for i, k in enumerate(e):
            if k:
                t = t * pw(i, k)
        result = result + t
    return result


def dehomogenize(f: MultiPoly, var, value=None) -> MultiPoly:
    """Set ``var`` to ``value`` (default 1) and drop it from the variable list."""
    K = f.field
    i = f._index(var)
    value = K.one if value is None else value
    variables = f.variables[:i] + f.variables[i + 1:]
    out = {}
    for e, c in f.terms.items():
        ne = e[:i] + e[i + 1:]
        v = K.mul(c, K.pow(value, e[i])) if e[i] else c
        out[ne] = K.add(out[ne], v) if ne in out else v
    return MultiPoly(K, variables, out)


def homogenize(f: MultiPoly, var: str, degree: int | None = None, position: int | None = None):
    """Insert ``var`` (at ``position``, default last) making every term of ``degree``."""
    d = f.degree() if degree is None else degree
    if f.terms and d < f.degree():
        raise ValueError("homogenize target degree below actual degree")
    pos = len(f.variables) if position is None else position
    variables = f.variables[:pos] + (var,) + f.variables[pos:]
    out = {}
    for e, c in f.terms.items():
        out[e[:pos] + (d - sum(e),) + e[pos:]] = c
    return MultiPoly(f.field, variables, out, _clean=True)


def linear_substitute(f: MultiPoly, mapping: dict) -> MultiPoly:
    """Substitute polynomials (typically linear forms) given as MultiPoly or text."""
    conv = {}
    for k, v in mapping.items():
        if isinstance(v, str):
            v = parse_poly(v, f.field, f.variables)
        conv[k] = v
    return f.substitute(conv)


def translate(f: MultiPoly, point) -> MultiPoly:
    """f(v_0 + point_0, v_1 + point_1, ...): moves ``point`` to the origin."""
    K = f.field
    images = []
    for i, name in enumerate(f.variables):
        v = MultiPoly.var(K, f.variables, name)
        if not K.is_zero(point[i]):
            v = v + v.const_like(point[i])
        images.append(v)
    return compose(f, images)


def order_at_origin(f: MultiPoly) -> int:
    if f.is_zero():
        raise ValueError("order of the zero polynomial")
    return min(sum(e) for e in f.terms)


def lowest_form(f: MultiPoly) -> MultiPoly:
    return f.homogeneous_component(order_at_origin(f))


# --- univariate wrappers ------------------------------------------------

def gcd_univariate(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    K = f.field
    if len(f.variables) != 1:
        raise ValueError("gcd_univariate needs a univariate ring")
    return from_univariate(dense.gcd(K, f.univariate(), g.univariate()), K, f.variables, f.variables[0])


def squarefree_part(f: MultiPoly) -> MultiPoly:
    K = f.field
    if len(f.variables) != 1:
        raise ValueError("squarefree_part needs a univariate ring")
    return from_univariate(dense.radical(K, f.univariate()), K, f.variables, f.variables[0])


def binary_form_roots(form: MultiPoly):
    """Roots in the field of a nonzero binary form in (u, v).

    Returns ``(points, unsplit)``: points are ``(u, 1)`` or ``(1, 0)`` pairs
    repeated by multiplicity, ``unsplit`` the degree left over by factors
    without roots in the field.
    """
    K = form.field
    d = form.degree()
    v_val = min(e[1] for e in form.terms)
    g = [K.zero] * (d + 1)
    for e, c in form.terms.items():
        g[e[0]] = c
    g = dense._trim_zero(K, g)
    pts = [(K.one, K.zero)] * v_val
    if len(g) > 1:
        pts += [(r, K.one) for r in dense.roots_with_multiplicity(K, g)]
    return pts, d - len(pts)


# --- exact division and resultants --------------------------------------

def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a / b, raising ValueError when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    K = a.field
    lb, cb = b.leading_term()
    inv = K.inv(cb)
    rem = dict(a.terms)
    quot = {}
    bterms = list(b.terms.items())
    while rem:
        le = max(rem)
        lc = rem[le]
        qe = tuple(x - y for x, y in zip(le, lb))
        if min(qe) < 0:
            raise ValueError("inexact polynomial division")
        qc = K.mul(lc, inv)
        quot[qe] = qc
        for e, c in bterms:
            te = tuple(x + y for x, y in zip(e, qe))
            v = K.sub(rem.get(te, K.zero), K.mul(qc, c))
            if K.is_zero(v):
                rem.pop(te, None)
            else:
                rem[te] = v
    return a._new(quot)


def bareiss_det(matrix):
    """Determinant of a square matrix of MultiPoly by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(row) for row in matrix]
    one = M[0][0].const_like(M[0][0].field.one)
    prev = one
    sign = 1
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return one.zero_like()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = exact_divide(num, prev) if prev != one else num
            M[i][k] = one.zero_like()
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f: MultiPoly, g: MultiPoly, var) -> MultiPoly:
    """Res_var(f, g) as a polynomial in the same ring (var no longer occurs)."""
    i = f._index(var)
    if f.degree_in(i) < 0 or g.degree_in(i) < 0:
        raise ValueError("resultant of zero polynomial")
    fc, gc = f.coefficients_in(i), g.coefficients_in(i)
    n, m = max(fc), max(gc)
    zero = f.zero_like()
    if n == 0 and m == 0:
        return f.const_like(f.field.one)
    if n == 0:
        return fc[0] ** m
    if m == 0:
        return gc[0] ** n
    size = n + m
    rows = []
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + k] = fc.get(n - k, zero)
        rows.append(row)
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + k] = gc.get(m - k, zero)
        rows.append(row)
    return bareiss_det(rows)


# --- implicitization ----------------------------------------------------

def _integer_root_poly(f: MultiPoly, e: int) -> MultiPoly | None:
    """An ``h`` with ``c*h^e = f`` for a constant c, or None."""
    if e == 1:
        return f
    if f.is_zero():
        return f
    K = f.field
    le, lc = f.leading_term()
    if any(x % e for x in le):
        return None
    # build h term by term: h = h_lead + ..., matching f / lc lexicographically
    target = f.scale(K.inv(lc))
    h = f._new({tuple(x // e for x in le): K.one})
    for _ in range(len(f.terms) * 4 + 8):
        diff = target - h ** e
        if diff.is_zero():
            return h
        de, dc = diff.leading_term()
        # leading term of h^e - (new term) contribution: e * hl^(e-1) * t
        hl, _ = h.leading_term()
        te = tuple(a - (e - 1) * b for a, b in zip(de, hl))
        if min(te) < 0:
            return None
        ce = K.from_int(e)
        if K.is_zero(ce):
            return None
        h = h + h._new({te: K.div(dc, ce)})
        if te >= hl:
            return None
    return None


def _mapping_degree(us, K, rng, tries=20):
    """Number of parameter values over a random image point."""
    fxu, fyu, fzu = us
    for _ in range(tries):
        if K.characteristic == 0:
            t0 = K.from_int(rng.randint(-50, 50))
        else:
            t0 = K.random_element(rng)
        X, Y, Z = (dense.evaluate(K, u, t0) for u in us)
        if K.is_zero(Z):
            continue
        a = dense.sub(K, dense.scale(K, fxu, Z), dense.scale(K, fzu, X))
        b = dense.sub(K, dense.scale(K, fyu, Z), dense.scale(K, fzu, Y))
        if not a or not b:
            continue
        g = dense.gcd(K, a, b)
        if len(g) == len(dense.radical(K, g)):
            return len(g) - 1
    return None


def implicitize(fx: MultiPoly, fy: MultiPoly, fz: MultiPoly, seed: int = 0):
    """Reduced image equation F(x, y, z) of the map (fx : fy : fz) on P^1.

    Returns ``(F, mapping_degree)``.  The forms must share a degree and have
    no common factor.
    """
    K = fx.field
    d = fx.degree()
    for f in (fy, fz):
        if f.degree() != d or f.field != K:
            raise ValueError("parameterizing forms must share degree and field")
    for f in (fx, fy, fz):
        if not f.is_zero() and not f.is_homogeneous():
            raise ValueError("parameterizing forms must be homogeneous")
    # common factor test on the dehomogenized forms and at s = 0
    us = [dehomogenize(f, "s").univariate() if not f.is_zero() else [] for f in (fx, fy, fz)]
    nz = [u for u in us if u]
    g = nz[0]
    for u in nz[1:]:
        g = dense.gcd(K, g, u)
    # a common root at s = 0 means no form has a t^d term
    at_inf = all(len(u) <= d for u in us)
    if len(g) > 1 or at_inf:
        raise ValueError("parameterizing forms have a common factor")
    V = ("x", "y", "t")
    x = MultiPoly.var(K, V, "x")
    y = MultiPoly.var(K, V, "y")

    def lift(u):
        return from_univariate(u, K, V, "t")

    a = x * lift(us[2]) - lift(us[0])
    b = y * lift(us[2]) - lift(us[1])
    R = resultant(a, b, "t")
    R = R.change_variables(("x", "y"), (0, 1, None)) if R.terms else MultiPoly(K, ("x", "y"))
    if R.is_zero():
        raise ValueError("image is degenerate")
    rng = random.Random(seed)
    e = _mapping_degree(us, K, rng) or 1
    h = _integer_root_poly(R, e)
    if h is None:
        e, h = 1, R
    # normalize: make the leading coefficient one
    _, lc = h.leading_term()
    h = h.scale(K.inv(lc))
    F = homogenize(h, "z")
    return F, e


# --- parsing and formatting ---------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^/()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            if op == "**":
                raise PolySyntaxError("use '^' for powers", start)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, text, field, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.K = field
        self.vars = tuple(variables)
        self.gen = None
        if isinstance(field, ExtensionField) and "t" not in self.vars:
            self.gen = field.generator_element()

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise PolySyntaxError(f"expected {op!r}", tok[2])

    def const(self, c):
        return MultiPoly.constant(self.K, self.vars, c)

    def parse(self):
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", self.peek()[2])
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self):
        tok = self.peek()
        negate = False
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            negate = tok[1] == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "("):
                raise PolySyntaxError("implicit multiplication (use '*')", tok[2])
            else:
                return acc

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise PolySyntaxError("exponent must be a nonnegative integer", e[2])
            return base ** e[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int" or den[1] == 0:
                    raise PolySyntaxError("expected nonzero integer denominator", den[2])
                try:
                    c = self.K.from_fraction(Fraction(val, den[1]))
                except FieldError as exc:
                    raise FieldError(f"coefficient not reducible into {self.K}: {exc}") from None
                return self.const(c)
            return self.const(self.K.from_int(val))
        if kind == "name":
            if val in self.vars:
                return MultiPoly.var(self.K, self.vars, val)
            if self.gen is not None and val == "t":
                return self.const(self.gen)
            raise PolySyntaxError(f"unknown variable {val!r}", pos)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise PolySyntaxError("expected a number, variable or '('", pos)


def parse_poly(text: str, field: Field, variables=("x", "y", "z")) -> MultiPoly:
    return _Parser(text, field, variables).parse()


def _render_coeff(K, c):
    s = K.render(c)
    return s


def format_poly(f: MultiPoly) -> str:
    """Canonical text (terms by descending degree, then lex exponent)."""
    if not f.terms:
        return "0"
    K = f.field
    parts = []
    for e in sorted(f.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = f.terms[e]
        mono = "*".join(
            (v if k == 1 else f"{v}^{k}") for v, k in zip(f.variables, e) if k)
        neg = False
        if K.characteristic == 0 and c < 0:
            neg, c = True, -c
        cs = _render_coeff(K, c)
        needs_paren = any(ch in cs for ch in "+-") and not (cs.startswith("-") and cs[1:].isdigit())
        if mono:
            if c == K.one:
                body = mono
            else:
                body = (f"({cs})" if needs_paren else cs) + "*" + mono
        else:
            body = f"({cs})" if needs_paren and len(f.terms) > 1 else cs
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        out += sgn + body
    return out


def poly_of_degree_count(n_vars: int, d: int) -> int:
    """Number of monomials of degree exactly d in n_vars variables."""
    return comb(d + n_vars - 1, n_vars - 1)


def random_poly(field, variables, degree, rng, homogeneous=True, density=1.0):
    """Random polynomial; every monomial of the degree(s) kept with ``density``."""
    n = len(variables)
    terms = {}
    degs = [degree] if homogeneous else range(degree + 1)
    for e in product(range(degree + 1), repeat=n):
        if sum(e) in degs and rng.random() <= density:
            terms[e] = field.random_element(rng)
    return MultiPoly(field, variables, terms)


__all__ = [
    "MultiPoly", "PolySyntaxError", "parse_poly", "format_poly", "dehomogenize",
    "homogenize", "linear_substitute", "translate", "order_at_origin", "lowest_form",
    "gcd_univariate", "squarefree_part", "resultant", "implicitize", "exact_divide",
    "bareiss_det", "compose", "from_univariate", "binary_form_roots", "random_poly", "QQ",
]
