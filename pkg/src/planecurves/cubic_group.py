"""Group law on the smooth points of the nodal cubic 27xyz = (x+y+z)^3.

Points are parameterized by t -> (-(t+1)^3 : t^3 : 1), with ``INF`` standing
for the identity (-1 : 1 : 0).  In parameters the law reads

    t + s = (st - 1) / (s + t + 1),    -t = -1 - t,

which follows from the point formula (-(st+s+t)^3 : (st-1)^3 : (s+t+1)^3)
for the third point on the line through two points, followed by the
inversion (a : b : c) -> (b : a : c).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field_arith import QQ, Field, FieldError
from .resolution import ProjPoint


class _Inf:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Inf()


class NodalCubic:
    """The nodal cubic over a field of characteristic other than 3."""

    def __init__(self, field: Field = QQ):
        if field.characteristic == 3:
            raise FieldError("the cubic 27xyz = (x+y+z)^3 degenerates in characteristic 3")
        self.K = field

    def coerce(self, t):
        """Field element for ``t``; over GF(p^k) an int in range is a raw encoding.

        Roots of t^2 + t + 1 map to the node and are rejected.
        """
        if t is INF or (isinstance(t, str) and t.strip().lower() in ("inf", "∞")):
            return INF
        K = self.K
        if isinstance(t, str):
            t = K.parse_element(t)
        elif isinstance(t, Fraction):
            t = K.from_fraction(t)
        elif isinstance(t, int) and K.characteristic and not 0 <= t < K.order:
            t = K.from_int(t)
        elif K.characteristic == 0:
            t = Fraction(t)
        if K.is_zero(K.add(K.add(K.mul(t, t), t), K.one)):
            raise ValueError(f"parameter {K.render(t)} maps to the node")
        return t

    def equation(self, pt) -> object:
        K = self.K
        x, y, z = pt
        s = K.add(K.add(x, y), z)
        return K.sub(K.mul(K.from_int(27), K.mul(x, K.mul(y, z))), K.pow(s, 3))

    def param_to_point(self, t) -> ProjPoint:
        K = self.K
        t = self.coerce(t)
        if t is INF:
            return ProjPoint.make(K, (K.neg(K.one), K.one, K.zero))
        t1 = K.add(t, K.one)
        return ProjPoint.make(K, (K.neg(K.pow(t1, 3)), K.pow(t, 3), K.one))

    def point_to_param(self, pt):
        K = self.K
        coords = pt.coords if isinstance(pt, ProjPoint) else tuple(pt)
        P = ProjPoint.make(K, coords)
        if not K.is_zero(self.equation(P.coords)):
            raise ValueError(f"{P} is not on the cubic")
        a, b, c = P.coords
        if K.is_zero(c):
            return INF
        three = K.from_int(3)
        k = K.div(K.add(K.add(K.one, a), b), three)  # equals -t(t+1)
        den = K.sub(K.one, k)
        if K.is_zero(den):
            raise ValueError("the node (1:1:1) has no parameter")
        return K.div(K.sub(b, k), den)

    def add(self, t, s):
        K = self.K
        t, s = self.coerce(t), self.coerce(s)
        if t is INF:
            return s
        if s is INF:
            return t
        den = K.add(K.add(s, t), K.one)
        if K.is_zero(den):
            return INF
        return K.div(K.sub(K.mul(s, t), K.one), den)

    def neg(self, t):
        K = self.K
        t = self.coerce(t)
        if t is INF:
            return INF
        return K.sub(K.neg(K.one), t)

    def sub(self, t, s):
        return self.add(t, self.neg(s))

    def mul(self, n: int, t):
        acc = INF
        base = self.coerce(t) if n >= 0 else self.neg(t)
        for _ in range(abs(n)):
            acc = self.add(acc, base)
        return acc

    def order(self, t, limit: int = 100):
        acc = self.coerce(t)
        for n in range(1, limit + 1):
            if acc is INF:
                return n
            acc = self.add(acc, t)
        return None

    def third_intersection(self, t, s):
        """Parameter of the third point on the line through t and s (tangent when t = s)."""
        return self.neg(self.add(t, s))

    def render(self, t) -> str:
        return "inf" if t is INF else self.K.render(t)


def collinear(K: Field, p, q, r) -> bool:
    """Zero 3x3 determinant."""
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = p, q, r
    m = K.mul
    det = K.add(K.sub(m(a1, K.sub(m(b2, c3), m(b3, c2))),
                      m(a2, K.sub(m(b1, c3), m(b3, c1)))),
                m(a3, K.sub(m(b1, c2), m(b2, c1))))
    return K.is_zero(det)


@dataclass
class ConstructionCheck:
    name: str
    passed: bool
    detail: str = ""


def verify_construction(params: dict, cubic: NodalCubic | None = None):
    """Check the group-law constraints on chosen points p1..p5 (and p7, p8).

    Returns ``(derived parameters, list of ConstructionCheck)``.
    """
    A = cubic or NodalCubic()
    K = A.K
    F1 = A.coerce(0)
    derived = {}
    checks = []
    for (a, b, c) in (("p1", "p2", "p3"), ("p4", "p5", "p6")):
        if a not in params or b not in params:
            continue
        ta, tb = A.coerce(params[a]), A.coerce(params[b])
        tc = A.sub(A.sub(F1, ta), tb)
        derived[c] = tc
        total = A.add(A.add(ta, tb), tc)
        triple = A.mul(3, total)
        checks.append(ConstructionCheck(f"{a}+{b}+{c} has order dividing 3", triple is INF,
                                        f"sum={A.render(total)}"))
        checks.append(ConstructionCheck(f"{a},{b},{c} not collinear", total is not INF,
                                        f"sum={A.render(total)}"))
        flexes = (INF, F1, A.neg(F1))
        trio = (ta, tb, tc)
        distinct = len(set(map(repr, trio))) == 3 and not any(t in flexes for t in trio)
        checks.append(ConstructionCheck(f"{a},{b},{c} distinct non-flex points", distinct,
                                        ", ".join(A.render(t) for t in trio)))
        pts = [A.param_to_point(t).coords for t in (ta, tb, tc)] if INF not in (ta, tb, tc) else None
        if pts is not None:
            checks.append(ConstructionCheck(f"{c} on cubic", K.is_zero(A.equation(pts[2]))))
    if "p7" in params and "p8" in params:
        t7, t8 = A.coerce(params["p7"]), A.coerce(params["p8"])
        t9 = A.third_intersection(t7, t8)
        derived["p9"] = t9
        if INF in (t7, t8, t9) or t7 == t8:
            ok = t9 is not INF or t7 != t8
        else:
            ok = collinear(K, *(A.param_to_point(t).coords for t in (t7, t8, t9)))
        checks.append(ConstructionCheck("p9 on line p7p8", ok, f"p9={A.render(t9)}"))
    return derived, checks
