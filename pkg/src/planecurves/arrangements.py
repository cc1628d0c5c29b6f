"""Line arrangements: finite projective planes, Fermat-type arrangements, and
explicit line lists, with combinatorial incidence data."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

from . import dense
from .field_arith import DEFAULT_EXT_BOUND, ExtensionBoundExceeded, Field, FieldError, gf, is_prime, parse_field
from .invariants import MultSeq, build_report
from .polynomial import MultiPoly
from .resolution import ProjPoint, canonical_coords


@dataclass(frozen=True)
class LineSet:
    field: Field
    lines: tuple  # canonical coefficient triples (a, b, c) of a*x + b*y + c*z

    def __post_init__(self):
        canon = tuple(canonical_coords(self.field, l) for l in self.lines)
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate lines")
        object.__setattr__(self, "lines", canon)

    def __len__(self):
        return len(self.lines)

    def polynomial(self) -> MultiPoly:
        K = self.field
        V = ("x", "y", "z")
        out = MultiPoly.constant(K, V, K.one)
        for a, b, c in self.lines:
            out = out * MultiPoly(K, V, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})
        return out

    def factors(self) -> list:
        K = self.field
        V = ("x", "y", "z")
        return [MultiPoly(K, V, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}) for a, b, c in self.lines]


def _prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return p, k
    raise FieldError(f"{q} is not a prime power")


def projective_points(K: Field) -> list:
    elems = list(K.elements())
    pts = [(K.one, K.zero, K.zero)]
    pts += [(a, K.one, K.zero) for a in elems]
    pts += [(a, b, K.one) for a in elems for b in elems]
    return pts


def finite_plane_lines(q: int, drop_through=None) -> LineSet:
    """All q^2+q+1 lines of P^2(F_q); ``drop_through`` removes lines through a point."""
    p, k = _prime_power(q)
    K = gf(p, k)
    lines = projective_points(K)  # lines are dual points
    if drop_through is not None:
        P = tuple(K.from_int(c) if isinstance(c, int) else c for c in drop_through)
        lines = [l for l in lines
                 if not K.is_zero(K.add(K.add(K.mul(l[0], P[0]), K.mul(l[1], P[1])),
                                        K.mul(l[2], P[2])))]
    return LineSet(K, tuple(lines))


def roots_of_unity(K: Field, n: int) -> list:
    """The n-th roots of unity in K, sorted by encoding."""
    poly = [K.neg(K.one)] + [K.zero] * (n - 1) + [K.one]
    if K.characteristic == 0:
        return dense.roots_with_multiplicity(K, poly)
    return dense.distinct_roots(K, poly)


def fermat_arrangement(n: int, field: Field, ext_bound: int = DEFAULT_EXT_BOUND) -> LineSet:
    """Linear factors of (x^n - y^n)(x^n - z^n)(y^n - z^n), extending the field if needed."""
    K = field
    if K.characteristic and n % K.characteristic == 0:
        raise FieldError("characteristic divides n: no n distinct roots of unity")
    roots = roots_of_unity(K, n)
    if len(roots) < n:
        if K.characteristic == 0:
            raise FieldError("roots of unity are not rational; use a finite field")
        q = K.order
        e = 1
        while (q ** e - 1) % n:
            e += 1
            if e > ext_bound:
                raise ExtensionBoundExceeded(f"{n}-th roots of unity need degree > {ext_bound}")
        K = gf(K.characteristic, K.degree * e)
        roots = roots_of_unity(K, n)
    o, z = K.one, K.zero
    lines = []
    for r in roots:
        m = K.neg(r)
        lines += [(o, m, z), (o, z, m), (z, o, m)]
    return LineSet(K, tuple(lines))


def _cross(K, l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    return (K.sub(K.mul(b1, c2), K.mul(c1, b2)),
            K.sub(K.mul(c1, a2), K.mul(a1, c2)),
            K.sub(K.mul(a1, b2), K.mul(b1, a2)))


@dataclass
class Incidence:
    points: dict  # canonical point -> number of lines through it
    t: dict  # k -> number of points on exactly k lines

    def multiplicities(self) -> list:
        return sorted(self.points.values(), reverse=True)


def incidence_data(ls: LineSet) -> Incidence:
    if len(ls) < 2:
        raise ValueError("need at least two lines")
    K = ls.field
    through = {}
    lines = ls.lines
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            P = canonical_coords(K, _cross(K, lines[i], lines[j]))
            through.setdefault(P, set()).update((i, j))
    pts = {P: len(s) for P, s in through.items()}
    # combinatorial double count
    assert sum(comb(m, 2) for m in pts.values()) == comb(len(lines), 2)
    return Incidence(pts, dict(sorted(Counter(pts.values()).items())))


def arrangement_sequence(ls: LineSet) -> MultSeq:
    inc = incidence_data(ls)
    d = len(ls)
    return MultSeq.from_mults(d, inc.multiplicities(), s=d, genus_list=(0,) * d)


def arrangement_report(ls: LineSet, ks=None):
    inc = incidence_data(ls)
    seq = arrangement_sequence(ls)
    # an ordinary m-fold point has delta C(m,2) and Milnor number (m-1)^2
    delta = sum(comb(m, 2) for m in seq.mults)
    mu = sum((m - 1) ** 2 for m in seq.mults)
    report = build_report(seq, delta_total=delta, mu_total=mu, ks=ks, all_ordinary=True,
                          line_counts=inc.t, field_used=ls.field)
    report.info["t_vector"] = inc.t
    return report


def parse_line_file(text: str) -> LineSet:
    """``field: <spec>`` header, then one coefficient triple per line."""
    field = None
    triples = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("field:"):
            field = parse_field(line.split(":", 1)[1])
            continue
        if field is None:
            raise ValueError("line file needs a 'field:' header first")
        parts = [p for p in line.replace(",", " ").split() if p]
        if len(parts) != 3:
            raise ValueError(f"expected three coefficients: {raw!r}")
        triple = tuple(field.parse_element(p) for p in parts)
        if all(field.is_zero(c) for c in triple):
            raise ValueError("zero line")
        triples.append(triple)
    if field is None:
        raise ValueError("missing 'field:' header")
    return LineSet(field, tuple(triples))


def points_on_line(ls: LineSet, i: int) -> list:
    inc = incidence_data(ls)
    K = ls.field
    a, b, c = ls.lines[i]
    return [ProjPoint(K, P) for P in inc.points
            if K.is_zero(K.add(K.add(K.mul(a, P[0]), K.mul(b, P[1])), K.mul(c, P[2])))]
