"""Singular points of plane curves and their resolution by blowing up.

Singular points over a finite field are located exactly by elimination:
after a generic shear, the x-coordinates of affine singular points are the
roots of gcd(Res_y(f, f_x + a f_y), Res_y(f, f_x + b f_y)), each resultant
being recovered by evaluation and interpolation.  The result does not depend
on a search bound, so every singular point over the algebraic closure is
found once the gcd splits.

Whenever a root is missing from the working field the computation is redone
over a larger field (see :func:`run_with_extensions`).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import islice
from math import comb, lcm
from typing import Optional

from . import dense
from .field_arith import (DEFAULT_EXT_BOUND, BadPrimeError, ExtensionBoundExceeded, Field,
                     FieldError, QQ, embedding, gf, rational_reduce)
from .invariants import MultSeq, build_report
from .polynomial import MultiPoly, compose, dehomogenize, order_at_origin, lowest_form, translate


class NonReducedCurveError(ValueError):
    """The curve has a repeated component."""


class NeedExtension(Exception):
    """Raised when a root lies outside the working field.

    ``degree`` is the absolute degree (over the prime field) the working
    field must be a multiple of.
    """

    def __init__(self, degree: int):
        super().__init__(f"extension of degree {degree} needed")
        self.degree = degree


class ResolutionDepthError(RuntimeError):
    pass


class CrossPrimeDisagreement(ValueError):
    def __init__(self, message, per_prime):
        super().__init__(message)
        self.per_prime = per_prime


# --- types --------------------------------------------------------------

def canonical_coords(K: Field, coords):
    c = list(coords)
    for i in (2, 1, 0):
        if not K.is_zero(c[i]):
            inv = K.inv(c[i])
            return tuple(K.mul(v, inv) for v in c)
    raise ValueError("all coordinates are zero")


@dataclass(frozen=True)
class ProjPoint:
    field: Field
    coords: tuple

    @classmethod
    def make(cls, K, coords):
        return cls(K, canonical_coords(K, coords))

    def render(self) -> tuple:
        return tuple(self.field.render(c) for c in self.coords)

    def __str__(self):
        return "(" + ":".join(self.render()) + ")"

    def definition_degree(self) -> int:
        """Degree over the prime field of the smallest field holding the coordinates."""
        K = self.field
        if K.characteristic == 0:
            return 1
        p, k = K.characteristic, K.degree
        for e in range(1, k + 1):
            if k % e == 0 and all(K.pow(c, p ** e) == c for c in self.coords):
                return e
        return k

    def sort_key(self):
        return tuple(reversed(self.coords))


@dataclass
class InfNearNode:
    depth: int
    multiplicity: int
    local_equation: MultiPoly
    children: list = field(default_factory=list)
    chart_label: str = "root"

    def walk(self):
        """Breadth-first traversal."""
        queue = deque([self])
        while queue:
            node = queue.popleft()
            yield node
            queue.extend(node.children)


@dataclass
class SingularityRecord:
    point: Optional[ProjPoint]
    field_used: Field
    mult_sequence_at_point: list
    delta: int
    branches: int
    milnor: int
    ordinary: bool
    tree: InfNearNode = None


# --- field management ---------------------------------------------------

def _working_degree(p: int, required: int, size_needed: int) -> int:
    k = required
    while p ** k <= size_needed:
        k += required
    return k


def _finite_base(K: Field):
    if K.characteristic == 0:
        raise FieldError("a finite field is required; reduce rational curves modulo primes")


def lift_poly(f: MultiPoly, K: Field) -> MultiPoly:
    """Map the coefficients of f into the finite field K."""
    if f.field == K:
        return f
    emb = embedding(f.field, K)
    return f.map_coefficients(K, emb)


def run_with_extensions(curve: MultiPoly, work, ext_bound: int = DEFAULT_EXT_BOUND,
                        size_needed: int = 0):
    """Call ``work(curve_over_K)`` over growing extensions of the curve's field.

    The working field has more than ``size_needed`` elements.  Each
    :class:`NeedExtension` enlarges it; the relative degree of the extension
    actually demanded by the geometry is capped by ``ext_bound``.
    """
    K0 = curve.field
    _finite_base(K0)
    p = K0.characteristic
    required = K0.degree
    while True:
        k = _working_degree(p, required, size_needed)
        K = K0 if k == K0.degree else gf(p, k)
        try:
            return K, work(lift_poly(curve, K))
        except NeedExtension as exc:
            new = lcm(required, exc.degree)
            if new == required:
                raise RuntimeError("extension request did not enlarge the field") from exc
            required = new
            if required // K0.degree > ext_bound:
                raise ExtensionBoundExceeded(
                    f"needs an extension of degree {required // K0.degree} over {K0}, "
                    f"bound is {ext_bound}") from None


def _require_split(K, poly, found: int):
    """Raise NeedExtension unless the squarefree ``poly`` has ``found`` roots = its degree."""
    deg = len(poly) - 1
    if found >= deg:
        return
    rest = list(poly)
    for r in dense.distinct_roots(K, poly):
        rest = dense.divmod_(K, rest, [K.neg(r), K.one])[0]
    e = dense.factor_degrees_lcm(K, rest)
    raise NeedExtension(K.degree * e)


def _roots_split(K, poly):
    """Distinct roots of ``poly``; NeedExtension if it does not split in K."""
    poly = dense._trim_zero(K, list(poly))
    if len(poly) <= 1:
        return []
    rad = dense.radical(K, poly)
    roots = dense.distinct_roots(K, rad)
    _require_split(K, rad, len(roots))
    return roots


# --- singular points ----------------------------------------------------

def _eval_y_poly(K, rows, x0):
    """rows[j] is a dense x-polynomial; return the dense y-polynomial at x0."""
    return dense._trim_zero(K, [dense.evaluate(K, row, x0) for row in rows])


def _y_rows(f: MultiPoly, dy: int):
    """Coefficient rows of f(x, y) by power of y, each a dense list in x."""
    K = f.field
    rows = [[] for _ in range(dy + 1)]
    for (i, j), c in f.terms.items():
        row = rows[j]
        if len(row) <= i:
            row.extend([K.zero] * (i + 1 - len(row)))
        row[i] = c
    return [dense._trim_zero(K, r) for r in rows]


def _pick_shear(F: MultiPoly, rng):
    K = F.field
    if not K.is_zero(F.evaluate((K.zero, K.one, K.zero))):
        return K.zero, K.zero
    for _ in range(1000):
        a, b = K.random_element(rng), K.random_element(rng)
        if not K.is_zero(F.evaluate((a, K.one, b))):
            return a, b
    raise RuntimeError("no usable shear found")


def _shear(F: MultiPoly, a, b) -> MultiPoly:
    K = F.field
    V = F.variables
    x, y, z = (MultiPoly.var(K, V, v) for v in V)
    return compose(F, [x + y.scale(a), y, z + y.scale(b)])


def _is_singular_at(F, pt) -> bool:
    K = F.field
    if not K.is_zero(F.evaluate(pt)):
        return False
    return all(K.is_zero(F.partial(i).evaluate(pt)) for i in range(3))


def _affine_singular(F: MultiPoly, rng) -> list:
    """Singular points with z = 1 of F, which must not pass through (0:1:0)."""
    K = F.field
    d = F.degree()
    f = dehomogenize(F, 2)
    fx, fy = f.partial(0), f.partial(1)
    rows_f = _y_rows(f, d)
    rows_x = _y_rows(fx, d)
    rows_y = _y_rows(fy, d)
    D = d * (d - 1)
    xs = list(islice(K.elements(), D + 1))
    if len(xs) < D + 1:
        raise RuntimeError("working field too small for interpolation")
    f_vals = [_eval_y_poly(K, rows_f, x0) for x0 in xs]
    fx_vals = [_eval_y_poly(K, rows_x, x0) for x0 in xs]
    fy_vals = [_eval_y_poly(K, rows_y, x0) for x0 in xs]

    def res_for(lam):
        ys = []
        for i, x0 in enumerate(xs):
            g = dense.add(K, fx_vals[i], dense.scale(K, fy_vals[i], lam)) if lam is not None \
                else fy_vals[i]
            ys.append(dense.resultant(K, f_vals[i], g, d, d - 1))
        return dense.interpolate(K, xs, ys)

    # lambda = None stands for f_y alone
    lams = [K.zero, None]
    seen = {K.zero}
    lam_rng = random.Random(rng.random())
    good, zero_count = [], 0
    while len(good) < 2:
        if not lams:
            cand = K.random_element(lam_rng)
            if cand in seen:
                if len(seen) >= (K.order or 1 << 30):
                    break
                continue
            seen.add(cand)
            lams.append(cand)
        R = res_for(lams.pop(0))
        if R:
            good.append(R)
        else:
            zero_count += 1
            if zero_count > d + 1:
                raise NonReducedCurveError("curve has a repeated component")
    if not good:
        raise NonReducedCurveError("curve has a repeated component")
    G = good[0]
    for R in good[1:]:
        G = dense.gcd(K, G, R)
    if len(G) <= 1:
        return []
    pts = []
    for x0 in _roots_split(K, G):
        h = _eval_y_poly(K, rows_f, x0)
        for part in (_eval_y_poly(K, rows_x, x0), _eval_y_poly(K, rows_y, x0)):
            if part:
                h = dense.gcd(K, h, part)
        for y0 in _roots_split(K, h):
            pts.append((x0, y0, K.one))
    return pts


def _line_at_infinity_singular(F: MultiPoly) -> list:
    """Singular points of F with z = 0, given (0:1:0) is not on F."""
    K = F.field
    V = F.variables
    polys = []
    for g in (F, F.partial(0), F.partial(1), F.partial(2)):
        h = dehomogenize(dehomogenize(g, 2, K.zero), 1)  # g(x, 1, 0)
        polys.append(h.univariate() if h.terms else [])
    nz = [u for u in polys if u]
    pts = []
    if nz:
        g = nz[0]
        for u in nz[1:]:
            g = dense.gcd(K, g, u)
        if len(g) > 1:
            pts += [(x0, K.one, K.zero) for x0 in _roots_split(K, g)]
    else:
        raise NonReducedCurveError("the line z = 0 is a repeated component")
    if _is_singular_at(F, (K.one, K.zero, K.zero)):
        pts.append((K.one, K.zero, K.zero))
    del V
    return pts


def singular_points_over(F: MultiPoly, seed: int = 0) -> list:
    """All singular points of F (NeedExtension if some lie outside F's field).

    The field must have more than d(d-1) elements.
    """
    K = F.field
    if F.is_zero():
        raise ValueError("zero polynomial")
    if not F.is_homogeneous():
        raise ValueError("curve equation must be homogeneous")
    d = F.degree()
    if d <= 1:
        return []
    rng = random.Random(seed)
    a, b = _pick_shear(F, rng)
    G = _shear(F, a, b)
    raw = _affine_singular(G, rng) + _line_at_infinity_singular(G)
    out = set()
    for (u, v, w) in raw:
        P = ProjPoint.make(K, (K.add(u, K.mul(a, v)), v, K.add(w, K.mul(b, v))))
        out.add(P)
    return sorted(out, key=ProjPoint.sort_key)


def interpolation_size(d: int) -> int:
    return d * (d - 1)


def find_singular_points(curve: MultiPoly, ext_bound: int = DEFAULT_EXT_BOUND, seed: int = 0):
    """(working field, singular points) of a homogeneous curve over a finite field."""
    return run_with_extensions(curve, lambda F: singular_points_over(F, seed), ext_bound,
                               interpolation_size(curve.degree()))


def scan_singular_points(F: MultiPoly) -> list:
    """Brute-force singular points over the (small) field of F; for testing."""
    K = F.field
    partials = [F.partial(i) for i in range(3)]
    out = []
    elems = list(K.elements())
    cands = [(K.one, K.zero, K.zero)] + [(x, K.one, K.zero) for x in elems] + \
            [(x, y, K.one) for x in elems for y in elems]
    for pt in cands:
        if K.is_zero(F.evaluate(pt)) and all(K.is_zero(g.evaluate(pt)) for g in partials):
            out.append(ProjPoint.make(K, pt))
    return sorted(out, key=ProjPoint.sort_key)


# --- local analysis -----------------------------------------------------

LOCAL_VARS = ("x", "y")


def local_equation(curve: MultiPoly, point: ProjPoint) -> MultiPoly:
    """Affine equation in (x, y) with ``point`` moved to the origin."""
    K = curve.field
    X, Y, Z = point.coords
    if not K.is_zero(curve.evaluate(point.coords)):
        raise ValueError(f"point {point} is not on the curve")
    if not K.is_zero(Z):
        f, shift = dehomogenize(curve, 2), (X, Y)
    elif not K.is_zero(Y):
        f, shift = dehomogenize(curve, 1), (X, K.zero)
    else:
        f, shift = dehomogenize(curve, 0), (K.zero, K.zero)
    f = MultiPoly(K, LOCAL_VARS, f.terms, _clean=True)
    return translate(f, shift)


@dataclass
class BlowupChild:
    label: str
    direction: tuple
    equation: MultiPoly
    multiplicity: int


def blowup_step(f: MultiPoly) -> list:
    """Children of the origin after one blowup (NeedExtension if a tangent is not rational)."""
    K = f.field
    m = order_at_origin(f)
    if m < 2:
        raise ValueError("origin is not a singular point")
    L = lowest_form(f)
    cone = [K.zero] * (m + 1)  # L(1, c) as a polynomial in c
    for (i, j), c in L.terms.items():
        cone[j] = c
    cone = dense._trim_zero(K, cone)
    out = []
    for c in _roots_split(K, cone):
        g = MultiPoly(K, LOCAL_VARS, {(i + j - m, j): v for (i, j), v in f.terms.items()},
                      _clean=True)
        g = translate(g, (K.zero, c))
        out.append(BlowupChild(f"A:y={K.render(c)}", (K.one, c), g, order_at_origin(g)))
    if len(cone) - 1 < m:
        g = MultiPoly(K, LOCAL_VARS, {(i, i + j - m): v for (i, j), v in f.terms.items()},
                      _clean=True)
        out.append(BlowupChild("B:x=0", (K.zero, K.one), g, order_at_origin(g)))
    return out


def _cone_squarefree(f: MultiPoly, m: int) -> bool:
    K = f.field
    cone = [K.zero] * (m + 1)
    for (i, j), c in lowest_form(f).terms.items():
        cone[j] = c
    cone = dense._trim_zero(K, cone)
    if m - (len(cone) - 1) > 1:
        return False
    return dense.is_squarefree(K, cone)


def resolve_point(f: MultiPoly, max_depth: Optional[int] = None, _depth=0,
                  _label="root") -> InfNearNode:
    m = order_at_origin(f)
    if max_depth is None:
        max_depth = max(f.degree(), 2) ** 2
    node = InfNearNode(_depth, m, f, [], _label)
    if m < 2:
        return node
    if _depth > max_depth:
        raise ResolutionDepthError("resolution did not terminate; input may be non-reduced")
    try:
        children = blowup_step(f)
    except NeedExtension:
        if not _cone_squarefree(f, m):
            raise
        # ordinary point with tangents outside the field: m smooth branches
        node.children = [InfNearNode(_depth + 1, 1, None, [], f"tangent:{i}") for i in range(m)]
        return node
    for child in children:
        node.children.append(resolve_point(child.equation, max_depth, _depth + 1, child.label))
    return node


def analyze_point(tree: InfNearNode, point: Optional[ProjPoint] = None,
                  field_used: Optional[Field] = None) -> SingularityRecord:
    seq, delta, branches = [], 0, 0
    for node in tree.walk():
        if node.multiplicity >= 2:
            seq.append(node.multiplicity)
            delta += comb(node.multiplicity, 2)
        elif not node.children:
            branches += 1
    ordinary = (len(tree.children) == tree.multiplicity
                and all(c.multiplicity == 1 for c in tree.children))
    return SingularityRecord(point, field_used or tree.local_equation.field, seq, delta,
                             branches, 2 * delta - branches + 1, ordinary, tree)


def _records_over(F: MultiPoly, seed: int) -> list:
    d = F.degree()
    pts = singular_points_over(F, seed)
    recs = []
    for P in pts:
        tree = resolve_point(local_equation(F, P), max_depth=d * d)
        recs.append(analyze_point(tree, P, F.field))
    return recs


def analyze_finite(curve: MultiPoly, ext_bound: int = DEFAULT_EXT_BOUND, seed: int = 0):
    """(working field, SingularityRecords) for a curve over a finite field."""
    if curve.is_zero() or not curve.is_homogeneous():
        raise ValueError("curve must be a nonzero homogeneous polynomial")
    return run_with_extensions(curve, lambda F: _records_over(F, seed), ext_bound,
                               interpolation_size(curve.degree()))


def sequence_from_records(d: int, records, s=None) -> MultSeq:
    entries = []
    for rec in records:
        ms = rec.mult_sequence_at_point
        entries.append((ms[0], True))
        entries += [(m, False) for m in ms[1:]]
    return MultSeq(d, tuple(entries), s)


# --- whole-curve analysis -----------------------------------------------

DEFAULT_PRIMES = (101, 103, 107)


def reduce_mod_p(curve: MultiPoly, p: int) -> MultiPoly:
    """Reduction of a rational polynomial modulo p (BadPrimeError if impossible)."""
    from .field_arith import PrimeField

    K = PrimeField(p)
    g = MultiPoly(K, curve.variables, {e: rational_reduce(c, p) for e, c in curve.terms.items()})
    if g.degree() != curve.degree() or not g.is_homogeneous():
        raise BadPrimeError(f"degree drops modulo {p}")
    return g


def _product(factors):
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def _signature(records):
    return sorted(((r.mult_sequence_at_point, r.branches, r.delta, r.milnor, r.ordinary)
                   for r in records), reverse=True)


def analyze_curve(curve: MultiPoly | None = None, declared_factors=None, primes=None,
                  ext_bound: int = DEFAULT_EXT_BOUND, seed: int = 0, components=None,
                  ks=None):
    """Full report for a reduced curve; rational curves are reduced modulo primes."""
    if declared_factors:
        prod = _product(list(declared_factors))
        if curve is None:
            curve = prod
        else:
            # product must agree with the curve up to a nonzero scalar
            K = curve.field
            e, c = curve.leading_term()
            c2 = prod.terms.get(e)
            if c2 is None or prod.scale(K.div(c, c2)) != curve:
                raise ValueError("declared factors do not multiply to the curve")
        if components is None:
            components = len(declared_factors)
    if curve is None:
        raise ValueError("no curve given")
    d = curve.degree()
    if curve.field.characteristic == 0:
        primes = list(primes or DEFAULT_PRIMES)
        per_prime, reasons = {}, {}
        for p in primes:
            try:
                Fp = reduce_mod_p(curve, p)
                per_prime[p] = analyze_finite(Fp, ext_bound, seed)
            except (BadPrimeError, NonReducedCurveError) as exc:
                reasons[p] = str(exc)
        if len(per_prime) < 2:
            raise ValueError(f"fewer than 2 good primes among {primes}: {reasons}")
        sigs = {p: _signature(recs) for p, (_, recs) in per_prime.items()}
        ref = next(iter(sigs.values()))
        if any(sig != ref for sig in sigs.values()):
            summary = {p: str(sequence_from_records(d, recs)) for p, (_, recs) in per_prime.items()}
            raise CrossPrimeDisagreement(f"primes disagree: {summary}", summary)
        p0 = next(iter(per_prime))
        K, records = per_prime[p0]
        pp = {p: {"field": str(Kp), "sequence": str(sequence_from_records(d, r))}
              for p, (Kp, r) in per_prime.items()}
        pp.update({p: {"discarded": why} for p, why in reasons.items()})
    else:
        K, records = analyze_finite(curve, ext_bound, seed)
        pp = {}
    seq = sequence_from_records(d, records, components)
    delta = sum(r.delta for r in records)
    mu = sum(r.milnor for r in records)
    return build_report(seq, delta_total=delta, mu_total=mu, ks=ks,
                        all_ordinary=all(r.ordinary for r in records),
                        records=records, field_used=K, per_prime=pp)
