import random
from itertools import product

import pytest

from planecurves.field_arith import QQ, gf
from planecurves.polynomial import (MultiPoly, PolySyntaxError, dehomogenize, exact_divide,
                                    format_poly, gcd_univariate, homogenize, implicitize,
                                    linear_substitute, lowest_form, order_at_origin, parse_poly,
                                    random_poly, resultant, squarefree_part, translate)

XYZ = ("x", "y", "z")


def P(text, K=QQ, variables=XYZ):
    return parse_poly(text, K, variables)


def proportional(f, g):
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    K = f.field
    e, c = f.leading_term()
    return e in g.terms and g.scale(K.div(c, g.terms[e])) == f


def test_parse_examples():
    rose = P("(x^2+y^2)^2+y^3-3*y*x^2")
    assert rose.degree() == 4 and len(rose.terms) == 5
    quintic = P("x^5+4*y^5+4*x*y^3*z+x^2*y*z^2")
    assert quintic.is_homogeneous() and quintic.degree() == 5
    assert P("0").is_zero()
    assert P("3/4*x") == P("x").scale(QQ.from_fraction(__import__("fractions").Fraction(3, 4)))


@pytest.mark.parametrize("text, pos", [("x +* y", 3), ("2x", 1), ("x^", 2), ("(x+y", 4), ("w+1", 0)])
def test_parse_errors_have_positions(text, pos):
    with pytest.raises(PolySyntaxError) as info:
        P(text)
    assert info.value.position == pos


def test_parse_rejects_bad_coefficients():
    with pytest.raises(Exception):
        P("x/7", gf(7))


def test_arithmetic_examples():
    assert P("(x+y)*(x-y)") == P("x^2-y^2")
    fermat = P("x^3-y^3") * P("x^3-z^3") * P("y^3-z^3")
    assert fermat.degree() == 9 and fermat.is_homogeneous()
    assert (fermat * P("0")).is_zero()


@pytest.mark.parametrize("K", [QQ, gf(7), gf(3, 2)], ids=str)
def test_ring_axioms_random(K):
    rng = random.Random(4)
    for _ in range(20):
        a, b, c = (random_poly(K, XYZ, rng.randint(0, 3), rng, homogeneous=False, density=0.5)
                   for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == a.zero_like()
        if not a.is_zero() and not b.is_zero():
            assert (a * b).degree() == a.degree() + b.degree()


@pytest.mark.parametrize("K", [QQ, gf(5), gf(2, 3)], ids=str)
def test_format_parse_roundtrip(K):
    rng = random.Random(8)
    for _ in range(30):
        f = random_poly(K, XYZ, rng.randint(0, 4), rng, homogeneous=False, density=0.4)
        assert P(format_poly(f), K) == f


def test_homogeneity_helpers():
    assert P("x^2+y*z").is_homogeneous()
    f = dehomogenize(P("x^2*y-z^3"), "z")
    assert f == P("x^2*y-1", QQ, ("x", "y"))
    assert homogenize(f, "z", 3) == P("x^2*y-z^3")
    with pytest.raises(ValueError):
        homogenize(f, "z", 2)


def test_substitutions():
    XY = ("x", "y")
    f = P("x^2+y^3-x*y", QQ, XY)
    moved = translate(f, (QQ.from_int(1), QQ.from_int(2)))
    assert moved(0, 0) == f(1, 2)
    chart = linear_substitute(f, {"y": "x*y"})
    assert chart == P("x^2+x^3*y^3-x^2*y", QQ, XY)
    assert linear_substitute(f, {}) == f


@pytest.mark.parametrize("text, order, cone", [
    ("(x^2+y^2)^2+y^3-3*y*x^2", 3, "y^3-3*y*x^2"),
    ("x^2*y+4*x*y^3+x^5+4*y^5", 3, "x^2*y"),
    ("x+y^2", 1, "x"),
])
def test_order_and_tangent_cone(text, order, cone):
    f = P(text, QQ, ("x", "y"))
    assert order_at_origin(f) == order
    assert lowest_form(f) == P(cone, QQ, ("x", "y"))


def test_gcd_and_squarefree():
    X = ("x",)
    assert gcd_univariate(P("x^2-1", QQ, X), P("x-1", QQ, X)) == P("x-1", QQ, X)
    f = P("x^3-x", QQ, X)
    assert squarefree_part(f) == f
    F3 = gf(3)
    assert squarefree_part(P("x^3-1", F3, X)) == P("x-1", F3, X)
    rng = random.Random(6)
    for _ in range(20):
        g = random_poly(F3, X, 4, rng, homogeneous=False)
        if g.degree() < 1:
            continue
        h = squarefree_part(g * g * P("x+1", F3, X) ** 3)
        dh = h.partial("x")
        assert gcd_univariate(h, dh).degree() == 0


def test_resultant_examples():
    V = ("a", "b", "t")
    assert resultant(P("t-a", QQ, V), P("t-b", QQ, V), "t") == P("a-b", QQ, V)
    W = ("x", "y", "t")
    assert resultant(P("t^2-x", QQ, W), P("t-y", QQ, W), "t") == P("y^2-x", QQ, W)
    cusp = resultant(P("x-t^2", QQ, W), P("y-t^3", QQ, W), "t")
    assert proportional(cusp, P("y^2-x^3", QQ, W))


def _common_root(K, f, g):
    return any(K.is_zero(f(a)) and K.is_zero(g(a)) for a in K.elements())


@pytest.mark.parametrize("K", [gf(5), gf(7), gf(2, 2)], ids=str)
def test_resultant_vanishes_iff_common_root(K):
    # over a finite field Res = 0 iff a common factor exists; both split here by construction
    rng = random.Random(12)
    T = ("t",)
    seen = {True: 0, False: 0}
    for _ in range(60):
        roots_f = [K.random_element(rng) for _ in range(2)]
        roots_g = [K.random_element(rng) for _ in range(2)]
        t = MultiPoly.var(K, T, "t")
        f = (t - t.const_like(roots_f[0])) * (t - t.const_like(roots_f[1]))
        g = (t - t.const_like(roots_g[0])) * (t - t.const_like(roots_g[1]))
        res = resultant(f, g, "t")
        common = _common_root(K, f, g)
        assert res.is_zero() == common
        seen[common] += 1
    assert seen[True] and seen[False]


def test_resultant_degree_bound():
    rng = random.Random(3)
    K = gf(101)
    V = ("x", "y", "t")
    for _ in range(5):
        f = random_poly(K, V, 3, rng, homogeneous=False, density=0.6)
        g = random_poly(K, V, 2, rng, homogeneous=False, density=0.6)
        if f.degree_in("t") < 1 or g.degree_in("t") < 1:
            continue
        R = resultant(f, g, "t")
        assert R.degree_in("t") <= 0
        assert R.is_zero() or R.degree() <= f.degree_in("t") * g.degree() + g.degree_in("t") * f.degree()


def test_exact_divide():
    f, g = P("x^2+y*z"), P("x-y")
    assert exact_divide(f * g, g) == f
    with pytest.raises(ValueError):
        exact_divide(f * g + P("1"), g)


def test_implicitize_cuspidal_cubic():
    ST = ("s", "t")
    F, e = implicitize(P("s*t^2", QQ, ST), P("t^3", QQ, ST), P("s^3", QQ, ST))
    assert e == 1
    assert proportional(F, P("x^3-y^2*z"))


def test_implicitize_double_cover_reports_degree():
    ST = ("s", "t")
    K = gf(101)
    F, e = implicitize(P("s^2*t^4", K, ST), P("t^6", K, ST), P("s^6", K, ST))
    assert e == 2 and F.degree() == 3


def test_implicitize_common_factor():
    ST = ("s", "t")
    with pytest.raises(ValueError):
        implicitize(P("s*t", QQ, ST), P("s^2", QQ, ST), P("s*t-s^2", QQ, ST))


@pytest.mark.parametrize("d", [3, 4, 5])
def test_implicitize_vanishes_on_samples(d):
    K = gf(101)
    rng = random.Random(d)
    forms = [random_poly(K, ("s", "t"), d, rng) for _ in range(3)]
    F, e = implicitize(*forms)
    assert e == 1 and F.degree() == d
    for _ in range(20):
        s, t = K.random_element(rng), K.random_element(rng)
        image = [f(s, t) for f in forms]
        assert K.is_zero(F(*image))
