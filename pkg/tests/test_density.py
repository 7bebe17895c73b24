from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_hk.catalog import cone_block
from toric_hk.counting import hk_value
from toric_hk.density import (
    MissingBreakpointError,
    PiecewisePolynomial,
    UnsupportedDimensionError,
    _fit,
    f_exact,
    g_exact,
    hilbert_density,
    integrate,
    interpolate,
    piecewise_fit,
    poly_eval,
    product_pair,
    segre_g,
)
from toric_hk.polytope import intersect

F = Fraction


def P(*coeffs):
    return tuple(F(c) for c in coeffs)


def test_f_g_examples(pair):
    s = pair("simplex")
    assert f_exact(s, F(1, 2)) == F(1, 8)
    assert f_exact(s, F(3, 2)) == F(3, 4)
    assert g_exact(s, F(1, 2)) == F(3, 4)
    assert g_exact(s, F(3, 2)) == 0
    assert g_exact(s, F(5, 2)) == F(-3, 4)
    for name in ["simplex", "hirzebruch(1,2,1)", "segment"]:
        assert f_exact(pair(name), 7) == 0 and g_exact(pair(name), 7) == 0


def test_simplex_pieces(report):
    r = report("simplex")
    assert r.f.breakpoints == (0, 1, 2, 3)
    f1 = P(0, 0, F(1, 2))
    f2 = P(F(-3, 2), 3, -1)  # lam^2/2 - 3/2 (lam-1)^2
    f3 = P(F(9, 2), -3, F(1, 2))  # + 3/2 (lam-2)^2
    assert r.f.pieces == (f1, f2, f3)
    assert r.g.pieces == (P(0, F(3, 2)), P(F(9, 2), -3), P(F(-9, 2), F(3, 2)))
    assert integrate(r.f) == 1 and integrate(r.g) == 0


def test_hirzebruch_121_pieces(report):
    r = report("hirzebruch(1,2,1)")
    a, c, d = 1, 2, 1
    k = c + F(a * d, 2) + d
    assert r.g.breakpoints == (0, 1, F(4, 3), F(3, 2), 2)
    expected = [
        P(0, k),
        P(k * (d + 1) * (c + F(a * d, 2) + 1), -k * (c * d + F(a * d * d, 2) + c + F(a * d, 2) + d)),
        None,  # checked below: includes the (c + 1 - c lam) correction
        P(d * (d + 1), -d * k),
    ]
    assert r.g.pieces[0] == expected[0] == P(0, F(7, 2))
    assert r.g.pieces[1] == expected[1]
    corr = (c + F(a * d, 2)) * (d + 1) * (F(1, 2) - F(1, a))
    assert r.g.pieces[2] == P(d * (d + 1) + corr * (c + 1), -d * k - corr * c)
    assert r.g.pieces[3] == expected[3]
    assert r.e_hk == F(95, 36)
    assert r.beta == F(-7, 8)


def test_hirzebruch_112_pieces(report):
    r = report("hirzebruch(1,1,2)")
    a, c, d = 1, 1, 2
    k = c + F(a * d, 2) + d
    corr = (c + F(a * d, 2)) * (d + 1) * (F(1, 2) - F(1, a))
    assert r.g.breakpoints == (0, 1, F(4, 3), F(3, 2), F(5, 3), 2)
    assert r.g.pieces[0] == P(0, 4)
    assert r.g.pieces[1] == P(k * (d + 1) * (c + F(a * d, 2) + 1), -k * (c * d + F(a * d * d, 2) + c + F(a * d, 2) + d))
    assert r.g.pieces[2] == P(d * (d + 1) + corr * (c + 1), -d * k - corr * c)
    lin = d * (c + F(a * d, 2) + F(a, 2)) * k
    const = -d * (2 + F(a, 2)) * (c + F(a * d, 2) + F(a, 2))
    assert r.g.pieces[3] == P(corr * (c + 1) - lin + const, -corr * c + lin)
    # last branch runs up to 1 + 1/c (printed upper bound reads 1/c)
    assert r.g.pieces[4] == P(c * (F(1, 2) - F(1, a)) * (c + 1), -c * c * (F(1, 2) - F(1, a)))
    assert r.e_hk == F(223, 72)
    assert r.beta == 0


def test_integrate_zero():
    assert integrate(PiecewisePolynomial((), ())) == 0


def test_piecewise_polynomial_eval_and_merge():
    pp = PiecewisePolynomial((F(0), F(1), F(2), F(3)), (P(0, 1), P(0, 1), ()))
    assert pp(F(1, 2)) == F(1, 2) and pp(F(3, 2)) == F(3, 2) and pp(3) == 0 and pp(-1) == 0
    m = pp.merged()
    assert m.breakpoints == (0, 2) and m.pieces == (P(0, 1),)
    assert integrate(m) == integrate(pp) == 2
    assert m.refine([F(1, 2)]).merged() == m


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(-5, 5, max_denominator=9), min_size=1, max_size=5))
def test_interpolation_recovers_polynomial(coeffs):
    p = tuple(coeffs)
    while p and p[-1] == 0:
        p = p[:-1]
    xs = [F(k, 7) for k in range(len(coeffs))]
    assert interpolate(xs, [poly_eval(p, x) for x in xs]) == p


def test_missing_breakpoint(pair):
    s = pair("simplex")
    with pytest.raises(MissingBreakpointError, match="no polynomial fits"):
        _fit(s, lambda x: f_exact(s, x), 2, [F(0), F(3)])


def test_unsupported_dimension(pair):
    p = pair("product(segment,product(segment,product(segment,segment)))")
    with pytest.raises(UnsupportedDimensionError):
        f_exact(p, F(1, 2))
    with pytest.raises(UnsupportedDimensionError):
        piecewise_fit(p, "g")


def test_hilbert_density_examples(pair):
    h = hilbert_density(pair("segment"))
    assert (h.e0, h.e1, h.F, h.G) == (1, 1, P(0, 1), P(1))
    h = hilbert_density(pair("product(segment,segment)"))
    assert (h.e0, h.e1) == (2, 2)
    h = hilbert_density(pair("simplex"))
    assert (h.e0, h.e1) == (1, F(3, 2))


@pytest.mark.parametrize("name", ["simplex", "hirzebruch(1,1,1)", "product(segment,segment)"])
def test_hilbert_density_matches_counts(pair, name):
    from toric_hk.polytope import count_dilate

    p = pair(name)
    h = hilbert_density(p)
    k = p.d - 1
    # leading two Ehrhart coefficients: e0/k! n^k + e1 n^(k-1) + ...
    from math import factorial

    for n in [20, 40]:
        resid = count_dilate(p.P, n) - h.e0 / factorial(k) * n ** k - h.e1 * n ** (k - 1)
        assert abs(resid) <= 2 * n ** max(k - 2, 0) + 2


def _segre_case(pair, report, a, b):
    A, B = pair(a), pair(b)
    HA, HB = hilbert_density(A), hilbert_density(B)
    ra, rb = report(a), report(b)
    formula = segre_g(ra.f, ra.g, HA, rb.f, rb.g, HB)
    direct = piecewise_fit(product_pair(A, B), "g")
    return formula, direct


def test_segre_segment_segment(pair, report):
    formula, direct = _segre_case(pair, report, "segment", "segment")
    assert formula == direct
    assert formula.pieces[0] == P(0, 2)
    assert formula(F(3, 2)) == -1


@pytest.mark.parametrize("a,b", [("segment", "simplex"), ("simplex", "segment")])
def test_segre_identity_d4(pair, report, a, b):
    formula, direct = _segre_case(pair, report, a, b)
    assert formula == direct


def test_product_pair_examples(pair):
    sq = product_pair(pair("segment"), pair("segment"))
    assert sq.d == 3 and sq.P.volume() == 1
    prism = product_pair(pair("simplex"), pair("segment"))
    assert prism.d == 4
    assert len(prism.L) == len(pair("simplex").L) * len(pair("segment").L)


def _union_volume(polys, k):
    total = F(0)

    def rec(start, current, sign):
        nonlocal total
        for i in range(start, len(polys)):
            nxt = polys[i] if current is None else intersect(current, polys[i])
            if nxt.is_empty or nxt.dim < k:
                continue
            total += sign * nxt.volume()
            rec(i + 1, nxt, -sign)

    rec(0, None, 1)
    return total


@pytest.mark.parametrize("name", ["simplex", "hirzebruch(1,2,1)", "hirzebruch(1,1,1)", "anticanonical_p2"])
def test_eto_volume_identity(pair, report, name):
    p, r = pair(name), report(name)
    h = int(r.f.breakpoints[-1]) + 1
    C = cone_block(p.P, h)
    shifted = [cone_block(p.P, h - 1).translate(tuple(u) + (1,)) for u in p.L]
    k = p.d
    region = C.volume() - _union_volume([intersect(C, T) for T in shifted], k)
    assert region == r.e_hk


@pytest.mark.parametrize("name,qs", [("simplex", [4, 8, 16, 32, 64]), ("hirzebruch(1,1,1)", [4, 8, 16, 32, 64]),
                                     ("anticanonical_p2", [4, 8, 16, 32])])
def test_hk_expansion(pair, report, name, qs):
    p, r = pair(name), report(name)
    res = [abs(hk_value(p, q) - r.e_hk * q ** 3 - r.beta * q ** 2) / q for q in qs]
    assert max(res) <= 2 * max(res[:2]) + 1


def test_beta_is_exact_rational(report):
    for name in ["simplex", "hirzebruch(1,2,1)", "anticanonical_p2"]:
        assert isinstance(report(name).beta, Fraction)
        assert report(name).e_hk > 0
