from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flopgeom import lattice as la
from flopgeom.cones import Ray, SheetedCone, flop_subdivision, pagoda, sigma, singular_ray
from flopgeom.dual import (A_PLUS, T, X, Y, Z, DualPoint, a_minus, brute_force_hilbert,
                           dual_cone, dual_monodromy, ell_star_side, extreme_rays,
                           hilbert_basis, pair, transport_across_pi)
from flopgeom.tropu import FlopConfig, monodromy
from flopgeom.verify import CORNER_VALUES, W1_BASIS, expected_pairing_table, corner_values, pairing_table

small = st.integers(-20, 20)
nonneg = st.integers(0, 20)
tropu_points = st.tuples(small, small, small)
dual_points = st.builds(lambda c, a, b, d: DualPoint(c, (a, b, d)),
                        st.sampled_from(["V1", "V2"]), nonneg, small, small)


def canon(n):
    return FlopConfig.canonical(n)


# ---- pairing ---------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 9))
def test_pairing_table(n):
    cfg = canon(n)
    assert pair(cfg, (n, n, 1), Z) == n
    assert pair(cfg, (0, 1, 0), Z) == 1
    assert pair(cfg, (0, 0, 1), Z) == 0
    assert pairing_table(cfg) == expected_pairing_table(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_corner_values(n):
    cfg = canon(n)
    assert pair(cfg, (1, 1, 0), X) == 1
    assert pair(cfg, (1, 1, 0), Z) == 0
    assert corner_values(cfg) == CORNER_VALUES


def test_pairing_accepts_rationals():
    assert pair(canon(2), (Fraction(1, 2), 1, 0), Z) == Fraction(1, 2)


@settings(max_examples=10_000, deadline=None)
@given(st.integers(1, 8), tropu_points, tropu_points, dual_points)
def test_pairing_is_concave(n, u, w, v):
    cfg = canon(n)
    assert pair(cfg, la.add(u, w), v) >= pair(cfg, u, v) + pair(cfg, w, v)


@given(st.integers(1, 8), tropu_points, dual_points, st.integers(0, 5))
def test_pairing_is_homogeneous(n, u, v, k):
    cfg = canon(n)
    assert pair(cfg, la.scale(k, u), v) == k * pair(cfg, u, v)


# ---- gluing ----------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 9))
def test_dual_monodromy(n):
    cfg = canon(n)
    assert dual_monodromy(cfg) == la.inverse_transpose(monodromy(cfg))
    if n == 1:
        assert dual_monodromy(cfg) == ((1, 0, 0), (-1, 1, 0), (1, 0, 1))


def test_transport_examples():
    cfg = canon(3)
    assert transport_across_pi(cfg, X, "+") == DualPoint("V2", (1, -2, 0))
    assert transport_across_pi(cfg, X, "-") == DualPoint("V2", (1, -1, -3))
    with pytest.raises(ValueError):
        transport_across_pi(cfg, X, "0")


@settings(max_examples=10_000, deadline=None)
@given(st.integers(1, 8), dual_points, st.sampled_from("+-"))
def test_reglue_round_trip(n, v, side):
    cfg = canon(n)
    there = transport_across_pi(cfg, v, side)
    assert there.chart != v.chart and there.exps[0] == v.exps[0]
    assert transport_across_pi(cfg, there, side) == v


@given(st.integers(1, 8), st.tuples(nonneg, small, small))
def test_loop_around_ell_star_is_dual_monodromy(n, e):
    cfg = canon(n)
    v = DualPoint("V1", e)
    loop = transport_across_pi(cfg, transport_across_pi(cfg, v, "+"), "-")
    assert loop == DualPoint("V1", la.matvec(la.inverse(a_minus(n)), la.matvec(A_PLUS, e)))
    assert loop.exps == la.matvec(dual_monodromy(cfg), e)


@given(st.integers(1, 8), small, small)
def test_gluing_fixes_shared_plane(n, b, c):
    for m in (A_PLUS, a_minus(n)):
        assert la.matvec(m, (0, b, c)) == (0, b, c)
    side = ell_star_side(canon(n), DualPoint("V1", (0, b, c)))
    assert side == ("ell*" if b == n * c else ("+" if b > n * c else "-"))


def test_dual_point_validation():
    with pytest.raises(ValueError):
        DualPoint("V1", (-1, 0, 0))
    with pytest.raises(ValueError):
        DualPoint("V3", (0, 0, 0))
    assert DualPoint("V2", (0, 1, 2)).canonical() == DualPoint("V1", (0, 1, 2))
    assert str(Z) == "V2:1,0,0"


# ---- dual cones and Hilbert bases -----------------------------------------

@pytest.mark.parametrize("n", range(1, 5))
def test_sigma_dual_is_two_orthants(n):
    cfg = canon(n)
    d = dual_cone(cfg, sigma(cfg))
    assert d.chart_v1 == d.chart_v2 == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert d.contains(X) and d.contains(Y) and d.contains(Z) and d.contains(T)


def test_dual_of_apex_is_everything():
    d = dual_cone(canon(2), None)
    assert d.chart_v1 == d.chart_v2 == [(1, 0, 0)]
    assert d.to_json()["hilbert_V1"] is None


@pytest.mark.parametrize("n", range(1, 9))
def test_w1_recovery(n):
    cfg = canon(n)
    d = dual_cone(cfg, flop_subdivision(cfg, "A").cells[0])
    assert d.hilbert_union() == W1_BASIS
    assert (1, -1, 0) in d.hilbert("V2")
    assert d.contains(DualPoint("V2", (1, -1, 0)))


@pytest.mark.parametrize("n", range(1, 5))
def test_w1_against_brute_force(n):
    cfg = canon(n)
    d = dual_cone(cfg, flop_subdivision(cfg, "A").cells[0])
    for chart, ineqs in (("V1", d.chart_v1), ("V2", d.chart_v2)):
        assert brute_force_hilbert(ineqs, 4 * n) == d.hilbert(chart)


def test_non_convex_cell_rejected():
    cfg = canon(2)
    with pytest.raises(ValueError, match="non-convex"):
        dual_cone(cfg, flop_subdivision(cfg, "A").cells[1])


@pytest.mark.parametrize("n", range(1, 4))
def test_pagoda_duals_are_smooth(n):
    # a smooth cone has a dual whose Hilbert basis in each chart is three elements
    cfg = canon(n)
    for cell in pagoda(cfg).cells:
        d = dual_cone(cfg, cell)
        for chart in ("V1", "V2"):
            hb = d.hilbert(chart)
            assert len(hb) == 3 and abs(la.det3(*hb)) == 1


def test_hilbert_basis_examples():
    assert hilbert_basis(ineqs=[(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    for n in range(1, 7):
        assert hilbert_basis(gens=[(0, 1), (n, 1)]) == [(i, 1) for i in range(n + 1)]
    with pytest.raises(ValueError, match="non-pointed"):
        extreme_rays([(1, 0, 0), (0, 1, 0)])


cone_gens = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3)),
                     min_size=3, max_size=4, unique=True)


@settings(max_examples=60, deadline=None)
@given(cone_gens)
def test_hilbert_basis_matches_brute_force(gens):
    if la.det3(*gens[:3]) == 0:
        return
    from flopgeom.dual import facets
    ineqs = facets(gens)
    hb = hilbert_basis(ineqs=ineqs)
    bound = max(max(abs(c) for c in h) for h in hb)
    assert brute_force_hilbert(ineqs, bound) == hb


def test_dual_cone_json_shape():
    cfg = canon(2)
    doc = dual_cone(cfg, SheetedCone((Ray("D2", (0, 1, 0)), Ray("D3", (0, 0, 1)), singular_ray(cfg)))).to_json()
    assert set(doc) == {"chart_V1", "chart_V2", "hilbert_V1", "hilbert_V2"}
    assert doc["hilbert_V2"] == [[0, 0, 1], [0, 1, 0], [1, -1, 0]]
