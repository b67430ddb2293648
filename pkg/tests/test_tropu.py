from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from flopgeom import lattice as la
from flopgeom.tropu import (FlopConfig, SheetedVector, angle, height, lift_in, monodromy,
                            on_ell, segments_between, transverse, wall_half)

widths = st.integers(1, 8)
small = st.integers(-6, 6)
points = st.tuples(small, small, small)


@pytest.mark.parametrize("n, want", [(1, ((1, 1, -1), (0, 1, 0), (0, 0, 1))),
                                     (2, ((1, 1, -2), (0, 1, 0), (0, 0, 1)))])
def test_monodromy_matrix(n, want):
    assert monodromy(FlopConfig.canonical(n)) == want


@pytest.mark.parametrize("n", range(1, 9))
def test_monodromy_fixes_singular_line(n):
    m = monodromy(FlopConfig.canonical(n))
    assert la.matvec(m, (0, n, 1)) == (0, n, 1)
    assert la.matvec(m, (n, n, 1)) == (n, n, 1)


@given(widths, points)
def test_height_is_monodromy_invariant(n, p):
    m = monodromy(FlopConfig.canonical(n))
    assert height(la.matvec(m, p)) == height(p)
    assert height(la.matvec(la.inverse(m), p)) == height(p)


def test_config_defaults_and_validation():
    cfg = FlopConfig(3)
    assert (cfg.a, cfg.b) == (3, 1) and cfg.critical and cfg.ell == (3, 3, 1)
    assert FlopConfig(2, 2, 2).ell == (1, 2, 1)
    assert not FlopConfig(2, 1, 1).critical
    with pytest.raises(ValueError):
        FlopConfig(0)


def test_wall_halves():
    cfg = FlopConfig.canonical(2)
    assert wall_half(cfg, (3, 2, 1)) == "H+"
    assert wall_half(cfg, (0, 2, 1)) == "H-"
    assert wall_half(cfg, (2, 2, 1)) == "ell"
    assert wall_half(cfg, (0, 1, 0)) is None


@given(widths, points, st.integers(-3, 3))
def test_transport_round_trip(n, p, k):
    cfg = FlopConfig.canonical(n)
    sv = SheetedVector.lift(cfg, p, k)
    assert sv.fundamental(cfg) == p
    assert sv.transport(cfg, -k) == SheetedVector(p, 0)


@given(widths, points, st.integers(-3, 3))
def test_angle_advances_one_turn_per_sheet(n, p, k):
    cfg = FlopConfig.canonical(n)
    assume(not on_ell(cfg, p))
    a0 = angle(cfg, p)
    assert 0 <= a0 < 4
    assert SheetedVector.lift(cfg, p, k).angle(cfg) == a0 + 4 * k


@given(widths, points, st.fractions(-4, 8))
def test_lift_in_window(n, p, lo):
    cfg = FlopConfig.canonical(n)
    assume(not on_ell(cfg, p))
    sv = lift_in(cfg, p, lo, lo + 3)
    if sv is not None:
        assert lo <= sv.angle(cfg) <= lo + 3


def test_straight_segment_crosses_lower_half():
    cfg = FlopConfig(2, 2, 1)
    segs = segments_between(cfg, (0, 1, 0), (0, 0, 1))
    clean = [s for s in segs if not s.through_ell]
    assert len(clean) == 1 and not clean[0].bent
    # its crossing of the wall lies in H- at (0, 2/3, 1/3)
    mid = (0, Fraction(2, 3), Fraction(1, 3))
    assert wall_half(cfg, mid) == "H-"
    a, b, tangent = clean[0].pieces[0]
    t = Fraction(1, 3)
    assert tuple(x + t * (y - x) for x, y in zip(a, b)) == mid


def test_two_segments_when_line_below_critical():
    cfg = FlopConfig(2, 1, 1)
    segs = segments_between(cfg, (0, 1, 0), (0, 0, 1))
    assert len(segs) == 2
    assert sorted(s.bent for s in segs) == [False, True]
    assert not any(s.through_ell for s in segs)
    bent = next(s for s in segs if s.bent)
    c, m = bent.bends[0]
    assert wall_half(cfg, c) == "H+"
    assert la.matvec(m, bent.pieces[0][2]) == bent.pieces[1][2]


def test_critical_straight_path_flagged():
    cfg = FlopConfig(2, 2, 1)
    segs = segments_between(cfg, (1, 1, 0), (0, 0, 1))
    flagged = [s for s in segs if s.through_ell]
    bent = [s for s in segs if s.bent]
    assert len(flagged) == 1 and len(bent) == 1 and len(segs) == 2
    assert flagged[0].pieces[0][1] == (Fraction(2, 3), Fraction(2, 3), Fraction(1, 3))
    assert on_ell(cfg, flagged[0].pieces[0][1])


def test_endpoint_on_singular_line_rejected():
    cfg = FlopConfig.canonical(2)
    with pytest.raises(ValueError, match="singular locus"):
        segments_between(cfg, (2, 2, 1), (0, 1, 0))


@given(widths, points, points)
def test_segments_are_well_formed(n, p, q):
    cfg = FlopConfig.canonical(n)
    assume(not on_ell(cfg, p) and not on_ell(cfg, q) and p != q)
    assume(transverse(cfg, p) != (0, 0) and transverse(cfg, q) != (0, 0))
    segs = segments_between(cfg, p, q)
    assert 1 <= len(segs) <= 3
    assert sum(1 for s in segs if not s.through_ell) <= 2
    for s in segs:
        assert s.pieces[0][0] == p and s.pieces[-1][1] == q
        for (_, c, before), (c2, _, after) in zip(s.pieces, s.pieces[1:]):
            assert c == c2
        for c, m in s.bends:
            assert wall_half(cfg, c) == "H+"
            assert m in (monodromy(cfg), la.inverse(monodromy(cfg)))
