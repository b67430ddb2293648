from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from flopgeom import lattice as la

ints = st.integers(-9, 9)
vec3 = st.tuples(ints, ints, ints)
mat3 = st.tuples(vec3, vec3, vec3)


@pytest.mark.parametrize("v, want", [((2, 2, 0), (1, 1, 0)), ((6, 4, 2), (3, 2, 1)),
                                     ((-4, 0, 6), (-2, 0, 3))])
def test_primitive_examples(v, want):
    assert la.primitive(v) == want


@pytest.mark.parametrize("n", range(1, 9))
def test_ell_generator_already_primitive(n):
    assert la.primitive((n, n, 1)) == (n, n, 1)


def test_primitive_zero_rejected():
    with pytest.raises(ValueError, match="zero vector"):
        la.primitive((0, 0, 0))


@given(vec3.filter(any), st.integers(1, 12))
def test_primitive_scale_invariant(v, k):
    p = la.primitive(v)
    assert la.vgcd(p) == 1
    assert la.primitive(la.scale(k, v)) == p


def test_primitive_rational_clears_denominators():
    assert la.primitive_rational((Fraction(1, 2), Fraction(1, 3), 0)) == (3, 2, 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_monodromy_inverse_transpose(n):
    m = ((1, 1, -n), (0, 1, 0), (0, 0, 1))
    assert la.inverse_transpose(m) == ((1, 0, 0), (-1, 1, 0), (n, 0, 1))


def test_inverse_transpose_examples():
    assert la.inverse_transpose(la.IDENTITY) == la.IDENTITY
    a_plus = ((1, 0, 0), (-2, 1, 0), (0, 0, 1))
    assert la.inverse_transpose(a_plus) == ((1, 2, 0), (0, 1, 0), (0, 0, 1))


def test_inverse_transpose_rejects_non_unimodular():
    with pytest.raises(ValueError, match="not invertible over the integers"):
        la.inverse_transpose(((2, 0, 0), (0, 1, 0), (0, 0, 1)))


@given(mat3)
def test_inverse_matches_sympy(m):
    sm = sympy.Matrix(m)
    if sm.det() == 0:
        with pytest.raises(ValueError):
            la.inverse(m)
        return
    want = sm.inv()
    got = la.inverse(m)
    assert all(Fraction(got[i][j]) == Fraction(int(want[i, j].p), int(want[i, j].q))
               for i in range(3) for j in range(3))
    assert la.det(m) == sm.det()


@given(mat3, st.integers(-3, 3))
def test_matpow_group_law(m, k):
    u = la.matmul(((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((1, 0, 0), (m[0][0] % 3, 1, 0), (0, 0, 1)))
    assert la.matmul(la.matpow(u, k), la.matpow(u, -k)) == la.IDENTITY
    assert la.is_unimodular(u)


@pytest.mark.parametrize("n", range(1, 7))
def test_cone_index_a_singularity(n):
    assert la.cone_index_2d((0, 1), (n, 1)) == n


def test_cone_index_examples():
    assert la.cone_index_2d((1, 0), (0, 1)) == 1
    assert la.cone_index_2d((1, 1), (-1, 1)) == 2
    with pytest.raises(ValueError, match="degenerate"):
        la.cone_index_2d((1, 2), (2, 4))


@given(vec3, vec3, vec3)
def test_solve3_round_trip(a, b, c):
    if la.det3(a, b, c) == 0:
        return
    rhs = (1, -2, 5)
    lam = la.solve3((a, b, c), rhs)
    assert tuple(lam[0] * a[i] + lam[1] * b[i] + lam[2] * c[i] for i in range(3)) == rhs


@settings(max_examples=200)
@given(vec3.filter(any))
def test_orthogonal_lattice_is_saturated_basis(r):
    basis = la.orthogonal_lattice(r)
    assert len(basis) == 2
    assert all(la.dot(b, r) == 0 for b in basis)
    # Completed by any vector pairing to the gcd, the basis is unimodular.
    cross = la.cross(*basis)
    assert la.vgcd(cross) == 1
    assert la.primitive(r) in (cross, la.scale(-1, cross))
