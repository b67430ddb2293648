"""Exact integer and rational linear algebra on Z^3 and Q^3.

Vectors are plain tuples of ``int`` or ``Fraction`` and matrices are tuples
of row tuples.  Nothing here ever touches a float.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Sequence, Tuple, Union

Number = Union[int, Fraction]
LatticeVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]
UniMatrix = Tuple[Tuple[int, ...], ...]

IDENTITY: UniMatrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def vec(*coords: Number) -> tuple:
    """Normalise coordinates: integral fractions collapse to ``int``."""
    out = []
    for c in coords:
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        out.append(c)
    return tuple(out)


def as_rational(v: Sequence[Number]) -> RationalVector:
    return tuple(Fraction(c) for c in v)


def vgcd(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(c)) for c in v), 0)


def primitive(v: Sequence[int]) -> LatticeVector:
    """Divide an integer vector by the gcd of its entries."""
    g = vgcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(c) // g for c in v)


def primitive_rational(v: Sequence[Number]) -> LatticeVector:
    """Primitive integer vector on the ray through a rational vector."""
    q = as_rational(v)
    den = reduce(lambda x, y: x * y // gcd(x, y), (c.denominator for c in q), 1)
    return primitive([int(c * den) for c in q])


def add(u, w):
    return tuple(a + b for a, b in zip(u, w))


def sub(u, w):
    return tuple(a - b for a, b in zip(u, w))


def scale(k, u):
    return tuple(k * a for a in u)


def dot(u, w):
    return sum(a * b for a, b in zip(u, w))


def cross(u, w):
    return (u[1] * w[2] - u[2] * w[1],
            u[2] * w[0] - u[0] * w[2],
            u[0] * w[1] - u[1] * w[0])


def det2(u, w):
    return u[0] * w[1] - u[1] * w[0]


def det3(u, v, w):
    return dot(u, cross(v, w))


def matvec(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(m):
    return tuple(zip(*m))


def det(m) -> Number:
    if len(m) == 2:
        return det2(m[0], m[1])
    return det3(m[0], m[1], m[2])


def adjugate(m):
    """Adjugate of a 3x3 matrix, so that m @ adj = det(m) I."""
    c = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            minor = [[m[r][s] for s in range(3) if s != j] for r in range(3) if r != i]
            c[i][j] = (-1) ** (i + j) * det2(minor[0], minor[1])
    return transpose(tuple(tuple(row) for row in c))


def inverse(m) -> tuple:
    """Exact inverse; integer entries when det = +-1, fractions otherwise."""
    d = det(m)
    if d == 0:
        raise ValueError("singular matrix")
    adj = adjugate(m)
    if d in (1, -1):
        return tuple(tuple(d * x for x in row) for row in adj)
    return tuple(tuple(Fraction(x, d) for x in row) for row in adj)


def is_unimodular(m) -> bool:
    return all(isinstance(x, int) for row in m for x in row) and det(m) in (1, -1)


def inverse_transpose(m) -> UniMatrix:
    """(M^-1)^T for a 3x3 matrix invertible over the integers."""
    if not is_unimodular(m):
        raise ValueError("matrix not invertible over the integers")
    return transpose(inverse(m))


def matpow(m, k: int):
    """Integer power, negative exponents allowed for unimodular m."""
    m = tuple(tuple(r) for r in m)
    return _matpow(m, k)


@lru_cache(maxsize=1024)
def _matpow(m, k: int):
    if k < 0:
        m, k = inverse(m), -k
    out = IDENTITY
    while k:
        if k & 1:
            out = matmul(out, m)
        m = matmul(m, m)
        k >>= 1
    return out


def cone_index_2d(g1: Sequence[int], g2: Sequence[int]) -> int:
    """Index of the sublattice spanned by two plane vectors.

    A value k means the cone <g1, g2> is the chart of an A_{k-1} surface
    singularity (smooth iff k = 1) when g1, g2 are primitive.
    """
    d = abs(det2(g1, g2))
    if d == 0:
        raise ValueError("degenerate 2D cone")
    return d


def solve3(cols, rhs) -> RationalVector:
    """Solve [c0 c1 c2] x = rhs by Cramer's rule."""
    d = det3(*cols)
    if d == 0:
        raise ValueError("singular system")
    out = []
    for i in range(3):
        m = list(cols)
        m[i] = rhs
        out.append(Fraction(det3(*m), d))
    return tuple(out)


def row_hnf(rows):
    """Row-style Hermite normal form of an integer matrix (full row rank).

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot).  Zero rows are dropped.
    """
    a = [list(r) for r in rows]
    nrows, ncols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, nrows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < nrows and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in a if any(row))


def orthogonal_lattice(r: Sequence[int]):
    """A Z-basis of {a in Z^3 : a . r = 0} for primitive r, in HNF."""
    r = primitive(r)
    # Column operations bringing r to (1, 0, 0) leave the last two columns
    # of the transformation spanning the kernel of the row vector r.
    u = [list(row) for row in IDENTITY]
    cur = list(r)
    for j in (1, 2):
        while cur[j] != 0:
            if cur[0] == 0 or abs(cur[j]) < abs(cur[0]):
                cur[0], cur[j] = cur[j], cur[0]
                for row in u:
                    row[0], row[j] = row[j], row[0]
                continue
            q = cur[j] // cur[0]
            cur[j] -= q * cur[0]
            for row in u:
                row[j] -= q * row[0]
    basis = [tuple(u[i][j] for i in range(3)) for j in (1, 2)]
    for b in basis:
        assert dot(b, r) == 0
    return row_hnf(basis)
