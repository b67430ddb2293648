"""The dual manifold trop V, the pairing with trop U, dual cones and
Hilbert bases.

trop V is glued from two charts V1 (monomials x^a y^b t^c) and V2
(monomials z^a y^b t^c), both half-spaces a >= 0, identified along the
plane a = 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import lattice as la
from .cones import SheetedCone, develop, is_convex
from .tropu import FlopConfig, monodromy

A_PLUS: la.UniMatrix = ((1, 0, 0), (-2, 1, 0), (0, 0, 1))


def a_minus(n: int) -> la.UniMatrix:
    return ((1, 0, 0), (-1, 1, 0), (-n, 0, 1))


@dataclass(frozen=True)
class DualPoint:
    chart: str
    exps: Tuple[int, int, int]

    def __post_init__(self):
        if self.chart not in ("V1", "V2"):
            raise ValueError("chart must be V1 or V2")
        object.__setattr__(self, "exps", tuple(self.exps))
        if self.exps[0] < 0:
            raise ValueError("first exponent must be nonnegative")

    def canonical(self) -> "DualPoint":
        """Points of the shared plane a = 0 are reported in chart V1."""
        if self.exps[0] == 0:
            return DualPoint("V1", self.exps)
        return self

    def __str__(self):
        return f"{self.chart}:{','.join(map(str, self.exps))}"


X = DualPoint("V1", (1, 0, 0))
Y = DualPoint("V1", (0, 1, 0))
Z = DualPoint("V2", (1, 0, 0))
T = DualPoint("V1", (0, 0, 1))


def v2_functional(cfg: FlopConfig, u) -> tuple:
    """Coefficients (min(2q, q + nr) - p, q, r) of the V2 pairing at u."""
    p, q, r = u
    return (min(2 * q, q + cfg.n * r) - p, q, r)


def pair(cfg: FlopConfig, u, v: DualPoint) -> Fraction:
    """Value of the monomial v's valuation at the point u of trop U."""
    u = la.as_rational(u)
    if v.chart == "V1":
        return la.dot(v.exps, u)
    return la.dot(v.exps, v2_functional(cfg, u))


def dual_monodromy(cfg: FlopConfig) -> la.UniMatrix:
    return la.matmul(la.inverse(a_minus(cfg.n)), A_PLUS)


def ell_star_side(cfg: FlopConfig, v: DualPoint) -> Optional[str]:
    """Which half of the plane a = 0 a point lies in, split by b = nc."""
    a, b, c = v.exps
    if a != 0:
        return None
    s = b - cfg.n * c
    return "+" if s > 0 else ("-" if s < 0 else "ell*")


def transport_across_pi(cfg: FlopConfig, v: DualPoint, side: str) -> DualPoint:
    """Continue a point across the gluing plane on side '+' or '-'.

    Both gluing matrices fix the first coordinate, so the result stays in
    the half-space a >= 0 of the other chart.
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    m = A_PLUS if side == "+" else a_minus(cfg.n)
    if v.chart == "V1":
        return DualPoint("V2", la.matvec(m, v.exps))
    return DualPoint("V1", la.matvec(la.inverse(m), v.exps))


# ---------------------------------------------------------------------------
# rational cones and Hilbert bases

def _primitive_rows(rows):
    out = []
    for r in rows:
        if any(r):
            p = la.primitive_rational(r)
            if p not in out:
                out.append(p)
    return out


def extreme_rays(ineqs: Sequence[Sequence[int]]) -> List[tuple]:
    """Extreme rays of the 3D cone {x : g.x >= 0 for g in ineqs}."""
    ineqs = _primitive_rows(ineqs)
    if len(ineqs) < 3 or _rank(ineqs) < 3:
        raise ValueError("Hilbert basis undefined for non-pointed cone")
    rays = []
    for g, h in itertools.combinations(ineqs, 2):
        d = la.cross(g, h)
        if not any(d):
            continue
        for cand in (d, la.scale(-1, d)):
            if all(la.dot(f, cand) >= 0 for f in ineqs):
                p = la.primitive(cand)
                if p not in rays:
                    rays.append(p)
    return sorted(rays)


def facets(gens: Sequence[Sequence[int]]) -> List[tuple]:
    """Irredundant inequalities of the 3D cone spanned by gens."""
    gens = _primitive_rows(gens)
    if _rank(gens) < 3:
        raise ValueError("cone not full-dimensional")
    out = []
    for g, h in itertools.combinations(gens, 2):
        d = la.cross(g, h)
        if not any(d):
            continue
        for cand in (d, la.scale(-1, d)):
            if all(la.dot(cand, x) >= 0 for x in gens):
                p = la.primitive(cand)
                if p not in out:
                    out.append(p)
    return sorted(out)


def irredundant(ineqs) -> List[tuple]:
    return facets(extreme_rays(ineqs))


def _rank(rows) -> int:
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    if not rows:
        return 0
    dim = len(rows[0])
    rank = 0
    for c in range(dim):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = tuple(a - f * b for a, b in zip(rows[i], rows[rank]))
        rank += 1
    return rank


def _cyclic_order(rays):
    centre = tuple(sum(Fraction(r[i]) for r in rays) for i in range(3))
    e1 = next(la.cross(centre, r) for r in rays if any(la.cross(centre, r)))
    e2 = la.cross(centre, e1)
    from .tropu import diamond
    return sorted(rays, key=lambda r: diamond(la.dot(r, e1), la.dot(r, e2)))


def _parallelepiped_points(gens):
    """Nonzero lattice points sum(l_i g_i) with all l_i in [0, 1)."""
    dim = len(gens)
    lows = [sum(min(0, g[i]) for g in gens) for i in range(dim)]
    highs = [sum(max(0, g[i]) for g in gens) for i in range(dim)]
    cols = list(gens)
    out = []
    for x in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if not any(x):
            continue
        if dim == 3:
            lam = la.solve3(cols, x)
        else:
            d = la.det2(cols[0], cols[1])
            lam = (Fraction(la.det2(x, cols[1]), d), Fraction(la.det2(cols[0], x), d))
        if all(0 <= c < 1 for c in lam):
            out.append(tuple(x))
    return out


def _in_cone_2d(gens, x) -> bool:
    d = la.det2(gens[0], gens[1])
    s = Fraction(la.det2(x, gens[1]), d)
    t = Fraction(la.det2(gens[0], x), d)
    return s >= 0 and t >= 0


def hilbert_basis(ineqs: Optional[Sequence[Sequence[int]]] = None,
                  gens: Optional[Sequence[Sequence[int]]] = None) -> List[tuple]:
    """Minimal generating set of the lattice points of a pointed cone.

    Give either inequalities (3D) or generators (2D or 3D).  Non-simplicial
    cones are fanned into simplicial ones; candidates come from their
    fundamental parallelepipeds.
    """
    if ineqs is not None:
        rays = extreme_rays(ineqs)
        member_ineqs = _primitive_rows(ineqs)
    else:
        rays = [la.primitive(g) for g in gens]
        if len(rays[0]) == 2:
            if len(rays) != 2 or la.det2(*rays) == 0:
                raise ValueError("Hilbert basis undefined for non-pointed cone")
            if la.det2(*rays) < 0:
                rays = rays[::-1]
            member_ineqs = None
        else:
            member_ineqs = facets(rays)
            rays = extreme_rays(member_ineqs)
    if len(rays[0]) == 2:
        simplices = [rays]

        def member(x):
            return _in_cone_2d(rays, x)
    else:
        ordered = _cyclic_order(rays)
        simplices = [(ordered[0], ordered[i], ordered[i + 1]) for i in range(1, len(ordered) - 1)]

        def member(x):
            return all(la.dot(f, x) >= 0 for f in member_ineqs)

    cands = set(rays)
    for s in simplices:
        cands.update(_parallelepiped_points(s))
    cands = sorted(cands)
    basis = []
    for x in cands:
        reducible = any(c != x and member(la.sub(x, c)) for c in cands)
        if not reducible:
            basis.append(x)
    return sorted(basis)


def brute_force_hilbert(ineqs: Sequence[Sequence[int]], bound: int) -> List[tuple]:
    """Irreducible lattice points of {g.x >= 0} inside the box |x_i| <= bound.

    Every lattice point of the box is enumerated.  Points are visited in
    increasing order of the sum of the inequalities, which is positive on a
    pointed full-dimensional cone; a point is reducible exactly when it
    exceeds an irreducible point found earlier.
    """
    ineqs = [tuple(g) for g in ineqs]
    dim = len(ineqs[0])
    weight = tuple(sum(g[i] for g in ineqs) for i in range(dim))

    def member(x):
        return all(la.dot(g, x) >= 0 for g in ineqs)

    pts = [x for x in itertools.product(range(-bound, bound + 1), repeat=dim)
           if any(x) and member(x)]
    if any(la.dot(weight, x) <= 0 for x in pts):
        raise ValueError("Hilbert basis undefined for non-pointed cone")
    pts.sort(key=lambda x: (la.dot(weight, x), x))
    out: List[tuple] = []
    for x in pts:
        if not any(member(la.sub(x, h)) for h in out):
            out.append(x)
    return sorted(out)


# ---------------------------------------------------------------------------
# dual cones

@dataclass
class DualCone:
    chart_v1: List[tuple]
    chart_v2: List[tuple]
    provenance: Tuple[str, ...] = ()

    def contains(self, v: DualPoint) -> bool:
        ineqs = self.chart_v1 if v.chart == "V1" else self.chart_v2
        return all(la.dot(g, v.exps) >= 0 for g in ineqs)

    def hilbert(self, chart: str) -> List[tuple]:
        return hilbert_basis(ineqs=self.chart_v1 if chart == "V1" else self.chart_v2)

    def hilbert_union(self) -> List[DualPoint]:
        """Hilbert bases of both halves glued along a = 0."""
        pts = {DualPoint(c, h).canonical() for c in ("V1", "V2") for h in self.hilbert(c)}
        return sorted(pts, key=lambda d: (d.chart, d.exps))

    def to_json(self) -> dict:
        def hb(chart):
            try:
                return [list(h) for h in self.hilbert(chart)]
            except ValueError:
                return None
        return {
            "chart_V1": {"ineqs": [list(g) for g in self.chart_v1]},
            "chart_V2": {"ineqs": [list(g) for g in self.chart_v2]},
            "hilbert_V1": hb("V1"),
            "hilbert_V2": hb("V2"),
        }


def pairing_generators(cfg: FlopConfig, cone: SheetedCone) -> List[tuple]:
    """Fundamental generators of every linear piece of a cell."""
    mono = monodromy(cfg)
    gens = set()
    for piece in develop(cfg, cone):
        back = la.matpow(mono, -piece.sheet)
        for g in piece.generators:
            gens.add(la.primitive_rational(la.matvec(back, g)))
    return sorted(gens)


def _halfspace_cone(rows):
    rows = _primitive_rows(rows)
    try:
        return irredundant(rows)
    except ValueError:
        return sorted(rows)


def dual_cone(cfg: FlopConfig, cone: Optional[SheetedCone]) -> DualCone:
    """tau* chart by chart: monomials pairing nonnegatively with tau."""
    if cone is None or not cone.rays:
        return DualCone([(1, 0, 0)], [(1, 0, 0)], ())
    if not is_convex(cfg, cone):
        raise ValueError("dual of non-convex cone not supported")
    gens = pairing_generators(cfg, cone)
    v1 = [(1, 0, 0)] + [tuple(g) for g in gens]
    v2 = [(1, 0, 0)] + [v2_functional(cfg, g) for g in gens]
    return DualCone(_halfspace_cone(v1), _halfspace_cone(v2), cone.labels)
