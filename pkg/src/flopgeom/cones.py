"""Cones in trop U: the cone sigma, its subdivisions and their combinatorics.

A cell is a polygon of labelled rays listed counterclockwise around the
singular line, each ray carrying developed coordinates and a sheet index.
Cells either avoid the singular line, contain it as one of their rays, or
wind once around it (``winds=True``), in which case the edge from the last
ray closes up onto the first ray transported one sheet on.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from . import lattice as la
from .tropu import (D1, D2, D3, FlopConfig, SheetedVector, cross_t, lift_in, monodromy,
                    on_ell, segments_between)

P_MATRIX: la.UniMatrix = ((1, 0, -1), (0, 1, -1), (0, 0, 1))


@dataclass(frozen=True)
class Ray:
    label: str
    vector: tuple
    sheet: int = 0
    kind: str = "divisor"

    @property
    def sv(self) -> SheetedVector:
        return SheetedVector(self.vector, self.sheet)

    def transport(self, cfg: FlopConfig, k: int = 1) -> "Ray":
        s = self.sv.transport(cfg, k)
        return Ray(self.label, s.vector, s.sheet, self.kind)

    def fundamental(self, cfg: FlopConfig) -> tuple:
        return self.sv.fundamental(cfg)


def singular_ray(cfg: FlopConfig, label: str = "L") -> Ray:
    return Ray(label, cfg.ell, 0, "singular")


def sigma_rays() -> Tuple[Ray, Ray, Ray]:
    return Ray("D1", D1), Ray("D2", D2), Ray("D3", D3)


@dataclass(frozen=True)
class SheetedCone:
    rays: Tuple[Ray, ...]
    winds: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(self.rays))

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(r.label for r in self.rays)


def is_l(cfg: FlopConfig, r: Ray) -> bool:
    return on_ell(cfg, r.vector)


def has_ell(cfg: FlopConfig, cone: SheetedCone) -> bool:
    return cone.winds or any(is_l(cfg, r) for r in cone.rays)


def ray_angle(cfg: FlopConfig, r: Ray) -> Fraction:
    return r.sv.angle(cfg)


def edges(cfg: FlopConfig, cone: SheetedCone) -> List[Tuple[Ray, Ray]]:
    """Polygon edges in order; a winding cell closes onto the next sheet."""
    rs = list(cone.rays)
    out = list(zip(rs, rs[1:]))
    out.append((rs[-1], rs[0].transport(cfg) if cone.winds else rs[0]))
    return out


def angle_range(cfg: FlopConfig, cone: SheetedCone) -> Tuple[Fraction, Fraction]:
    angles = [ray_angle(cfg, r) for r in cone.rays if not is_l(cfg, r)]
    if cone.winds:
        return angles[0], angles[0] + 4
    return min(angles), max(angles)


def _check_turn(cfg: FlopConfig, cone: SheetedCone) -> None:
    lo, hi = angle_range(cfg, cone)
    if not cone.winds and hi - lo >= 4:
        raise ValueError("cone exceeds one developing turn")
    if cone.winds:
        angles = [ray_angle(cfg, r) for r in cone.rays]
        if any(b <= a for a, b in zip(angles, angles[1:])) or angles[-1] >= angles[0] + 4:
            raise ValueError("cone exceeds one developing turn")


def simplices(cfg: FlopConfig, cone: SheetedCone) -> List[Tuple[tuple, tuple, tuple, Fraction, Fraction]]:
    """Simplicial pieces (developed generators plus angle range).

    Cells meeting the singular line are starred from it, the others are
    fanned from their first ray.
    """
    _check_turn(cfg, cone)
    ell = cfg.ell
    out = []
    if has_ell(cfg, cone):
        for u, w in edges(cfg, cone):
            if is_l(cfg, u) or is_l(cfg, w):
                continue
            au, aw = ray_angle(cfg, u), ray_angle(cfg, w)
            if aw <= au or cross_t(cfg, u.vector, w.vector) <= 0:
                raise ValueError("sector around the singular line is not a proper wedge")
            out.append((u.vector, w.vector, ell, au, aw))
        return out
    lo, hi = angle_range(cfg, cone)
    rs = cone.rays
    for i in range(1, len(rs) - 1):
        out.append((rs[0].vector, rs[i].vector, rs[i + 1].vector, lo, hi))
    return out


def _in_simplex(gens, x) -> bool:
    try:
        coeffs = la.solve3(gens, x)
    except ValueError:
        return False
    return all(c >= 0 for c in coeffs)


def contains(cfg: FlopConfig, cone: SheetedCone, p) -> bool:
    """Closed membership of the fundamental point p in the cell."""
    p = la.as_rational(p)
    if not any(p):
        return True
    if on_ell(cfg, p):
        return has_ell(cfg, cone) and la.dot(p, cfg.ell) > 0
    for g1, g2, g3, lo, hi in simplices(cfg, cone):
        lift = lift_in(cfg, p, lo, hi)
        if lift is not None and _in_simplex((g1, g2, g3), lift.vector):
            return True
    return False


def on_face(cfg: FlopConfig, u: Ray, w: Ray, p) -> bool:
    """Is the fundamental point p on the 2D face spanned by rays u, w?"""
    p = la.as_rational(p)
    if not any(p):
        return True
    if is_l(cfg, w):
        u, w = w, u
    if on_ell(cfg, p):
        return is_l(cfg, u) and la.dot(p, cfg.ell) > 0
    if is_l(cfg, u):
        aw = ray_angle(cfg, w)
        lift = lift_in(cfg, p, aw, aw)
    else:
        au, aw = sorted((ray_angle(cfg, u), ray_angle(cfg, w)))
        lift = lift_in(cfg, p, au, aw)
    if lift is None:
        return False
    x = lift.vector
    normal = la.cross(u.vector, w.vector)
    if la.dot(normal, x) != 0:
        return False
    # solve x = s u + t w on a coordinate plane where u, w are independent
    for i, j in ((0, 1), (0, 2), (1, 2)):
        d = la.det2((u.vector[i], u.vector[j]), (w.vector[i], w.vector[j]))
        if d:
            s = Fraction(la.det2((x[i], x[j]), (w.vector[i], w.vector[j])), d)
            t = Fraction(la.det2((u.vector[i], u.vector[j]), (x[i], x[j])), d)
            return s >= 0 and t >= 0
    return False


def in_interior(cfg: FlopConfig, cone: SheetedCone, p) -> bool:
    return contains(cfg, cone, p) and not any(on_face(cfg, u, w, p) for u, w in edges(cfg, cone))


@dataclass
class Piece:
    """Part of a cell lying on one sheet, as simplicial cones in developed
    coordinates of that sheet."""

    sheet: int
    simplices: List[Tuple[tuple, tuple, tuple]] = field(default_factory=list)

    @property
    def generators(self) -> List[tuple]:
        seen: Dict[tuple, tuple] = {}
        for s in self.simplices:
            for g in s:
                seen.setdefault(la.primitive_rational(g), g)
        return sorted(seen)

    def contains(self, cfg: FlopConfig, p) -> bool:
        """Membership of a fundamental point via this sheet's coordinates."""
        x = la.matvec(la.matpow(monodromy(cfg), self.sheet), la.as_rational(p))
        return any(_in_simplex(s, x) for s in self.simplices)


def _split_at_cut(cfg: FlopConfig, gens, lo, hi):
    """Split a simplicial cone at every multiple of 4 strictly inside its
    angle range, returning (sheet, generators) parts."""
    first = int(lo // 4)
    cuts = [4 * m for m in range(first + 1, int(hi // 4) + 2) if lo < 4 * m < hi]
    if not cuts:
        return [(first, list(gens))]
    if len(cuts) > 1:
        raise ValueError("cone exceeds one developing turn")
    side = [g[1] - cfg.n * g[2] for g in gens]
    below = [g for g, s in zip(gens, side) if s <= 0]
    above = [g for g, s in zip(gens, side) if s >= 0]
    for (g, s), (h, t) in itertools.combinations(list(zip(gens, side)), 2):
        if s * t < 0:
            c = tuple(Fraction(t) * x - Fraction(s) * y for x, y in zip(g, h))
            if t < 0:
                c = tuple(-v for v in c)
            c = la.primitive_rational(c)
            below.append(c)
            above.append(c)
    sheet = cuts[0] // 4
    return [(sheet - 1, below), (sheet, above)]


def _fan(gens):
    """Triangulate a (convex) set of cone generators lying in a half-space."""
    gens = list(dict.fromkeys(la.primitive_rational(g) for g in gens))
    if len(gens) == 3:
        return [tuple(gens)]
    # order by angle around the centroid direction
    centre = tuple(sum(Fraction(g[i]) / sum(abs(c) for c in g) for g in gens) for i in range(3))
    e1 = next(la.cross(centre, g) for g in gens if any(la.cross(centre, g)))
    e2 = la.cross(centre, e1)
    from .tropu import diamond

    def key(g):
        return diamond(la.dot(g, e1), la.dot(g, e2))

    ordered = sorted(gens, key=key)
    return [(ordered[0], ordered[i], ordered[i + 1]) for i in range(1, len(ordered) - 1)]


def develop(cfg: FlopConfig, cone: SheetedCone) -> List[Piece]:
    """Present the cell as linear pieces, one per sheet it touches."""
    pieces: Dict[int, Piece] = {}
    for g1, g2, g3, lo, hi in simplices(cfg, cone):
        for sheet, gens in _split_at_cut(cfg, (g1, g2, g3), lo, hi):
            piece = pieces.setdefault(sheet, Piece(sheet))
            for tri in _fan(gens):
                if la.det3(*tri) != 0:
                    piece.simplices.append(tri)
    return [pieces[k] for k in sorted(pieces)]


def is_convex(cfg: FlopConfig, cone: SheetedCone) -> bool:
    """Developed-fan sign test for convexity in the affine structure."""
    _check_turn(cfg, cone)
    rs = list(cone.rays)
    ell = cfg.ell
    if cone.winds:
        m = len(rs)
        chain = [rs[-1].transport(cfg, -1)] + rs + [r.transport(cfg) for r in rs[:2]]
        for i in range(1, m + 1):
            if la.det3(chain[i - 1].vector, chain[i].vector, chain[i + 1].vector) <= 0:
                return False
        return all(la.det3(u.vector, w.vector, ell) > 0 for u, w in edges(cfg, cone))
    m = len(rs)
    for i in range(m):
        if la.det3(rs[i - 1].vector, rs[i].vector, rs[(i + 1) % m].vector) < 0:
            return False
    others = [r for r in rs if not is_l(cfg, r)]
    first = min(others, key=lambda r: ray_angle(cfg, r))
    last = max(others, key=lambda r: ray_angle(cfg, r))
    # the way back round through the complement must not be a short cut
    return cross_t(cfg, last.vector, first.transport(cfg).vector) <= 0


def sample_points(cfg: FlopConfig, cone: SheetedCone) -> List[tuple]:
    """Generators and a few interior points of a cell, fundamental coords."""
    mono = monodromy(cfg)
    pts = []
    weights = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1), (3, 1, 1), (1, 2, 5), (2, 0, 1)]
    for piece in develop(cfg, cone):
        back = la.matpow(mono, -piece.sheet)
        for tri in piece.simplices:
            for w in weights:
                for perm in set(itertools.permutations(w)):
                    x = tuple(sum(c * Fraction(g[i]) for c, g in zip(perm, tri)) for i in range(3))
                    pts.append(la.matvec(back, x))
    out = []
    for p in pts:
        if not on_ell(cfg, p) and p not in out:
            out.append(p)
    return out


def is_convex_by_segments(cfg: FlopConfig, cone: SheetedCone, scalings=(1, 2, Fraction(1, 3))) -> bool:
    """Cross-check oracle: every unflagged segment between sample points of
    the cell stays in the cell."""
    pts = sample_points(cfg, cone)
    pts = list(dict.fromkeys(tuple(s * x for x in p) for p in pts[:12] for s in scalings)) + pts[12:]
    for p, q in itertools.combinations(pts, 2):
        if p == q:
            continue
        for seg in segments_between(cfg, p, q):
            if seg.through_ell:
                continue
            if not all(contains(cfg, cone, x) for x in seg.points()):
                return False
    return True


def sigma(cfg: FlopConfig) -> SheetedCone:
    return SheetedCone(sigma_rays(), winds=True)


def sigma_membership(cfg: FlopConfig, p) -> bool:
    x, y, z = p
    if x < 0 or z < 0:
        return False
    if y >= cfg.n * z:
        return x <= y + cfg.n * z
    return x <= 2 * y


def bent_faces_agree(cfg: FlopConfig, samples: Iterable[tuple]) -> bool:
    """The two bent-face functionals x-y-nz and x-2y agree on H."""
    return all(x - y - cfg.n * z == x - 2 * y for x, y, z in samples if y == cfg.n * z)


def slice_points(cfg: FlopConfig, h: int) -> List[la.LatticeVector]:
    """Integral points of sigma at height y + z = h, in lexicographic order."""
    if h < 0:
        raise ValueError("height must be nonnegative")
    pts = []
    for x in range(0, (cfg.n + 1) * h + 1):
        for z in range(0, h + 1):
            p = (x, h - z, z)
            if sigma_membership(cfg, p):
                pts.append(p)
    return sorted(pts)


# ---------------------------------------------------------------------------
# complexes

def face_key(cfg: FlopConfig, u: Ray, w: Ray):
    """Sheet-independent identity of the 2D face spanned by u and w."""
    if is_l(cfg, w):
        u, w = w, u
    if is_l(cfg, u):
        return ("L", la.primitive(w.fundamental(cfg)))
    au, aw = ray_angle(cfg, u), ray_angle(cfg, w)
    fu, fw = la.primitive(u.fundamental(cfg)), la.primitive(w.fundamental(cfg))
    if (aw, fw) < (au, fu):
        au, aw, fu, fw = aw, au, fw, fu
    return (fu, fw, aw - au)


@dataclass(frozen=True)
class Wall:
    cells: Tuple[int, int]
    rays: Tuple[Ray, Ray]
    curve: str


@dataclass
class ConeComplex:
    cfg: FlopConfig
    side: str
    cells: List[SheetedCone]
    curve_namer: object = None

    @cached_property
    def _faces(self):
        """Map face key -> list of (cell index, edge rays)."""
        out: Dict[tuple, list] = {}
        for i, cell in enumerate(self.cells):
            for u, w in edges(self.cfg, cell):
                out.setdefault(face_key(self.cfg, u, w), []).append((i, (u, w)))
        return out

    def faces(self):
        return {k: list(v) for k, v in self._faces.items()}

    @property
    def walls(self) -> List[Wall]:
        return list(self._walls)

    @cached_property
    def _walls(self) -> List[Wall]:
        walls = []
        for key, inc in self.faces().items():
            if len(inc) == 2:
                (i, rays), (j, _) = inc
                name = self.curve_namer(rays) if self.curve_namer else "C"
                walls.append(Wall((i, j), rays, name))
        return sorted(walls, key=lambda w: (w.cells, w.curve))

    @property
    def boundary_faces(self):
        return [inc[0] for inc in self.faces().values() if len(inc) == 1]

    def labels(self) -> List[str]:
        return sorted({r.label for c in self.cells for r in c.rays})

    def ray_kind(self, label: str) -> str:
        return next(r.kind for c in self.cells for r in c.rays if r.label == label)

    def to_json(self) -> dict:
        rays = sorted({(r.label, r.vector, r.sheet) for c in self.cells for r in c.rays},
                      key=lambda t: (t[0], t[2], t[1]))
        index = {t: i for i, t in enumerate(rays)}

        def idx(r: Ray) -> int:
            return index[(r.label, r.vector, r.sheet)]

        cells = []
        for c in self.cells:
            ids = [idx(r) for r in c.rays]
            k = ids.index(min(ids))
            cells.append(ids[k:] + ids[:k])
        order = sorted(range(len(cells)), key=lambda i: cells[i])
        renum = {old: new for new, old in enumerate(order)}
        walls = []
        for w in self.walls:
            walls.append({"cells": sorted(renum[i] for i in w.cells),
                          "rays": [idx(r) for r in w.rays],
                          "curve": w.curve})
        walls.sort(key=lambda w: (w["cells"], w["rays"], w["curve"]))
        return {
            "n": self.cfg.n,
            "side": self.side,
            "rays": [{"label": l, "v": list(v), "sheet": s} for l, v, s in rays],
            "cells": [cells[i] for i in order],
            "walls": walls,
        }


def admissible_sides(cfg: FlopConfig) -> frozenset:
    """Which flop subdivisions of sigma the singular line allows.

    Side A needs a straight (possibly l-incident) segment from d2 round to d3
    through H+; side B needs the straight d1-d3 segment avoiding H+.
    """
    if not 0 < cfg.a < 2 * cfg.n * cfg.b:
        raise ValueError("singular line not interior to σ")
    sides = set()
    d2_to_d3 = cross_t(cfg, SheetedVector.lift(cfg, D3, -1).vector, D2)
    if d2_to_d3 >= 0:
        sides.add("A")
    if cross_t(cfg, D1, D3) >= 0:
        sides.add("B")
    return frozenset(sides)


def _require_critical(cfg: FlopConfig):
    if not cfg.critical:
        raise ValueError("critical configuration a = nb required for two-sided subdivision")


def flop_subdivision(cfg: FlopConfig, side: str) -> ConeComplex:
    _require_critical(cfg)
    d1, d2, d3 = sigma_rays()
    ell = singular_ray(cfg)
    if side == "A":
        cells = [SheetedCone((d2, d3, ell)),
                 SheetedCone((ell, d3, d1.transport(cfg), d2.transport(cfg)))]
    elif side == "B":
        cells = [SheetedCone((d1, d2, d3, ell)),
                 SheetedCone((d3, d1.transport(cfg), ell))]
    else:
        raise ValueError("side must be 'A' or 'B'")
    return ConeComplex(cfg, side, cells)


def subdivide_at_ray(cfg: FlopConfig, cone: SheetedCone, f: Ray):
    """Star a winding cell at an interior ray.

    Returns the list of triangles that avoid the singular line and the
    remaining winding cell (None when f lies on the singular line).
    """
    if not cone.winds:
        raise ValueError("subdivide_at_ray expects a cell winding round the singular line")
    fp = f.fundamental(cfg)
    if not in_interior(cfg, cone, fp):
        raise ValueError("ray not interior to cone")
    f_on_ell = on_ell(cfg, fp)
    ell = cfg.ell
    good: List[SheetedCone] = []
    bad: List[int] = []
    es = edges(cfg, cone)
    for i, (u, w) in enumerate(es):
        if f_on_ell:
            lf = Ray(f.label, fp, 0, f.kind)
        else:
            mid = (ray_angle(cfg, u) + ray_angle(cfg, w)) / 2
            s = lift_in(cfg, fp, mid - 2, mid + 2)
            lf = Ray(f.label, s.vector, s.sheet, f.kind)
        tri = (u.vector, w.vector, lf.vector)
        if la.det3(*tri) <= 0:
            bad.append(i)
            continue
        if not f_on_ell and all(c >= 0 for c in la.solve3(tri, ell)):
            bad.append(i)
            continue
        good.append(SheetedCone((u, w, lf)))
    if f_on_ell:
        assert not bad
        return good, None
    m = len(es)
    if not bad or len(bad) == m:
        raise ValueError("ray does not split the cell")
    start = next(i for i in bad if (i - 1) % m not in bad)
    run = []
    i = start
    while i in bad:
        run.append(i)
        i = (i + 1) % m
    if len(run) != len(bad):
        raise ValueError("non-contiguous remainder")
    rs = list(cone.rays)
    chain = rs + [r.transport(cfg) for r in rs]
    loop = chain[start:start + len(run) + 1]
    a0 = ray_angle(cfg, loop[0])
    s = lift_in(cfg, fp, ray_angle(cfg, loop[-1]), a0 + 4)
    loop.append(Ray(f.label, s.vector, s.sheet, f.kind))
    shift = -loop[0].sheet
    loop = [r.transport(cfg, shift) for r in loop]
    return good, SheetedCone(tuple(loop), winds=True)


def pagoda_curve_name(rays: Tuple[Ray, Ray]) -> str:
    labels = sorted(r.label for r in rays)

    def level(l):
        if l == "D3":
            return 0
        if l.startswith("F"):
            return int(l[1:])
        return None

    a, b = (level(l) for l in labels)
    if a is not None and b is not None and abs(a - b) == 1:
        return f"C{min(a, b)}"
    return ".".join(labels)


def pagoda(cfg: FlopConfig) -> ConeComplex:
    """Iterated subdivision of sigma at f_i = (i, i, 1), i = 1..n."""
    _require_critical(cfg)
    loop: Optional[SheetedCone] = sigma(cfg)
    cells: List[SheetedCone] = []
    for i in range(1, cfg.n + 1):
        f = Ray(f"F{i}", (i, i, 1), 0, "exceptional")
        tris, loop = subdivide_at_ray(cfg, loop, f)
        cells.extend(tris)
    assert loop is None
    return ConeComplex(cfg, "pagoda", cells, curve_namer=pagoda_curve_name)


def developed_det(cell: SheetedCone) -> int:
    if len(cell.rays) != 3:
        raise ValueError("determinant needs a simplicial cell")
    return la.det3(*(r.vector for r in cell.rays))


def conjugation_holds(n: int) -> bool:
    """P M_n P^-1 = M_{n-1}."""
    lhs = la.matmul(la.matmul(P_MATRIX, monodromy(FlopConfig.canonical(n))), la.inverse(P_MATRIX))
    return lhs == monodromy(FlopConfig.canonical(n - 1)) if n > 1 else None


# ---------------------------------------------------------------------------
# walls, local fans, intersection complexes

@dataclass(frozen=True)
class WallRelation:
    a: int
    b: int
    selfints: Tuple[int, int]


def wall_relation(cfg: FlopConfig, wall, v1, v2) -> WallRelation:
    """Solve v1 + v2 = a w1 + b w2 over Z on a consistent sheet."""
    vecs = [x.vector if hasattr(x, "vector") else tuple(x) for x in (*wall, v1, v2)]
    w1, w2, x1, x2 = vecs
    s = la.add(x1, x2)
    err = ValueError("adjacent generators not coplanar with wall over ℤ")
    if la.dot(la.cross(w1, w2), s) != 0:
        raise err
    for i, j in ((0, 1), (0, 2), (1, 2)):
        d = la.det2((w1[i], w1[j]), (w2[i], w2[j]))
        if d:
            a = Fraction(la.det2((s[i], s[j]), (w2[i], w2[j])), d)
            b = Fraction(la.det2((w1[i], w1[j]), (s[i], s[j])), d)
            break
    else:
        raise err
    if a.denominator != 1 or b.denominator != 1:
        raise err
    a, b = int(a), int(b)
    return WallRelation(a, b, (-b, -a))


def _shift_cell(cfg, cell: SheetedCone, k: int) -> SheetedCone:
    return SheetedCone(tuple(r.transport(cfg, k) for r in cell.rays), cell.winds)


def complex_wall_relation(cx: ConeComplex, wall: Wall, order: Optional[Tuple[str, str]] = None):
    """wall_relation for an interior wall between two simplicial cells.

    The second cell is moved onto the sheet of the first so that both
    opposite vertices are read in one chart.  Returns (relation, labels) with
    labels naming w1, w2.
    """
    cfg = cx.cfg
    i, j = wall.cells
    ci, cj = cx.cells[i], cx.cells[j]
    if len(ci.rays) != 3 or len(cj.rays) != 3:
        raise ValueError("wall relation needs simplicial cells")
    face = {r.vector for r in wall.rays}
    wall_rays = [r for r in ci.rays if r.vector in face]
    if len(wall_rays) != 2:
        ci, cj = cj, ci
        wall_rays = [r for r in ci.rays if r.vector in face]
    face = {r.vector for r in wall_rays}
    v1 = next(r for r in ci.rays if r.vector not in face)
    for k in (0, 1, -1, 2, -2):
        cand = _shift_cell(cfg, cj, k)
        if face <= {r.vector for r in cand.rays}:
            v2 = next(r for r in cand.rays if r.vector not in face)
            break
    else:
        raise ValueError("cells do not share the wall in any chart")
    if order is not None:
        wall_rays.sort(key=lambda r: order.index(r.label))
    rel = wall_relation(cfg, wall_rays, v1, v2)
    return rel, (wall_rays[0].label, wall_rays[1].label), (v1, v2)


def find_wall(cx: ConeComplex, l1: str, l2: str) -> Wall:
    for w in cx.walls:
        if {r.label for r in w.rays} == {l1, l2}:
            return w
    raise KeyError((l1, l2))


def ladder(cfg: FlopConfig, cx: Optional[ConeComplex] = None) -> List[Tuple[int, Tuple[int, int], WallRelation]]:
    """Self-intersections ((C|F_k)^2, (C|F_{k-1})^2) on the walls <f_k, f_{k-1}>."""
    cx = pagoda(cfg) if cx is None else cx
    out = []
    for k in range(1, cfg.n + 1):
        lo = "D3" if k == 1 else f"F{k - 1}"
        rel, _, _ = complex_wall_relation(cx, find_wall(cx, f"F{k}", lo), order=(f"F{k}", lo))
        out.append((k, rel.selfints, rel))
    return out


@dataclass
class LocalFan:
    ray: str
    basis: Tuple[tuple, tuple]
    cones: List[Tuple[tuple, tuple, int]]

    @property
    def rays(self) -> List[tuple]:
        return sorted({g for c in self.cones for g in c[:2]})

    @property
    def singularities(self) -> List[str]:
        return [f"A_{k - 1}" for _, _, k in self.cones if k > 1]


def local_fan(cfg: FlopConfig, cx: ConeComplex, label: str) -> LocalFan:
    """2D fan of the cells around a ray, in the quotient lattice Z^3 / Z ray."""
    cones = []
    basis = None
    for cell in cx.cells:
        labels = cell.labels
        if label not in labels:
            continue
        i = labels.index(label)
        cell = _shift_cell(cfg, cell, -cell.rays[i].sheet)
        r = cell.rays[i]
        if basis is None:
            basis = la.orthogonal_lattice(r.vector)
        m = len(cell.rays)
        prev, nxt = cell.rays[i - 1], cell.rays[(i + 1) % m]
        if cell.winds:
            if i == 0:
                prev = prev.transport(cfg, -1)
            if i == m - 1:
                nxt = nxt.transport(cfg)
        img = [la.primitive(tuple(la.dot(row, v.vector) for row in basis)) for v in (prev, nxt)]
        cones.append((img[0], img[1], la.cone_index_2d(img[0], img[1])))
    if basis is None:
        raise KeyError(label)
    cones.sort()
    return LocalFan(label, basis, cones)


@dataclass
class IntersectionComplex:
    vertices: List[str]
    edges: List[Tuple[str, Tuple[str, str]]]
    decorations: Dict[str, List[str]]


def intersection_complex(cfg: FlopConfig, cx: ConeComplex) -> IntersectionComplex:
    """Rays become divisors and walls become curves; walls through the
    singular ray with the same curve label are merged into one curve."""
    singular = {l for l in cx.labels() if cx.ray_kind(l) == "singular"}
    vertices = [l for l in cx.labels() if l not in singular]
    merged: Dict[str, set] = {}
    edge_list = []
    for w in cx.walls:
        ls = [r.label for r in w.rays]
        if any(l in singular for l in ls):
            merged.setdefault(w.curve, set()).update(l for l in ls if l not in singular)
        else:
            edge_list.append((w.curve, tuple(sorted(ls))))
    for curve, ends in merged.items():
        edge_list.append((curve, tuple(sorted(ends))))
    edge_list.sort()
    decorations = {v: local_fan(cfg, cx, v).singularities for v in vertices}
    return IntersectionComplex(vertices, edge_list, decorations)
