"""The integral affine manifold trop U with its single singular line.

Points are stored in fundamental coordinates, i.e. on the sheet obtained by
cutting R^3 minus the singular line along the half-plane H+.  A point on
sheet k of the developing map has developed coordinates M^k p, where M is
the monodromy.  Angles around the singular line are measured by an exact
rational "diamond angle" in the plane transverse to it, so that every
comparison in this module is a comparison of integers or fractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from . import lattice as la

D1 = (1, 1, 0)
D2 = (0, 1, 0)
D3 = (0, 0, 1)


@dataclass(frozen=True)
class FlopConfig:
    """Width ``n`` and singular line R(a, nb, b)."""

    n: int
    a: int = 0
    b: int = 1

    def __post_init__(self):
        if self.a == 0:
            object.__setattr__(self, "a", self.n * self.b)
        for name in ("n", "a", "b"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")

    @classmethod
    def canonical(cls, n: int) -> "FlopConfig":
        return cls(n, n, 1)

    @property
    def critical(self) -> bool:
        return self.a == self.n * self.b

    @property
    def ell(self) -> la.LatticeVector:
        """Primitive generator of the singular line."""
        return la.primitive((self.a, self.n * self.b, self.b))


def monodromy(cfg: FlopConfig) -> la.UniMatrix:
    n = cfg.n
    return ((1, 1, -n), (0, 1, 0), (0, 0, 1))


def height(p) -> Fraction:
    """The monodromy-invariant linear function h = y + z."""
    return p[1] + p[2]


def wall_side(cfg: FlopConfig, p) -> int:
    """Sign of y - nz: +1 above H, -1 below, 0 on it."""
    s = p[1] - cfg.n * p[2]
    return (s > 0) - (s < 0)


def wall_half(cfg: FlopConfig, p) -> Optional[str]:
    """Classify a point of H as 'H+', 'H-' or 'ell'; None off H."""
    if wall_side(cfg, p) != 0:
        return None
    s = cfg.b * p[0] - cfg.a * p[2]
    return "H+" if s > 0 else ("H-" if s < 0 else "ell")


def transverse(cfg: FlopConfig, p) -> tuple:
    """Projection (bx - az, y - nz) whose kernel is the singular line."""
    return (cfg.b * p[0] - cfg.a * p[2], p[1] - cfg.n * p[2])


def on_ell(cfg: FlopConfig, p) -> bool:
    return transverse(cfg, p) == (0, 0)


def diamond(x, y) -> Fraction:
    """Exact monotone substitute for atan2 with values in [0, 4)."""
    if x == 0 and y == 0:
        raise ValueError("angle of the zero vector")
    if y >= 0 and x > 0:
        return Fraction(y, 1) / (x + y)
    if x <= 0 and y > 0:
        return 1 + Fraction(-x, 1) / (y - x)
    if x < 0 and y <= 0:
        return 2 + Fraction(-y, 1) / (-x - y)
    return 3 + Fraction(x, 1) / (x - y)


def angle(cfg: FlopConfig, p, sheet: int = 0) -> Fraction:
    """Lifted angle 4*sheet + diamond of the fundamental point p."""
    return 4 * sheet + diamond(*transverse(cfg, p))


def cross_t(cfg: FlopConfig, u, w):
    """2D cross product of transverse projections; > 0 means w is
    counterclockwise from u by less than a half turn."""
    return la.det2(transverse(cfg, u), transverse(cfg, w))


@dataclass(frozen=True)
class SheetedVector:
    """Developed coordinates ``vector`` of a point lying on ``sheet``."""

    vector: tuple
    sheet: int = 0

    def fundamental(self, cfg: FlopConfig) -> tuple:
        return la.matvec(la.matpow(monodromy(cfg), -self.sheet), self.vector)

    def transport(self, cfg: FlopConfig, k: int = 1) -> "SheetedVector":
        return SheetedVector(la.matvec(la.matpow(monodromy(cfg), k), self.vector), self.sheet + k)

    def angle(self, cfg: FlopConfig) -> Fraction:
        return angle(cfg, self.fundamental(cfg), self.sheet)

    @classmethod
    def lift(cls, cfg: FlopConfig, p, sheet: int = 0) -> "SheetedVector":
        return cls(la.matvec(la.matpow(monodromy(cfg), sheet), p), sheet)


def lift_in(cfg: FlopConfig, p, lo, hi) -> Optional[SheetedVector]:
    """The lift of fundamental p whose angle lies in [lo, hi] (hi - lo < 4)."""
    base = angle(cfg, p)
    k = -((base - lo) // 4)
    if base + 4 * k < lo:
        k += 1
    if base + 4 * k <= hi:
        return SheetedVector.lift(cfg, p, int(k))
    return None


@dataclass
class Segment:
    """A straight segment of trop U in fundamental coordinates."""

    start: tuple
    end: tuple
    pieces: List[Tuple[tuple, tuple, tuple]]
    bends: List[Tuple[tuple, la.UniMatrix]] = field(default_factory=list)
    through_ell: bool = False

    @property
    def bent(self) -> bool:
        return bool(self.bends)

    def points(self, ts=(Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))):
        """Sample points along every piece."""
        for a, b, _ in self.pieces:
            for t in ts:
                yield tuple(x + t * (y - x) for x, y in zip(a, b))


def _developed_segment(cfg, p, q_lift: SheetedVector, kp: int) -> Segment:
    mono = monodromy(cfg)
    P = la.matvec(la.matpow(mono, kp), p)
    Q = q_lift.vector
    kq = q_lift.sheet
    direction = la.sub(Q, P)
    q = q_lift.fundamental(cfg)
    tp, tq = transverse(cfg, P), transverse(cfg, Q)
    if la.det2(tp, tq) == 0 and la.dot(tp, tq) < 0:
        # passes through the singular line
        i = 0 if tp[0] != 0 else 1
        t = Fraction(tp[i], tp[i] - tq[i])
        c = tuple(x + t * d for x, d in zip(P, direction))
        c_fund = la.matvec(la.matpow(mono, -kp), c)
        return Segment(p, q, [(p, c_fund, la.matvec(la.matpow(mono, -kp), direction)),
                              (c_fund, q, la.matvec(la.matpow(mono, -kq), direction))],
                       through_ell=True)
    if kp == kq:
        t0 = la.matvec(la.matpow(mono, -kp), direction)
        return Segment(p, q, [(p, q, t0)])
    # Exactly one crossing of the cut H+ strictly inside the segment.
    s_p, s_q = P[1] - cfg.n * P[2], Q[1] - cfg.n * Q[2]
    t = Fraction(s_p, s_p - s_q)
    c = tuple(x + t * d for x, d in zip(P, direction))
    assert wall_half(cfg, c) == "H+"
    before = la.matvec(la.matpow(mono, -kp), direction)
    after = la.matvec(la.matpow(mono, -kq), direction)
    bend = mono if kq < kp else la.inverse(mono)
    assert la.matvec(bend, before) == after
    return Segment(p, q, [(p, c, before), (c, q, after)], bends=[(c, bend)])


def segments_between(cfg: FlopConfig, p, q) -> List[Segment]:
    """All straight realisations of a segment from p to q in trop U.

    Candidates are the lifts of q within one turn of p.  A candidate is a
    straight segment iff the developed sweep from p to it is at most a half
    turn; at exactly a half turn the segment runs through the singular line
    and is returned with ``through_ell`` set.
    """
    p, q = la.as_rational(p), la.as_rational(q)
    if on_ell(cfg, p) or on_ell(cfg, q):
        raise ValueError("segment endpoint on singular locus")
    ap = angle(cfg, p)
    base = angle(cfg, q)
    out: List[Segment] = []
    seen = set()
    for k in (-1, 0, 1):
        aq = base + 4 * k
        if abs(aq - ap) >= 4:
            continue
        lq = SheetedVector.lift(cfg, q, k)
        tp, tq = transverse(cfg, p), transverse(cfg, lq.vector)
        if aq != ap:
            cr = la.det2(tp, tq) if aq > ap else la.det2(tq, tp)
            if cr < 0 or (cr == 0 and la.dot(tp, tq) > 0):
                continue
        seg = _developed_segment(cfg, p, lq, 0)
        key = tuple((a, b) for a, b, _ in seg.pieces)
        if key not in seen:
            seen.add(key)
            out.append(seg)
    return out
