"""Integer Laurent polynomials, theta functions and the mirror ideal."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

from .tropu import FlopConfig

UVW = ("u", "v", "w")


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients.

    Terms live in a dict from exponent tuples to nonzero ints, so equality
    of canonical forms is plain dict equality.
    """

    __slots__ = ("names", "terms")

    def __init__(self, terms: Mapping[Tuple[int, ...], int] = None, names: Sequence[str] = UVW):
        self.names = tuple(names)
        self.terms: Dict[Tuple[int, ...], int] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.names):
                raise ValueError("exponent length does not match variables")
            if c:
                self.terms[tuple(e)] = self.terms.get(tuple(e), 0) + int(c)
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def const(cls, c: int, names=UVW) -> "LaurentPoly":
        return cls({(0,) * len(names): c}, names)

    @classmethod
    def monomial(cls, exps, coeff: int = 1, names=UVW) -> "LaurentPoly":
        return cls({tuple(exps): coeff}, names)

    @classmethod
    def gens(cls, names=UVW) -> List["LaurentPoly"]:
        k = len(names)
        return [cls.monomial(tuple(int(i == j) for j in range(k)), 1, names) for i in range(k)]

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.names != self.names:
                raise ValueError("polynomials over different variables")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly({tuple(-x for x in e): c}, self.names) ** (-k)
        out = LaurentPoly.const(1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other) if isinstance(other, (int, LaurentPoly)) else NotImplemented
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> List[int]:
        return [self.terms[e] for e in sorted(self.terms)]

    def substitute(self, values: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Evaluate with each variable replaced by a polynomial."""
        if len(values) != len(self.names):
            raise ValueError("need one value per variable")
        target = values[0].names
        out = LaurentPoly({}, target)
        cache: Dict[Tuple[int, int], LaurentPoly] = {}
        for e, c in self.terms.items():
            term = LaurentPoly.const(c, target)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = values[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            body = "*".join([str(abs(c))] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str, names: Sequence[str] = UVW) -> "LaurentPoly":
        """Inverse of ``str``: terms like ``-2*u^2*v*w^-1`` joined by +/-."""
        names = tuple(names)
        text = text.strip()
        if text == "0":
            return cls({}, names)
        text = text.replace(" - ", " + -")
        terms: Dict[Tuple[int, ...], int] = {}
        for token in text.split(" + "):
            token = token.strip()
            coeff = -1 if token.startswith("-") else 1
            exps = [0] * len(names)
            for factor in token.lstrip("-").split("*"):
                if re.fullmatch(r"\d+", factor):
                    coeff *= int(factor)
                    continue
                m = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(-?\d+))?", factor)
                if not m or m.group(1) not in names:
                    raise ValueError(f"cannot parse factor {factor!r}")
                exps[names.index(m.group(1))] += int(m.group(2) or 1)
            terms[tuple(exps)] = terms.get(tuple(exps), 0) + coeff
        return cls(terms, names)


U, V, W = LaurentPoly.gens()
ONE = LaurentPoly.const(1)


@dataclass(frozen=True)
class FormalFraction:
    """numerator / (1 + u)^k, the only denominators wall crossing produces."""

    numerator: LaurentPoly
    k: int

    def _common(self, other: "FormalFraction"):
        k = max(self.k, other.k)
        a = self.numerator * (ONE + U) ** (k - self.k)
        b = other.numerator * (ONE + U) ** (k - other.k)
        return a, b

    def __mul__(self, other):
        other = as_fraction(other)
        return FormalFraction(self.numerator * other.numerator, self.k + other.k)

    def __eq__(self, other):
        if not isinstance(other, (FormalFraction, LaurentPoly)):
            return NotImplemented
        a, b = self._common(as_fraction(other))
        return a == b

    def __hash__(self):
        return hash(self.k)


def as_fraction(x) -> FormalFraction:
    return x if isinstance(x, FormalFraction) else FormalFraction(x, 0)


def theta(cfg: FlopConfig, p) -> LaurentPoly:
    """Theta function attached to the integral point p = (a, b, c)."""
    a, b, c = p
    mono = LaurentPoly.monomial((a, b, c))
    return mono * (ONE + U) ** max(0, b - cfg.n * c)


def theta_branches(cfg: FlopConfig, p) -> Tuple[LaurentPoly, LaurentPoly]:
    """The two closed forms u^a v^b w^c and u^a v^b w^c (1+u)^(b-nc),
    meaningful as polynomials only when b = nc."""
    a, b, c = p
    if b != cfg.n * c:
        raise ValueError("branches compared only on b = nc")
    mono = LaurentPoly.monomial((a, b, c))
    return mono, mono * (ONE + U) ** (b - cfg.n * c)


def wall_cross(cfg: FlopConfig, m):
    """u^a v^b w^c (1+u)^(b - nc): polynomial or formal fraction."""
    a, b, c = m
    mono = LaurentPoly.monomial((a, b, c))
    e = b - cfg.n * c
    if e >= 0:
        return mono * (ONE + U) ** e
    return FormalFraction(mono, -e)


# ---------------------------------------------------------------------------
# mirror ideal

@dataclass
class Check:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def theta_names(n: int) -> Tuple[str, ...]:
    return tuple(f"th{i}" for i in range(1, n + 4))


def theta_points(n: int) -> List[Tuple[int, int, int]]:
    """d1, d2, d3, f1..fn: the points indexing th1..th_{n+3}."""
    return [(1, 1, 0), (0, 1, 0), (0, 0, 1)] + [(i, i, 1) for i in range(1, n + 1)]


def theta_substitution(cfg: FlopConfig) -> List[LaurentPoly]:
    return [theta(cfg, p) for p in theta_points(cfg.n)]


@dataclass
class MirrorIdeal:
    n: int
    names: Tuple[str, ...]
    matrix: List[List[LaurentPoly]]
    generators: List[LaurentPoly]
    column_pairs: List[Tuple[int, int]]
    codimension: int
    metadata: Dict[str, str] = field(default_factory=dict)

    def leading_block(self) -> List[LaurentPoly]:
        """Minors using only the first n columns."""
        return [g for g, (i, j) in zip(self.generators, self.column_pairs) if j < self.n]


def mirror_ideal(n: int) -> MirrorIdeal:
    """2x2 minors of the two-row theta matrix, ordered by column pairs."""
    if n < 1:
        raise ValueError("n must be at least 1")
    names = theta_names(n)
    th = LaurentPoly.gens(names)
    row1 = [th[0] + th[1]] + [th[i] for i in range(2, n + 2)]
    row2 = [th[0] * th[1]] + [th[i] for i in range(3, n + 3)]
    pairs = list(combinations(range(len(row1)), 2))
    gens = [row1[i] * row2[j] - row1[j] * row2[i] for i, j in pairs]
    meta = {"codimension": f"{n} (recorded, not certified)"}
    return MirrorIdeal(n, names, [row1, row2], gens, pairs, n, meta)


def verify_minors(cfg: FlopConfig) -> Check:
    ideal = mirror_ideal(cfg.n)
    vals = theta_substitution(cfg)
    for g, pair in zip(ideal.generators, ideal.column_pairs):
        r = g.substitute(vals)
        if not r.is_zero:
            return Check(False, f"minor on columns {pair} gives {r}")
    t1, t2, t3, t4 = vals[:4]
    if t1 * t2 * t3 != t4 * (t1 + t2):
        return Check(False, "th1 th2 th3 != th4 (th1 + th2)")
    uv = U * V
    rows = [[e.substitute(vals) for e in row] for row in ideal.matrix]
    for j, (top, bottom) in enumerate(zip(*rows)):
        if uv * top != bottom:
            return Check(False, f"row ratio fails in column {j}")
    if vals[-1] != uv ** cfg.n * t3:
        return Check(False, "th_{n+3} != (uv)^n th3")
    return Check(True, f"{len(ideal.generators)} minors vanish")


def binomial_relation(cfg: FlopConfig, k: int) -> Check:
    """theta(0,k,1) as an alternating sum of th2^(k-i) theta(i,i,1)."""
    if k > cfg.n:
        raise ValueError("relation only asserted for k ≤ n")
    if k < 0:
        raise ValueError("k must be nonnegative")
    lhs = theta(cfg, (0, k, 1))
    th2 = theta(cfg, (0, 1, 0))
    rhs = LaurentPoly()
    for i in range(k + 1):
        rhs = rhs + (-1) ** i * comb(k, i) * th2 ** (k - i) * theta(cfg, (i, i, 1))
    if lhs != rhs:
        return Check(False, f"k={k}: {lhs} != {rhs}")
    return Check(True, f"k={k}")


def base_relations(cfg: FlopConfig) -> Check:
    t1, t2, t3, t4 = theta_substitution(cfg)[:4]
    checks = [((0, 1, 1), t2 * t3 - t4, V * W), ((2, 1, 1), t1 * t3 - t4, U ** 2 * V * W)]
    for p, combo, expected in checks:
        got = theta(cfg, p)
        if got != combo or got != expected:
            return Check(False, f"theta{p} = {got}, combination gives {combo}")
    return Check(True, "theta(0,1,1) = th2 th3 - th4, theta(2,1,1) = th1 th3 - th4")


def chart_identities(cfg: FlopConfig) -> Check:
    vals = theta_substitution(cfg)
    t1, t2, t3 = vals[:3]
    uv = U * V
    if t1 * t2 != uv * (t1 + t2):
        return Check(False, "th1 th2 != uv (th1 + th2)")
    if uv ** cfg.n * t3 != vals[-1]:
        return Check(False, "(uv)^n th3 != th_{n+3}")
    return Check(True, "chart equations hold with t = uv")
