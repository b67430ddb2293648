"""The verification suite behind ``flopgeom verify``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from . import lattice as la
from .cones import (complex_wall_relation, conjugation_holds, developed_det, find_wall,
                    flop_subdivision, is_convex, ladder, local_fan, pagoda, sigma,
                    slice_points, admissible_sides)
from .dual import T, X, Y, Z, DualPoint, dual_cone, dual_monodromy, pair
from .theta import base_relations, binomial_relation, chart_identities, verify_minors
from .tropu import FlopConfig, height, monodromy

W1_BASIS = [DualPoint("V1", (0, 0, 1)), DualPoint("V1", (0, 1, 0)),
            DualPoint("V1", (1, 0, 0)), DualPoint("V2", (1, -1, 0))]


@dataclass
class Report:
    suite: str
    cases: List[Tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.cases)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def render(self) -> str:
        lines = [f"{'PASS' if p else 'FAIL'} {name}" + (f": {detail}" if detail and not p else "")
                 for name, p, detail in self.cases]
        failed = [name for name, p, _ in self.cases if not p]
        lines.append(f"{self.suite}: {len(self.cases)} cases, "
                     + ("all passed" if not failed else f"{len(failed)} failed"))
        return "\n".join(lines) + "\n"


def pairing_table(cfg: FlopConfig):
    n = cfg.n
    rows = {"d2": (0, 1, 0), "d3": (0, 0, 1), "v": (n, n, 1)}
    return {r: tuple(pair(cfg, u, m) for m in (X, Y, Z, T)) for r, u in rows.items()}


def expected_pairing_table(n: int):
    return {"d2": (0, 1, 1, 0), "d3": (0, 0, 0, 1), "v": (n, n, n, 1)}


CORNER_VALUES = {"x": (1, 0, 0), "y": (1, 1, 0), "z": (0, 1, 0), "t": (0, 0, 1)}


def corner_values(cfg: FlopConfig):
    ds = [(1, 1, 0), (0, 1, 0), (0, 0, 1)]
    return {name: tuple(pair(cfg, d, m) for d in ds)
            for name, m in zip("xyzt", (X, Y, Z, T))}


def _cases(n: int, fault: Optional[str]) -> List[Tuple[str, Callable[[], Tuple[bool, str]]]]:
    cfg = FlopConfig.canonical(n)

    def mono():
        m = [list(r) for r in monodromy(cfg)]
        if fault == "monodromy":
            m[0][1] += 1
        return tuple(tuple(r) for r in m)

    def inverse_transpose():
        try:
            it = la.inverse_transpose(mono())
        except ValueError as e:
            return False, str(e)
        return it == dual_monodromy(cfg), f"{it} vs {dual_monodromy(cfg)}"

    def h_invariance():
        m = mono()
        vs = [(x, y, z) for x in range(-2, 3) for y in range(-2, 3) for z in range(-2, 3)]
        return all(height(la.matvec(m, v)) == height(v) for v in vs), ""

    def convexity():
        comp = flop_subdivision(cfg, "A").cells[1]
        return is_convex(cfg, sigma(cfg)) and not is_convex(cfg, comp), ""

    def trichotomy():
        for b in (1, 2):
            for a in range(1, 2 * n * b):
                want = {"A"} if a < n * b else ({"A", "B"} if a == n * b else {"B"})
                got = admissible_sides(FlopConfig(n, a, b))
                if got != want:
                    return False, f"(a,b)=({a},{b}): {sorted(got)}"
        return True, ""

    def pagoda_smooth():
        cx = pagoda(cfg)
        dets = [developed_det(c) for c in cx.cells]
        return len(cx.cells) == 2 * n + 1 and all(abs(d) == 1 for d in dets), f"{len(cx.cells)} cells, dets {dets}"

    def conjugation():
        return bool(conjugation_holds(n)), ""

    def wall_ladder():
        steps = ladder(cfg)
        ok = all(s == (2, -2) for _, s, _ in steps)
        cx = pagoda(cfg)
        lo = "D3" if n == 1 else f"F{n - 1}"
        rel, _, (v1, v2) = complex_wall_relation(cx, find_wall(cx, f"F{n}", lo), order=(f"F{n}", lo))
        flagship = {v1.vector, v2.vector} == {(0, 1, 0), (2, 1, 0)} and (rel.a, rel.b) == (2, -2)
        return ok and flagship, f"{[s for _, s, _ in steps]}"

    def slices():
        return len(slice_points(cfg, 1)) == 3 and len(slice_points(cfg, 2)) == 7, ""

    def pairing():
        return pairing_table(cfg) == expected_pairing_table(n) and corner_values(cfg) == CORNER_VALUES, ""

    def w1():
        tau1 = flop_subdivision(cfg, "A").cells[0]
        got = dual_cone(cfg, tau1).hilbert_union()
        return got == W1_BASIS, " ".join(map(str, got))

    def a_singularity():
        fan = local_fan(cfg, flop_subdivision(cfg, "A"), "D2")
        idx = [k for _, _, k in fan.cones if k > 1]
        return idx == ([n] if n > 1 else []), f"{fan.cones}"

    def minors():
        r = verify_minors(cfg)
        return r.ok, r.detail

    def binomial():
        for k in range(n + 1):
            r = binomial_relation(cfg, k)
            if not r:
                return False, r.detail
        return True, ""

    def base():
        r = base_relations(cfg)
        return r.ok, r.detail

    def charts():
        r = chart_identities(cfg)
        return r.ok, r.detail

    cases = [
        ("inverse-transpose", inverse_transpose),
        ("h-invariance", h_invariance),
        ("sigma-convexity", convexity),
        ("admissible-sides", trichotomy),
        ("pagoda-smooth", pagoda_smooth),
    ]
    if n >= 2:
        cases.append(("conjugation", conjugation))
    cases += [
        ("wall-ladder", wall_ladder),
        ("slice-counts", slices),
        ("pairing-table", pairing),
        ("w1-recovery", w1),
        ("a-singularity", a_singularity),
        ("mirror-minors", minors),
        ("binomial-relation", binomial),
        ("base-relations", base),
        ("chart-identities", charts),
    ]
    return cases


def run_verify(n_max: int, fault: Optional[str] = None) -> Report:
    """Check every identity for n = 1..n_max; ``fault`` is a test hook."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    report = Report("verify")
    for n in range(1, n_max + 1):
        for name, fn in _cases(n, fault):
            try:
                ok, detail = fn()
            except Exception as e:  # a crash is a failed case, not a crashed report
                ok, detail = False, f"{type(e).__name__}: {e}"
            report.cases.append((f"n={n} {name}", bool(ok), detail))
    return report
