"""SVG pictures of the height-one slice y + z = 1 of sigma and its subdivisions."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from .cones import ConeComplex, Ray, edges, face_key, is_l, ray_angle, sigma
from .tropu import FlopConfig

WIDTH, HEIGHT = 1000, 800


def _xy(p) -> Tuple[float, float]:
    h = Fraction(p[1]) + Fraction(p[2])
    X, Z = Fraction(p[0]) / h, Fraction(p[2]) / h
    return round(float(120 + 380 * X), 2), round(float(700 - 600 * Z), 2)


def _fmt(pt) -> str:
    return f"{pt[0]:g},{pt[1]:g}"


def face_path(cfg: FlopConfig, u: Ray, w: Ray) -> List[tuple]:
    """Fundamental points along a face, bending where it crosses H+."""
    if is_l(cfg, u) or is_l(cfg, w):
        return [u.fundamental(cfg), w.fundamental(cfg)]
    au, aw = ray_angle(cfg, u), ray_angle(cfg, w)
    if au > aw:
        u, w, au, aw = w, u, aw, au
    cuts = [4 * m for m in range(int(au // 4) + 1, int(aw // 4) + 1) if au < 4 * m < aw]
    if not cuts:
        return [u.fundamental(cfg), w.fundamental(cfg)]
    su = u.vector[1] - cfg.n * u.vector[2]
    sw = w.vector[1] - cfg.n * w.vector[2]
    t = Fraction(su, su - sw)
    c = tuple(a + t * (b - a) for a, b in zip(u.vector, w.vector))
    return [u.fundamental(cfg), c, w.fundamental(cfg)]


def render(cfg: FlopConfig, cells, walls, title: str) -> str:
    """Deterministic SVG text for a list of cells and their interior walls."""
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}">',
        f'<title>{title}</title>',
        '<rect x="0" y="0" width="1000" height="800" fill="white"/>',
    ]
    wall_keys = {face_key(cfg, *w.rays) for w in walls}
    seen = set()
    boundary = []
    for cell in cells:
        for u, w in edges(cfg, cell):
            k = face_key(cfg, u, w)
            if k in seen or k in wall_keys:
                continue
            seen.add(k)
            boundary.append((u, w))
    paths = sorted(" ".join(_fmt(_xy(p)) for p in face_path(cfg, u, w)) for u, w in boundary)
    for pts in paths:
        lines.append(f'<polyline class="boundary" points="{pts}" fill="none" stroke="black" stroke-width="3"/>')
    for wall in walls:
        pts = " ".join(_fmt(_xy(p)) for p in face_path(cfg, *wall.rays))
        lines.append(f'<polyline class="wall" data-curve="{wall.curve}" points="{pts}" '
                     f'fill="none" stroke="#1f4e9a" stroke-width="2"/>')
    rays = {}
    for cell in cells:
        for r in cell.rays:
            rays.setdefault(r.label, r)
    for label in sorted(rays):
        r = rays[label]
        if r.kind == "singular":
            continue
        x, y = _xy(r.fundamental(cfg))
        lines.append(f'<circle class="ray" cx="{x:g}" cy="{y:g}" r="6" fill="black"/>')
        lines.append(f'<text x="{x + 10:g}" y="{y - 10:g}" font-size="22">{label.lower()}</text>')
    x, y = _xy(cfg.ell)
    lines.append(f'<text class="ell" x="{x:g}" y="{y + 8:g}" font-size="28" text-anchor="middle">×</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def complex_svg(cx: ConeComplex) -> str:
    return render(cx.cfg, cx.cells, cx.walls, f"{cx.side} n={cx.cfg.n}")


def sigma_svg(cfg: FlopConfig) -> str:
    return render(cfg, [sigma(cfg)], [], f"sigma n={cfg.n}")


def emit_svg(obj, path: Optional[str] = None, cfg: Optional[FlopConfig] = None) -> str:
    """Write the SVG for a complex (or sigma when obj is a FlopConfig)."""
    text = sigma_svg(obj) if isinstance(obj, FlopConfig) else complex_svg(obj)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
