"""SVG drawings of triangle partitions, with exact rational vertex labels."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import TripTriple, farey_product

Bary = tuple[Fraction, Fraction, Fraction]

WIDTH, HEIGHT, MARGIN = 640, 580, 60
# corners for e1, e2, e3
_CORNERS = ((MARGIN, HEIGHT - MARGIN), (WIDTH - MARGIN, HEIGHT - MARGIN), (WIDTH / 2, MARGIN))
MAX_DEPTH = 12


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def bary_label(p: Bary) -> str:
    return "(" + ",".join(_fmt(c) for c in p) + ")"


def to_xy(p: Sequence) -> tuple[float, float]:
    return (sum(float(p[i]) * _CORNERS[i][0] for i in range(3)),
            sum(float(p[i]) * _CORNERS[i][1] for i in range(3)))


def column_vertices(m) -> tuple[Bary, Bary, Bary]:
    """Columns of m normalized to coordinate sum 1."""
    out = []
    for j in range(3):
        s = sum(m[i][j] for i in range(3))
        out.append(tuple(Fraction(m[i][j], s) for i in range(3)))
    return tuple(out)


def subtriangles(t: TripTriple, depth: int) -> list[tuple[str, tuple[Bary, Bary, Bary]]]:
    """(bits, vertices) of every depth-m cell, bits in lexicographic order."""
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
    cells = [""]
    for _ in range(depth):
        cells = [b + c for b in cells for c in "01"]
    return [(b, column_vertices(farey_product([int(c) for c in b], t))) for b in cells]


def gauss_cells(t: TripTriple, k_max: int) -> list[tuple[int, tuple[Bary, Bary, Bary]]]:
    """Cells Delta_k^G reached by 1^k 0, k = 0..k_max."""
    return [(k, column_vertices(farey_product([1] * k + [0], t))) for k in range(k_max + 1)]


class _Svg:
    def __init__(self, title: str):
        self.parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
                      f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
                      f"<title>{title}</title>",
                      f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>']

    def polygon(self, pts: Iterable[Sequence], fill: str = "none", stroke: str = "black",
                width: float = 1.0, cls: str = "") -> None:
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(to_xy, pts))
        c = f' class="{cls}"' if cls else ""
        self.parts.append(f'<polygon{c} points="{coords}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="{width}"/>')

    def line(self, a: Sequence, b: Sequence, stroke: str = "black", width: float = 1.5) -> None:
        (x1, y1), (x2, y2) = to_xy(a), to_xy(b)
        self.parts.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                          f'stroke="{stroke}" stroke-width="{width}"/>')

    def text(self, p: Sequence, s: str, size: int = 10, dy: float = 0.0) -> None:
        x, y = to_xy(p)
        self.parts.append(f'<text x="{x:.3f}" y="{y + dy:.3f}" font-size="{size}" '
                          f'text-anchor="middle">{s}</text>')

    def vertex(self, p: Bary) -> None:
        x, y = to_xy(p)
        self.parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="2.5" fill="black"/>')
        dy = 16 if y > HEIGHT - MARGIN - 1 else -6
        self.text(p, bary_label(p), 10, dy)

    def done(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _centroid(v) -> Bary:
    return tuple(sum(p[i] for p in v) / 3 for i in range(3))


def render_partition_svg(t: TripTriple, depth: int, label_limit: int = 4) -> str:
    """Delta cut into its 2^depth cells; vertex labels up to depth ``label_limit``."""
    cells = subtriangles(t, depth)
    svg = _Svg(f"T{t} depth {depth}")
    shades = ("#dbe9f6", "#f6e3cf")
    for bits, v in cells:
        svg.polygon(v, fill=shades[int(bits[-1]) if bits else 0], cls=f"cell-{bits or 'root'}")
        if depth <= 3:
            svg.text(_centroid(v), f"Δ{bits}" if bits else "Δ", 11)
    if depth <= label_limit:
        for p in sorted({p for _, v in cells for p in v}):
            svg.vertex(p)
    return svg.done()


def render_gauss_fan_svg(t: TripTriple, k_max: int = 6) -> str:
    """The cells Delta_k^G = Delta_(1^k 0) fanning out from one vertex."""
    svg = _Svg(f"T{t} Gauss cells 0..{k_max}")
    svg.polygon(column_vertices(farey_product([], t)))
    cells = gauss_cells(t, k_max)
    for k, v in cells:
        svg.polygon(v, fill="#eef4e8" if k % 2 else "#dfead3", cls=f"gauss-{k}")
        svg.text(_centroid(v), f"Δ{k}G", 10)
    for p in sorted({p for _, v in cells for p in v}):
        svg.vertex(p)
    return svg.done()


# (e,13,e): A = {z >= x + y}, B = {y >= z}, C is the rest
E13E_SEGMENTS = (
    ((Fraction(1, 2), Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(1, 2), Fraction(1, 2))),
    ((Fraction(0), Fraction(1, 2), Fraction(1, 2)), (Fraction(1), Fraction(0), Fraction(0))),
)
E13E_REGIONS = {
    "A": ((Fraction(1, 2), Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
          (Fraction(0), Fraction(0), Fraction(1))),
    "B": ((Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0)),
          (Fraction(0), Fraction(1, 2), Fraction(1, 2))),
    "C": ((Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
          (Fraction(1, 2), Fraction(0), Fraction(1, 2))),
}


def render_e13e_regions_svg() -> str:
    svg = _Svg("T(e,13,e) regions A, B, C")
    fills = {"A": "#fde2e2", "B": "#e2ecfd", "C": "#e8f8e2"}
    for name, v in E13E_REGIONS.items():
        svg.polygon(v, fill=fills[name], cls=f"region-{name}")
        svg.text(_centroid(v), name, 16)
    for a, b in E13E_SEGMENTS:
        svg.line(a, b)
    for p in sorted({p for v in E13E_REGIONS.values() for p in v}):
        svg.vertex(p)
    return svg.done()
