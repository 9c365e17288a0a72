"""Deterministic SVG rendering of CORP reliability diagrams."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .diagram import DiagramMode, ReliabilityDiagram

WIDTH = 600
HEIGHT = 600
STRIP = 120
# plot square inside the 600 x 600 panel
LEFT, TOP, SIZE = 70, 30, 500


def _f(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _x(p: float) -> float:
    return LEFT + SIZE * p


def _y(p: float) -> float:
    return TOP + SIZE * (1.0 - p)


def _path(points) -> str:
    return " ".join(f"{_f(_x(a))},{_f(_y(b))}" for a, b in points)


def _fmt3(v: float) -> str:
    return "inf" if v == float("inf") else f"{v:.3f}"


def render_svg(diagram: ReliabilityDiagram) -> str:
    """Unit-square diagram with diagonal, band, curve, histogram strip and scores."""
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT + STRIP}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT + STRIP}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT + STRIP}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        t = i / 5
        out.append(f'<text x="{_f(_x(t))}" y="{TOP + SIZE + 18}" text-anchor="middle">{t:.1f}</text>')
        out.append(f'<text x="{LEFT - 8}" y="{_f(_y(t) + 4)}" text-anchor="end">{t:.1f}</text>')
    out.append(
        f'<text x="{LEFT + SIZE / 2:g}" y="{TOP + SIZE + 40}" text-anchor="middle">Forecast value</text>'
    )
    out.append(
        f'<text x="18" y="{TOP + SIZE / 2:g}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + SIZE / 2:g})">CEP</text>'
    )

    band = diagram.band
    if band is not None:
        ring = list(zip(band.positions, band.upper)) + list(zip(band.positions[::-1], band.lower[::-1]))
        out.append(f'<polygon class="band" points="{_path(ring)}" fill="#b3cde3" fill-opacity="0.6" stroke="none"/>')

    out.append(
        f'<line class="diagonal" x1="{_x(0)}" y1="{_y(0)}" x2="{_x(1)}" y2="{_y(1)}" '
        'stroke="gray" stroke-dasharray="4 3"/>'
    )
    out.append(f'<polyline class="curve" points="{_path(diagram.points)}" fill="none" stroke="#d7191c" stroke-width="2"/>')
    if diagram.mode is DiagramMode.DISCRETE:
        for a, b in diagram.points:
            out.append(f'<circle class="point" cx="{_f(_x(a))}" cy="{_f(_y(b))}" r="3" fill="#d7191c"/>')

    d = diagram.annotation
    lines = [
        f"{d.rule} score {_fmt3(d.mean_score)}",
        f"MCB {_fmt3(d.mcb)}",
        f"DSC {_fmt3(d.dsc)}",
        f"UNC {_fmt3(d.unc)}",
    ]
    for i, text in enumerate(lines):
        out.append(f'<text class="annotation" x="{LEFT + 10}" y="{TOP + 20 + 16 * i}">{escape(text)}</text>')

    # marginal distribution strip
    hist = diagram.histogram
    base = HEIGHT + STRIP - 20
    height = STRIP - 40
    top = max(int(hist.counts.max()), 1)
    out.append(f'<line x1="{LEFT}" y1="{base}" x2="{LEFT + SIZE}" y2="{base}" stroke="black"/>')
    for lo, hi, c in zip(hist.lower, hist.upper, hist.counts):
        h = height * c / top
        if diagram.mode is DiagramMode.DISCRETE:
            x0, w = _x(lo) - 1.5, 3.0
        else:
            x0, w = _x(lo), SIZE * (hi - lo)
        out.append(
            f'<rect class="hist" x="{_f(x0)}" y="{_f(base - h)}" width="{_f(w)}" height="{_f(h)}" '
            'fill="#7f7f7f" stroke="white" stroke-width="0.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
