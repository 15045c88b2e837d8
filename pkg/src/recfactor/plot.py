"""Static SVG rendering of conics and their lattice points."""

from __future__ import annotations

import math
from typing import Sequence

from .conic import ConicInstance, LatticePoint

SIZE = 560
PAD = 40


def _branches(inst: ConicInstance, y0: float, y1: float, samples: int) -> list[list[tuple[float, float]]]:
    F = inst.poly
    a, b, c, n = F.a, F.b, F.c, inst.n
    plus, minus = [], []
    segs: list[list[tuple[float, float]]] = []
    for i in range(samples + 1):
        y = y0 + (y1 - y0) * i / samples
        lin = b * y + 1
        disc = lin * lin - 4 * a * (c * y * y - n * y)
        if disc < 0:
            if plus:
                segs += [plus, minus]
                plus, minus = [], []
            continue
        s = math.sqrt(disc)
        plus.append(((-lin + s) / (2 * a), y))
        minus.append(((-lin - s) / (2 * a), y))
    if plus:
        segs += [plus, minus]
    return segs


def _curve(inst: ConicInstance, box: int | None, samples: int = 400) -> list[list[tuple[float, float]]]:
    D = inst.discriminant
    if D < 0:
        F = inst.poly
        B = F.b + 2 * F.a * inst.n
        r = math.sqrt(B * B - D)
        ya, yb = sorted(((B - r) / -D, (B + r) / -D))
        segs = _branches(inst, ya, yb, samples)
        # join the two halves into one closed loop
        loop = [p for seg in segs[0::2] for p in seg] + [p for seg in segs[1::2] for p in reversed(seg)]
        return [loop + loop[:1]] if loop else []
    return _branches(inst, -box, box, samples)


def render_svg(insts: Sequence[ConicInstance], points: Sequence[LatticePoint],
               highlight: ConicInstance | None = None, box: int | None = None) -> str:
    """Conic curves as polylines, lattice points as labelled circles."""
    curves = [(inst, _curve(inst, box)) for inst in insts]
    xs = [p.X for p in points] + [0.0]
    ys = [p.Y for p in points] + [0.0]
    for _, segs in curves:
        for seg in segs:
            xs += [x for x, _ in seg]
            ys += [y for _, y in seg]
    if box is not None:
        xs = [min(max(x, -box), box) for x in xs]
        ys = [min(max(y, -box), box) for y in ys]
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1
    scale = (SIZE - 2 * PAD) / max(x1 - x0, y1 - y0)

    def sx(x: float) -> float:
        return PAD + (x - x0) * scale

    def sy(y: float) -> float:
        return SIZE - PAD - (y - y0) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<defs><clipPath id="plot"><rect x="{PAD}" y="{PAD}" width="{SIZE - 2 * PAD}" height="{SIZE - 2 * PAD}"/></clipPath></defs>',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{sx(x0):.2f}" y1="{sy(0):.2f}" x2="{sx(x1):.2f}" y2="{sy(0):.2f}" stroke="black" stroke-width="1"/>',
        f'<line x1="{sx(0):.2f}" y1="{sy(y0):.2f}" x2="{sx(0):.2f}" y2="{sy(y1):.2f}" stroke="black" stroke-width="1"/>',
        f'<text x="{SIZE - PAD + 4}" y="{sy(0) + 4:.2f}" font-size="12">X</text>',
        f'<text x="{sx(0) - 4:.2f}" y="{PAD - 8}" font-size="12">Y</text>',
    ]
    for inst, segs in curves:
        hot = highlight is not None and inst == highlight
        colour, width = ("#1f4fd1", 2) if hot or len(insts) == 1 else ("#999999", 1)
        for seg in segs:
            pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in seg)
            out.append(f'<polyline points="{pts}" fill="none" stroke="{colour}" '
                       f'stroke-width="{width}" clip-path="url(#plot)"/>')
    for p in points:
        out.append(f'<circle cx="{sx(p.X):.2f}" cy="{sy(p.Y):.2f}" r="4" fill="#d12f1f"/>')
        out.append(f'<text x="{sx(p.X) + 6:.2f}" y="{sy(p.Y) - 6:.2f}" font-size="11">({p.X},{p.Y})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
