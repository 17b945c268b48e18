"""Static SVG export of validated diagrams."""

from __future__ import annotations

import colorsys
from xml.sax.saxutils import escape

from .diagram import DiagramError, validate_planar


class NotPlanar(DiagramError):
    pass


def palette(k):
    """``k`` well-separated hex colors."""
    out = []
    for i in range(k):
        r, g, b = colorsys.hsv_to_rgb(i / max(k, 1), 0.75, 0.85)
        out.append(f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}")
    return out


def export_svg(D, edge_colors=None, bold_edges=(), filled=(), scale=40, label=True):
    """Draw ``D`` with the planarity validator's coordinates.

    ``edge_colors`` maps an edge (zero, one) to a color index; ``bold_edges``
    are drawn thick (witness paths, peak tops); ``filled`` elements get black
    discs.
    """
    rep = validate_planar(D)
    if not rep.valid:
        raise NotPlanar(f"no valid drawing: {rep.witness}")
    coords = rep.coords
    xs = [c[0] for c in coords.values()]
    ys = [c[1] for c in coords.values()]
    x0, y1 = min(xs), max(ys)
    pad = scale

    def px(a):
        x, y = coords[a]
        return pad + (x - x0) * scale / 2, pad + (y1 - y) * scale

    width = pad * 2 + (max(xs) - x0) * scale / 2
    height = pad * 2 + (y1 - min(ys)) * scale
    colors = palette(max(edge_colors.values()) + 1) if edge_colors else []
    bold = {tuple(e) for e in bold_edges}
    filled = set(filled)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
             f'viewBox="0 0 {width:g} {height:g}">',
             f"<title>{escape(D.name or 'lattice')}</title>"]
    for e in D.edges:
        (ax, ay), (bx, by) = px(e.zero), px(e.one)
        stroke = colors[edge_colors[tuple(e)]] if edge_colors else "#000000"
        w = 4 if tuple(e) in bold else 1.5
        parts.append(f'<line class="edge" data-edge="{e.zero},{e.one}" x1="{ax:g}" y1="{ay:g}" '
                     f'x2="{bx:g}" y2="{by:g}" stroke="{stroke}" stroke-width="{w}"/>')
    for a in range(D.n):
        x, y = px(a)
        fill = "#000000" if a in filled else "#ffffff"
        parts.append(f'<circle class="node" data-id="{a}" cx="{x:g}" cy="{y:g}" r="5" '
                     f'fill="{fill}" stroke="#000000"/>')
        if label:
            parts.append(f'<text x="{x + 7:g}" y="{y - 5:g}" font-size="10">{a}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
