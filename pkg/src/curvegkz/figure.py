"""Hand-rolled SVG portrait of the parameter plane: integer lines of both
facets (solid when polar, dashed otherwise), exceptional parameters, the
negated columns, and the convergence wedge of the defining integral.

Output is fully deterministic: fixed sizes, two-decimal coordinates, and
stable element order.
"""

from .curve import FACET_0, FACET_K, rank_jumping_parameters, resonant_lines

VIEW = 600.0
MARGIN = 60.0
SIZE = VIEW + 2 * MARGIN

_COLORS = {FACET_0: "#2b6cb0", FACET_K: "#b03a2b"}


def _mapper(window):
    W = float(window)

    def to_px(b1, b2):
        x = MARGIN + (b1 + W) * VIEW / (2 * W)
        y = MARGIN + (W - b2) * VIEW / (2 * W)
        return x, y

    return to_px


def _clip_halfplane(poly, a, b, c):
    """Sutherland-Hodgman step: keep points with a*x + b*y <= c."""
    if not poly:
        return []
    out = []
    m = len(poly)
    for i in range(m):
        px, py = poly[i]
        qx, qy = poly[(i + 1) % m]
        pin = a * px + b * py <= c
        qin = a * qx + b * qy <= c
        if pin:
            out.append((px, py))
        if pin != qin:
            denom = a * (qx - px) + b * (qy - py)
            t = (c - a * px - b * py) / denom
            out.append((px + t * (qx - px), py + t * (qy - py)))
    return out


def _fmt(v):
    return f"{v:.2f}"


def build_svg(A, window=5):
    W = int(window)
    to_px = _mapper(W)
    parts = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(SIZE)}" '
        f'height="{_fmt(SIZE)}" viewBox="0 0 {_fmt(SIZE)} {_fmt(SIZE)}">'
    )
    parts.append(f'<rect x="0" y="0" width="{_fmt(SIZE)}" height="{_fmt(SIZE)}" fill="#ffffff"/>')

    # convergence wedge: b2 <= 0 intersected with k*b1 - b2 <= 0
    square = [(-W, -W), (W, -W), (W, W), (-W, W)]
    wedge = _clip_halfplane(square, 0.0, 1.0, 0.0)
    wedge = _clip_halfplane(wedge, float(A.k), -1.0, 0.0)
    if wedge:
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (to_px(b1, b2) for b1, b2 in wedge))
        parts.append(f'<polygon points="{pts}" fill="#dce9f5" stroke="none"/>')

    # axes
    x0, y0 = to_px(0, -W)
    x1, y1 = to_px(0, W)
    parts.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
        f'stroke="#999999" stroke-width="1"/>'
    )
    x0, y0 = to_px(-W, 0)
    x1, y1 = to_px(W, 0)
    parts.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
        f'stroke="#999999" stroke-width="1"/>'
    )

    # facet-0 lines are horizontal; facet-k lines have slope k
    for L in resonant_lines(A, FACET_0, (-W, W)):
        xa, ya = to_px(-W, L.level)
        xb, yb = to_px(W, L.level)
        dash = "" if L.polar else ' stroke-dasharray="6,4"'
        parts.append(
            f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}" '
            f'stroke="{_COLORS[FACET_0]}" stroke-width="1.5"{dash}/>'
        )
    for L in resonant_lines(A, FACET_K, (-A.k * W - W, A.k * W + W)):
        # b2 = k*b1 - N inside the window square
        lo = max(-W, (L.level - W) / A.k)
        hi = min(W, (L.level + W) / A.k)
        if lo >= hi:
            continue
        xa, ya = to_px(lo, A.k * lo - L.level)
        xb, yb = to_px(hi, A.k * hi - L.level)
        dash = "" if L.polar else ' stroke-dasharray="6,4"'
        parts.append(
            f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}" '
            f'stroke="{_COLORS[FACET_K]}" stroke-width="1.5"{dash}/>'
        )

    # negated columns
    for i in range(A.n):
        b1, b2 = -1, -A.exponents[i]
        if abs(b1) > W or abs(b2) > W:
            continue
        cx, cy = to_px(b1, b2)
        parts.append(
            f'<rect x="{_fmt(cx - 4)}" y="{_fmt(cy - 4)}" width="8.00" height="8.00" '
            f'fill="#444444"/>'
        )

    # exceptional parameters
    for b1, b2 in sorted(rank_jumping_parameters(A)):
        if abs(b1) > W or abs(b2) > W:
            continue
        cx, cy = to_px(b1, b2)
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="6.00" fill="#e8b923" '
            f'stroke="#000000" stroke-width="1.5"/>'
        )

    label = "A = [" + ", ".join(str(v) for v in A.exponents) + "]"
    parts.append(
        f'<text x="{_fmt(MARGIN)}" y="{_fmt(MARGIN - 20)}" font-family="monospace" '
        f'font-size="16">{label}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
