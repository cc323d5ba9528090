"""ASCII and SVG renderings of grid diagrams."""
from xml.sax.saxutils import escape

from .grid import crossings, trace

PITCH = 40
GAP = 8
_MARGIN = 10


def render_ascii(d):
    """Text picture, top row first.

    Each cell is three characters wide.  Vertical strands are drawn with
    ``|``, horizontal ones with ``-``; a crossing shows ``|`` since the
    vertical strand is over.  A coincident X/O cell is drawn as ``@``.
    """
    n = d.n
    canvas = [[" "] * (3 * n) for _ in range(n)]

    def put(c, r, ch):
        canvas[n - 1 - r][3 * c + 1] = ch

    def fill(c, r, ch):
        row = canvas[n - 1 - r]
        row[3 * c] = row[3 * c + 1] = row[3 * c + 2] = ch

    for r in range(n):
        a, b = d.row_span(r)
        if a == b:
            continue
        row = canvas[n - 1 - r]
        for col in range(a, b + 1):
            lo = 3 * col + (1 if col == a else 0)
            hi = 3 * col + (1 if col == b else 2)
            for i in range(lo, hi + 1):
                row[i] = "-"
    for c in range(n):
        a, b = d.col_span(c)
        for r in range(a + 1, b):
            put(c, r, "|")
    for c in range(n):
        if d.is_coincident(c):
            put(c, d.xs[c], "@")
        else:
            put(c, d.xs[c], "X")
            put(c, d.os[c], "O")
    border = "+" + "-" * (3 * n) + "+"
    lines = [border] + ["|" + "".join(row) + "|" for row in canvas] + [border]
    return "\n".join(lines) + "\n"


def _centre(i):
    return _MARGIN + PITCH * i + PITCH / 2


def render_svg(d):
    """A standalone SVG document.

    Cells are ``PITCH`` units wide; horizontal strands are broken ``GAP``
    units around each crossing so the vertical strand reads as over.
    """
    n = d.n
    size = 2 * _MARGIN + PITCH * n
    y = lambda r: _centre(n - 1 - r)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (size, size, size, size),
        '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (size, size),
    ]
    for i in range(n + 1):
        p = _MARGIN + PITCH * i
        out.append('<line class="grid" x1="%g" y1="%g" x2="%g" y2="%g" stroke="#ccc" stroke-width="1"/>'
                   % (p, _MARGIN, p, size - _MARGIN))
        out.append('<line class="grid" x1="%g" y1="%g" x2="%g" y2="%g" stroke="#ccc" stroke-width="1"/>'
                   % (_MARGIN, p, size - _MARGIN, p))
    gaps = {}
    for k in crossings(d):
        gaps.setdefault(k.row, []).append(k.column)
    for r in range(n):
        a, b = d.row_span(r)
        if a == b:
            continue
        xs = [_centre(a)]
        for c in sorted(gaps.get(r, [])):
            xs += [_centre(c) - GAP / 2, _centre(c) + GAP / 2]
        xs.append(_centre(b))
        for x1, x2 in zip(xs[::2], xs[1::2]):
            out.append('<line class="strand h" x1="%g" y1="%g" x2="%g" y2="%g" stroke="black" stroke-width="2"/>'
                       % (x1, y(r), x2, y(r)))
    for c in range(n):
        a, b = d.col_span(c)
        if a == b:
            continue
        out.append('<line class="strand v" x1="%g" y1="%g" x2="%g" y2="%g" stroke="black" stroke-width="2"/>'
                   % (_centre(c), y(a), _centre(c), y(b)))
    for comp in trace(d):
        if comp.degenerate:
            c, r = comp.markers[0]
            out.append('<circle class="point" cx="%g" cy="%g" r="%g" fill="none" stroke="black"/>'
                       % (_centre(c), y(r), PITCH / 8))
    for c in range(n):
        if d.is_coincident(c):
            continue
        for glyph, r in (("X", d.xs[c]), ("O", d.os[c])):
            out.append('<text class="marker" x="%g" y="%g" text-anchor="middle" '
                       'dominant-baseline="central" font-size="%d">%s</text>'
                       % (_centre(c), y(r), PITCH // 2, escape(glyph)))
    out.append("</svg>")
    return "\n".join(out) + "\n"
