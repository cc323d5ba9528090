"""Grid diagrams: representation, validation, link tracing and crossings.

A grid diagram of index ``n`` is stored as two permutations of ``range(n)``:
``xs[c]`` is the row of the X in column ``c`` and ``os[c]`` the row of the O.
Columns run left to right and rows bottom to top, both 0-based.  Vertical
segments run X -> O, horizontal segments O -> X, and verticals always cross
over.

Crossing signs use the right-hand rule with the vertical strand on top:
``sign = -v * h`` where ``v`` is +1 for an upward vertical and ``h`` is +1
for a rightward horizontal.  A coincident X/O cell is a degenerate (point)
unknot; it has no segments and so takes part in no crossing.
"""
from dataclasses import dataclass
from functools import cached_property

from .errors import NotPermutation, ParseError, SizeMismatch

__all__ = [
    "GridDiagram", "Crossing", "Component", "new_grid", "trace", "crossings", "crossing_count",
    "component_of_columns",
    "writhe", "serialize", "parse", "transpose", "mirror", "EMPTY",
]


def _check_perm(name, seq, n):
    if sorted(seq) != list(range(n)):
        seen = set()
        for i, r in enumerate(seq):
            if not (0 <= r < n) or r in seen:
                raise NotPermutation("%s is not a permutation of 0..%d (entry %d = %r)"
                                     % (name, n - 1, i, r))
            seen.add(r)
        raise NotPermutation("%s is not a permutation of 0..%d" % (name, n - 1))


@dataclass(frozen=True)
class GridDiagram:
    xs: tuple
    os: tuple

    def __post_init__(self):
        xs = tuple(int(v) for v in self.xs)
        os_ = tuple(int(v) for v in self.os)
        if len(xs) != len(os_):
            raise SizeMismatch("xs has %d entries, os has %d" % (len(xs), len(os_)))
        _check_perm("xs", xs, len(xs))
        _check_perm("os", os_, len(os_))
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "os", os_)

    @property
    def grid_index(self):
        return len(self.xs)

    n = grid_index

    @cached_property
    def x_col(self):
        """Column of the X in each row."""
        inv = [0] * len(self.xs)
        for c, r in enumerate(self.xs):
            inv[r] = c
        return tuple(inv)

    @cached_property
    def o_col(self):
        """Column of the O in each row."""
        inv = [0] * len(self.os)
        for c, r in enumerate(self.os):
            inv[r] = c
        return tuple(inv)

    def col_span(self, c):
        a, b = self.xs[c], self.os[c]
        return (a, b) if a <= b else (b, a)

    def row_span(self, r):
        a, b = self.x_col[r], self.o_col[r]
        return (a, b) if a <= b else (b, a)

    def is_coincident(self, c):
        return self.xs[c] == self.os[c]

    def vertical_direction(self, c):
        """+1 if the column's segment runs upward, -1 downward, 0 if degenerate."""
        return (self.os[c] > self.xs[c]) - (self.os[c] < self.xs[c])

    def horizontal_direction(self, r):
        return (self.x_col[r] > self.o_col[r]) - (self.x_col[r] < self.o_col[r])

    def marker_at(self, c, r):
        """Set of marker letters ('X', 'O') in cell (c, r)."""
        out = set()
        if 0 <= c < len(self.xs):
            if self.xs[c] == r:
                out.add("X")
            if self.os[c] == r:
                out.add("O")
        return out

    @cached_property
    def crossing_set(self):
        return frozenset((k.column, k.row) for k in crossings(self))

    def __str__(self):
        return serialize(self).rstrip("\n")


EMPTY = GridDiagram((), ())


def new_grid(n, xs, os):
    """Validated constructor mirroring the (n, xs, os) text form."""
    if n < 0:
        raise SizeMismatch("grid index must be non-negative, got %d" % n)
    if len(xs) != n or len(os) != n:
        raise SizeMismatch("expected %d entries, got xs=%d os=%d" % (n, len(xs), len(os)))
    return GridDiagram(tuple(xs), tuple(os))


@dataclass(frozen=True)
class Crossing:
    column: int
    row: int
    sign: int

    @property
    def over_strand(self):
        return "vertical"


@dataclass(frozen=True)
class Component:
    markers: tuple   # (column, row) cells, X then O per column, in travel order
    columns: tuple
    degenerate: bool

    def __len__(self):
        return len(self.markers)


def trace(d):
    """Split the diagram into oriented components.

    Each component lists its columns in travel order; a column contributes its
    X cell then its O cell (one cell if the column is degenerate).
    """
    seen = [False] * d.n
    comps = []
    for start in range(d.n):
        if seen[start]:
            continue
        cols = []
        c = start
        while not seen[c]:
            seen[c] = True
            cols.append(c)
            c = d.x_col[d.os[c]]
        degenerate = len(cols) == 1 and d.is_coincident(cols[0])
        if degenerate:
            markers = ((cols[0], d.xs[cols[0]]),)
        else:
            markers = tuple(cell for c in cols for cell in ((c, d.xs[c]), (c, d.os[c])))
        comps.append(Component(markers, tuple(cols), degenerate))
    return comps


def component_of_columns(d):
    """Map column -> component index (ordered as :func:`trace`)."""
    out = [0] * d.n
    for i, comp in enumerate(trace(d)):
        for c in comp.columns:
            out[c] = i
    return out


def crossings(d):
    out = []
    xs, os_ = d.xs, d.os
    x_col, o_col = d.x_col, d.o_col
    for c in range(d.n):
        lo, hi = (xs[c], os_[c]) if xs[c] < os_[c] else (os_[c], xs[c])
        if hi - lo < 2:
            continue
        v = 1 if os_[c] > xs[c] else -1
        for r in range(lo + 1, hi):
            a, b = x_col[r], o_col[r]
            if a < c < b:
                out.append(Crossing(c, r, v))        # h = -1 (X left of O)
            elif b < c < a:
                out.append(Crossing(c, r, -v))
    return out


def crossing_count(d):
    xs, os_ = d.xs, d.os
    x_col, o_col = d.x_col, d.o_col
    total = 0
    for c in range(len(xs)):
        lo, hi = (xs[c], os_[c]) if xs[c] < os_[c] else (os_[c], xs[c])
        for r in range(lo + 1, hi):
            a, b = x_col[r], o_col[r]
            if a < c < b or b < c < a:
                total += 1
    return total


def writhe(d):
    return sum(k.sign for k in crossings(d))


def transpose(d):
    """Reflect across the main diagonal, swapping the roles of X and O."""
    return GridDiagram(d.o_col, d.x_col)


def mirror(d):
    """Reverse the row order (reflection in a horizontal line)."""
    n = d.n
    return GridDiagram(tuple(n - 1 - r for r in d.xs), tuple(n - 1 - r for r in d.os))


def serialize(d):
    return "%d\n%s\n%s\n" % (d.n, " ".join(map(str, d.xs)), " ".join(map(str, d.os)))


def parse(text):
    """Parse the three-line text form.

    Format errors raise ParseError with a line/field location; well-formed
    input that is not a pair of permutations raises NotPermutation.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if len(lines) != 3:
        raise ParseError("expected 3 lines, got %d" % len(lines), line=len(lines) + 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError("grid index is not an integer", line=1, field="n") from None
    if n < 0:
        raise ParseError("grid index must be non-negative", line=1, field="n")
    rows = []
    for lineno, name in ((2, "xs"), (3, "os")):
        try:
            vals = [int(t) for t in lines[lineno - 1].split()]
        except ValueError:
            raise ParseError("non-integer entry", line=lineno, field=name) from None
        if len(vals) != n:
            raise ParseError("expected %d entries, got %d" % (n, len(vals)),
                             line=lineno, field=name)
        rows.append(vals)
    return GridDiagram(tuple(rows[0]), tuple(rows[1]))
