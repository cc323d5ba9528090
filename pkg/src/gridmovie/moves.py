"""Single-still grid moves: application, inversion and classification.

Moves are small frozen records.  Coordinates always refer to the diagram the
move is applied to.

Stabilization is parameterized by a marker cell and a corner: the cell
becomes a 2x2 block (a new column and row are inserted to its right and
above), the marker is placed on the two block cells off the ``corner``
diagonal, the opposite marker type sits diagonally opposite ``corner``, and
``corner`` itself is left empty.  The block column holding ``corner``
inherits the old column partner and the block row holding ``corner`` the old
row partner.  Destabilization names the same block by its lower-left cell
and empty corner.  Stabilizing a coincident X/O cell yields a closed 2x2
unknot block.
"""
from dataclasses import dataclass, field

from .errors import (
    IndexOutOfRange, MalformedStabilization, MoveError, NoCoincidentPair,
    ObstructedCommutation, SaddleChangesCrossings, SaddleWrongConfiguration,
    TransferNotR2Pair,
)
from .grid import GridDiagram, crossing_count, crossings

CORNERS = ("NW", "NE", "SW", "SE")
_OFFSET = {"NW": (0, 1), "NE": (1, 1), "SW": (0, 0), "SE": (1, 0)}
_OPPOSITE = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}
MAIN_TO_ANTI = "main_to_anti"
ANTI_TO_MAIN = "anti_to_main"

LABELS = (
    "KinkStab", "R1Stab", "KinkDestab", "R1Destab", "CommObstructed",
    "CommUnnested", "CommNestedP", "CommNestedR2", "CommNestedR3",
    "CommComposite", "CommBoundaryArc", "Transfer", "Birth", "Death",
    "Saddle", "Identity",
)
PLANAR_LABELS = frozenset({"KinkStab", "KinkDestab", "CommUnnested", "CommNestedP", "Transfer"})
CRITICAL_LABELS = frozenset({"Birth", "Death", "Saddle"})


def _other(marker):
    return "O" if marker == "X" else "X"


@dataclass(frozen=True)
class Stab:
    marker: str
    at: tuple
    corner: str
    kind = "stab"

    def __post_init__(self):
        object.__setattr__(self, "at", tuple(self.at))
        if self.marker not in ("X", "O") or self.corner not in CORNERS:
            raise MoveError("bad stabilization parameters %r" % (self,))

    def sort_key(self):
        return (0, self.at, self.marker, self.corner)


@dataclass(frozen=True)
class Destab:
    at: tuple
    corner: str
    kind = "destab"

    def __post_init__(self):
        object.__setattr__(self, "at", tuple(self.at))
        if self.corner not in CORNERS:
            raise MoveError("bad corner %r" % self.corner)

    def sort_key(self):
        return (1, self.at, self.corner)


@dataclass(frozen=True)
class Commute:
    axis: str
    index: int
    wrap: bool = False
    kind = "commute"

    def __post_init__(self):
        if self.axis not in ("cols", "rows"):
            raise MoveError("axis must be 'cols' or 'rows', got %r" % self.axis)

    def sort_key(self):
        return (2, self.axis, self.wrap, self.index)


@dataclass(frozen=True)
class Transfer:
    first: Commute
    second: Commute
    crossing: tuple = None
    kind = "transfer"

    def __post_init__(self):
        if self.crossing is not None:
            object.__setattr__(self, "crossing", tuple(self.crossing))

    def sort_key(self):
        return (3, self.first.sort_key(), self.second.sort_key(), self.crossing or ())


@dataclass(frozen=True)
class Birth:
    cell: tuple
    kind = "birth"

    def __post_init__(self):
        object.__setattr__(self, "cell", tuple(self.cell))

    def sort_key(self):
        return (4, self.cell)


@dataclass(frozen=True)
class Death:
    column: int
    kind = "death"

    def sort_key(self):
        return (5, self.column)


@dataclass(frozen=True)
class Saddle:
    at: tuple
    direction: str = MAIN_TO_ANTI
    marker: str = "O"
    kind = "saddle"

    def __post_init__(self):
        object.__setattr__(self, "at", tuple(self.at))
        if self.direction not in (MAIN_TO_ANTI, ANTI_TO_MAIN) or self.marker not in ("X", "O"):
            raise MoveError("bad saddle parameters %r" % (self,))

    def sort_key(self):
        return (6, self.at, self.direction, self.marker)


@dataclass(frozen=True)
class Identity:
    kind = "identity"

    def sort_key(self):
        return (7,)


MOVE_TYPES = (Stab, Destab, Commute, Transfer, Birth, Death, Saddle, Identity)


def move_key(m):
    return m.sort_key()


@dataclass(frozen=True)
class MoveClass:
    label: str
    delta: int = 0
    separating: int = None
    detail: dict = field(default=None, compare=False, hash=False)

    def to_dict(self):
        out = {"class": self.label, "delta": self.delta}
        if self.separating is not None:
            out["separating"] = self.separating
        return out


def is_planar_isotopy_step(cls):
    """True for kink (de)stabilizations, un-nested and P commutations, transfers.

    A (de)stabilization that grows a circle out of a point component (or
    shrinks one to a point) is not an isotopy of the link and is excluded.
    """
    if cls.detail and cls.detail.get("degenerate"):
        return False
    return cls.label in PLANAR_LABELS


# --------------------------------------------------------------------------
# helpers

class _Builder:
    """Mutable marker table used while assembling a new diagram."""

    def __init__(self, n):
        self.xs = [None] * n
        self.os = [None] * n

    def put(self, kind, c, r):
        arr = self.xs if kind == "X" else self.os
        if arr[c] is not None:
            raise MoveError("column %d already holds an %s" % (c, kind))
        arr[c] = r

    def build(self):
        if None in self.xs or None in self.os:
            raise MoveError("incomplete diagram after move")
        return GridDiagram(tuple(self.xs), tuple(self.os))


def _cells(d):
    for c in range(d.n):
        yield "X", c, d.xs[c]
        yield "O", c, d.os[c]


def _check_block(d, c, r):
    if not (0 <= c and c + 1 < d.n and 0 <= r and r + 1 < d.n):
        raise IndexOutOfRange("2x2 block at %r does not fit in a grid of index %d" % ((c, r), d.n))


def _block_cells(corner, c, r):
    ec, er = _OFFSET[corner]
    oc, or_ = 1 - ec, 1 - er
    return (c + ec, r + er), (c + oc, r + or_)


# --------------------------------------------------------------------------
# application

def _apply_stab(d, m):
    c, r = m.at
    if not (0 <= c < d.n and 0 <= r < d.n):
        raise IndexOutOfRange("cell %r outside grid of index %d" % (m.at, d.n))
    M, T = m.marker, _other(m.marker)
    arr_m = d.xs if M == "X" else d.os
    if arr_m[c] != r:
        raise MalformedStabilization("no %s at %r" % (M, m.at))
    (ecol, erow), (ocol, orow) = _block_cells(m.corner, c, r)
    coincident = d.xs[c] == d.os[c]
    cmap = lambda j: j if j < c else j + 1
    rmap = lambda i: i if i < r else i + 1
    b = _Builder(d.n + 1)
    for kind, j, i in _cells(d):
        if j == c:
            if kind == M:
                continue
            # column partner of the stabilized marker
            b.put(kind, ecol, erow if coincident else rmap(i))
        elif i == r:
            b.put(kind, cmap(j), erow)        # row partner
        else:
            b.put(kind, cmap(j), rmap(i))
    b.put(M, ecol, orow)
    b.put(M, ocol, erow)
    b.put(T, ocol, orow)
    return b.build()


def _destab_marker(d, m):
    """Marker type that survives the destabilization, validating the block."""
    c, r = m.at
    _check_block(d, c, r)
    (ecol, erow), (ocol, orow) = _block_cells(m.corner, c, r)
    opp = d.marker_at(ocol, orow)
    diag1 = d.marker_at(ecol, orow)
    diag2 = d.marker_at(ocol, erow)
    empty = d.marker_at(ecol, erow)
    if len(opp) != 1:
        raise MalformedStabilization("corner opposite %s must hold one marker" % m.corner)
    T = next(iter(opp))
    M = _other(T)
    if diag1 != {M} or diag2 != {M}:
        raise MalformedStabilization("block at %r is not a stabilization block" % (m.at,))
    if empty and empty != {T}:
        raise MalformedStabilization("corner %s must be empty" % m.corner)
    return M


def _apply_destab(d, m):
    _destab_marker(d, m)
    c, r = m.at
    (ecol, erow), (ocol, orow) = _block_cells(m.corner, c, r)
    cmap = lambda j: j if j < ocol else j - 1
    rmap = lambda i: r if i == orow else (i if i < orow else i - 1)
    b = _Builder(d.n - 1)
    for kind, j, i in _cells(d):
        if j == ocol:
            continue
        b.put(kind, cmap(j), rmap(i))
    return b.build()


def commute_pair(d, m):
    """The two interchanged line indices (in increasing order unless wrapping)."""
    n = d.n
    if m.wrap:
        if n < 2:
            raise IndexOutOfRange("wrap-around interchange needs a grid of index >= 2")
        return n - 1, 0
    if not (0 <= m.index and m.index + 1 < n):
        raise IndexOutOfRange("interchange %d,%d outside grid of index %d" % (m.index, m.index + 1, n))
    return m.index, m.index + 1


def _swap_commute(d, m):
    i, j = commute_pair(d, m)
    xs, os_ = list(d.xs), list(d.os)
    if m.axis == "cols":
        xs[i], xs[j] = xs[j], xs[i]
        os_[i], os_[j] = os_[j], os_[i]
    else:
        swap = {i: j, j: i}
        xs = [swap.get(v, v) for v in xs]
        os_ = [swap.get(v, v) for v in os_]
    return GridDiagram(tuple(xs), tuple(os_))


def _apply_birth(d, m):
    c, r = m.cell
    if not (0 <= c <= d.n and 0 <= r <= d.n):
        raise IndexOutOfRange("birth cell %r outside enlarged grid of index %d" % (m.cell, d.n + 1))
    b = _Builder(d.n + 1)
    for kind, j, i in _cells(d):
        b.put(kind, j if j < c else j + 1, i if i < r else i + 1)
    b.put("X", c, r)
    b.put("O", c, r)
    return b.build()


def _apply_death(d, m):
    c = m.column
    if not 0 <= c < d.n:
        raise IndexOutOfRange("column %d outside grid of index %d" % (c, d.n))
    if d.xs[c] != d.os[c]:
        raise NoCoincidentPair("column %d has no coincident X/O pair" % c)
    r = d.xs[c]
    b = _Builder(d.n - 1)
    for kind, j, i in _cells(d):
        if j == c:
            continue
        b.put(kind, j if j < c else j - 1, i if i < r else i - 1)
    return b.build()


def _apply_saddle(d, m):
    c, r = m.at
    _check_block(d, c, r)
    arr = list(d.os if m.marker == "O" else d.xs)
    if m.direction == MAIN_TO_ANTI:
        want, new = (r, r + 1), (r + 1, r)
    else:
        want, new = (r + 1, r), (r, r + 1)
    if (arr[c], arr[c + 1]) != want:
        raise SaddleWrongConfiguration(
            "saddle %s needs %s markers at rows %r in columns %d,%d"
            % (m.direction, m.marker, want, c, c + 1))
    arr[c], arr[c + 1] = new
    out = GridDiagram(d.xs, tuple(arr)) if m.marker == "O" else GridDiagram(tuple(arr), d.os)
    before, after = crossing_count(d), crossing_count(out)
    if before != after:
        raise SaddleChangesCrossings("saddle changes crossings %d -> %d" % (before, after))
    return out


# --------------------------------------------------------------------------
# commutation classification

def _spans(d, m, i, j):
    if m.axis == "cols":
        return {d.xs[i], d.os[i]}, {d.xs[j], d.os[j]}
    return {d.x_col[i], d.o_col[i]}, {d.x_col[j], d.o_col[j]}


def _nesting(a, b):
    """'obstructed', 'unnested', or ('nested', inner_lo, inner_hi)."""
    if a & b:
        return "obstructed"
    alo, ahi = min(a), max(a)
    blo, bhi = min(b), max(b)
    if ahi < blo or bhi < alo:
        return "unnested"
    if alo < blo and bhi < ahi:
        inner = (blo, bhi)
    elif blo < alo and ahi < bhi:
        inner = (alo, ahi)
    else:
        return "obstructed"
    if inner[0] == inner[1]:
        # a point component inside another line's span would pass through a strand
        return "obstructed"
    return ("nested",) + inner


def separating_count(d, m, inner, i, j):
    """Transversal segments strictly inside ``inner`` spanning across both lines."""
    lo_line, hi_line = min(i, j), max(i, j)
    k = 0
    for t in range(inner[0] + 1, inner[1]):
        lo, hi = d.row_span(t) if m.axis == "cols" else d.col_span(t)
        if lo < lo_line and hi > hi_line:
            k += 1
    return k


def classify_commutation(d, m, _after=None):
    i, j = commute_pair(d, m)
    a, b = _spans(d, m, i, j)
    kind = _nesting(a, b)
    if kind == "obstructed":
        return MoveClass("CommObstructed", 0, None)
    after = _after if _after is not None else _swap_commute(d, m)
    delta = crossing_count(after) - crossing_count(d)
    if kind == "unnested":
        k = 0
    else:
        k = separating_count(d, m, kind[1:], i, j)
    if m.wrap:
        return MoveClass("CommBoundaryArc", delta, k)
    if kind == "unnested":
        return MoveClass("CommUnnested", delta, k)
    if delta == 0:
        return MoveClass("CommNestedP" if k == 0 else "CommNestedR3", delta, k)
    return MoveClass("CommNestedR2" if k == 0 else "CommComposite", delta, k)


# --------------------------------------------------------------------------
# transfer

def _commute_cell_map(d, m):
    i, j = commute_pair(d, m)
    swap = {i: j, j: i}
    if m.axis == "cols":
        return lambda cell: (swap.get(cell[0], cell[0]), cell[1])
    return lambda cell: (cell[0], swap.get(cell[1], cell[1]))


def _signed(d):
    return {(k.column, k.row): k.sign for k in crossings(d)}


def transfer_details(d, m):
    """Validate a transfer; return (result, original crossing, final crossing)."""
    if m.first.axis == m.second.axis:
        raise TransferNotR2Pair("transfer needs one row and one column interchange")
    if m.first.wrap or m.second.wrap:
        raise TransferNotR2Pair("transfer interchanges may not wrap")
    c1 = classify_commutation(d, m.first)
    if c1.label != "CommNestedR2" or c1.delta != 2:
        raise TransferNotR2Pair("first interchange is %s (delta %d), not a creating R2"
                                % (c1.label, c1.delta))
    d1 = _swap_commute(d, m.first)
    c2 = classify_commutation(d1, m.second)
    if c2.label != "CommNestedR2" or c2.delta != -2:
        raise TransferNotR2Pair("second interchange is %s (delta %d), not a removing R2"
                                % (c2.label, c2.delta))
    d2 = _swap_commute(d1, m.second)
    f1, f2 = _commute_cell_map(d, m.first), _commute_cell_map(d1, m.second)
    p0, p1, p2 = _signed(d), _signed(d1), _signed(d2)
    carried = {f1(cell): cell for cell in p0}
    created = [cell for cell in p1 if cell not in carried]
    if len(created) != 2 or not set(carried) <= set(p1):
        raise TransferNotR2Pair("first interchange does not create a crossing pair")
    moved = {f2(cell): cell for cell in p1}
    removed = [moved[cell] for cell in moved if cell not in p2]
    if len(removed) != 2 or not set(p2) <= set(moved):
        raise TransferNotR2Pair("second interchange does not remove a crossing pair")
    old = [cell for cell in removed if cell in carried]
    gone_new = [cell for cell in removed if cell not in carried]
    if len(old) != 1 or len(gone_new) != 1:
        raise TransferNotR2Pair("second interchange must remove the original crossing "
                                "and one created crossing")
    p = carried[old[0]]
    if m.crossing is not None and tuple(m.crossing) != p:
        raise TransferNotR2Pair("transfer removes crossing %r, not %r" % (p, m.crossing))
    kept = [cell for cell in created if cell != gone_new[0]][0]
    final = f2(kept)
    if p1[gone_new[0]] != -p0[p] or p2[final] != p0[p]:
        raise TransferNotR2Pair("crossing signs do not match a transfer")
    # X above / O below the original crossing becomes O above / X below
    if d.vertical_direction(p[0]) != -d2.vertical_direction(final[0]):
        raise TransferNotR2Pair("vertical strand orientation not reversed at the crossing")
    return d2, p, final


# --------------------------------------------------------------------------
# public API

def apply(d, m):
    """Apply a move; raise a MoveError subclass if it is not applicable."""
    if isinstance(m, Stab):
        return _apply_stab(d, m)
    if isinstance(m, Destab):
        return _apply_destab(d, m)
    if isinstance(m, Commute):
        if classify_commutation(d, m).label == "CommObstructed":
            raise ObstructedCommutation("interchange %r is obstructed" % (m,))
        return _swap_commute(d, m)
    if isinstance(m, Transfer):
        return transfer_details(d, m)[0]
    if isinstance(m, Birth):
        return _apply_birth(d, m)
    if isinstance(m, Death):
        return _apply_death(d, m)
    if isinstance(m, Saddle):
        return _apply_saddle(d, m)
    if isinstance(m, Identity):
        return d
    raise TypeError("not a move: %r" % (m,))


def apply_classified(d, m):
    """Apply ``m`` and classify it in one pass; returns (diagram, MoveClass)."""
    if isinstance(m, (Stab, Destab)):
        out = _apply_stab(d, m) if isinstance(m, Stab) else _apply_destab(d, m)
        delta = crossing_count(out) - crossing_count(d)
        stab = isinstance(m, Stab)
        if delta == 0:
            label = "KinkStab" if stab else "KinkDestab"
        elif abs(delta) == 1:
            label = "R1Stab" if stab else "R1Destab"
        else:
            raise MalformedStabilization("(de)stabilization changed crossings by %d" % delta)
        c = m.at[0]
        degenerate = d.is_coincident(c) if stab else out.is_coincident(c)
        return out, MoveClass(label, delta, None, {"degenerate": True} if degenerate else None)
    if isinstance(m, Commute):
        i, j = commute_pair(d, m)
        if _nesting(*_spans(d, m, i, j)) == "obstructed":
            raise ObstructedCommutation("interchange %r is obstructed" % (m,))
        out = _swap_commute(d, m)
        return out, classify_commutation(d, m, _after=out)
    out = apply(d, m)
    label = {"transfer": "Transfer", "birth": "Birth", "death": "Death",
             "saddle": "Saddle", "identity": "Identity"}[m.kind]
    return out, MoveClass(label, 0, None)


def classify(d, m):
    """MoveClass of ``m`` on ``d``; obstructed commutations classify, not raise."""
    if isinstance(m, Commute):
        return classify_commutation(d, m)
    return apply_classified(d, m)[1]


def classify_stabilization(d, m):
    return apply_classified(d, m)[1]


def inverse(d, m):
    """A move undoing ``m`` on ``apply(d, m)``."""
    if isinstance(m, Stab):
        apply(d, m)
        return Destab(m.at, m.corner)
    if isinstance(m, Destab):
        return Stab(_destab_marker(d, m), m.at, m.corner)
    if isinstance(m, Commute):
        apply(d, m)
        return m
    if isinstance(m, Transfer):
        _, _, final = transfer_details(d, m)
        return Transfer(m.second, m.first, final)
    if isinstance(m, Birth):
        _apply_birth(d, m)
        return Death(m.cell[0])
    if isinstance(m, Death):
        _apply_death(d, m)
        return Birth((m.column, d.xs[m.column]))
    if isinstance(m, Saddle):
        apply(d, m)
        flip = ANTI_TO_MAIN if m.direction == MAIN_TO_ANTI else MAIN_TO_ANTI
        return Saddle(m.at, flip, m.marker)
    if isinstance(m, Identity):
        return m
    raise TypeError("not a move: %r" % (m,))


# --------------------------------------------------------------------------
# enumeration

def _stab_candidates(d):
    for c in range(d.n):
        cells = [("X", d.xs[c]), ("O", d.os[c])]
        for marker, r in cells:
            for corner in CORNERS:
                yield Stab(marker, (c, r), corner)


def _destab_candidates(d):
    for c in range(d.n - 1):
        for r in range(d.n - 1):
            for corner in CORNERS:
                m = Destab((c, r), corner)
                try:
                    _destab_marker(d, m)
                except MoveError:
                    continue
                yield m


def _commute_candidates(d, wrap=True):
    for axis in ("cols", "rows"):
        for i in range(d.n - 1):
            yield Commute(axis, i)
        if wrap and d.n >= 2:
            yield Commute(axis, d.n - 1, wrap=True)


def transfer_candidates(d):
    """All valid transfers on ``d`` (each with its crossing filled in)."""
    out = []
    firsts = []
    for m in _commute_candidates(d, wrap=False):
        c = classify_commutation(d, m)
        if c.label == "CommNestedR2" and c.delta == 2:
            firsts.append(m)
    for m1 in firsts:
        d1 = _swap_commute(d, m1)
        other = "rows" if m1.axis == "cols" else "cols"
        for i in range(d.n - 1):
            m2 = Commute(other, i)
            c2 = classify_commutation(d1, m2)
            if c2.label != "CommNestedR2" or c2.delta != -2:
                continue
            try:
                _, p, _ = transfer_details(d, Transfer(m1, m2))
            except TransferNotR2Pair:
                continue
            out.append(Transfer(m1, m2, p))
    return out


def _saddle_candidates(d, markers=("O",)):
    for marker in markers:
        arr = d.os if marker == "O" else d.xs
        for c in range(d.n - 1):
            a, b = arr[c], arr[c + 1]
            if b == a + 1:
                yield Saddle((c, a), MAIN_TO_ANTI, marker)
            elif a == b + 1:
                yield Saddle((c, b), ANTI_TO_MAIN, marker)


def enumerate_moves(d, filter=None, kinds=None, x_saddles=False, wrap=True):
    """All applicable moves on ``d`` whose class passes ``filter``.

    Returns a list of (move, MoveClass) pairs in canonical order.  ``kinds``
    restricts the move kinds considered (e.g. ``{"stab", "commute"}``).
    """
    def want(kind):
        return kinds is None or kind in kinds

    found = []
    gens = []
    if want("stab"):
        gens.append(_stab_candidates(d))
    if want("destab"):
        gens.append(_destab_candidates(d))
    if want("commute"):
        gens.append(_commute_candidates(d, wrap=wrap))
    if want("birth"):
        gens.append(Birth((c, r)) for c in range(d.n + 1) for r in range(d.n + 1))
    if want("death"):
        gens.append(Death(c) for c in range(d.n) if d.is_coincident(c))
    if want("saddle"):
        gens.append(_saddle_candidates(d, ("O", "X") if x_saddles else ("O",)))
    if want("identity"):
        gens.append(iter([Identity()]))
    for gen in gens:
        for m in gen:
            try:
                _, cls = apply_classified(d, m)
            except MoveError:
                continue
            if filter is None or filter(cls):
                found.append((m, cls))
    if want("transfer"):
        for m in transfer_candidates(d):
            cls = MoveClass("Transfer", 0, None)
            if filter is None or filter(cls):
                found.append((m, cls))
    found.sort(key=lambda mc: move_key(mc[0]))
    return found


def planar_moves(d, max_index=None):
    """Planar isotopy steps on ``d`` (list of (move, result)), canonical order."""
    out = []
    allow_stab = max_index is None or d.n + 1 <= max_index
    if allow_stab:
        for m in _stab_candidates(d):
            if d.is_coincident(m.at[0]):
                continue
            res = _apply_stab(d, m)
            if crossing_count(res) == crossing_count(d):
                out.append((m, res))
    base = crossing_count(d)
    for m in _destab_candidates(d):
        res = _apply_destab(d, m)
        if crossing_count(res) == base and not res.is_coincident(m.at[0]):
            out.append((m, res))
    for m in _commute_candidates(d, wrap=False):
        i, j = commute_pair(d, m)
        kind = _nesting(*_spans(d, m, i, j))
        if kind == "obstructed":
            continue
        res = _swap_commute(d, m)
        if kind == "unnested":
            out.append((m, res))
            continue
        if crossing_count(res) == base and separating_count(d, m, kind[1:], i, j) == 0:
            out.append((m, res))
    for m in transfer_candidates(d):
        out.append((m, transfer_details(d, m)[0]))
    out.sort(key=lambda mr: move_key(mr[0]))
    return out


# --------------------------------------------------------------------------
# JSON encoding

def to_dict(m):
    if isinstance(m, Stab):
        return {"kind": "stab", "marker": m.marker, "at": list(m.at), "corner": m.corner}
    if isinstance(m, Destab):
        return {"kind": "destab", "at": list(m.at), "corner": m.corner}
    if isinstance(m, Commute):
        return {"kind": "commute", "axis": m.axis, "index": m.index, "wrap": m.wrap}
    if isinstance(m, Transfer):
        return {"kind": "transfer", "first": to_dict(m.first), "second": to_dict(m.second),
                "crossing": list(m.crossing) if m.crossing is not None else None}
    if isinstance(m, Birth):
        return {"kind": "birth", "cell": list(m.cell)}
    if isinstance(m, Death):
        return {"kind": "death", "column": m.column}
    if isinstance(m, Saddle):
        return {"kind": "saddle", "at": list(m.at), "direction": m.direction, "marker": m.marker}
    if isinstance(m, Identity):
        return {"kind": "identity"}
    raise TypeError("not a move: %r" % (m,))


def from_dict(rec):
    try:
        kind = rec["kind"]
        if kind == "stab":
            return Stab(rec["marker"], tuple(rec["at"]), rec["corner"])
        if kind == "destab":
            return Destab(tuple(rec["at"]), rec["corner"])
        if kind == "commute":
            return Commute(rec["axis"], int(rec["index"]), bool(rec.get("wrap", False)))
        if kind == "transfer":
            cr = rec.get("crossing")
            return Transfer(from_dict(rec["first"]), from_dict(rec["second"]),
                            tuple(cr) if cr is not None else None)
        if kind == "birth":
            return Birth(tuple(rec["cell"]))
        if kind == "death":
            return Death(int(rec["column"]))
        if kind == "saddle":
            return Saddle(tuple(rec["at"]), rec.get("direction", MAIN_TO_ANTI),
                          rec.get("marker", "O"))
        if kind == "identity":
            return Identity()
    except (KeyError, TypeError) as e:
        raise MoveError("malformed move record %r: %s" % (rec, e)) from None
    raise MoveError("unknown move kind %r" % (rec.get("kind"),))


# --------------------------------------------------------------------------
# line bookkeeping (used by movie statistics and move interchange)

def line_maps(d, m):
    """Where each line of ``d`` goes under ``m``.

    Returns ``(colmap, rowmap, n_after)``; entries are new indices, or None
    for lines that are split, merged or deleted by the move.
    """
    n = d.n
    ident = list(range(n))
    if isinstance(m, Stab):
        c, r = m.at
        cm = [j if j < c else j + 1 for j in ident]
        rm = [i if i < r else i + 1 for i in ident]
        cm[c] = rm[r] = None
        return cm, rm, n + 1
    if isinstance(m, Destab):
        c, r = m.at
        cm = [j if j < c else j - 1 for j in ident]
        rm = [i if i < r else i - 1 for i in ident]
        cm[c] = cm[c + 1] = rm[r] = rm[r + 1] = None
        return cm, rm, n - 1
    if isinstance(m, Commute):
        i, j = commute_pair(d, m)
        sw = ident[:]
        sw[i], sw[j] = j, i
        return (sw, ident, n) if m.axis == "cols" else (ident, sw, n)
    if isinstance(m, Transfer):
        c1, r1, _ = line_maps(d, m.first)
        c2, r2, _ = line_maps(_swap_commute(d, m.first), m.second)
        return [c2[v] for v in c1], [r2[v] for v in r1], n
    if isinstance(m, Birth):
        c, r = m.cell
        return [j if j < c else j + 1 for j in ident], [i if i < r else i + 1 for i in ident], n + 1
    if isinstance(m, Death):
        c, r = m.column, d.xs[m.column]
        cm = [j if j < c else j - 1 for j in ident]
        rm = [i if i < r else i - 1 for i in ident]
        cm[c] = rm[r] = None
        return cm, rm, n - 1
    if isinstance(m, (Saddle, Identity)):
        return ident, ident[:], n
    raise TypeError("not a move: %r" % (m,))


def follow_columns(d, m):
    """Column map that keeps every surviving strand's component identity.

    Like :func:`line_maps` but split or merged columns map to the column that
    carries the same strand, so only deleted point components map to None.
    """
    cm = line_maps(d, m)[0]
    if isinstance(m, Stab):
        (ecol, _), _ = _block_cells(m.corner, *m.at)
        cm[m.at[0]] = ecol
    elif isinstance(m, Destab):
        cm[m.at[0]] = cm[m.at[0] + 1] = m.at[0]
    return cm


def support(d, m):
    """Lines of ``d`` whose markers ``m`` reads or rewrites.

    A set of ("col", j) / ("row", i) pairs.  Uniform index shifts caused by
    inserting or deleting lines are not counted.
    """
    out = set()

    def col(c):
        out.add(("col", c))

    def row(r):
        out.add(("row", r))

    def column_rows(c):
        col(c)
        row(d.xs[c])
        row(d.os[c])

    def row_cols(r):
        row(r)
        col(d.x_col[r])
        col(d.o_col[r])

    if isinstance(m, Stab):
        column_rows(m.at[0])
        row_cols(m.at[1])
    elif isinstance(m, (Destab, Saddle)):
        c, r = m.at
        for j in (c, c + 1):
            column_rows(j)
        for i in (r, r + 1):
            row_cols(i)
    elif isinstance(m, Commute):
        for k in commute_pair(d, m):
            column_rows(k) if m.axis == "cols" else row_cols(k)
    elif isinstance(m, Transfer):
        out |= support(d, m.first)
        d1 = _swap_commute(d, m.first)
        back_c, back_r, _ = line_maps(d1, m.first)
        for kind, k in support(d1, m.second):
            out.add((kind, back_c[k] if kind == "col" else back_r[k]))
    elif isinstance(m, Death):
        column_rows(m.column)
    return out


def _insertion(p, mp, n_after):
    """Image of the gap before source line ``p`` (``p`` may equal len(mp))."""
    left = 0 if p == 0 else (mp[p - 1] + 1 if mp[p - 1] is not None else None)
    right = n_after if p == len(mp) else mp[p]
    if left is None or right is None or left != right:
        return None
    return left


def retarget(m, colmap, rowmap, n_after):
    """Re-express ``m`` after a relabelling of lines; None if not well defined."""
    def block(c, r):
        if c + 1 >= len(colmap) or r + 1 >= len(rowmap):
            return None
        cs = (colmap[c], colmap[c + 1])
        rs = (rowmap[r], rowmap[r + 1])
        if None in cs or None in rs or cs[1] != cs[0] + 1 or rs[1] != rs[0] + 1:
            return None
        return cs[0], rs[0]

    if isinstance(m, Stab):
        c, r = colmap[m.at[0]], rowmap[m.at[1]]
        return None if c is None or r is None else Stab(m.marker, (c, r), m.corner)
    if isinstance(m, Destab):
        at = block(*m.at)
        return None if at is None else Destab(at, m.corner)
    if isinstance(m, Saddle):
        at = block(*m.at)
        return None if at is None else Saddle(at, m.direction, m.marker)
    if isinstance(m, Commute):
        mp = colmap if m.axis == "cols" else rowmap
        if m.wrap:
            if mp[0] != 0 or mp[-1] != n_after - 1:
                return None
            return Commute(m.axis, n_after - 1, True)
        a, b = mp[m.index], mp[m.index + 1]
        if a is None or b is None or b != a + 1:
            return None
        return Commute(m.axis, a)
    if isinstance(m, Transfer):
        f = retarget(m.first, colmap, rowmap, n_after)
        s = retarget(m.second, colmap, rowmap, n_after)
        if f is None or s is None:
            return None
        cr = None
        if m.crossing is not None:
            cr = (colmap[m.crossing[0]], rowmap[m.crossing[1]])
            if None in cr:
                return None
        return Transfer(f, s, cr)
    if isinstance(m, Birth):
        c = _insertion(m.cell[0], colmap, n_after)
        r = _insertion(m.cell[1], rowmap, n_after)
        return None if c is None or r is None else Birth((c, r))
    if isinstance(m, Death):
        c = colmap[m.column]
        return None if c is None else Death(c)
    if isinstance(m, Identity):
        return m
    raise TypeError("not a move: %r" % (m,))
