"""Movie-move templates: windows into stills and local movie rewriting.

A template is a pair of fragments.  A fragment is a list of entries
``(SubDiagram, move)`` where the move is written in window coordinates and
leads from that entry's sub-diagram to the next one; the last entry carries
no move.  Matching a fragment against a movie ignores Identity steps.

Template file (JSON)::

    {"version": 1, "templates": [
        {"id": 7,
         "left":  [{"subdiagram": {...}, "move": {...}}, ..., {"subdiagram": {...}, "move": null}],
         "right": [...],
         "symmetry": {"hreflect": true, "vreflect": false, "crossing_swap": false, "time_reversal": true},
         "critical": {"births": 0, "deaths": 0, "saddles": 1, "r1": 0, "r2": 0, "r3": 0, "transfer": 0}}
    ]}

A bare JSON array of template records is read as version 1.
"""
import itertools
import json
from dataclasses import dataclass, field, replace
from importlib import resources

from .errors import MoveError, NoMatch, ResultInvalid, SchemaError, StepInvalid
from . import moves as mv
from .movie import GridMovie, validate_movie

SCHEMA_VERSION = 1
SIDES = ("left", "right", "bottom", "top")
CRITICAL_KEYS = ("births", "deaths", "saddles", "r1", "r2", "r3", "transfer")
SYMMETRY_KEYS = ("hreflect", "vreflect", "crossing_swap", "time_reversal")


@dataclass(frozen=True)
class SubDiagram:
    """A rectangular window: markers and the strands crossing its edges.

    ``markers`` holds (kind, column, row) triples relative to the window
    origin.  ``boundary_arcs`` holds (side, offset, direction) triples where
    offset is the column (bottom/top) or row (left/right) inside the window
    and direction is "in" or "out".
    """
    extent: tuple
    markers: frozenset
    boundary_arcs: frozenset
    origin: tuple = field(default=(0, 0), compare=False)

    def to_dict(self):
        return {
            "origin": list(self.origin),
            "extent": list(self.extent),
            "markers": [{"kind": k, "at": [c, r]} for k, c, r in sorted(self.markers)],
            "boundary_arcs": [{"side": s, "offset": o, "direction": d}
                              for s, o, d in sorted(self.boundary_arcs)],
        }

    @classmethod
    def from_dict(cls, rec):
        try:
            extent = tuple(int(v) for v in rec["extent"])
            markers = frozenset((m["kind"], int(m["at"][0]), int(m["at"][1]))
                                for m in rec.get("markers", []))
            arcs = frozenset((a["side"], int(a["offset"]), a["direction"])
                             for a in rec.get("boundary_arcs", []))
            origin = tuple(rec.get("origin", (0, 0)))
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise SchemaError("malformed subdiagram: %s" % e) from None
        w, h = extent
        for k, c, r in markers:
            if k not in ("X", "O") or not (0 <= c < w and 0 <= r < h):
                raise SchemaError("marker %s at %r outside %dx%d window" % (k, (c, r), w, h))
        for s, o, d in arcs:
            if s not in SIDES or d not in ("in", "out"):
                raise SchemaError("bad boundary arc %r" % ((s, o, d),))
        return cls(extent, markers, arcs, origin)

    def marker_cells(self, kind=None):
        return {(c, r) for k, c, r in self.markers if kind is None or k == kind}


def extract_subdiagram(d, origin, extent):
    """The window of ``d`` with lower-left cell ``origin`` and size ``extent``."""
    c0, r0 = origin
    w, h = extent
    if c0 < 0 or r0 < 0 or w < 0 or h < 0 or c0 + w > d.n or r0 + h > d.n:
        raise NoMatch("window %r+%r outside grid of index %d" % (origin, extent, d.n))
    cols = range(c0, c0 + w)
    rows = range(r0, r0 + h)
    markers = set()
    for c in cols:
        if d.xs[c] in rows:
            markers.add(("X", c - c0, d.xs[c] - r0))
        if d.os[c] in rows:
            markers.add(("O", c - c0, d.os[c] - r0))
    arcs = set()
    top, right = r0 + h - 1, c0 + w - 1
    for c in cols:
        lo, hi = d.col_span(c)
        up = d.os[c] > d.xs[c]
        if lo < r0 <= hi:
            arcs.add(("bottom", c - c0, "in" if up else "out"))
        if lo <= top < hi:
            arcs.add(("top", c - c0, "out" if up else "in"))
    for r in rows:
        lo, hi = d.row_span(r)
        rightward = d.x_col[r] > d.o_col[r]
        if lo < c0 <= hi:
            arcs.add(("left", r - r0, "in" if rightward else "out"))
        if lo <= right < hi:
            arcs.add(("right", r - r0, "out" if rightward else "in"))
    return SubDiagram((w, h), frozenset(markers), frozenset(arcs), (c0, r0))


# --------------------------------------------------------------------------
# moves in window coordinates

def _size_delta(m):
    if isinstance(m, (mv.Stab, mv.Birth)):
        return 1
    if isinstance(m, (mv.Destab, mv.Death)):
        return -1
    return 0


def translate(m, dc, dr):
    """Shift a move's coordinates by (dc, dr)."""
    if isinstance(m, mv.Stab):
        return mv.Stab(m.marker, (m.at[0] + dc, m.at[1] + dr), m.corner)
    if isinstance(m, mv.Destab):
        return mv.Destab((m.at[0] + dc, m.at[1] + dr), m.corner)
    if isinstance(m, mv.Saddle):
        return mv.Saddle((m.at[0] + dc, m.at[1] + dr), m.direction, m.marker)
    if isinstance(m, mv.Commute):
        if m.wrap:
            raise SchemaError("wrap-around interchanges cannot appear in a template")
        return mv.Commute(m.axis, m.index + (dc if m.axis == "cols" else dr))
    if isinstance(m, mv.Transfer):
        cr = None if m.crossing is None else (m.crossing[0] + dc, m.crossing[1] + dr)
        return mv.Transfer(translate(m.first, dc, dr), translate(m.second, dc, dr), cr)
    if isinstance(m, mv.Birth):
        return mv.Birth((m.cell[0] + dc, m.cell[1] + dr))
    if isinstance(m, mv.Death):
        return mv.Death(m.column + dc)
    return m


def _support_inside(d, m, origin, extent):
    c0, r0 = origin
    w, h = extent
    for kind, k in mv.support(d, m):
        lo, size = (c0, w) if kind == "col" else (r0, h)
        if not lo <= k < lo + size:
            return False
    return True


# --------------------------------------------------------------------------
# templates

@dataclass(frozen=True)
class MovieMoveTemplate:
    id: int
    left: tuple
    right: tuple
    symmetry: dict = field(default_factory=dict, compare=False, hash=False)
    critical: dict = field(default_factory=dict, compare=False, hash=False)
    variant: str = field(default="", compare=False)

    @property
    def boundary_class(self):
        c = self.critical
        if c.get("births") or c.get("deaths") or c.get("saddles"):
            return "Interior"
        if c.get("r1") or c.get("r2") or c.get("r3"):
            return "Boundary"
        return "PlanarBoundary"

    def to_dict(self):
        def frag(entries):
            return [{"subdiagram": s.to_dict(), "move": None if m is None else mv.to_dict(m)}
                    for s, m in entries]
        return {"id": self.id, "variant": self.variant, "left": frag(self.left),
                "right": frag(self.right), "symmetry": dict(self.symmetry),
                "critical": dict(self.critical)}


def _parse_fragment(entries, tid, side):
    if not isinstance(entries, list) or not entries:
        raise SchemaError("template %s: %s fragment must be a non-empty list" % (tid, side))
    out = []
    for k, e in enumerate(entries):
        try:
            sub = SubDiagram.from_dict(e["subdiagram"])
            rec = e.get("move")
        except (KeyError, TypeError, AttributeError) as err:
            raise SchemaError("template %s: bad %s entry %d: %s" % (tid, side, k, err)) from None
        last = k == len(entries) - 1
        if last != (rec is None):
            raise SchemaError("template %s: only the last %s entry may omit its move" % (tid, side))
        try:
            m = None if rec is None else mv.from_dict(rec)
        except MoveError as err:
            raise SchemaError("template %s: %s" % (tid, err)) from None
        out.append((sub, m))
    for (s, m), (s2, _) in zip(out, out[1:]):
        dn = _size_delta(m)
        if (s.extent[0] + dn, s.extent[1] + dn) != s2.extent:
            raise SchemaError("template %s: window extents do not follow move %r" % (tid, m))
    return tuple(out)


def _check_template(t):
    if t.left[0][0] != t.right[0][0] or t.left[-1][0] != t.right[-1][0]:
        raise SchemaError("template %s: left and right fragments have different endpoints" % t.id)


def parse_template(rec):
    if not isinstance(rec, dict) or "id" not in rec:
        raise SchemaError("template record needs an id")
    tid = rec["id"]
    left = _parse_fragment(rec.get("left"), tid, "left")
    right = _parse_fragment(rec.get("right"), tid, "right")
    sym = rec.get("symmetry") or {}
    crit = rec.get("critical")
    if not isinstance(sym, dict) or set(sym) - set(SYMMETRY_KEYS):
        raise SchemaError("template %s: symmetry keys must be among %s" % (tid, SYMMETRY_KEYS))
    if not isinstance(crit, dict) or set(crit) - set(CRITICAL_KEYS):
        raise SchemaError("template %s: critical must be an object with keys among %s"
                          % (tid, CRITICAL_KEYS))
    crit = {k: int(crit.get(k, 0)) for k in CRITICAL_KEYS}
    t = MovieMoveTemplate(tid, left, right, {k: bool(sym.get(k)) for k in SYMMETRY_KEYS}, crit)
    _check_template(t)
    return t


# symmetry operations on sub-diagrams and window moves

_HFLIP = {"NW": "SW", "SW": "NW", "NE": "SE", "SE": "NE"}
_VFLIP = {"NW": "NE", "NE": "NW", "SW": "SE", "SE": "SW"}
_TFLIP = {"NW": "SE", "SE": "NW", "NE": "NE", "SW": "SW"}
_FLIP_DIR = {mv.MAIN_TO_ANTI: mv.ANTI_TO_MAIN, mv.ANTI_TO_MAIN: mv.MAIN_TO_ANTI}
_OTHER = {"X": "O", "O": "X"}


def _reflect_rows_sub(s):
    w, h = s.extent
    side = {"bottom": "top", "top": "bottom", "left": "left", "right": "right"}
    arcs = {(side[sd], o if sd in ("bottom", "top") else h - 1 - o, dr)
            for sd, o, dr in s.boundary_arcs}
    return SubDiagram(s.extent, frozenset((k, c, h - 1 - r) for k, c, r in s.markers),
                      frozenset(arcs))


def _reflect_rows_move(m, h):
    if isinstance(m, mv.Stab):
        return mv.Stab(m.marker, (m.at[0], h - 1 - m.at[1]), _HFLIP[m.corner])
    if isinstance(m, mv.Destab):
        return mv.Destab((m.at[0], h - 2 - m.at[1]), _HFLIP[m.corner])
    if isinstance(m, mv.Saddle):
        return mv.Saddle((m.at[0], h - 2 - m.at[1]), _FLIP_DIR[m.direction], m.marker)
    if isinstance(m, mv.Commute):
        return m if m.axis == "cols" else mv.Commute("rows", h - 2 - m.index)
    if isinstance(m, mv.Transfer):
        cr = None if m.crossing is None else (m.crossing[0], h - 1 - m.crossing[1])
        return mv.Transfer(_reflect_rows_move(m.first, h), _reflect_rows_move(m.second, h), cr)
    if isinstance(m, mv.Birth):
        return mv.Birth((m.cell[0], h - m.cell[1]))
    return m


def _transpose_sub(s):
    w, h = s.extent
    side = {"left": "bottom", "bottom": "left", "right": "top", "top": "right"}
    return SubDiagram((h, w), frozenset((_OTHER[k], r, c) for k, c, r in s.markers),
                      frozenset((side[sd], o, dr) for sd, o, dr in s.boundary_arcs))


def _transpose_move(m, sub):
    if isinstance(m, mv.Stab):
        return mv.Stab(_OTHER[m.marker], m.at[::-1], _TFLIP[m.corner])
    if isinstance(m, mv.Destab):
        return mv.Destab(m.at[::-1], _TFLIP[m.corner])
    if isinstance(m, mv.Saddle):
        return mv.Saddle(m.at[::-1], m.direction, _OTHER[m.marker])
    if isinstance(m, mv.Commute):
        return mv.Commute("rows" if m.axis == "cols" else "cols", m.index)
    if isinstance(m, mv.Transfer):
        cr = None if m.crossing is None else m.crossing[::-1]
        return mv.Transfer(_transpose_move(m.first, sub), _transpose_move(m.second, sub), cr)
    if isinstance(m, mv.Birth):
        return mv.Birth(m.cell[::-1])
    if isinstance(m, mv.Death):
        return mv.Death(_death_row(m, sub))
    return m


def _death_row(m, sub):
    xs = {c: r for k, c, r in sub.markers if k == "X"}
    os_ = {c: r for k, c, r in sub.markers if k == "O"}
    if xs.get(m.column) is None or xs.get(m.column) != os_.get(m.column):
        raise SchemaError("death at window column %d has no coincident pair" % m.column)
    return xs[m.column]


def _local_inverse(m, before):
    """Inverse of a window move, using the sub-diagram it is applied to."""
    if isinstance(m, mv.Stab):
        return mv.Destab(m.at, m.corner)
    if isinstance(m, mv.Destab):
        (ec, _), (oc, orow) = mv._block_cells(m.corner, *m.at)
        kinds = {k for k, c, r in before.markers if (c, r) == (ec, orow)}
        if len(kinds) != 1:
            raise SchemaError("destabilization block at %r is incomplete" % (m.at,))
        return mv.Stab(kinds.pop(), m.at, m.corner)
    if isinstance(m, mv.Saddle):
        return mv.Saddle(m.at, _FLIP_DIR[m.direction], m.marker)
    if isinstance(m, mv.Transfer):
        return mv.Transfer(m.second, m.first, None)
    if isinstance(m, mv.Birth):
        return mv.Death(m.cell[0])
    if isinstance(m, mv.Death):
        return mv.Birth((m.column, _death_row(m, before)))
    return m


def _map_fragment(frag, sub_fn, move_fn):
    return tuple((sub_fn(s), None if m is None else move_fn(m, s)) for s, m in frag)


def _reflect_rows(frag):
    return _map_fragment(frag, _reflect_rows_sub, lambda m, s: _reflect_rows_move(m, s.extent[1]))


def _reflect_cols(frag):
    # reflecting columns = transpose, reflect rows, transpose back
    return _transpose(_reflect_rows(_transpose(frag)))


def _transpose(frag):
    return _map_fragment(frag, _transpose_sub, _transpose_move)


def _reverse(frag):
    subs = [s for s, _ in frag]
    out = []
    for k in range(len(frag) - 1, 0, -1):
        out.append((subs[k], _local_inverse(frag[k - 1][1], subs[k - 1])))
    out.append((subs[0], None))
    return tuple(out)


_OPS = {
    "hreflect": lambda f: _reflect_rows(f),
    "vreflect": lambda f: _reflect_cols(f),
    "crossing_swap": lambda f: _transpose(f),
    "time_reversal": lambda f: _reverse(f),
}


def symmetry_closure(t):
    """All variants of ``t`` generated by its enabled symmetry flags."""
    flags = [k for k in SYMMETRY_KEYS if t.symmetry.get(k)]
    seen = {}
    for r in range(len(flags) + 1):
        for combo in itertools.combinations(flags, r):
            left, right = t.left, t.right
            for k in combo:
                left, right = _OPS[k](left), _OPS[k](right)
            key = (left, right)
            if key not in seen:
                seen[key] = replace(t, left=left, right=right, variant="+".join(combo))
    return list(seen.values())


def load_templates(source=None, closure=True):
    """Read a template file (path, JSON text, or parsed data).

    With ``source=None`` the packaged data file is read.
    """
    if source is None:
        text = resources.files("gridmovie").joinpath("data/movie_moves.json").read_text()
        data = json.loads(text)
    elif isinstance(source, (list, dict)):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith(("[", "{")):
            with open(text) as fh:
                text = fh.read()
        if not text.strip():
            return []
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError("template file is not valid JSON: %s" % e) from None
    if isinstance(data, dict):
        if data.get("version") != SCHEMA_VERSION:
            raise SchemaError("unsupported template schema version %r" % data.get("version"))
        data = data.get("templates", [])
    if not isinstance(data, list):
        raise SchemaError("template file must hold a list of templates")
    out = []
    for rec in data:
        t = parse_template(rec)
        out.extend(symmetry_closure(t) if closure else [t])
    return out


# --------------------------------------------------------------------------
# matching and rewriting

def _non_identity(movie, start):
    """Indices of non-Identity steps from ``start`` on."""
    return [i for i in range(start, len(movie.steps))
            if not isinstance(movie.steps[i], mv.Identity)]


def match_fragment(movie, frag, step, origin):
    """Return the index one past the last matched step, or raise NoMatch."""
    stills = movie.stills
    frag = [(s, m) for s, m in frag if not isinstance(m, mv.Identity)]
    idx = _non_identity(movie, step)
    if len(idx) < len(frag) - 1:
        raise NoMatch("movie too short for the fragment at step %d" % step)
    c0, r0 = origin
    pos = step
    for k, (sub, m) in enumerate(frag):
        d = stills[pos]
        if extract_subdiagram(d, origin, sub.extent) != sub:
            raise NoMatch("still %d differs from the fragment inside the window" % pos)
        if m is None:
            break
        j = idx[k]
        if j != pos and any(not isinstance(s, mv.Identity) for s in movie.steps[pos:j]):
            raise NoMatch("unexpected step inside the fragment")
        if movie.steps[j] != translate(m, c0, r0):
            raise NoMatch("step %d is not the fragment's move %r" % (j, m))
        if not _support_inside(stills[j], movie.steps[j], origin, sub.extent):
            raise NoMatch("step %d reaches outside the window" % j)
        pos = j + 1
    return pos


def apply_movie_move(movie, t, at, direction="forward"):
    """Replace an occurrence of ``t.left`` (or ``t.right``) by the other side.

    ``at`` is ``(step index, window origin)``.
    """
    step, origin = at[0], tuple(at[1])
    src, dst = (t.left, t.right) if direction == "forward" else (t.right, t.left)
    end = match_fragment(movie, src, step, origin)
    new_steps = tuple(translate(m, *origin) for _, m in dst if m is not None
                      and not isinstance(m, mv.Identity))
    out = GridMovie(movie.initial, movie.steps[:step] + new_steps + movie.steps[end:])
    try:
        validate_movie(out, permit_composite=True, allow_x_saddle=True)
    except StepInvalid as e:
        raise ResultInvalid("rewritten movie is invalid: %s" % e) from e
    if out.stills[step + len(new_steps)] != movie.stills[end]:
        raise ResultInvalid("rewrite changes the diagram outside the window")
    try:
        match_fragment(out, dst, step, origin)
    except NoMatch as e:
        raise ResultInvalid("rewritten fragment does not reproduce the template: %s" % e) from e
    return out


def fragment_from_movie(movie, start, stop, origin, extent):
    """Cut steps ``start:stop`` of a movie into a window fragment."""
    c0, r0 = origin
    w, h = extent
    stills = movie.stills
    out = []
    for j in range(start, stop + 1):
        sub = extract_subdiagram(stills[j], origin, (w, h))
        m = None if j == stop else translate(movie.steps[j], -c0, -r0)
        out.append((replace(sub, origin=(0, 0)), m))
        if m is not None:
            dn = _size_delta(m)
            w, h = w + dn, h + dn
    return tuple(out)


def boundary_class_filter(templates, mode):
    """Templates admissible for movies of the given boundary mode.

    ``closed`` keeps everything; ``boundary`` drops templates with births,
    deaths or saddles; ``planar`` additionally drops R1/R2/R3 content while
    keeping transfers.
    """
    mode = {"Closed": "closed", "Boundary": "boundary", "PlanarBoundary": "planar"}.get(mode, mode)
    if mode not in ("closed", "boundary", "planar"):
        raise ValueError("mode must be closed, boundary or planar")
    out = []
    for t in templates:
        c = t.critical
        if mode != "closed" and (c.get("births") or c.get("deaths") or c.get("saddles")):
            continue
        if mode == "planar" and (c.get("r1") or c.get("r2") or c.get("r3")):
            continue
        out.append(t)
    return out
