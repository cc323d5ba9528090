"""Grid movies: move-list storage, validation, surface statistics, move 31.

A movie is an initial diagram plus an ordered list of moves; the stills are
re-derived on demand.  Steps are validated one at a time, so the first bad
step is reported with its index.
"""
import json
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    AmbiguousRetarget, GridMovieError, IndexOutOfRange, LevelCountMismatch,
    MoveError, MovieError, NonPlanarWitness, OverlappingSupport, SchemaError,
    StepInvalid,
)
from .grid import EMPTY, GridDiagram, parse, trace
from . import moves as mv


@dataclass(frozen=True)
class GridMovie:
    initial: GridDiagram
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @cached_property
    def stills(self):
        out = [self.initial]
        for i, m in enumerate(self.steps):
            try:
                out.append(mv.apply(out[-1], m))
            except MoveError as e:
                raise StepInvalid(i, e) from e
        return tuple(out)

    @property
    def final(self):
        return self.stills[-1]

    def __len__(self):
        return len(self.steps)

    def to_dict(self):
        d = self.initial
        return {"initial": {"n": d.n, "xs": list(d.xs), "os": list(d.os)},
                "steps": [mv.to_dict(m) for m in self.steps]}

    @classmethod
    def from_dict(cls, rec):
        try:
            init = rec.get("initial")
            if init is None:
                d = EMPTY
            elif isinstance(init, str):
                d = parse(init)
            else:
                d = GridDiagram(tuple(init["xs"]), tuple(init["os"]))
            steps = [mv.from_dict(s) for s in rec.get("steps", [])]
        except (KeyError, TypeError, AttributeError, MoveError) as e:
            raise SchemaError("malformed movie record: %s" % e) from None
        return cls(d, tuple(steps))

    def dumps(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def loads(cls, text):
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError("movie is not valid JSON: %s" % e) from None
        if not isinstance(rec, dict):
            raise SchemaError("movie must be a JSON object")
        return cls.from_dict(rec)


def validate_movie(movie, permit_composite=False, allow_x_saddle=False):
    """Classify every step; raise StepInvalid at the first unacceptable one."""
    classes = []
    d = movie.initial
    for i, m in enumerate(movie.steps):
        if isinstance(m, mv.Saddle) and m.marker == "X" and not allow_x_saddle:
            raise StepInvalid(i, "X-marker saddle not enabled")
        try:
            if isinstance(m, mv.Commute):
                cls = mv.classify_commutation(d, m)
                if cls.label == "CommObstructed":
                    raise StepInvalid(i, "CommObstructed")
                d2 = mv.apply(d, m)
            else:
                d2, cls = mv.apply_classified(d, m)
        except MoveError as e:
            raise StepInvalid(i, e) from e
        if cls.label == "CommComposite" and not permit_composite:
            raise StepInvalid(i, "CommComposite")
        classes.append(cls)
        d = d2
    return classes


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def roots(self):
        return {self.find(x) for x in self.parent}


@dataclass(frozen=True)
class MovieStats:
    births: int
    deaths: int
    saddles: int
    euler_characteristic: int
    component_timeline: tuple = field(compare=False)
    surface_pieces: int
    boundary_circles: int
    closed: bool
    connected: bool
    genus: object = None
    classes: tuple = field(default=(), compare=False)

    def to_dict(self):
        return {
            "births": self.births, "deaths": self.deaths, "saddles": self.saddles,
            "euler_characteristic": self.euler_characteristic,
            "component_timeline": list(self.component_timeline),
            "surface_pieces": self.surface_pieces,
            "boundary_circles": self.boundary_circles,
            "closed": self.closed, "connected": self.connected, "genus": self.genus,
        }


def _column_components(d):
    out = [0] * d.n
    comps = trace(d)
    for k, comp in enumerate(comps):
        for c in comp.columns:
            out[c] = k
    return out, len(comps)


def stats(movie, permit_composite=False, allow_x_saddle=False):
    classes = validate_movie(movie, permit_composite, allow_x_saddle)
    stills = movie.stills
    labels = [c.label for c in classes]
    b, dth, s = labels.count("Birth"), labels.count("Death"), labels.count("Saddle")
    chi = b + dth - s

    uf = _UnionFind()
    owners = []
    timeline = []
    for t, d in enumerate(stills):
        own, k = _column_components(d)
        owners.append(own)
        timeline.append(k)
        for j in range(k):
            uf.add((t, j))
    for t, m in enumerate(movie.steps):
        fmap = mv.follow_columns(stills[t], m)
        for c, c2 in enumerate(fmap):
            if c2 is not None:
                uf.union((t, owners[t][c]), (t + 1, owners[t + 1][c2]))
    pieces = len(uf.roots())
    closed = stills[0].n == 0 and stills[-1].n == 0
    connected = pieces == 1
    genus = None
    if closed and connected:
        genus = (2 - chi) // 2
    return MovieStats(b, dth, s, chi, tuple(timeline), pieces,
                      timeline[0] + timeline[-1], closed, connected, genus, tuple(classes))


def pad_still(movie, index):
    """Duplicate still ``index`` by inserting an Identity step after it."""
    if not 0 <= index <= len(movie.steps):
        raise IndexOutOfRange("still %d outside movie with %d stills" % (index, len(movie.steps) + 1))
    steps = list(movie.steps)
    steps.insert(index, mv.Identity())
    return GridMovie(movie.initial, tuple(steps))


def is_movie_isotopy(a, b, level_isotopies):
    """Check a level-wise planar isotopy witness from movie ``a`` to ``b``."""
    sa, sb = a.stills, b.stills
    if len(sa) != len(sb):
        raise LevelCountMismatch("movies have %d and %d stills" % (len(sa), len(sb)))
    if len(level_isotopies) != len(sa):
        raise LevelCountMismatch("%d witnesses for %d levels" % (len(level_isotopies), len(sa)))
    for level, (d, target, witness) in enumerate(zip(sa, sb, level_isotopies)):
        for k, m in enumerate(witness):
            try:
                d, cls = mv.apply_classified(d, m)
            except MoveError as e:
                raise NonPlanarWitness(level, k, type(e).__name__) from e
            if not mv.is_planar_isotopy_step(cls):
                raise NonPlanarWitness(level, k, cls.label)
        if d != target:
            return False
    return True


def _overlap(sup_a, sup_b):
    return bool(sup_a & sup_b)


def _inverse_map(mp, n_src):
    inv = [None] * n_src
    for old, new in enumerate(mp):
        if new is not None:
            inv[new] = old
    return inv


def interchange_distant(movie, i):
    """Swap steps ``i`` and ``i + 1`` when they act on disjoint lines."""
    if not 0 <= i < len(movie.steps) - 1:
        raise IndexOutOfRange("no adjacent step pair at %d" % i)
    stills = movie.stills
    d0, d1, d2 = stills[i], stills[i + 1], stills[i + 2]
    g, h = movie.steps[i], movie.steps[i + 1]

    gc, gr, _ = mv.line_maps(d0, g)
    inv_c, inv_r = _inverse_map(gc, d1.n), _inverse_map(gr, d1.n)
    sup_g = mv.support(d0, g)
    sup_h = set()
    for kind, k in mv.support(d1, h):
        back = (inv_c if kind == "col" else inv_r)[k]
        if back is None:
            raise OverlappingSupport("step %d uses a line created by step %d" % (i + 1, i))
        sup_h.add((kind, back))
    if _overlap(sup_g, sup_h):
        raise OverlappingSupport("steps %d and %d touch common lines %s"
                                 % (i, i + 1, sorted(sup_g & sup_h)))

    h2 = mv.retarget(h, inv_c, inv_r, d0.n)
    if h2 is None:
        raise AmbiguousRetarget("step %d cannot be moved before step %d" % (i + 1, i))
    try:
        e = mv.apply(d0, h2)
    except MoveError as err:
        raise AmbiguousRetarget("retargeted step %d does not apply: %s" % (i + 1, err)) from err
    if _overlap(sup_g, mv.support(d0, h2)):
        raise OverlappingSupport("steps %d and %d touch common lines" % (i, i + 1))
    hc, hr, n_e = mv.line_maps(d0, h2)
    g2 = mv.retarget(g, hc, hr, n_e)
    if g2 is None:
        raise AmbiguousRetarget("step %d cannot be moved after step %d" % (i, i + 1))
    try:
        end = mv.apply(e, g2)
    except MoveError as err:
        raise AmbiguousRetarget("retargeted step %d does not apply: %s" % (i, err)) from err
    if end != d2:
        raise AmbiguousRetarget("reordered steps do not reproduce still %d" % (i + 2))
    steps = list(movie.steps)
    steps[i], steps[i + 1] = h2, g2
    return GridMovie(movie.initial, tuple(steps))


def concatenate(a, b):
    if a.final != b.initial:
        raise MovieError("last still of the first movie differs from the first still of the second")
    return GridMovie(a.initial, a.steps + b.steps)


__all__ = [
    "GridMovie", "MovieStats", "validate_movie", "stats", "pad_still",
    "is_movie_isotopy", "interchange_distant", "concatenate", "GridMovieError",
]
