"""Converting piecewise-linear link diagrams into grid diagrams.

Coordinates are exact rationals throughout.  The conversion:

1. finds the double points and checks genericity;
2. puts a small axis-aligned box around each double point (size halved
   until the box meets nothing but its two strands, aspect drawn from the
   seed);
3. inside each box, re-routes the two strands as a plus sign whose vertical
   bar is the overstrand, joined to the box edge by non-crossing
   rectilinear connectors that keep the strands' cyclic order;
4. replaces every remaining piece of segment by a staircase that keeps a
   corner exactly at each polygon vertex;
5. rejects the result if two staircase pieces touch, doubling the number of
   stairs until they do not;
6. ranks vertical runs into columns and horizontal runs into rows.

Corners where a vertical run starts (in travel order) become X's, the
others O's.
"""
import bisect
import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoxPlacementFailure, DegenerateHeights, NonGenericInput, PLError
from .grid import GridDiagram

MAX_REFINE = 9
MAX_BOX_TRIES = 12


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    return Fraction(str(v))


def _pt(p):
    return (_frac(p[0]), _frac(p[1]))


@dataclass(frozen=True)
class PLDiagram:
    """Closed polylines plus, per double point, which segment passes over.

    ``components[i]`` lists the vertices of component ``i`` in travel order
    (the closing edge is implicit).  Segment ``j`` of a component runs from
    vertex ``j`` to vertex ``j + 1``.  ``over`` entries are dicts with keys
    ``at``, ``over_component`` and ``over_segment``.
    """
    components: tuple
    over: tuple = ()

    def __post_init__(self):
        comps = []
        for poly in self.components:
            pts = [_pt(p) for p in poly]
            if len(pts) > 1 and pts[0] == pts[-1]:
                pts.pop()
            comps.append(tuple(pts))
        object.__setattr__(self, "components", tuple(comps))
        over = tuple({"at": _pt(o["at"]), "over_component": int(o["over_component"]),
                      "over_segment": int(o["over_segment"])} for o in self.over)
        object.__setattr__(self, "over", over)

    def segments(self):
        """(component, index, start, end) for every segment."""
        for i, poly in enumerate(self.components):
            k = len(poly)
            for j in range(k):
                yield i, j, poly[j], poly[(j + 1) % k]

    def segment(self, comp, idx):
        poly = self.components[comp]
        return poly[idx], poly[(idx + 1) % len(poly)]

    def to_dict(self):
        return {
            "components": [[[float(x), float(y)] for x, y in poly] for poly in self.components],
            "over": [{"at": [float(o["at"][0]), float(o["at"][1])],
                      "over_component": o["over_component"], "over_segment": o["over_segment"]}
                     for o in self.over],
        }

    @classmethod
    def from_dict(cls, rec):
        try:
            return cls(tuple(rec["components"]), tuple(rec.get("over", ())))
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise PLError("malformed PL diagram: %s" % e) from None

    @classmethod
    def loads(cls, text):
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as e:
            raise PLError("PL diagram is not valid JSON: %s" % e) from None
        return cls.from_dict(rec)


@dataclass(frozen=True)
class DoublePoint:
    at: tuple
    first: tuple      # (component, segment)
    second: tuple
    t_first: Fraction
    t_second: Fraction

    def involves(self, comp, seg):
        return (comp, seg) in (self.first, self.second)


# --------------------------------------------------------------------------
# exact segment geometry

def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _lerp(p, q, t):
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def _sgn(v):
    return (v > 0) - (v < 0)


def _intersect(p1, p2, q1, q2):
    """Intersection of closed segments.

    Returns None, ("point", s, t) with parameters along each segment, or
    ("overlap",) for collinear segments sharing more than a point.
    """
    r, s = _sub(p2, p1), _sub(q2, q1)
    denom = _cross(r, s)
    qp = _sub(q1, p1)
    if denom == 0:
        if _cross(qp, r) != 0:
            return None
        rr = r[0] * r[0] + r[1] * r[1]
        t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
        t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
        if lo > hi:
            return None
        if lo == hi:
            t = lo
            pt = _lerp(p1, p2, t)
            u = (_sub(pt, q1)[0] * s[0] + _sub(pt, q1)[1] * s[1]) / (s[0] * s[0] + s[1] * s[1])
            return ("point", t, u)
        return ("overlap",)
    t = _cross(qp, s) / denom
    u = _cross(qp, r) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return ("point", t, u)
    return None


def find_crossings(p):
    """All double points of ``p``; raises NonGenericInput on degeneracies."""
    for i, poly in enumerate(p.components):
        if len(poly) < 3:
            raise NonGenericInput("component with fewer than 3 vertices", i)
    segs = list(p.segments())
    for ci, j, a, b in segs:
        if a == b:
            raise NonGenericInput("zero-length segment", (ci, j))
    out = []
    for (ci, i, a1, a2), (cj, j, b1, b2) in itertools.combinations(segs, 2):
        if max(a1[0], a2[0]) < min(b1[0], b2[0]) or max(b1[0], b2[0]) < min(a1[0], a2[0]):
            continue
        if max(a1[1], a2[1]) < min(b1[1], b2[1]) or max(b1[1], b2[1]) < min(a1[1], a2[1]):
            continue
        hit = _intersect(a1, a2, b1, b2)
        if hit is None:
            continue
        if hit[0] == "overlap":
            raise NonGenericInput("collinear overlapping segments", ((ci, i), (cj, j)))
        _, t, u = hit
        k = len(p.components[ci])
        adjacent = ci == cj and ((j - i) % k == 1 or (i - j) % k == 1)
        if adjacent:
            shared = (t == 1 and u == 0) or (t == 0 and u == 1)
            if shared and k > 2:
                continue
            raise NonGenericInput("adjacent segments meet away from their common vertex",
                                  ((ci, i), (cj, j)))
        at = _lerp(a1, a2, t)
        if t in (0, 1) or u in (0, 1):
            raise NonGenericInput("vertex on segment", (float(at[0]), float(at[1])))
        out.append(DoublePoint(at, (ci, i), (cj, j), t, u))
    seen = {}
    for dp in out:
        if dp.at in seen:
            raise NonGenericInput("triple point", (float(dp.at[0]), float(dp.at[1])))
        seen[dp.at] = dp
    out.sort(key=lambda dp: (dp.first, dp.t_first))
    return out


def _over_segments(p, dps):
    """For each double point, the (component, segment) passing over."""
    result = {}
    for o in p.over:
        key = (o["over_component"], o["over_segment"])
        cands = [dp for dp in dps if dp.involves(*key)]
        if not cands:
            raise NonGenericInput("over data names no double point", tuple(map(float, o["at"])))
        at = o["at"]
        best = min(cands, key=lambda dp: abs(dp.at[0] - at[0]) + abs(dp.at[1] - at[1]))
        if best.at in result and result[best.at] != key:
            raise NonGenericInput("conflicting over data", tuple(map(float, best.at)))
        result[best.at] = key
    for dp in dps:
        if dp.at not in result:
            raise NonGenericInput("missing over data", (float(dp.at[0]), float(dp.at[1])))
    return result


def pl_crossing_sign(p, dp, over_key):
    """Sign of a PL crossing in the grid convention (cross(over, under))."""
    under_key = dp.second if over_key == dp.first else dp.first
    o1, o2 = p.segment(*over_key)
    u1, u2 = p.segment(*under_key)
    return _sgn(_cross(_sub(o2, o1), _sub(u2, u1)))


def pl_writhe(p):
    dps = find_crossings(p)
    over = _over_segments(p, dps)
    return sum(pl_crossing_sign(p, dp, over[dp.at]) for dp in dps)


# --------------------------------------------------------------------------
# intersection boxes

def _clip(p1, p2, box):
    """Parameter interval of the segment inside the closed box, or None."""
    x0, x1, y0, y1 = box
    t0, t1 = Fraction(0), Fraction(1)
    d = _sub(p2, p1)
    for pk, qk in ((-d[0], p1[0] - x0), (d[0], x1 - p1[0]), (-d[1], p1[1] - y0), (d[1], y1 - p1[1])):
        if pk == 0:
            if qk < 0:
                return None
            continue
        r = qk / pk
        if pk < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    return t0, t1


def _edge(pt, box):
    x0, x1, y0, y1 = box
    on_v = pt[0] in (x0, x1)
    on_h = pt[1] in (y0, y1)
    if on_v and on_h:
        return None
    if pt[0] == x1:
        return "right"
    if pt[0] == x0:
        return "left"
    return "top" if pt[1] == y1 else "bottom"


@dataclass
class _Box:
    dp: DoublePoint
    a: Fraction
    b: Fraction
    over: tuple
    clips: dict = field(default_factory=dict)     # (comp, seg) -> (t_in, t_out)
    paths: dict = field(default_factory=dict)     # (comp, seg) -> local rectilinear path

    @property
    def rect(self):
        px, py = self.dp.at
        return (px - self.a, px + self.a, py - self.b, py + self.b)


def _box_fits(p, segs, dp, box, placed):
    x0, x1, y0, y1 = box
    for poly in p.components:
        for v in poly:
            if x0 <= v[0] <= x1 and y0 <= v[1] <= y1:
                return None
    for q in placed:
        qx0, qx1, qy0, qy1 = q.rect
        if not (x1 < qx0 or qx1 < x0 or y1 < qy0 or qy1 < y0):
            return None
    clips = {}
    for ci, j, a, b in segs:
        c = _clip(a, b, box)
        key = (ci, j)
        if key in (dp.first, dp.second):
            if c is None or _edge(_lerp(a, b, c[0]), box) is None or _edge(_lerp(a, b, c[1]), box) is None:
                return None
            clips[key] = c
        elif c is not None:
            return None
    return clips


_TRACKS = (Fraction(5, 6), Fraction(4, 6), Fraction(3, 6), Fraction(2, 6))
_ARM = Fraction(1, 6)
_ENDS = ("E", "N", "W", "S")


def _ring_param(pt, A, B):
    x, y = pt
    if x == A and -B <= y < B:
        return y + B
    if y == B and -A < x <= A:
        return 2 * B + (A - x)
    if x == -A and -B < y <= B:
        return 2 * B + 2 * A + (B - y)
    return 4 * B + 2 * A + (x + A)


def _end_points(a, b, t):
    A, B = a * t, b * t
    return {"E": (A, Fraction(0)), "N": (Fraction(0), B), "W": (-A, Fraction(0)), "S": (Fraction(0), -B)}


def _clamp(v, lo, hi):
    return max(lo, min(hi, v))


def _connector(P, end, a, b, t, ccw):
    """Rectilinear path (local coords) from box-edge point P to an arm end."""
    A, B = a * t, b * t
    x, y = P
    if x == a:
        Q, Q2 = (A, y), (A, _clamp(y, -B, B))
    elif x == -a:
        Q, Q2 = (-A, y), (-A, _clamp(y, -B, B))
    elif y == b:
        Q, Q2 = (x, B), (_clamp(x, -A, A), B)
    else:
        Q, Q2 = (x, -B), (_clamp(x, -A, A), -B)
    target = _end_points(a, b, t)[end]
    per = 4 * A + 4 * B
    s, tt = _ring_param(Q2, A, B), _ring_param(target, A, B)
    corners = [((A, -B), Fraction(0)), ((A, B), 2 * B), ((-A, B), 2 * B + 2 * A), ((-A, -B), 4 * B + 2 * A)]
    dist = (lambda v: (v - s) % per) if ccw else (lambda v: (s - v) % per)
    passed = sorted((dist(pv), c) for c, pv in corners if 0 < dist(pv) < dist(tt))
    path = [P, Q, Q2] + [c for _, c in passed] + [target, _end_points(a, b, _ARM)[end]]
    out = [path[0]]
    for q in path[1:]:
        if q != out[-1]:
            out.append(q)
    return out


def _segs_of(path):
    return list(zip(path, path[1:]))


def _touch(s1, s2):
    """Points shared by two axis-parallel closed segments (None if disjoint)."""
    hit = _intersect(s1[0], s1[1], s2[0], s2[1])
    if hit is None:
        return None
    if hit[0] == "overlap":
        return "overlap"
    return _lerp(s1[0], s1[1], hit[1])


def _path_clear(path, others, arms, own_end):
    segs = _segs_of(path)
    for i, s in enumerate(segs):
        for s2 in segs[i + 2:]:
            if _touch(s, s2) is not None:
                return False
        for other in others:
            for s2 in _segs_of(other):
                if _touch(s, s2) is not None:
                    return False
        for arm in arms:
            hit = _touch(s, arm)
            if hit is not None and hit != own_end:
                return False
    return True


def _route_box(box, p, rng_unused=None):
    """Connectors inside one box; returns {boundary point: local path} or None."""
    a, b = box.a, box.b
    px, py = box.dp.at
    pts = []          # (local point, (comp, seg), role) ; role in/out
    for key, (t0, t1) in box.clips.items():
        s, e = p.segment(*key)
        for t, role in ((t0, "in"), (t1, "out")):
            g = _lerp(s, e, t)
            pts.append(((g[0] - px, g[1] - py), key, role))
    per = 4 * a + 4 * b
    ordered = sorted(pts, key=lambda q: _ring_param(q[0], a, b))
    dir_param = {"E": b, "N": 2 * b + a, "W": 3 * b + 2 * a, "S": 4 * b + 3 * a}
    choices = []
    for k in range(4):
        assign = {}
        ok = True
        cost = Fraction(0)
        for i, (q, key, role) in enumerate(ordered):
            end = _ENDS[(i + k) % 4]
            if (key == box.over) != (end in ("N", "S")):
                ok = False
                break
            assign[i] = end
            d = (_ring_param(q, a, b) - dir_param[end]) % per
            cost += min(d, per - d)
        if ok:
            choices.append((cost, k, assign))
    choices.sort(key=lambda c: (c[0], c[1]))
    ends = _end_points(a, b, _ARM)
    arms = [(ends["S"], ends["N"]), (ends["W"], ends["E"])]
    for _, _, assign in choices:
        best = None
        for perm in itertools.permutations(range(4)):
            for dirs in itertools.product((True, False), repeat=4):
                paths = [_connector(ordered[i][0], assign[i], a, b, _TRACKS[perm[i]], dirs[i])
                         for i in range(4)]
                ok = all(_path_clear(paths[i], paths[i + 1:], arms, ends[assign[i]])
                         for i in range(4))
                if not ok:
                    continue
                length = sum(abs(u[0] - v[0]) + abs(u[1] - v[1])
                             for path in paths for u, v in _segs_of(path))
                if best is None or length < best[0]:
                    best = (length, paths)
        if best is not None:
            conn = {}
            for i, (q, key, role) in enumerate(ordered):
                conn[(key, role)] = best[1][i]
            out = {}
            for key in box.clips:
                inward = conn[(key, "in")]
                outward = list(reversed(conn[(key, "out")]))
                out[key] = [(x + px, y + py) for x, y in inward + outward]
            return out
    return None


def _place_boxes(p, dps, over, rng):
    segs = list(p.segments())
    xs = [v[0] for poly in p.components for v in poly]
    ys = [v[1] for poly in p.components for v in poly]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    boxes = []
    for dp in dps:
        for _ in range(MAX_BOX_TRIES):
            alpha = Fraction(rng.randint(3, 6), 4)
            beta = Fraction(rng.randint(3, 6), 4)
            s = span / 4
            clips = None
            for _ in range(80):
                box = (dp.at[0] - s * alpha, dp.at[0] + s * alpha,
                       dp.at[1] - s * beta, dp.at[1] + s * beta)
                clips = _box_fits(p, segs, dp, box, boxes)
                if clips is not None:
                    break
                s /= 2
            if clips is None:
                continue
            bx = _Box(dp, s * alpha, s * beta, over[dp.at], clips)
            paths = _route_box(bx, p)
            if paths is not None:
                bx.paths = paths
                boxes.append(bx)
                break
        else:
            raise BoxPlacementFailure("no intersection box found around %s"
                                      % ((float(dp.at[0]), float(dp.at[1])),))
    return boxes


# --------------------------------------------------------------------------
# staircases

H, V = "H", "V"


def _axis_type(a, b):
    if a[1] == b[1]:
        return H
    if a[0] == b[0]:
        return V
    return None


def _vertex_types(poly):
    """(arrive type, leave type) at each vertex."""
    k = len(poly)
    out = []
    for i in range(k):
        prev, v, nxt = poly[i - 1], poly[i], poly[(i + 1) % k]
        t1, t2 = _axis_type(prev, v), _axis_type(v, nxt)
        if t1 is not None and t2 is not None:
            out.append((t1, t2))
        elif t1 is not None:
            out.append((t1, V if t1 == H else H))
        elif t2 is not None:
            out.append((V if t2 == H else H, t2))
        else:
            r1, r2 = _sub(prev, v), _sub(nxt, v)
            same = _sgn(r1[0]) == _sgn(r2[0]) and _sgn(r1[1]) == _sgn(r2[1])
            if same and abs(r1[1]) * abs(r2[0]) < abs(r2[1]) * abs(r1[0]):
                out.append((H, V))       # hairpin: leaving ray is the steeper one
            elif same:
                out.append((V, H))
            else:
                out.append((V, H))
    return out


def _staircase(S, E, ts, te, m):
    if S[0] == E[0] or S[1] == E[1]:
        return [S, E]
    X = lambda t: S[0] + (E[0] - S[0]) * t
    Y = lambda t: S[1] + (E[1] - S[1]) * t
    pts = [S]
    cx, cy = S
    if ts != te:
        for i in range(1, m + 1):
            t = Fraction(i, m)
            if ts == H:
                pts += [(X(t), cy), (X(t), Y(t))]
            else:
                pts += [(cx, Y(t)), (X(t), Y(t))]
            cx, cy = X(t), Y(t)
        return pts
    for i in range(m):
        u, w = Fraction(2 * i + 1, 2 * m), Fraction(i + 1, m)
        if ts == H:
            pts += [(X(u), cy), (X(u), Y(w))]
            cx, cy = X(u), Y(w)
        else:
            pts += [(cx, Y(u)), (X(w), Y(u))]
            cx, cy = X(w), Y(u)
    pts.append(E)
    return pts


def _edge_type(pt, box):
    return H if _edge(pt, box) in ("left", "right") else V


def _component_path(p, ci, boxes_by_seg, m):
    poly = p.components[ci]
    types = _vertex_types(poly)
    path = []
    k = len(poly)
    for j in range(k):
        s, e = poly[j], poly[(j + 1) % k]
        cur, cur_t = s, types[j][1]
        for box in sorted(boxes_by_seg.get((ci, j), ()), key=lambda bx: bx.clips[(ci, j)][0]):
            t0, _ = box.clips[(ci, j)]
            entry = _lerp(s, e, t0)
            path += _staircase(cur, entry, cur_t, _edge_type(entry, box.rect), m)[:-1]
            gadget = box.paths[(ci, j)]
            path += gadget[:-1]
            cur = gadget[-1]
            cur_t = _edge_type(cur, box.rect)
        path += _staircase(cur, e, cur_t, types[(j + 1) % k][0], m)[:-1]
    return path


def _simplify(path):
    """Drop repeated and straight-through points; None on backtracking."""
    pts = list(path)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if b == a:
                changed = True
                continue
            if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
                if (b[0] - a[0]) * (c[0] - b[0]) < 0 or (b[1] - a[1]) * (c[1] - b[1]) < 0:
                    return None
                changed = True
                continue
            out.append(b)
        pts = out
    if len(pts) < 4 or len(pts) % 2:
        return None
    return pts


def _runs(paths):
    """Split closed corner paths into horizontal and vertical runs."""
    hs, vs = [], []
    order = 0
    for ci, pts in enumerate(paths):
        k = len(pts)
        for i in range(k):
            a, b = pts[i], pts[(i + 1) % k]
            rec = {"comp": ci, "idx": i, "len": k, "a": a, "b": b, "order": order}
            order += 1
            if a[1] == b[1]:
                hs.append(rec)
            elif a[0] == b[0]:
                vs.append(rec)
            else:
                raise PLError("internal: non-rectilinear run")
    return hs, vs


def _consecutive(r1, r2):
    if r1["comp"] != r2["comp"]:
        return False
    d = (r1["idx"] - r2["idx"]) % r1["len"]
    return d in (1, r1["len"] - 1)


def _clean(hs, vs, crossing_points):
    """True if runs meet only at path corners and the designated crossings."""
    for runs, fixed in ((hs, 1), (vs, 0)):
        free = 1 - fixed
        groups = {}
        for r in runs:
            groups.setdefault(r["a"][fixed], []).append(r)
        for group in groups.values():
            spans = sorted((min(r["a"][free], r["b"][free]), max(r["a"][free], r["b"][free]))
                           for r in group)
            for (lo1, hi1), (lo2, hi2) in zip(spans, spans[1:]):
                if lo2 <= hi1:
                    return False
    vs_sorted = sorted(vs, key=lambda r: r["a"][0])
    vx = [r["a"][0] for r in vs_sorted]
    for h in hs:
        y = h["a"][1]
        x_lo, x_hi = sorted((h["a"][0], h["b"][0]))
        for v in vs_sorted[bisect.bisect_left(vx, x_lo):bisect.bisect_right(vx, x_hi)]:
            y_lo, y_hi = sorted((v["a"][1], v["b"][1]))
            if not y_lo <= y <= y_hi:
                continue
            q = (v["a"][0], y)
            corner = q in (h["a"], h["b"]) and q in (v["a"], v["b"])
            if corner and _consecutive(h, v):
                continue
            interior = x_lo < q[0] < x_hi and y_lo < y < y_hi
            if interior and q in crossing_points:
                continue
            return False
    return True


def _to_grid(paths):
    hs, vs = _runs(paths)
    col = {id(r): c for c, r in enumerate(sorted(vs, key=lambda r: (r["a"][0], r["order"])))}
    row = {id(r): c for c, r in enumerate(sorted(hs, key=lambda r: (r["a"][1], r["order"])))}
    by_pos = {(r["comp"], r["idx"]): r for r in hs + vs}
    n = len(vs)
    xs, os_ = [None] * n, [None] * n
    for v in vs:
        k = v["len"]
        before = by_pos[(v["comp"], (v["idx"] - 1) % k)]
        after = by_pos[(v["comp"], (v["idx"] + 1) % k)]
        xs[col[id(v)]] = row[id(before)]
        os_[col[id(v)]] = row[id(after)]
    return GridDiagram(tuple(xs), tuple(os_)), hs, vs, col, row


@dataclass
class ImportReport:
    grid: GridDiagram
    seed: int
    refinements: int
    stairs: int
    crossings: list
    extrema: list = field(default_factory=list)
    rotation: int = 0

    def to_dict(self):
        return {
            "n": self.grid.n, "xs": list(self.grid.xs), "os": list(self.grid.os),
            "seed": self.seed, "rotation": self.rotation, "refinements": self.refinements,
            "stairs": self.stairs, "crossings": self.crossings, "extrema": self.extrema,
        }


def _gridify(p, seed):
    dps = find_crossings(p)
    over = _over_segments(p, dps)
    rng = random.Random(seed)
    boxes = _place_boxes(p, dps, over, rng)
    by_seg = {}
    for bx in boxes:
        for key in bx.clips:
            by_seg.setdefault(key, []).append(bx)
    cross_pts = {dp.at for dp in dps}
    for attempt in range(MAX_REFINE):
        m = 2 ** attempt
        paths = [_simplify(_component_path(p, ci, by_seg, m)) for ci in range(len(p.components))]
        if any(pt is None for pt in paths):
            continue
        hs, vs = _runs(paths)
        if not _clean(hs, vs, cross_pts):
            continue
        grid, hs, vs, col, row = _to_grid(paths)
        crossings = []
        for dp in dps:
            x, y = dp.at
            c = next(col[id(v)] for v in vs if v["a"][0] == x
                     and min(v["a"][1], v["b"][1]) < y < max(v["a"][1], v["b"][1]))
            r = next(row[id(h)] for h in hs if h["a"][1] == y
                     and min(h["a"][0], h["b"][0]) < x < max(h["a"][0], h["b"][0]))
            crossings.append({"at": [float(x), float(y)], "cell": [c, r],
                              "over": list(over[dp.at]),
                              "sign": pl_crossing_sign(p, dp, over[dp.at])})
        return ImportReport(grid, seed, attempt, m, crossings), hs, row
    raise BoxPlacementFailure("staircases still touch after %d refinements" % MAX_REFINE)


def gridify(p, seed=0, report=False):
    """Grid diagram of a generic PL diagram (optionally with a run report)."""
    rep, _, _ = _gridify(p, seed)
    return (rep.grid, rep) if report else rep.grid


def _extrema(p):
    found = []
    for ci, poly in enumerate(p.components):
        k = len(poly)
        for i in range(k):
            prev, v, nxt = poly[i - 1], poly[i], poly[(i + 1) % k]
            if v[1] == nxt[1]:
                before, after = prev[1] - v[1], poly[(i + 2) % k][1] - v[1]
                if before * after > 0:
                    raise DegenerateHeights("horizontal edge at an extremum of component %d" % ci)
            if (prev[1] - v[1]) * (nxt[1] - v[1]) > 0:
                found.append((v, "max" if v[1] > prev[1] else "min", ci, i))
    heights = [v[1] for v, _, _, _ in found]
    if len(set(heights)) != len(heights):
        raise DegenerateHeights("two extrema share a height")
    return found


def gridify_with_height(p, seed=0, report=False):
    """As :func:`gridify`, also placing each height extremum on its own row.

    The rows of the extrema appear bottom to top in the order of their
    heights; the report lists them.
    """
    ext = _extrema(p)
    rep, hs, row = _gridify(p, seed)
    for v, kind, ci, i in sorted(ext, key=lambda e: e[0][1]):
        r = next(row[id(h)] for h in hs if v in (h["a"], h["b"]))
        rep.extrema.append({"at": [float(v[0]), float(v[1])], "kind": kind,
                            "component": ci, "vertex": i, "row": r})
    return (rep.grid, rep) if report else rep.grid
