"""Bounded search for grid planar isotopies.

The search runs breadth-first from both ends at once over planar steps
(kink stabilizations and destabilizations, un-nested and P interchanges,
transfers).  States are the (xs, os) pair verbatim.  Component count,
crossing count and writhe are preserved by every planar step, so diagrams
that differ in any of them are reported as distinct without searching.
"""
from dataclasses import dataclass

from .arcword import grid_arc, grid_arcword, net_turn
from .errors import (
    BudgetExhausted, EndpointMismatch, MoveError, NetTurnMismatch, ObstructedByOtherArcs,
)
from .grid import crossing_count, trace, writhe
from . import moves as mv


@dataclass(frozen=True)
class SearchBudget:
    max_grid_index: int = 12
    max_moves: int = 8
    max_states: int = 200_000

    def __post_init__(self):
        if min(self.max_grid_index, self.max_moves, self.max_states) <= 0:
            raise ValueError("search budget entries must be positive")


@dataclass(frozen=True)
class IsotopyCertificate:
    start: object
    end: object
    moves: tuple

    def to_dict(self):
        return {
            "start": {"n": self.start.n, "xs": list(self.start.xs), "os": list(self.start.os)},
            "end": {"n": self.end.n, "xs": list(self.end.xs), "os": list(self.end.os)},
            "moves": [mv.to_dict(m) for m in self.moves],
        }


@dataclass(frozen=True)
class Verification:
    ok: bool
    index: int = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def invariants(d):
    return len(trace(d)), crossing_count(d), writhe(d)


def distinct_by_invariant(a, b):
    """Name of the first planar invariant that differs, or None."""
    for name, x, y in zip(("components", "crossings", "writhe"), invariants(a), invariants(b)):
        if x != y:
            return name
    return None


def _path(parents, state):
    moves = []
    while parents[state] is not None:
        prev, m = parents[state]
        moves.append(m)
        state = prev
    moves.reverse()
    return moves


def _key_seq(moves):
    return [mv.move_key(m) for m in moves]


def bfs_equivalent(a, b, budget=None):
    """Shortest planar certificate from ``a`` to ``b`` within ``budget``.

    Returns an IsotopyCertificate, or None when the diagrams differ in a
    planar invariant or no certificate exists among diagrams of index at
    most ``budget.max_grid_index``.  Raises BudgetExhausted when the move or
    state limit is reached first.
    """
    budget = budget or SearchBudget()
    if a == b:
        return IsotopyCertificate(a, b, ())
    if distinct_by_invariant(a, b):
        return None
    if a.n > budget.max_grid_index or b.n > budget.max_grid_index:
        raise BudgetExhausted("endpoint exceeds the grid-index bound", 0, 0)

    fwd, bwd = {a: None}, {b: None}
    depth = {True: {a: 0}, False: {b: 0}}
    frontier = {True: [a], False: [b]}
    levels = {True: 0, False: 0}
    cache = {}

    def expand(d):
        if d not in cache:
            cache[d] = mv.planar_moves(d, budget.max_grid_index)
        return cache[d]

    while frontier[True] and frontier[False]:
        if levels[True] + levels[False] >= budget.max_moves:
            raise BudgetExhausted("move bound reached", len(fwd) + len(bwd),
                                  levels[True] + levels[False])
        side = len(frontier[True]) <= len(frontier[False])
        seen, other = (fwd, bwd) if side else (bwd, fwd)
        nxt = []
        meets = []
        for d in frontier[side]:
            for m, e in expand(d):
                if e in seen:
                    continue
                seen[e] = (d, m)
                depth[side][e] = levels[side] + 1
                nxt.append(e)
                if e in other:
                    meets.append(e)
                if len(fwd) + len(bwd) > budget.max_states:
                    raise BudgetExhausted("state bound reached", len(fwd) + len(bwd),
                                          levels[True] + levels[False] + 1)
        levels[side] += 1
        frontier[side] = nxt
        if meets:
            best = None
            for e in meets:
                head = _path(fwd, e)
                tail = []
                state = e
                while bwd[state] is not None:
                    prev, m = bwd[state]
                    tail.append(mv.inverse(prev, m))
                    state = prev
                cert = head + tail
                key = (len(cert), _key_seq(cert))
                if best is None or key < best[0]:
                    best = (key, cert)
            return IsotopyCertificate(a, b, tuple(best[1]))
    return None


def search_isotopy(a, b, budget=None):
    """Outcome record used by the command line: status plus details."""
    reason = distinct_by_invariant(a, b)
    if reason:
        return {"status": "distinct", "reason": "%s differ" % reason}
    try:
        cert = bfs_equivalent(a, b, budget)
    except BudgetExhausted as e:
        return {"status": "exhausted", "states": e.states, "depth": e.depth, "reason": str(e)}
    if cert is None:
        return {"status": "distinct", "reason": "no certificate within the grid-index bound"}
    return {"status": "found", "certificate": cert.to_dict()}


def verify_certificate(cert):
    """Replay a certificate; every step must be a planar step."""
    d = cert.start
    for i, m in enumerate(cert.moves):
        try:
            d, cls = mv.apply_classified(d, m)
        except MoveError as e:
            return Verification(False, i, "%s: %s" % (type(e).__name__, e))
        if not mv.is_planar_isotopy_step(cls):
            return Verification(False, i, "%s is not a planar step" % cls.label)
    if d != cert.end:
        return Verification(False, len(cert.moves), "replay does not reach the end diagram")
    return Verification(True)


# --------------------------------------------------------------------------
# arc alignment

def _contains_path(d, cells):
    cells = list(cells)
    k = len(cells)
    for comp in trace(d):
        ms = comp.markers
        if len(ms) < k:
            continue
        for i in range(len(ms)):
            if ms[i] == cells[0] and all(ms[(i + j) % len(ms)] == cells[j] for j in range(k)):
                return True
    return False


def align_arcs(a, arc_a, b, arc_b, budget=None):
    """Planar moves on ``a`` after which it contains arc ``arc_b`` of ``b``.

    Arcs are (start marker cell, end marker cell) pairs on their diagrams.
    Turn counts are matched by kink (de)stabilizations and turn positions by
    interchanges; whatever sequence is shortest is found by breadth-first
    search, which also handles clearing other arcs out of the way.
    """
    budget = budget or SearchBudget(max_grid_index=max(a.n, b.n) + 2, max_moves=6,
                                    max_states=50_000)
    word_a = grid_arcword(a, *arc_a)
    word_b = grid_arcword(b, *arc_b)
    if net_turn(word_a) != net_turn(word_b):
        raise NetTurnMismatch("net turns %d and %d differ" % (net_turn(word_a), net_turn(word_b)))
    path_a, path_b = grid_arc(a, *arc_a), grid_arc(b, *arc_b)
    if a.n == b.n and (path_a[0] != path_b[0] or path_a[-1] != path_b[-1]):
        raise EndpointMismatch("arc endpoints %r and %r differ"
                               % ((path_a[0], path_a[-1]), (path_b[0], path_b[-1])))
    if path_a == path_b:
        return []
    parents = {a: None}
    frontier = [a]
    for depth in range(budget.max_moves):
        nxt = []
        for d in frontier:
            for m, e in mv.planar_moves(d, budget.max_grid_index):
                if e in parents:
                    continue
                parents[e] = (d, m)
                if e.n == b.n and _contains_path(e, path_b):
                    return _path(parents, e)
                nxt.append(e)
                if len(parents) > budget.max_states:
                    raise ObstructedByOtherArcs("arc alignment exceeded %d states" % budget.max_states)
        frontier = nxt
        if not frontier:
            break
    raise ObstructedByOtherArcs("no alignment within %d planar moves" % budget.max_moves)
