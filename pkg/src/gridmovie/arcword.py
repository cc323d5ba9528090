"""Arcwords: the L/R turn sequence of a rectilinear arc.

Arcwords are plain strings over ``{"L", "R"}``; the empty word is spelled
``"I"`` and ``"I"`` never appears next to other letters.
"""
import random

from .grid import trace

IDENTITY = "I"


def _check(word):
    if word == IDENTITY:
        return ""
    if not set(word) <= {"L", "R"}:
        raise ValueError("arcword letters must be L or R (or the lone I): %r" % word)
    return word


def _norm(letters):
    return letters if letters else IDENTITY


def turn(d_in, d_out):
    """'L' or 'R' for a quarter turn from direction ``d_in`` to ``d_out``."""
    z = d_in[0] * d_out[1] - d_in[1] * d_out[0]
    if z > 0:
        return "L"
    if z < 0:
        return "R"
    raise ValueError("consecutive segments %r, %r do not turn" % (d_in, d_out))


def _sgn(v):
    return (v > 0) - (v < 0)


def arcword(path):
    """Arcword of a path given as a sequence of corner points.

    Consecutive points must differ in exactly one coordinate.  Collinear
    segments in the same direction contribute no letter; a reversal is an
    error.
    """
    pts = [tuple(p) for p in path]
    dirs = []
    for a, b in zip(pts, pts[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        if (dx == 0) == (dy == 0):
            raise ValueError("segment %r -> %r is not axis-parallel" % (a, b))
        dirs.append((_sgn(dx), _sgn(dy)))
    return _norm("".join(turn(u, v) for u, v in zip(dirs, dirs[1:]) if u != v))


def reduce_arcword(word):
    """Delete adjacent LR / RL pairs, leftmost first, until none remain."""
    stack = []
    for ch in _check(word):
        if stack and stack[-1] != ch:
            stack.pop()
        else:
            stack.append(ch)
    return _norm("".join(stack))


def reduce_in_order(word, rng=None):
    """Reference reduction deleting a randomly chosen cancelling pair each step.

    Used as a confluence oracle for :func:`reduce_arcword`.
    """
    rng = rng or random.Random(0)
    letters = list(_check(word))
    while True:
        spots = [i for i in range(len(letters) - 1) if letters[i] != letters[i + 1]]
        if not spots:
            return _norm("".join(letters))
        i = rng.choice(spots)
        del letters[i:i + 2]


def net_turn(word):
    """Signed quarter-turn total (L = +1, R = -1) reduced modulo 4."""
    letters = _check(word)
    return (letters.count("L") - letters.count("R")) % 4


def grid_arc(d, start, end):
    """Corner cells of the oriented arc from marker ``start`` to marker ``end``.

    Both are (column, row) marker cells on the same non-degenerate component;
    the walk follows the component orientation and includes both endpoints.
    """
    start, end = tuple(start), tuple(end)
    for comp in trace(d):
        if comp.degenerate or start not in comp.markers:
            continue
        ms = comp.markers
        i = ms.index(start)
        out = [start]
        k = len(ms)
        for step in range(1, k + 1):
            cell = ms[(i + step) % k]
            out.append(cell)
            if cell == end:
                return out
        break
    raise ValueError("no arc from %r to %r" % (start, end))


def grid_arcword(d, start, end):
    return arcword(grid_arc(d, start, end))
