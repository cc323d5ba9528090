"""Acceptance checks, one per criterion.

Each check returns (passed, detail).  Under pytest every check is a test and
its PASS/FAIL line is printed in the terminal summary; running this file
directly prints the same lines.
"""
import random
import time

import pytest

from gridmovie import moves as mv
from gridmovie.arcword import net_turn, reduce_arcword, reduce_in_order
from gridmovie.errors import AmbiguousRetarget, OverlappingSupport
from gridmovie.grid import EMPTY, crossing_count, crossings, trace, transpose, writhe
from gridmovie.moves import ANTI_TO_MAIN, Birth, Commute, Death, Destab, Saddle, Stab
from gridmovie.movie import GridMovie, interchange_distant, stats, validate_movie
from gridmovie.plimport import gridify, pl_writhe
from gridmovie.search import SearchBudget, bfs_equivalent, verify_certificate
from gridmovie.templates import boundary_class_filter

from conftest import (
    HOPF_FREE, P_BEFORE, R2_PAIR, R3_GRID, TRANSFER, TRANSFER_BASE, TRANSFER_STAB, TREFOIL,
    random_diagram,
)
from pl_inputs import FIGURE_EIGHT, SQUARE, TREFOIL as PL_TREFOIL
from test_templates import filter_fixture

RESULTS = {}

_COMPONENT_DELTA = {"Birth": {1}, "Death": {-1}, "Saddle": {1, -1}}
_SEED_PAIR = (0, 4)


def _record(num, title, ok, detail):
    RESULTS[num] = "[%s] %d. %s: %s" % ("PASS" if ok else "FAIL", num, title, detail)
    return ok, detail


# 1 ------------------------------------------------------------------------

def check_move_algebra():
    rng = random.Random(1)
    t0 = time.perf_counter()
    total = bad = 0
    for _ in range(2000):
        d = random_diagram(rng, 8)
        cc, comps = crossing_count(d), len(trace(d))
        for m, cls in mv.enumerate_moves(d, x_saddles=True):
            total += 1
            e = mv.apply(d, m)
            ok = mv.apply(e, mv.inverse(d, m)) == d
            if isinstance(m, Commute):
                ok &= mv.apply(e, m) == d
            ok &= crossing_count(e) - cc == cls.delta
            ok &= (len(trace(e)) - comps) in _COMPONENT_DELTA.get(cls.label, {0})
            bad += not ok
    secs = time.perf_counter() - t0
    return _record(1, "move algebra", bad == 0 and secs < 30,
                   "%d moves, %d violations, %.1fs (target < 30s)" % (total, bad, secs))


# 2 ------------------------------------------------------------------------

def _oracle(d, axis, i):
    """(class, delta, k) from spans and crossings() alone."""
    g = d if axis == "cols" else transpose(d)
    a, b = sorted(g.col_span(i)), sorted(g.col_span(i + 1))
    ends = {a[0], a[1]} & {b[0], b[1]}
    (lo1, hi1), (lo2, hi2) = sorted([a, b])
    if ends or lo1 < lo2 < hi1 < hi2:
        return ("CommObstructed", 0, None)
    before = {(k.column, k.row) for k in crossings(g)}
    swapped = list(range(g.n))
    swapped[i], swapped[i + 1] = i + 1, i
    h = type(g)(tuple(g.xs[c] for c in swapped), tuple(g.os[c] for c in swapped))
    delta = len(crossings(h)) - len(before)
    if hi1 < lo2:
        return ("CommUnnested", delta, 0)
    k = sum(1 for r in range(g.n) if (i, r) in before and (i + 1, r) in before)
    if delta == 0:
        return ("CommNestedP" if k == 0 else "CommNestedR3", delta, k)
    return ("CommNestedR2" if k == 0 else "CommComposite", delta, k)


def check_classification_oracle():
    rng = random.Random(2)
    total = bad = 0
    for _ in range(2000):
        d = random_diagram(rng, 6)
        for axis in ("cols", "rows"):
            for i in range(d.n - 1):
                c = mv.classify_commutation(d, Commute(axis, i))
                total += 1
                bad += (c.label, c.delta, c.separating) != _oracle(d, axis, i)
    witnesses = [
        (HOPF_FREE, ("CommUnnested", 0, 0)), (P_BEFORE, ("CommNestedP", 0, 0)),
        (R2_PAIR, ("CommNestedR2", -2, 0)), (R3_GRID, ("CommNestedR3", 0, 1)),
    ]
    wit_ok = all(
        (lambda c: (c.label, c.delta, c.separating) == want)(
            mv.classify_commutation(d, Commute("cols", 1)))
        for d, want in witnesses)
    return _record(2, "classification vs oracle", bad == 0 and wit_ok,
                   "%d interchanges, %d mismatches, witnesses %s"
                   % (total, bad, "exact" if wit_ok else "WRONG"))


# 3 ------------------------------------------------------------------------

def check_arcwords():
    rng = random.Random(3)
    bad = 0
    for _ in range(10_000):
        w = "".join(rng.choice("LR") for _ in range(rng.randint(1, 20)))
        r = reduce_arcword(w)
        bad += reduce_arcword(r) != r
        bad += reduce_in_order(w, rng) != r
        bad += net_turn(r) != net_turn(w)
    fig = reduce_arcword("RLLRRL")
    return _record(3, "arcwords", bad == 0 and fig == "I",
                   "RLLRRL -> %s, %d failures over 10000 words" % (fig, bad))


# 4 ------------------------------------------------------------------------

def check_transfer():
    rng = random.Random(4)
    seen = bad = 0
    for _ in range(3000):
        d = random_diagram(rng, 6, 4)
        for m in mv.transfer_candidates(d):
            try:
                e, p, final = mv.transfer_details(d, m)
            except mv.MoveError:
                continue
            seen += 1
            signs = {(k.column, k.row): k.sign for k in crossings(d)}
            signs2 = {(k.column, k.row): k.sign for k in crossings(e)}
            ok = crossing_count(e) == crossing_count(d)
            ok &= d.vertical_direction(p[0]) == -e.vertical_direction(final[0])
            ok &= signs[p] == signs2[final]
            bad += not ok
    movie = GridMovie(TRANSFER_BASE, (TRANSFER_STAB, TRANSFER, Destab((0, 1), "NW")))
    labels = [c.label for c in validate_movie(movie)]
    planar = all(mv.is_planar_isotopy_step(c) for c in validate_movie(movie))
    return _record(4, "transfer contract", seen > 0 and bad == 0 and planar,
                   "%d transfers, %d violations; stab/transfer/destab sequence %s"
                   % (seen, bad, "/".join(labels)))


# 5 ------------------------------------------------------------------------

def check_planar_invariants():
    rng = random.Random(5)
    total = bad = 0
    for _ in range(1000):
        d = random_diagram(rng, 7)
        inv = (len(trace(d)), crossing_count(d), writhe(d))
        for _, e in mv.planar_moves(d):
            total += 1
            bad += (len(trace(e)), crossing_count(e), writhe(e)) != inv
    return _record(5, "planar invariants", total > 0 and bad == 0,
                   "%d planar steps, %d changed an invariant" % (total, bad))


# 6 ------------------------------------------------------------------------

def check_pl_import():
    u = gridify(SQUARE)
    unknot_ok = (len(trace(u)), crossing_count(u)) == (1, 0)
    t, rep = gridify(PL_TREFOIL, report=True)
    signs = {(k.column, k.row): k.sign for k in crossings(t)}
    over_ok = {tuple(c["cell"]): c["sign"] for c in rep.crossings} == signs
    tref_ok = (len(trace(t)), crossing_count(t), abs(writhe(t))) == (1, 3, 3) and over_ok
    tref_ok &= writhe(t) == pl_writhe(PL_TREFOIL)
    t0 = time.perf_counter()
    a, b = (gridify(FIGURE_EIGHT, seed=s) for s in _SEED_PAIR)
    budget = SearchBudget(max_grid_index=max(a.n, b.n) + 3, max_moves=12)
    cert = bfs_equivalent(a, b, budget)
    secs = time.perf_counter() - t0
    seeds_ok = cert is not None and bool(verify_certificate(cert)) and secs < 60
    detail = "unknot %s, trefoil n=%d writhe %d %s, seeds %s differ=%s certificate %s in %.1fs" % (
        "ok" if unknot_ok else "WRONG", t.n, writhe(t), "ok" if tref_ok else "WRONG",
        _SEED_PAIR, a != b, "none" if cert is None else "length %d" % len(cert.moves), secs)
    return _record(6, "PL import", unknot_ok and tref_ok and seeds_ok, detail)


# 7 ------------------------------------------------------------------------

def check_movie_stats():
    sphere = stats(GridMovie(EMPTY, (Birth((0, 0)), Death(0))))
    torus = stats(GridMovie(EMPTY, (
        Birth((0, 0)), Stab("X", (0, 0), "NW"), Saddle((0, 0), ANTI_TO_MAIN),
        Saddle((0, 0)), Destab((0, 0), "NW"), Death(0))))
    annulus_movie = GridMovie(TREFOIL, (Stab("X", (0, 4), "NW"), Destab((0, 4), "NW")))
    annulus = stats(annulus_movie)
    ok = (sphere.euler_characteristic, sphere.genus) == (2, 0)
    ok &= (torus.births, torus.saddles, torus.deaths) == (1, 2, 1)
    ok &= (torus.euler_characteristic, torus.genus, torus.connected, torus.closed) == (0, 1, True, True)
    ok &= (annulus.boundary_circles, annulus.euler_characteristic) == (2, 0)
    ok &= annulus_movie.final == TREFOIL
    return _record(7, "movie statistics", ok,
                   "sphere chi=%d g=%s; torus chi=%d g=%s; trefoil annulus circles=%d chi=%d" % (
                       sphere.euler_characteristic, sphere.genus, torus.euler_characteristic,
                       torus.genus, annulus.boundary_circles, annulus.euler_characteristic))


# 8 ------------------------------------------------------------------------

def check_move31():
    rng = random.Random(8)
    movies = bad = tries = 0
    while movies < 200 and tries < 20_000:
        tries += 1
        start = random_diagram(rng, 5, 3)
        steps, d = [], start
        for _ in range(rng.randint(2, 5)):
            options = [m for m, c in mv.enumerate_moves(d, wrap=False)
                       if c.label not in ("CommObstructed", "CommComposite", "Identity")]
            m = rng.choice(options)
            steps.append(m)
            d = mv.apply(d, m)
        movie = GridMovie(start, tuple(steps))
        for i in range(len(steps) - 1):
            try:
                swapped = interchange_distant(movie, i)
            except (OverlappingSupport, AmbiguousRetarget):
                continue
            movies += 1
            ok = interchange_distant(swapped, i) == movie
            ok &= swapped.final == movie.final
            ok &= stats(swapped) == stats(movie)
            bad += not ok
            break
    return _record(8, "move 31", movies == 200 and bad == 0,
                   "%d movies with a swappable pair, %d failures" % (movies, bad))


# 9 ------------------------------------------------------------------------

def check_boundary_filters():
    ts = filter_fixture()
    crit = lambda t, keys: any(t.critical.get(k) for k in keys)
    boundary = boundary_class_filter(ts, "Boundary")
    planar = boundary_class_filter(ts, "PlanarBoundary")
    ok = not any(crit(t, ("births", "deaths", "saddles")) for t in boundary)
    ok &= not any(crit(t, ("births", "deaths", "saddles", "r1", "r2", "r3")) for t in planar)
    ok &= any(t.critical["transfer"] for t in planar)
    return _record(9, "boundary filters", ok,
                   "%d templates; Boundary keeps %s, PlanarBoundary keeps %s"
                   % (len(ts), [t.id for t in boundary], [t.id for t in planar]))


CHECKS = [
    check_move_algebra, check_classification_oracle, check_arcwords, check_transfer,
    check_planar_invariants, check_pl_import, check_movie_stats, check_move31,
    check_boundary_filters,
]


@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__[6:] for c in CHECKS])
def test_criterion(check):
    ok, detail = check()
    assert ok, detail


if __name__ == "__main__":
    for check in CHECKS:
        check()
    for num in sorted(RESULTS):
        print(RESULTS[num])
