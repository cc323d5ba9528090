import json

import pytest

from gridmovie import moves as mv
from gridmovie.errors import NoMatch, SchemaError
from gridmovie.grid import GridDiagram
from gridmovie.moves import ANTI_TO_MAIN, Commute, Saddle
from gridmovie.movie import GridMovie, interchange_distant, validate_movie
from gridmovie.templates import (
    MovieMoveTemplate, SYMMETRY_KEYS, apply_movie_move, boundary_class_filter,
    extract_subdiagram, fragment_from_movie, load_templates, match_fragment, parse_template,
    symmetry_closure,
)

from conftest import P_BEFORE, R3_GRID, TRANSFER, TRANSFER_BASE, TRANSFER_STAB

LADDER = GridDiagram((0, 1, 2, 3, 4, 5, 6, 7), (1, 0, 3, 2, 5, 4, 7, 6))
SPLIT = GridDiagram((1, 3, 0, 2), (0, 1, 2, 3))
NO_CRITICAL = dict.fromkeys(("births", "deaths", "saddles", "r1", "r2", "r3", "transfer"), 0)


def template_record(tid, left_steps, right_steps, start, critical=None, symmetry=None):
    """Template whose window is all of ``start``."""
    ext = (start.n, start.n)
    left = GridMovie(start, left_steps)
    right = GridMovie(start, right_steps)
    t = MovieMoveTemplate(
        tid,
        fragment_from_movie(left, 0, len(left_steps), (0, 0), ext),
        fragment_from_movie(right, 0, len(right_steps), (0, 0), ext),
        symmetry or {},
        dict(NO_CRITICAL, **(critical or {})),
    )
    return t.to_dict()


def move31_record(symmetry=None):
    a, b = Commute("cols", 1), Commute("cols", 5)
    return template_record(31, (a, b), (b, a), LADDER, symmetry=symmetry)


def test_packaged_set_loads():
    assert load_templates() == []


def test_empty_file(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    assert load_templates(str(p)) == []
    assert load_templates(json.dumps({"version": 1, "templates": []})) == []


def test_wrong_version():
    with pytest.raises(SchemaError):
        load_templates({"version": 7, "templates": []})


def test_time_reversal_gives_both_directions():
    ts = load_templates([move31_record({"time_reversal": True})])
    assert sorted(t.variant for t in ts) == ["", "time_reversal"]


def test_endpoints_must_agree():
    rec = template_record(1, (Commute("cols", 1),), (), P_BEFORE)
    with pytest.raises(SchemaError):
        parse_template(rec)


def test_critical_metadata_required():
    rec = move31_record()
    del rec["critical"]
    with pytest.raises(SchemaError):
        parse_template(rec)


def test_identity_template_leaves_movie_unchanged():
    a = Commute("cols", 1)
    t = parse_template(template_record(0, (a,), (a,), LADDER))
    movie = GridMovie(LADDER, (a,))
    assert apply_movie_move(movie, t, (0, (0, 0))) == movie


def test_move31_template_matches_interchange():
    (t,) = load_templates([move31_record()])
    movie = GridMovie(LADDER, (Commute("cols", 1), Commute("cols", 5)))
    assert apply_movie_move(movie, t, (0, (0, 0))) == interchange_distant(movie, 0)
    assert apply_movie_move(apply_movie_move(movie, t, (0, (0, 0))), t, (0, (0, 0)),
                            direction="backward") == movie


def test_wrong_origin_does_not_match():
    (t,) = load_templates([move31_record()])
    movie = GridMovie(LADDER, (Commute("cols", 1), Commute("cols", 5)))
    with pytest.raises(NoMatch):
        apply_movie_move(movie, t, (0, (1, 0)))


def test_matching_skips_identity_steps():
    (t,) = load_templates([move31_record()])
    movie = GridMovie(LADDER, (Commute("cols", 1), mv.Identity(), Commute("cols", 5)))
    assert match_fragment(movie, t.left, 0, (0, 0)) == 3


def _diagram_of(sub):
    w, _ = sub.extent
    xs, os = [None] * w, [None] * w
    for kind, c, r in sub.markers:
        (xs if kind == "X" else os)[c] = r
    return GridDiagram(tuple(xs), tuple(os))


def test_every_symmetry_variant_is_realizable():
    (base,) = load_templates([move31_record()], closure=False)
    sym = dict.fromkeys(SYMMETRY_KEYS, True)
    variants = symmetry_closure(MovieMoveTemplate(31, base.left, base.right, sym, base.critical))
    assert len(variants) == 16
    for t in variants:
        start = _diagram_of(t.left[0][0])
        steps = tuple(m for _, m in t.left if m is not None)
        movie = GridMovie(start, steps)
        validate_movie(movie)
        out = apply_movie_move(movie, t, (0, (0, 0)))
        assert out.final == movie.final


def test_extract_window_boundary_arcs():
    sub = extract_subdiagram(P_BEFORE, (1, 1), (2, 2))
    assert sub.extent == (2, 2)
    assert all(side in ("left", "right", "bottom", "top") for side, _, _ in sub.boundary_arcs)
    with pytest.raises(NoMatch):
        extract_subdiagram(P_BEFORE, (3, 3), (2, 2))


# boundary filters --------------------------------------------------------

def filter_fixture():
    d = mv.apply(TRANSFER_BASE, TRANSFER_STAB)
    back = mv.inverse(d, TRANSFER)
    c = Commute("cols", 1)
    recs = [
        template_record(1, (Saddle((1, 1)), Saddle((1, 1), ANTI_TO_MAIN)), (), SPLIT,
                        {"saddles": 2}),
        template_record(2, (c, c), (), P_BEFORE),
        template_record(3, (TRANSFER, back), (), d, {"transfer": 2}),
        template_record(4, (c, c), (), R3_GRID, {"r3": 2}),
    ]
    return load_templates(recs)


def test_boundary_classes():
    labels = [t.boundary_class for t in filter_fixture()]
    assert labels == ["Interior", "PlanarBoundary", "PlanarBoundary", "Boundary"]


def test_boundary_mode_drops_critical_templates():
    kept = boundary_class_filter(filter_fixture(), "boundary")
    assert [t.id for t in kept] == [2, 3, 4]


def test_planar_mode_keeps_transfers():
    kept = boundary_class_filter(filter_fixture(), "PlanarBoundary")
    assert [t.id for t in kept] == [2, 3]


def test_closed_mode_keeps_all():
    assert len(boundary_class_filter(filter_fixture(), "closed")) == 4
    with pytest.raises(ValueError):
        boundary_class_filter([], "open")
