import pytest

from gridmovie import moves as mv
from gridmovie.errors import (
    IndexOutOfRange, LevelCountMismatch, NonPlanarWitness, OverlappingSupport, SchemaError,
    StepInvalid,
)
from gridmovie.grid import EMPTY, GridDiagram
from gridmovie.moves import ANTI_TO_MAIN, Birth, Commute, Death, Destab, Identity, Saddle, Stab
from gridmovie.movie import (
    GridMovie, concatenate, interchange_distant, is_movie_isotopy, pad_still, stats,
    validate_movie,
)

from conftest import P_BEFORE, TREFOIL, UNKNOT

SPHERE = GridMovie(EMPTY, (Birth((0, 0)), Death(0)))
TORUS = GridMovie(EMPTY, (
    Birth((0, 0)), Stab("X", (0, 0), "NW"), Saddle((0, 0), ANTI_TO_MAIN),
    Saddle((0, 0)), Destab((0, 0), "NW"), Death(0),
))


def test_sphere():
    assert [c.label for c in validate_movie(SPHERE)] == ["Birth", "Death"]
    s = stats(SPHERE)
    assert (s.euler_characteristic, s.genus, s.closed, s.connected) == (2, 0, True, True)


def test_torus():
    s = stats(TORUS)
    assert (s.births, s.saddles, s.deaths) == (1, 2, 1)
    assert (s.euler_characteristic, s.genus, s.closed, s.connected) == (0, 1, True, True)


def test_trefoil_cylinder():
    movie = GridMovie(TREFOIL, (Stab("X", (0, 4), "NW"), Destab((0, 4), "NW")))
    s = stats(movie)
    assert movie.final == TREFOIL
    assert (s.boundary_circles, s.euler_characteristic, s.closed) == (2, 0, False)
    assert s.genus is None


def test_split_then_merge_is_a_tube():
    d = GridDiagram((1, 3, 0, 2), (0, 1, 2, 3))
    movie = GridMovie(d, (Saddle((1, 1)), Saddle((1, 1), ANTI_TO_MAIN)))
    s = stats(movie)
    assert s.component_timeline == (1, 2, 1)
    assert (s.euler_characteristic, s.surface_pieces, s.boundary_circles) == (-2, 1, 2)


def test_obstructed_step_reported_with_index():
    with pytest.raises(StepInvalid) as e:
        validate_movie(GridMovie(TREFOIL, (Commute("cols", 1),)))
    assert e.value.index == 0


def test_composite_needs_permission():
    d = GridDiagram((0, 1, 4, 2, 3), (2, 3, 0, 1, 4))
    c = mv.classify_commutation(d, Commute("cols", 1))
    assert (c.label, c.delta, c.separating) == ("CommComposite", -2, 1)
    movie = GridMovie(d, (Commute("cols", 1),))
    with pytest.raises(StepInvalid):
        validate_movie(movie)
    assert validate_movie(movie, permit_composite=True)[0].label == "CommComposite"


def test_x_saddle_needs_flag():
    d = GridDiagram((0, 1, 2, 3), (1, 3, 0, 2))
    movie = GridMovie(d, (Saddle((1, 1), marker="X"),))
    with pytest.raises(StepInvalid):
        validate_movie(movie)


def test_json_roundtrip():
    text = TORUS.dumps()
    assert GridMovie.loads(text) == TORUS
    assert GridMovie.from_dict({"initial": "2\n0 1\n1 0\n", "steps": []}).initial == UNKNOT
    with pytest.raises(SchemaError):
        GridMovie.loads("[1, 2]")
    with pytest.raises(SchemaError):
        GridMovie.loads('{"steps": [{"kind": "bend"}]}')


def test_pad_still():
    padded = pad_still(SPHERE, 1)
    assert padded.steps == (Birth((0, 0)), Identity(), Death(0))
    assert stats(padded).euler_characteristic == 2
    assert [c.label for c in validate_movie(padded)] == ["Birth", "Identity", "Death"]
    assert len(pad_still(SPHERE, 2).stills) == 4
    with pytest.raises(IndexOutOfRange):
        pad_still(SPHERE, 3)


def test_movie_isotopy_witnesses():
    a = GridMovie(UNKNOT, ())
    assert is_movie_isotopy(a, a, [[]])
    stab = Stab("X", (0, 0), "NW")
    b = GridMovie(mv.apply(UNKNOT, stab), ())
    assert is_movie_isotopy(a, b, [[stab]])
    c = GridMovie(mv.apply(UNKNOT, Stab("X", (0, 0), "NE")), ())
    with pytest.raises(NonPlanarWitness):
        is_movie_isotopy(a, c, [[Stab("X", (0, 0), "NE")]])
    with pytest.raises(LevelCountMismatch):
        is_movie_isotopy(a, SPHERE, [[]])


def test_interchange_disjoint_commutations():
    d = GridDiagram((0, 1, 2, 3, 4, 5, 6, 7), (1, 0, 3, 2, 5, 4, 7, 6))
    movie = GridMovie(d, (Commute("cols", 1), Commute("cols", 5)))
    swapped = interchange_distant(movie, 0)
    assert swapped.steps == (Commute("cols", 5), Commute("cols", 1))
    assert swapped.final == movie.final
    assert interchange_distant(swapped, 0) == movie


def test_interchange_with_distant_birth():
    d = GridDiagram((1, 0, 3, 2), (0, 1, 2, 3))
    movie = GridMovie(d, (Commute("cols", 1), Birth((4, 4))))
    swapped = interchange_distant(movie, 0)
    assert swapped.final == movie.final
    assert stats(swapped) == stats(movie)


def test_interchange_shared_column():
    movie = GridMovie(P_BEFORE, (Commute("cols", 1), Commute("cols", 1)))
    with pytest.raises(OverlappingSupport):
        interchange_distant(movie, 0)


def test_concatenate():
    whole = concatenate(GridMovie(EMPTY, (Birth((0, 0)),)), GridMovie(GridDiagram((0,), (0,)), (Death(0),)))
    assert whole == SPHERE
