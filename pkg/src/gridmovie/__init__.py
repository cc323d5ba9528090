"""Grid diagrams of links and grid movies of knotted surfaces."""
from .errors import *  # noqa: F401,F403
from .grid import (
    EMPTY, Component, Crossing, GridDiagram, crossing_count, crossings, mirror, new_grid,
    parse, serialize, trace, transpose, writhe,
)
from .arcword import arcword, grid_arcword, net_turn, reduce_arcword
from .moves import (
    Birth, Commute, Death, Destab, Identity, MoveClass, Saddle, Stab, Transfer,
    apply, apply_classified, classify, classify_commutation, enumerate_moves, inverse,
    is_planar_isotopy_step, planar_moves,
)
from .movie import (
    GridMovie, MovieStats, concatenate, interchange_distant, is_movie_isotopy, pad_still,
    stats, validate_movie,
)
from .templates import (
    MovieMoveTemplate, SubDiagram, apply_movie_move, boundary_class_filter, load_templates,
    symmetry_closure,
)
from .plimport import PLDiagram, find_crossings, gridify, gridify_with_height, pl_writhe
from .render import render_ascii, render_svg
from .search import (
    IsotopyCertificate, SearchBudget, align_arcs, bfs_equivalent, verify_certificate,
)

__version__ = "0.1.0"
