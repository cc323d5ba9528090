"""Command-line entry point.

Output is JSON on stdout (``--pretty`` switches to readable text).  Exit
status: 0 on success, 1 on a domain failure such as an invalid diagram, an
obstructed move or distinct diagrams, 2 on usage and I/O errors.  The
search command uses 2 for an exhausted budget.
"""
import argparse
import json
import sys

from . import moves as mv
from .errors import BudgetExhausted, GridMovieError, SchemaError
from .grid import GridDiagram, crossings, parse, serialize, trace, writhe
from .movie import GridMovie, interchange_distant, stats, validate_movie
from .plimport import PLDiagram, gridify, gridify_with_height
from .render import render_ascii, render_svg
from .search import SearchBudget, align_arcs, search_isotopy
from .templates import apply_movie_move, boundary_class_filter, load_templates


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e.strerror)) from None


def _json(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError("%s is not valid JSON: %s" % (what, e)) from None


def _grid(path):
    text = _read(path)
    if text.lstrip().startswith("{"):
        rec = _json(text, path)
        return GridDiagram(tuple(rec.get("xs", ())), tuple(rec.get("os", ())))
    return parse(text)


def _movie(path):
    return GridMovie.loads(_read(path))


def _grid_dict(d):
    return {"n": d.n, "xs": list(d.xs), "os": list(d.os)}


def _move_arg(args):
    if args.commute:
        axis, index = args.commute
        if axis not in ("cols", "rows"):
            raise UsageError("--commute axis must be cols or rows")
        try:
            return mv.Commute(axis, int(index), args.wrap)
        except ValueError:
            raise UsageError("--commute index must be an integer") from None
    if args.move:
        text = args.move
        if not text.lstrip().startswith("{"):
            text = _read(text)
        try:
            return mv.from_dict(_json(text, "--move"))
        except mv.MoveError as e:
            raise UsageError("bad move record: %s" % e) from None
    raise UsageError("give a move with --commute or --move")


# --------------------------------------------------------------------------
# commands: each returns (payload, exit code); payload is JSON-able or text

def cmd_validate(args):
    d = _grid(args.grid)
    return {"valid": True, "n": d.n}, 0


def cmd_trace(args):
    d = _grid(args.grid)
    comps = trace(d)
    out = {"components": len(comps), "crossings": len(crossings(d)), "writhe": writhe(d)}
    if args.verbose:
        out["markers"] = [[list(c) for c in comp.markers] for comp in comps]
    return out, 0


def cmd_crossings(args):
    d = _grid(args.grid)
    return [{"column": k.column, "row": k.row, "sign": k.sign} for k in crossings(d)], 0


def cmd_classify(args):
    d = _grid(args.grid)
    m = _move_arg(args)
    if isinstance(m, mv.Commute):
        cls = mv.classify_commutation(d, m)
    else:
        cls = mv.classify(d, m)
    return cls.to_dict(), (1 if cls.label == "CommObstructed" else 0)


def cmd_apply(args):
    d = _grid(args.grid)
    m = _move_arg(args)
    d2, cls = mv.apply_classified(d, m)
    if args.pretty:
        return serialize(d2), 0
    return dict(_grid_dict(d2), **{"move": cls.to_dict()}), 0


def cmd_render(args):
    d = _grid(args.grid)
    return (render_svg(d) if args.format == "svg" else render_ascii(d)), 0


def cmd_import_pl(args):
    p = PLDiagram.loads(_read(args.pl))
    fn = gridify_with_height if args.height else gridify
    d, rep = fn(p, seed=args.seed, report=True)
    if args.pretty:
        return serialize(d), 0
    return rep.to_dict(), 0


def cmd_movie_validate(args):
    movie = _movie(args.movie)
    classes = validate_movie(movie, permit_composite=args.permit_composite,
                             allow_x_saddle=args.allow_x_saddle)
    return {"valid": True, "steps": len(classes), "classes": [c.label for c in classes]}, 0


def cmd_movie_stats(args):
    movie = _movie(args.movie)
    return stats(movie, args.permit_composite, args.allow_x_saddle).to_dict(), 0


def cmd_movie_move(args):
    movie = _movie(args.movie)
    templates = load_templates(_read(args.templates)) if args.templates else load_templates()
    templates = boundary_class_filter(templates, args.boundary_mode)
    chosen = [t for t in templates if t.id == args.template]
    if not chosen:
        raise SchemaError("no template %r under boundary mode %s" % (args.template, args.boundary_mode))
    out = apply_movie_move(movie, chosen[0], (args.step, tuple(args.origin)), args.direction)
    return out.to_dict(), 0


def cmd_interchange(args):
    return interchange_distant(_movie(args.movie), args.index).to_dict(), 0


def _budget(args, *grids):
    top = max(g.n for g in grids)
    return SearchBudget(args.max_index if args.max_index is not None else top + 2,
                        args.max_moves, args.max_states)


def cmd_search_isotopy(args):
    a, b = _grid(args.a), _grid(args.b)
    res = search_isotopy(a, b, _budget(args, a, b))
    return res, {"found": 0, "distinct": 1, "exhausted": 2}[res["status"]]


def cmd_align_arcs(args):
    a, b = _grid(args.a), _grid(args.b)
    arc = lambda v: ((v[0], v[1]), (v[2], v[3]))
    moves = align_arcs(a, arc(args.arc_a), b, arc(args.arc_b), _budget(args, a, b))
    return {"moves": [mv.to_dict(m) for m in moves]}, 0


# --------------------------------------------------------------------------

def _pretty(payload):
    if isinstance(payload, str):
        return payload.rstrip("\n")
    if isinstance(payload, dict):
        return "\n".join("%s: %s" % (k, json.dumps(v)) for k, v in payload.items())
    return "\n".join(json.dumps(x) for x in payload)


def build_parser():
    p = argparse.ArgumentParser(prog="gridmovie", description=__doc__.split("\n")[0])
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output instead of JSON")
        sp.set_defaults(fn=fn)
        return sp

    def move_opts(sp):
        sp.add_argument("--commute", nargs=2, metavar=("AXIS", "INDEX"),
                        help="interchange of lines INDEX, INDEX+1 on AXIS (cols|rows)")
        sp.add_argument("--wrap", action="store_true", help="with --commute: the wrap-around pair")
        sp.add_argument("--move", help="move as JSON text or a file holding it")

    def search_opts(sp):
        sp.add_argument("--max-index", type=int, help="largest grid index visited (default: max input + 2)")
        sp.add_argument("--max-moves", type=int, default=8, help="longest certificate (default 8)")
        sp.add_argument("--max-states", type=int, default=200_000, help="state limit (default 200000)")

    def movie_opts(sp):
        sp.add_argument("movie", help="movie JSON file or - for stdin")
        sp.add_argument("--permit-composite", action="store_true",
                        help="accept composite nested interchanges")
        sp.add_argument("--allow-x-saddle", action="store_true", help="accept X-marker saddles")

    sp = add("validate", cmd_validate, "check that a grid file is a valid diagram")
    sp.add_argument("grid")
    sp = add("trace", cmd_trace, "component count, crossing count and writhe")
    sp.add_argument("grid")
    sp.add_argument("--verbose", action="store_true", help="also list each component's markers")
    sp = add("crossings", cmd_crossings, "list crossings with signs")
    sp.add_argument("grid")
    sp = add("classify", cmd_classify, "classify a move on a diagram")
    sp.add_argument("grid")
    move_opts(sp)
    sp = add("apply", cmd_apply, "apply a move and print the new diagram")
    sp.add_argument("grid")
    move_opts(sp)
    sp = add("render", cmd_render, "draw a diagram")
    sp.add_argument("grid")
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp = add("import-pl", cmd_import_pl, "convert a PL diagram to a grid diagram")
    sp.add_argument("pl")
    sp.add_argument("--seed", type=int, default=0, help="seed for crossing-box placement")
    sp.add_argument("--height", action="store_true", help="put each height extremum on its own row")
    sp = add("movie-validate", cmd_movie_validate, "classify every step of a movie")
    movie_opts(sp)
    sp = add("movie-stats", cmd_movie_stats, "critical counts and surface statistics")
    movie_opts(sp)
    sp = add("movie-move", cmd_movie_move, "rewrite a movie with a movie-move template")
    sp.add_argument("movie")
    sp.add_argument("--templates", help="template file (default: packaged set)")
    sp.add_argument("--template", required=True, help="template id")
    sp.add_argument("--step", type=int, required=True)
    sp.add_argument("--origin", type=int, nargs=2, required=True, metavar=("COL", "ROW"))
    sp.add_argument("--direction", choices=("forward", "backward"), default="forward")
    sp.add_argument("--boundary-mode", choices=("closed", "boundary", "planar"), default="closed")
    sp = add("interchange", cmd_interchange, "swap two adjacent steps with disjoint support")
    sp.add_argument("movie")
    sp.add_argument("--index", type=int, required=True, help="swap steps INDEX and INDEX+1")
    sp = add("search-isotopy", cmd_search_isotopy, "look for a grid planar isotopy certificate")
    sp.add_argument("a")
    sp.add_argument("b")
    search_opts(sp)
    sp = add("align-arcs", cmd_align_arcs, "planar moves taking one arc onto another")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--arc-a", type=int, nargs=4, required=True, metavar=("C0", "R0", "C1", "R1"))
    sp.add_argument("--arc-b", type=int, nargs=4, required=True, metavar=("C0", "R0", "C1", "R1"))
    search_opts(sp)
    return p


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    pretty = getattr(args, "pretty", False)
    try:
        payload, code = args.fn(args)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except BudgetExhausted as e:
        payload, code = {"error": type(e).__name__, "message": str(e)}, 2
    except GridMovieError as e:
        payload, code = {"error": type(e).__name__, "message": str(e)}, 1
    except ValueError as e:
        payload, code = {"error": "ValueError", "message": str(e)}, 2
    if pretty or isinstance(payload, str):
        text = _pretty(payload)
    else:
        text = json.dumps(payload, sort_keys=True)
    print(text, file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
