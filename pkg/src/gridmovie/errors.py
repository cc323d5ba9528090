"""Exception hierarchy shared by every module.

All errors derive from :class:`GridMovieError`; the CLI maps each class to
exactly one exit status.
"""


class GridMovieError(Exception):
    """Base class for domain failures."""


# grid-core

class GridError(GridMovieError, ValueError):
    pass


class NotPermutation(GridError):
    pass


class SizeMismatch(GridError):
    pass


class ParseError(GridError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append("line %d" % line)
        if field is not None:
            where.append("field %s" % field)
        if where:
            message = "%s (%s)" % (message, ", ".join(where))
        super().__init__(message)


# moves

class MoveError(GridMovieError, ValueError):
    pass


class IndexOutOfRange(MoveError):
    pass


class ObstructedCommutation(MoveError):
    pass


class MalformedStabilization(MoveError):
    pass


class SaddleChangesCrossings(MoveError):
    pass


class SaddleWrongConfiguration(MoveError):
    pass


class NoCoincidentPair(MoveError):
    pass


class TransferNotR2Pair(MoveError):
    pass


# movie

class MovieError(GridMovieError, ValueError):
    pass


class StepInvalid(MovieError):
    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__("step %d invalid: %s" % (index, cause))


class LevelCountMismatch(MovieError):
    pass


class NonPlanarWitness(MovieError):
    def __init__(self, level, step, label=None):
        self.level = level
        self.step = step
        self.label = label
        super().__init__("level %d, witness step %d is not planar (%s)" % (level, step, label))


class OverlappingSupport(MovieError):
    pass


class AmbiguousRetarget(MovieError):
    pass


class SchemaError(MovieError):
    pass


class NoMatch(MovieError):
    pass


class ResultInvalid(MovieError):
    pass


# pl-import

class PLError(GridMovieError, ValueError):
    pass


class NonGenericInput(PLError):
    def __init__(self, kind, location=None):
        self.kind = kind
        self.location = location
        msg = "non-generic input: %s" % kind
        if location is not None:
            msg += " at %s" % (location,)
        super().__init__(msg)


class BoxPlacementFailure(PLError):
    pass


class DegenerateHeights(PLError):
    pass


# search

class SearchError(GridMovieError):
    pass


class BudgetExhausted(SearchError):
    def __init__(self, message="search budget exhausted", states=None, depth=None):
        self.states = states
        self.depth = depth
        super().__init__(message)


class NetTurnMismatch(SearchError, ValueError):
    pass


class EndpointMismatch(SearchError, ValueError):
    pass


class ObstructedByOtherArcs(SearchError):
    pass
