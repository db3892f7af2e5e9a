"""Exception hierarchy.

Every error carries a stable ``code`` string so the CLI and the JSON report
can surface it without depending on class names.
"""


class MBRGError(Exception):
    code = "ERROR"


class MalformedInput(MBRGError, ValueError):
    code = "MALFORMED_INPUT"


class LoopOrMultiEdge(MBRGError, ValueError):
    code = "LOOP_OR_MULTIEDGE"


class EmptyGraph(MBRGError, ValueError):
    code = "EMPTY_GRAPH"


class BadParams(MBRGError, ValueError):
    code = "BAD_PARAMS"


class Disconnected(MBRGError, ValueError):
    code = "DISCONNECTED"


class VertexOutOfRange(MBRGError, ValueError):
    code = "VERTEX_OUT_OF_RANGE"


class TooLarge(MBRGError, ValueError):
    code = "TOO_LARGE"


class PreconditionDelta(MBRGError, ValueError):
    code = "PRECONDITION_DELTA"


class ResourceLimit(MBRGError, RuntimeError):
    code = "RESOURCE_LIMIT"


class TerminalState(MBRGError, ValueError):
    code = "TERMINAL_STATE"


class UnknownStrategy(MBRGError, KeyError):
    code = "UNKNOWN_STRATEGY"

    def __str__(self):
        return Exception.__str__(self)


class InapplicableContext(MBRGError, ValueError):
    code = "INAPPLICABLE_CONTEXT"


class NotApplicable(MBRGError, ValueError):
    code = "NOT_APPLICABLE"


class Inconsistent(MBRGError, RuntimeError):
    """Both second players win: never expected, surfaced instead of hidden."""

    code = "INCONSISTENT"
