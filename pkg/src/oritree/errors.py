"""Exception types shared across the package."""


class OritreeError(Exception):
    """Base class for all package errors."""


class SelfLoop(OritreeError):
    def __init__(self, u):
        self.u = u
        super().__init__(f"self-loop at vertex {u}")


class DuplicateArc(OritreeError):
    def __init__(self, u, v):
        self.u, self.v = u, v
        super().__init__(f"duplicate arc ({u}, {v})")


class VertexOutOfRange(OritreeError):
    def __init__(self, v, n):
        self.v, self.n = v, n
        super().__init__(f"vertex {v} out of range for n={n}")


class NotConnected(OritreeError):
    pass


class HasCycle(OritreeError):
    pass


class EmptyTree(OritreeError):
    pass


class ModeMismatch(OritreeError):
    pass


class CoreStepStuck(OritreeError):
    """No feasible host vertex while embedding the diameter-4 core."""

    def __init__(self, vertex, msg=""):
        self.vertex = vertex
        super().__init__(msg or f"no feasible image for tree vertex {vertex}")


class ParseError(OritreeError):
    def __init__(self, line_no, msg):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {msg}")


class BoundExceeded(OritreeError):
    pass


class KTooSmall(OritreeError):
    pass


class BadParams(OritreeError):
    pass


class UnsupportedOrder(OritreeError):
    pass


class BadKind(OritreeError):
    pass


class InfeasibleAfterRetries(OritreeError):
    pass


class ConditionFailed(OritreeError):
    """A checked precondition of the dense-digraph pipeline is not met."""

    def __init__(self, which, detail=None):
        self.which = which
        self.detail = detail
        suffix = f": {detail}" if detail is not None else ""
        super().__init__(f"condition failed: {which}{suffix}")
