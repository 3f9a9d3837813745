"""Exception hierarchy.

``DataError`` subclasses signal malformed or inconsistent input data and map
to exit code 2 in the CLI; everything else under ``FlowrankError`` maps to
exit code 3.
"""


class FlowrankError(Exception):
    """Base class for all errors raised by this package."""


class DataError(FlowrankError):
    """Invalid or inconsistent input data."""


class ParseError(DataError):
    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class MissingRootError(DataError):
    pass


class DanglingEdgeError(DataError):
    pass


class InvalidClientEdgeError(DataError):
    pass


class InvalidEdgeError(DataError):
    pass


class InvalidNodeError(DataError):
    pass


class DuplicateNodeError(DataError):
    pass


class DuplicateEdgeError(DataError):
    pass


class NoClientEdgeError(DataError):
    pass


class NodeNotFoundError(FlowrankError, KeyError):
    """Unknown node id. Doubles as the service's UnknownId error."""

    def __init__(self, node_id: str):
        super().__init__(node_id)
        self.node_id = node_id

    def __str__(self):
        return f"unknown node id: {self.node_id!r}"


class FrozenGraphError(FlowrankError):
    pass


class GammaOutOfRangeError(FlowrankError, ValueError):
    pass


class EmptyRankingError(FlowrankError, ValueError):
    pass


class DegenerateLabelsError(FlowrankError, ValueError):
    pass


class InsufficientPopulationError(FlowrankError, ValueError):
    pass


class GraphRestorationError(FlowrankError):
    """Edge multiset after an evaluation run differs from the original."""


class DisconnectedError(FlowrankError):
    def __init__(self, source: str, target: str):
        super().__init__(f"no path between {source!r} and {target!r}")
        self.source = source
        self.target = target


class InvalidConfigError(FlowrankError, ValueError):
    pass
