"""Exception types raised by the toolkit."""


class WddError(Exception):
    """Base class for every error raised by weakdom."""


class InputError(WddError, ValueError):
    """The input graph or generator spec cannot be used."""


class CycleDetected(InputError):
    def __init__(self, cycle=None):
        self.cycle = cycle
        msg = "input relation has a directed cycle"
        if cycle:
            msg += ": " + " -> ".join(map(str, cycle))
        super().__init__(msg)


class SelfLoop(InputError):
    def __init__(self, vertex, lineno=None):
        self.vertex = vertex
        self.lineno = lineno
        where = f" (line {lineno})" if lineno is not None else ""
        super().__init__(f"self-loop on vertex {vertex!r}{where}")


class MalformedLine(InputError):
    def __init__(self, lineno, line):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: expected 'u v', got {line!r}")


class BadSpec(InputError):
    pass


class InvalidOrder(WddError, ValueError):
    """A vertex sequence is not a topological sorting of the graph."""


class UnknownFormat(WddError, ValueError):
    pass


class CapExceeded(WddError):
    """A combinatorial enumeration passed its configured cap."""


class ExtensionCapExceeded(CapExceeded):
    pass


class StateCapExceeded(CapExceeded):
    pass


class TruncatedInput(WddError, ValueError):
    """An operation needs a complete extension set but got a truncated one."""


class DimExceedsMax(WddError):
    def __init__(self, max_dim, lower_bound):
        self.max_dim = max_dim
        self.lower_bound = lower_bound
        super().__init__(f"dimension exceeds {max_dim} (lower bound {lower_bound})")


class MissingDim(WddError, ValueError):
    pass


class IndexOutOfRange(WddError, IndexError):
    pass
