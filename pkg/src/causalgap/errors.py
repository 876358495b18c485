"""Exception types raised across the package."""


class CausalGapError(Exception):
    """Base class for all errors raised by causalgap."""


# graphs


class GraphError(CausalGapError, ValueError):
    pass


class CycleDetected(GraphError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("cycle detected: " + " -> ".join(self.cycle))


class DanglingEdge(GraphError):
    pass


class DuplicateLabel(GraphError):
    pass


class UnknownNode(GraphError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class OverlappingSets(GraphError):
    pass


class NodeMismatch(GraphError):
    pass


# distributions


class DistributionError(CausalGapError, ValueError):
    pass


class UnknownVariable(DistributionError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


MissingVariable = UnknownVariable


class ZeroProbabilityEvent(DistributionError):
    pass


class NotExogenous(DistributionError):
    pass


class DomainMismatch(DistributionError):
    pass


class VariableMismatch(DistributionError):
    pass


class TooManyVariables(DistributionError):
    pass


class IncompleteVector(DistributionError):
    pass


class InvalidTable(DistributionError):
    pass


# decision procedures


class InvalidCertificate(CausalGapError, ValueError):
    pass


class TooLarge(CausalGapError, ValueError):
    pass


class UnknownEntry(CausalGapError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ParseError(CausalGapError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
