"""Exception hierarchy.

Everything raised on bad *domain* input derives from :class:`SemwidthError`;
the CLI maps those to exit code 1.
"""


class SemwidthError(Exception):
    pass


class QuerySyntaxError(SemwidthError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SafetyError(SemwidthError):
    """A head variable does not occur in the body."""


class ArityError(SemwidthError):
    pass


class DegenerateHypergraphError(SemwidthError):
    """The query has no variables, so its hypergraph would be empty."""


class UnsupportedMappingError(SemwidthError):
    """A CQ homomorphism sends a variable to a constant."""


class NotAHomomorphismError(SemwidthError):
    pass


class NotARenamingError(SemwidthError):
    pass


class InfeasibleCoverError(SemwidthError):
    pass


class CapExceededError(SemwidthError):
    pass


class InvalidDecompositionError(SemwidthError):
    pass


class WidthFunctionError(SemwidthError):
    pass
