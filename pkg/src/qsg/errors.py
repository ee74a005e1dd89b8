"""Exception types shared across the package.

``InputError`` subclasses map to CLI exit code 2 (bad input data), every
other ``QsgError`` signals a computation that could not be carried out.
"""


class QsgError(Exception):
    """Base class for all package errors."""


class InputError(QsgError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


class FormatError(InputError):
    """Unparseable or schema-violating file content."""


class DimensionMismatchError(InputError):
    def __init__(self, dim_a, dim_b, what="operands"):
        self.dim_a = dim_a
        self.dim_b = dim_b
        super().__init__(f"dimension mismatch: {what} have dims {dim_a} and {dim_b}")


class HermiticityError(InputError):
    def __init__(self, defect, tol):
        self.defect = defect
        self.tol = tol
        super().__init__(f"matrix is not Hermitian: asymmetry {defect:.3e} exceeds tolerance {tol:.3e}")


class EigensolverError(QsgError):
    """Eigendecomposition failed to converge; carries solver diagnostics."""

    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class ChartDomainError(QsgError):
    """Chart coordinates or base point outside the chart's domain of validity."""


class SingularOperatorError(QsgError):
    """An operator required to be invertible is numerically singular."""


class StateError(InputError):
    """Input fails a density-matrix / pure-state / decomposition precondition."""


class OptimizerError(QsgError):
    """Optimizer diverged or produced non-finite values; carries its trace."""

    def __init__(self, message, trace=None):
        self.trace = trace
        super().__init__(message)
