"""Exception hierarchy.

Every error carries a ``tag`` equal to its class name; the CLI prints it
verbatim so diagnostics name the violated invariant.
"""


class QumiError(ValueError):
    @property
    def tag(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.tag}: {msg}" if msg else self.tag


class NotHermitian(QumiError):
    pass


class TraceNotOne(QumiError):
    pass


class NotPositive(QumiError):
    def __init__(self, min_eigenvalue: float, msg: str | None = None):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(msg or f"min eigenvalue {self.min_eigenvalue:.3g}")


class ParamOutOfRange(QumiError):
    pass


class ZeroVector(QumiError):
    pass


class InvalidDistribution(QumiError):
    pass


class PreconditionViolated(QumiError):
    pass


class ConsistencyError(RuntimeError):
    """Two code paths that must agree did not."""
