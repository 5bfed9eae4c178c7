"""Exception types shared across the package."""


class HopfkitError(Exception):
    pass


class ShapeError(HopfkitError):
    """Dimension or index mismatch detected before any axiom check runs."""


class InconsistentSystemError(HopfkitError):
    """An exact linear system has no solution."""


class SingularAntipodeError(HopfkitError):
    """The antipode matrix is not invertible (input is not a Hopf algebra)."""


class PipelineError(HopfkitError):
    """A derived-structure computation failed its built-in verification."""


class BundleParseError(HopfkitError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
