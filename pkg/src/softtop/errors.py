"""Exception hierarchy shared by every module."""


class SoftTopError(Exception):
    """Base class for all library errors."""


class UnknownElement(SoftTopError, KeyError):
    def __init__(self, element):
        super().__init__(element)
        self.element = element

    def __str__(self):
        return f"unknown element {self.element!r}"


class UnknownParameter(SoftTopError, KeyError):
    def __init__(self, param):
        super().__init__(param)
        self.param = param

    def __str__(self):
        return f"unknown parameter {self.param!r}"


class ContextMismatch(SoftTopError, ValueError):
    pass


class ParamMismatch(SoftTopError, ValueError):
    pass


class EmptySubuniverse(SoftTopError, ValueError):
    pass


class UniverseOverlap(SoftTopError, ValueError):
    def __init__(self, element):
        super().__init__(f"universes overlap at {element!r}")
        self.element = element


class ResourceCapExceeded(SoftTopError, RuntimeError):
    """Raised instead of silently truncating an exponential construction."""


class TopologyTooLarge(ResourceCapExceeded):
    pass


class EnumerationTooLarge(ResourceCapExceeded):
    pass


class NotPointwiseContinuousSlice(SoftTopError, ValueError):
    pass


class UnknownClaim(SoftTopError, KeyError):
    def __init__(self, claim):
        super().__init__(claim)
        self.claim = claim

    def __str__(self):
        return f"unknown claim {self.claim!r}"


class AxiomViolation(SoftTopError, ValueError):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class EmptyFunctionSpace(SoftTopError, ValueError):
    """No soft continuous map exists, so ``Y^X`` has no points to index."""
