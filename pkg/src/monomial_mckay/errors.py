"""Exception hierarchy shared by every module of the package."""


class MonomialMcKayError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(MonomialMcKayError, ValueError):
    pass


class NotSpecialLinear(MonomialMcKayError, ValueError):
    pass


class NotDiagonal(MonomialMcKayError, ValueError):
    pass


class CapExceeded(MonomialMcKayError, RuntimeError):
    pass


class SymmetryBroken(MonomialMcKayError, ValueError):
    pass


class UnsupportedCase(MonomialMcKayError, ValueError):
    pass


class UnsupportedFormat(MonomialMcKayError, ValueError):
    pass
