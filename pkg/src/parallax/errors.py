"""Exception and warning types raised by :mod:`parallax`."""


class ParallaxError(ValueError):
    """Base class for all input and numerical-domain errors."""


class NonFinite(ParallaxError):
    pass


class NotHermitian(ParallaxError):
    pass


class NotSquare(ParallaxError):
    pass


class ShapeMismatch(ParallaxError):
    pass


class ZeroMatrix(ParallaxError):
    pass


class BadHandle(ParallaxError):
    pass


class SingularMatrix(ParallaxError):
    pass


class TooLarge(ParallaxError):
    pass


class ComplexInput(ParallaxError):
    pass


class NotUnit(ParallaxError):
    pass


class NotMinimal(ParallaxError):
    pass


class NotIdempotent(ParallaxError):
    pass


class BadBasis(ParallaxError):
    pass


class BadDimension(ParallaxError):
    pass


class ParseError(ParallaxError):
    pass


class TieWarning(UserWarning):
    """Singular values of the certificate matrix are tied at the cut-off index.

    The SVD-based dual matrix is then not unique and the constructed
    candidate may fail even though a valid certificate exists.
    """
