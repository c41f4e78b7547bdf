"""Domain errors.

Every error carries an optional ``witness`` payload (a tuple or dict) naming
the elements that violate the checked property. The CLI reports the class
name, so the names double as stable error codes.
"""


class SemigroupError(Exception):
    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness

    @property
    def name(self):
        return type(self).__name__


class NotClosed(SemigroupError):
    pass


class NotAssociative(SemigroupError):
    pass


class NotRegular(SemigroupError):
    pass


class NotOrthodox(SemigroupError):
    pass


class NotInverse(SemigroupError):
    pass


class NotIdempotent(SemigroupError):
    pass


class NotGeneralizedInverse(SemigroupError):
    pass


class NotRightGeneralizedInverse(SemigroupError):
    pass


class NotRightNormalBand(SemigroupError):
    pass


class NotACongruence(SemigroupError):
    pass


class NotHomomorphism(SemigroupError):
    pass


class NotSurjective(SemigroupError):
    pass


class OrderBoundExceeded(SemigroupError):
    pass


class SizeBoundExceeded(SemigroupError):
    pass


class InternalTheoremViolation(SemigroupError):
    """A structural theorem failed on a concrete instance.

    Raised only when the library computed something the theory rules out,
    so it always indicates a bug in this package.
    """


class NotASemilattice(SemigroupError):
    pass


class InvalidPresheaf(SemigroupError):
    pass


class IdentityLawViolated(InvalidPresheaf):
    pass


class CompositionLawViolated(InvalidPresheaf):
    pass


class MissingRestriction(InvalidPresheaf):
    pass


class AxiomViolation(SemigroupError):
    pass


class E1Violated(AxiomViolation):
    pass


class E2Violated(AxiomViolation):
    pass


class NotAnAction(AxiomViolation):
    pass


class BaseMismatch(SemigroupError):
    pass


class NoGlobalSupport(SemigroupError):
    pass


class NotAPresheafMorphism(SemigroupError):
    pass


class ActorMismatch(SemigroupError):
    pass


class NotBilinear(SemigroupError):
    pass


class IllDefinedProduct(SemigroupError):
    pass


class NotFound(SemigroupError):
    pass


class UnknownSuite(SemigroupError):
    pass


class ParseError(SemigroupError):
    def __init__(self, message="", path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message, witness={"path": str(path) if path else None, "line": line})
        self.path = path
        self.line = line
