"""Exception hierarchy.  Every error that carries a witness exposes it as an attribute."""

from __future__ import annotations


class SgwbError(Exception):
    """Base class for all library errors."""


class InputError(SgwbError):
    """Malformed input: bad table, bad expression, bad context bundle."""


class IndexOutOfRange(InputError):
    pass


class NotAssociative(InputError):
    def __init__(self, triple):
        self.triple = tuple(triple)
        x, y, z = self.triple
        super().__init__(f"table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")


class BadIdentity(InputError):
    def __init__(self, identity, witness):
        self.identity = identity
        self.witness = witness
        super().__init__(f"element {identity} is not an identity (fails on {witness})")


class BadZero(InputError):
    def __init__(self, zero, witness):
        self.zero = zero
        self.witness = witness
        super().__init__(f"element {zero} is not a zero (fails on {witness})")


class OrderTooLarge(InputError):
    pass


class EmptyGeneratorSet(InputError):
    pass


class EmptySubset(InputError):
    pass


class NotARightIdeal(InputError):
    pass


class NotAnIdeal(InputError):
    pass


class NotASubsemigroup(InputError):
    pass


class OwnerMismatch(InputError):
    pass


class NotAGroup(InputError):
    pass


class NotASubgroup(InputError):
    pass


class NotAMonoid(InputError):
    pass


class NotAnHClass(InputError):
    pass


class NotASubgroupOfSchutz(InputError):
    pass


class NoIdentityInSecondFactor(InputError):
    pass


class ActionAxiomViolation(InputError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ActAxiomViolation(InputError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class DiagramInvalid(InputError):
    def __init__(self, axiom, where):
        self.axiom = axiom
        self.where = where
        super().__init__(f"semilattice diagram violates {axiom} at {where}")


class BadSpec(InputError):
    pass


class BallTooLarge(InputError):
    pass


class BoundTooSmall(SgwbError):
    def __init__(self, message, pairs=()):
        self.pairs = tuple(pairs)
        super().__init__(message)


class ContextMismatch(InputError):
    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        super().__init__(f"hypothesis violated: {hypothesis}" + (f" ({detail})" if detail else ""))


class VerificationFailed(SgwbError):
    def __init__(self, kind, separating_pair, detail=""):
        self.kind = kind
        self.separating_pair = separating_pair
        msg = f"{kind}: candidate does not generate the target; separating pair {separating_pair}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class ExprSyntaxError(InputError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__(f"{message} at line {line}, col {col}")


class UnknownConstructor(InputError):
    pass


class MissingFile(InputError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"file not found: {path}")


class CertificateError(SgwbError):
    """A certificate failed replay; always an internal fault."""
