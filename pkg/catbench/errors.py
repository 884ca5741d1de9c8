# catbench/errors.py

from typing import Any, Tuple


class CatbenchError(Exception):
    """Base class for every failure raised by the workbench.

    `witness` carries the offending names (objects, morphisms, elements) so
    callers can report them without parsing the message.
    """

    def __init__(self, message: str, *witness: Any):
        self.witness: Tuple[Any, ...] = tuple(witness)
        super().__init__(message)

    @property
    def kind(self) -> str:
        return type(self).__name__

    def render(self) -> str:
        return f"{self.kind}: {self}"


# Category laws
class CategoryLawError(CatbenchError):
    law = "category"


class MissingIdentity(CategoryLawError):
    law = "identity"


class BrokenUnit(CategoryLawError):
    law = "unit"


class BrokenAssociativity(CategoryLawError):
    law = "associativity"


class NonClosedComposition(CategoryLawError):
    law = "composition"


# Functors and transformations
class FunctorLawError(CatbenchError):
    pass


class NaturalityError(CatbenchError):
    pass


class UnknownObject(CatbenchError):
    pass


class BaseMismatch(CatbenchError):
    pass


class SizeExceeded(CatbenchError):
    def __init__(self, operation: str, cap: int):
        super().__init__(f"{operation} exceeded the size cap of {cap}", operation, cap)
        self.operation = operation
        self.cap = cap


class InvalidWedge(CatbenchError):
    pass


class InvalidCone(CatbenchError):
    pass


class ValidationFailed(CatbenchError):
    def __init__(self, law: str, *witness: Any, detail: str = ""):
        names = ", ".join(str(w) for w in witness)
        message = f"{law} violated" + (f" at {names}" if names else "")
        if detail:
            message += f" ({detail})"
        super().__init__(message, *witness)
        self.law = law


class InternalDisagreement(CatbenchError):
    """Two computations that must agree did not. Always a bug."""


class NoMediator(CatbenchError):
    pass


class NonUniqueMediator(CatbenchError):
    pass


# Documents and commands
class DocumentSyntaxError(CatbenchError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}", line, col)
        self.line = line
        self.col = col


class UnresolvedReference(CatbenchError):
    def __init__(self, name: str, where: str = ""):
        suffix = f" in {where}" if where else ""
        super().__init__(f"unresolved reference {name!r}{suffix}", name)
        self.name = name


class UnknownCommand(CatbenchError):
    pass
