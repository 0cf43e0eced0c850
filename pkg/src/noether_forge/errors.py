"""Exception hierarchy.  Every error raised on purpose derives from NoetherForgeError."""


class NoetherForgeError(Exception):
    pass


class InputError(NoetherForgeError):
    """Bad user input (CLI exit code 2)."""


class NonCoprimeGenerators(InputError):
    pass


class EmptyGenerators(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class NotNested(NoetherForgeError):
    pass


class ChainLengthMismatch(NoetherForgeError):
    """Two saturated chains disagree: the input set violates the good-set axioms."""


class NoStabilization(NoetherForgeError):
    pass


class GorensteinInput(NoetherForgeError):
    pass


class WitnessNotFound(NoetherForgeError):
    """The Lemma search failed; this would contradict the theorem."""


class ConstructionFailure(NoetherForgeError):
    """The Noether sequence recipe failed; this would contradict the theorem."""


class UnsupportedBranchCount(NoetherForgeError):
    pass


class UnsupportedModel(NoetherForgeError):
    pass


class NotSingular(InputError):
    pass


class UndeclaredSingularity(InputError):
    pass


class BudgetExhausted(NoetherForgeError):
    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class Inconclusive(NoetherForgeError):
    pass


class SemigroupAxiomFailure(NoetherForgeError):
    pass


class GuardExceeded(InputError):
    pass


class InvalidCurve(InputError):
    """Fiber points with different images, a non-birational map, or similar."""
