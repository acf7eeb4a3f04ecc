"""Error types shared across the library.

The CLI maps these onto exit codes: input and hypothesis problems exit
with 2, verified property violations with 1.
"""


class InputError(ValueError):
    """Malformed or out-of-range input (bad JSON, mixed backends, bad sizes)."""


class HypothesisError(ValueError):
    """A stated precondition of an operation does not hold.

    Carries the name of the failed predicate so callers can report it.
    """

    def __init__(self, predicate: str, detail: str = ""):
        self.predicate = predicate
        msg = f"hypothesis failed: {predicate}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UnsupportedError(ValueError):
    """The requested value exists mathematically but has no representation here."""


class InvariantViolation(RuntimeError):
    """An internally certified result failed its re-check. Never expected."""


class TheoremViolation(InvariantViolation):
    """A verified theorem conclusion failed on an instance satisfying its hypotheses."""
