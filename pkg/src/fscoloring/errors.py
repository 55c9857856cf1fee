"""Shared exception types."""


class GuardError(RuntimeError):
    """A resource guard refused an exponentially sized materialization.

    Carries the name of the guard and the bound that tripped so callers
    (and the command line) can report exactly what to raise.
    """

    def __init__(self, guard, bound, requested):
        self.guard = guard
        self.bound = bound
        self.requested = requested
        super().__init__(
            "guard %r exceeded: requested %s, bound %s" % (guard, requested, bound)
        )


class FixtureError(ValueError):
    """A fixture family or schedule violates its declared shape."""


class MissingOracleError(RuntimeError):
    """An operation needed truth/settling oracles the family does not carry."""


class WitnessSearchError(RuntimeError):
    """A bounded witness search exhausted its budget without a witness.

    This is an explicit "not found within bound" outcome, never a claim
    that no witness exists.
    """

    def __init__(self, message, *, bound=None, quantifier=None):
        self.bound = bound
        self.quantifier = quantifier
        super().__init__(message)


class VerificationError(RuntimeError):
    """Recomputation of a claimed equality or inequality disagreed."""
