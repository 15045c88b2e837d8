"""Exception types shared across the package."""


class IdentityDefect(RuntimeError):
    """An identity that must hold by construction did not.

    This always indicates a bug in the library, never bad input.
    """


class NotInGamma(ValueError):
    """The matrix does not satisfy alpha*delta - a*beta*gamma = 1."""


class CriterionCannotClose(ValueError):
    """Lemma-interval verification has no finite threshold for this polynomial."""


class DescentStall(ValueError):
    """No strictly smaller |F(r)| exists in the admissible residue classes."""

    def __init__(self, at: int, message: str | None = None):
        self.at = at
        super().__init__(message or f"recursively-factorable criterion violated at n = {at}")
