"""Exception types shared across the package.

Everything raised on bad input derives from SemiringFxError so the CLI can
catch one base class and map it to a usage-error exit code.
"""


class SemiringFxError(Exception):
    """Base class for all errors raised by this package."""


class TagMismatch(SemiringFxError):
    """Operands belong to different semirings."""

    def __init__(self, left: str, right: str):
        super().__init__(f"semiring mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class DegreeTooSmall(SemiringFxError):
    """Requested Bernstein degree is below the current one."""


class OutOfRange(SemiringFxError):
    """A numeric argument fell outside its required interval."""


class UnknownIndex(SemiringFxError):
    """A location or letter index is not part of the declared finite set."""


class UnknownGenerator(SemiringFxError):
    """A word uses a generator the presentation does not declare."""


class UnsupportedTensor(SemiringFxError):
    """No tensor embedding is defined for this pair of semirings."""


class UnknownOutcome(SemiringFxError):
    """An outcome label is not part of the declared outcome set."""


class MissingContinuation(SemiringFxError):
    """dist_bind received no continuation for a supported outcome."""


class NotRowStochastic(SemiringFxError):
    """Matrix rows do not each sum to one."""


class UnsupportedCombination(SemiringFxError):
    """The set of effects has no assigned semantic theory."""

    def __init__(self, effects):
        names = ", ".join(sorted(effects)) if effects else "(none)"
        super().__init__(f"no theory for effect combination {{{names}}}")
        self.effects = frozenset(effects)


class SignatureMismatch(SemiringFxError):
    """Two programs cannot be compared: headers or effect rows differ."""


class DataDependence(SemiringFxError):
    """Adjacent statements cannot be swapped: the second reads the first."""


class ParseError(SemiringFxError):
    """Source text rejected, with 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class ScopeError(SemiringFxError):
    """A variable is used before being bound."""


class NormalizationError(SemiringFxError):
    """An internal canonical form could not be produced."""


class MembershipUnknown(SemiringFxError):
    """Membership search exhausted its budget without a verdict.

    Raised (or returned, depending on the API) when a convexity-class test
    can neither certify membership nor exhibit a refutation.
    """
