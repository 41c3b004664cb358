"""Exception hierarchy shared by every module."""


class TeamLogicError(Exception):
    """Base class for all errors raised by the package."""


class FormulaSyntaxError(TeamLogicError, ValueError):
    """Text does not conform to the formula grammar."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class FragmentViolation(TeamLogicError, ValueError):
    def __init__(self, offender: str, fragment: str):
        self.offender = offender
        self.fragment = fragment
        super().__init__(f"{offender} is not allowed in fragment {fragment}")


class BadAddress(TeamLogicError, ValueError):
    pass


class SizeGuard(TeamLogicError):
    """An exhaustive enumeration would exceed the configured bound."""


class DomainError(TeamLogicError, ValueError):
    pass


class BadDomain(TeamLogicError, ValueError):
    pass


class EmptyTeam(TeamLogicError, ValueError):
    pass


class EmptyY(TeamLogicError, ValueError):
    pass


class NotDownwardClosed(TeamLogicError, ValueError):
    pass


class MismatchedSequence(TeamLogicError, ValueError):
    pass


class BadParams(TeamLogicError, ValueError):
    pass


class NotEntailed(TeamLogicError):
    pass


class ProofFormatError(TeamLogicError, ValueError):
    """A serialized derivation could not be read."""


class RuleViolation(TeamLogicError):
    """A derivation step is not a correct instance of its rule."""

    kind = "rule"

    def __init__(self, node, reason: str, kind: str | None = None):
        self.node = node
        self.reason = reason
        if kind is not None:
            self.kind = kind
        super().__init__(f"[{self.kind}] {reason}")


class SideConditionViolated(RuleViolation):
    kind = "side-condition"


class BadDischarge(RuleViolation):
    kind = "discharge"
