"""Exceptions shared across the package."""


class CapExceededError(RuntimeError):
    """A bounded search ran out of budget before producing an answer."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class DimensionLimitError(ValueError):
    """A modulus has more prime factors than the configured 2^k budget allows."""


class ContractError(ValueError):
    """A caller violated an operation's precondition (reported, never guessed around)."""
