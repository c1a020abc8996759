from __future__ import annotations


class InvalidInput(ValueError):
    """Bad parameters: wrong family, rank below guard, malformed weight."""


class OracleRefusal(RuntimeError):
    """The oracle declined a computation that exceeds its resource limits."""


class NotAModuleCharacter(ValueError):
    """A peel produced a negative multiplicity."""


class UnstableWindow(RuntimeError):
    pass
