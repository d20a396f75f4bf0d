"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FalgError(Exception):
    """Base class for all engine errors."""


class DuplicateSymbol(FalgError):
    def __init__(self, symbol: str):
        super().__init__(f"duplicate operation symbol {symbol!r}")
        self.symbol = symbol


class DuplicateElement(FalgError):
    def __init__(self, element):
        super().__init__(f"duplicate set element {element!r}")
        self.element = element


class UndefinedOnElement(FalgError):
    def __init__(self, element):
        super().__init__(f"map is undefined on {element!r}")
        self.element = element


class UnknownGenerator(FalgError):
    def __init__(self, generator):
        super().__init__(f"unknown generator {generator!r}")
        self.generator = generator


class UnknownElement(FalgError):
    def __init__(self, element):
        super().__init__(f"unknown element {element!r}")
        self.element = element


class ArityMismatch(FalgError):
    def __init__(self, symbol: str, expected: int | None = None, got: int | None = None, line: int | None = None):
        msg = f"arity mismatch for {symbol!r}"
        if expected is not None:
            msg += f": expected {expected}, got {got}"
        if line is not None:
            msg += f" (line {line})"
        super().__init__(msg)
        self.symbol = symbol
        self.expected = expected
        self.got = got
        self.line = line


class UnknownSymbol(FalgError):
    def __init__(self, name: str, line: int | None = None, col: int | None = None):
        msg = f"unknown symbol {name!r}"
        if line is not None:
            msg += f" (line {line}" + (f", col {col})" if col is not None else ")")
        super().__init__(msg)
        self.name = name
        self.line = line
        self.col = col


class ParseError(FalgError):
    """Malformed input text, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, col: int = 1, expected: str | None = None):
        text = f"line {line}, col {col}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected


class NotGenerating(FalgError):
    pass


class NotHomomorphism(FalgError):
    pass


class NotAMonoid(FalgError):
    pass


class CarrierNotMaterializable(FalgError):
    pass


class MonoFlagViolation(FalgError):
    pass


class BudgetExceeded(FalgError):
    """A configured size or depth budget was hit; says nothing about the answer."""


class SizeCapExceeded(BudgetExceeded):
    pass


class DepthBudgetExceeded(BudgetExceeded):
    pass


class Inconclusive(FalgError):
    """A bounded search ended without a verdict."""


class NotFoundWithinBound(Inconclusive):
    pass
