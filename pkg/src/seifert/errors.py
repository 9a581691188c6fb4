"""Exception types shared across the package."""


class SeifertError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ValidationError(SeifertError):
    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(str(v) for v in self.violations)
        super().__init__(msg or "invalid presentation")


class NotChiZero(SeifertError):
    """Raised when an engine is requested for a presentation with chi != 0."""


class UnknownSymbol(SeifertError):
    pass


class MissingVariable(SeifertError):
    pass


class NotVirtuallyAbelian(SeifertError):
    pass


class IsVirtuallyAbelian(SeifertError):
    pass


class HCentral(SeifertError):
    pass


class ZeroC(SeifertError):
    pass


class NotASolution(SeifertError):
    pass


class CarrierNotInH(SeifertError):
    pass


class WordSyntaxError(SyntaxError):
    """Malformed word, equation, presentation or polynomial text.

    ``pos`` is the 0-based character offset of the offending token.
    """

    def __init__(self, msg: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.source = text
        super().__init__(f"{msg} at position {pos}" + (f": {text!r}" if text else ""))
