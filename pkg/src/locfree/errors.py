"""Exception hierarchy shared by all modules."""


class LocfreeError(Exception):
    """Base class for every error raised by this package."""


class AlphabetError(LocfreeError):
    """Unknown generator, duplicate generator, or mismatched alphabets."""


class RangeError(LocfreeError):
    """Numeric parameter outside its supported range."""


class StateError(LocfreeError):
    """Operation applied to a value in the wrong state (e.g. unfolded graph)."""


class ParseError(LocfreeError):
    """Syntax error in a presentation or script file."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class MoveError(LocfreeError):
    """A Tietze move failed validation; carries the move index."""

    def __init__(self, index, message):
        super().__init__(f"move {index}: {message}")
        self.index = index


class RecognitionError(LocfreeError):
    """Presentation does not have the requested structural shape."""


class UnsupportedRegime(LocfreeError):
    """Weight map outside the supported all-weights-one regime."""


class UnsupportedCell(LocfreeError):
    """Cell boundary violates the staircase precondition for area counting."""


class CertificateRefused(LocfreeError):
    """Preconditions for issuing a certificate were not met."""
