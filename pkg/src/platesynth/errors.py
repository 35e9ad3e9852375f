"""Exception types shared across the package."""


class PlatesynthError(Exception):
    """Base class for every error raised by this package."""


class ParamOutOfRange(PlatesynthError):
    """A transform parameter is outside its legal range."""


class WrongChannelCount(PlatesynthError):
    """An image has the wrong number of channels for the operation."""


class MissingGlyph(PlatesynthError):
    """A font does not cover a required code point."""


class FontLoadError(PlatesynthError):
    """A font file could not be loaded."""


class LabelParseError(PlatesynthError):
    """One or more label lines failed grammar validation.

    ``lines`` holds (line_number, line_text, reason) triples.
    """

    def __init__(self, message: str, lines=None):
        super().__init__(message)
        self.lines = list(lines or [])


class NotEnoughRecords(PlatesynthError):
    """A sample was requested that exceeds the pool size."""


class PoolTooSmall(PlatesynthError):
    """A corpus recipe asks for more records than a source pool holds."""

    def __init__(self, tag: str, requested: int, available: int):
        super().__init__(
            f"pool '{tag}' holds {available} records, recipe asks for {requested}"
        )
        self.tag = tag
        self.requested = requested
        self.available = available


class ManifestError(PlatesynthError):
    """A manifest row or file violates the manifest contract."""


class EmptyInput(PlatesynthError):
    """A metric was asked to aggregate over zero pairs."""


class BadTruthLength(PlatesynthError):
    """A ground-truth string does not have the plate length of 7 glyphs."""


class MissingPrediction(PlatesynthError):
    """A manifest id has no prediction row."""

    def __init__(self, record_id: str):
        super().__init__(f"no prediction for id {record_id!r}")
        self.record_id = record_id


class DuplicatePrediction(PlatesynthError):
    """A prediction id appears more than once."""

    def __init__(self, record_id: str):
        super().__init__(f"duplicate prediction for id {record_id!r}")
        self.record_id = record_id
