"""Plate glyph alphabet and label grammar.

The class layout is fixed: provinces occupy indices 0-30, Latin capitals
31-56, digits 57-66, and the CTC blank sits last at index 67, for a total of
68 classes. Generated labels follow the single-row blue plate convention:
one province glyph, then a letter, then five letters-or-digits, with I and O
never generated (they are too easy to confuse with 1 and 0 on real plates)
even though both stay in the classifier alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# 31 province abbreviations in the conventional ordering.
PROVINCES = tuple("京津沪渝冀豫云辽黑湘皖鲁新苏浙赣鄂桂甘晋蒙陕吉闽贵粤青藏川宁琼")
LETTERS = tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
DIGITS = tuple("0123456789")
EXCLUDED_LETTERS = frozenset("IO")

BLANK_INDEX = 67
NUM_CLASSES = 68
LABEL_LENGTH = 7


@dataclass(frozen=True)
class PlateAlphabet:
    """Ordered glyph tables plus the blank class index."""

    province_glyphs: tuple[str, ...] = PROVINCES
    letters: tuple[str, ...] = LETTERS
    digits: tuple[str, ...] = DIGITS
    blank_index: int = BLANK_INDEX

    # derived lookups, filled in __post_init__
    _glyph_to_index: dict[str, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        glyphs = self.province_glyphs + self.letters + self.digits
        if len(glyphs) + 1 != NUM_CLASSES:
            raise ValueError(f"alphabet must have {NUM_CLASSES - 1} glyphs plus blank")
        if len(set(glyphs)) != len(glyphs):
            raise ValueError("glyph code points must be distinct")
        if self.blank_index != len(glyphs):
            raise ValueError("blank must be the last class index")
        object.__setattr__(
            self, "_glyph_to_index", {g: i for i, g in enumerate(glyphs)}
        )

    @property
    def glyphs(self) -> tuple[str, ...]:
        """All renderable glyphs in class-index order (blank excluded)."""
        return self.province_glyphs + self.letters + self.digits

    def index_of(self, glyph: str) -> int:
        return self._glyph_to_index[glyph]

    def glyph_at(self, index: int) -> str:
        return self.glyphs[index]

    @property
    def body_letters(self) -> tuple[str, ...]:
        """Letters legal in generated labels (I and O excluded)."""
        return tuple(c for c in self.letters if c not in EXCLUDED_LETTERS)

    @property
    def body_glyphs(self) -> tuple[str, ...]:
        """Glyphs legal at positions 3-7: letters minus I/O, plus digits."""
        return self.body_letters + self.digits


DEFAULT_ALPHABET = PlateAlphabet()


def label_errors(text: str, alphabet: PlateAlphabet = DEFAULT_ALPHABET) -> list[str]:
    """Return human-readable grammar violations for ``text`` (empty if valid)."""
    problems = []
    if len(text) != LABEL_LENGTH:
        problems.append(f"expected {LABEL_LENGTH} glyphs, got {len(text)}")
        return problems
    if text[0] not in alphabet.province_glyphs:
        problems.append(f"position 1 {text[0]!r} is not a province glyph")
    if text[1] not in alphabet.body_letters:
        problems.append(f"position 2 {text[1]!r} is not a letter (I/O excluded)")
    for pos in range(2, LABEL_LENGTH):
        if text[pos] not in alphabet.body_glyphs:
            problems.append(
                f"position {pos + 1} {text[pos]!r} is not a letter/digit (I/O excluded)"
            )
    return problems


def is_valid_label(text: str, alphabet: PlateAlphabet = DEFAULT_ALPHABET) -> bool:
    return not label_errors(text, alphabet)


def sample_label(seed: int, alphabet: PlateAlphabet = DEFAULT_ALPHABET) -> str:
    """Draw one grammatical 7-glyph label, a pure function of ``seed``.

    Provinces are sampled uniformly over all 31 glyphs; position 2 uniformly
    over the 24 allowed letters; positions 3-7 uniformly over the 34 allowed
    letters-or-digits.
    """
    rng = np.random.default_rng(seed)
    body = alphabet.body_glyphs
    chars = [
        alphabet.province_glyphs[rng.integers(len(alphabet.province_glyphs))],
        alphabet.body_letters[rng.integers(len(alphabet.body_letters))],
    ]
    chars.extend(body[rng.integers(len(body))] for _ in range(LABEL_LENGTH - 2))
    return "".join(chars)
