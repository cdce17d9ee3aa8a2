"""Rule-based sentence segmentation with an abbreviation whitelist.

This is a documented approximation: boundaries are terminator runs followed by
whitespace and a sentence-opening character, vetoed when the preceding word is
a known abbreviation or a single-letter initial. Decimal numbers need no
special case because the period inside them is not followed by whitespace.
"""

import re
from functools import lru_cache

from novelscope.config import load_config_lines

_TERMINATOR_RUN = re.compile(r"[.!?]+")
# Characters that may trail a terminator and still belong to the sentence.
_CLOSERS = ")]\"'”’»"
_OPENERS = "([\"'“‘«"
_WORD_BEFORE = re.compile(r"([A-Za-zÀ-ſ.]+)$")


@lru_cache(maxsize=1)
def default_abbreviations() -> frozenset[str]:
    return frozenset(line.lower() for line in load_config_lines("abbreviations.txt"))


def segment_sentences(
    paragraph: str, abbreviations: frozenset[str] | None = None
) -> list[str]:
    """Split a paragraph into sentences.

    Outputs never contain empty strings and concatenate back to the input
    modulo whitespace.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    if not paragraph.strip():
        return []

    boundaries: list[int] = []
    for match in _TERMINATOR_RUN.finditer(paragraph):
        end = match.end()
        while end < len(paragraph) and paragraph[end] in _CLOSERS:
            end += 1
        if not _is_boundary(paragraph, match, end, abbreviations):
            continue
        boundaries.append(end)

    pieces: list[str] = []
    start = 0
    for cut in boundaries:
        piece = paragraph[start:cut].strip()
        if piece:
            pieces.append(piece)
        start = cut
    tail = paragraph[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def _is_boundary(
    text: str, match: re.Match, end: int, abbreviations: frozenset[str]
) -> bool:
    if end >= len(text):
        return False  # trailing terminator; the tail slice picks it up
    if not text[end].isspace():
        return False
    nxt = _next_nonspace(text, end)
    if nxt is None:
        return False
    if not (nxt.isupper() or nxt.isdigit() or nxt in "⟨" + _OPENERS):
        return False
    if match.group() == ".":
        word = _WORD_BEFORE.search(text[: match.start()])
        if word:
            token = word.group(1)
            if (token.lower() + ".") in abbreviations:
                return False
            # Initials in names: "J. Smith".
            if len(token) == 1 and token.isupper():
                return False
    return True


def _next_nonspace(text: str, idx: int) -> str | None:
    for ch in text[idx:]:
        if not ch.isspace():
            return ch
    return None
