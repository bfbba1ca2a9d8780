"""Bigram tables of letter sequences."""

import re
import unicodedata
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):  # type: ignore[no-redef]
        __str__ = str.__str__
        __format__ = str.__format__
from pathlib import Path

import numpy as np

from contingency_table import (
    ContingencyTable,
    EmptyTextError,
    UnmappableEncodingError,
    normalize,
)

SPACE = " "
ALPHABET = "abcdefghijklmnopqrstuvwxyz"
_LETTERS = frozenset(ALPHABET)
_BLANK_RUN = re.compile(" {2,}")


class AlphabetPolicy(StrEnum):
    OBSERVED = "observed"
    FULL = "full"


def tokenize(text: str) -> list[str]:
    """Lower-cased letters a-z and single blanks.

    Accents are folded by NFD decomposition and removal of combining marks;
    any other character becomes a blank, and runs of blanks collapse into
    one. A text opening or closing on a separator keeps one blank there.
    """
    decomposed = unicodedata.normalize("NFD", text.lower())
    kept = (
        ch if ch in _LETTERS else SPACE
        for ch in decomposed
        if not unicodedata.combining(ch)
    )
    return list(_BLANK_RUN.sub(SPACE, "".join(kept)))


def bigram_table(
    text: str, alphabet_policy: AlphabetPolicy = AlphabetPolicy.OBSERVED
) -> ContingencyTable:
    """Normalized counts of successive token pairs.

    Args:
        text: Raw text.
        alphabet_policy: `observed` indexes the types occurring in the text,
            `full` the blank and the 26 letters.

    Raises:
        EmptyTextError: Fewer than two tokens remain.
    """
    tokens = tokenize(text)
    if len(tokens) < 2:
        raise EmptyTextError(f"text yields {len(tokens)} token(s), need at least 2")
    if AlphabetPolicy(alphabet_policy) is AlphabetPolicy.FULL:
        types = [SPACE, *ALPHABET]
    else:
        types = sorted(set(tokens))
    index = {token: i for i, token in enumerate(types)}
    codes = np.array([index[token] for token in tokens], dtype=np.intp)
    counts = np.zeros((len(types), len(types)))
    np.add.at(counts, (codes[:-1], codes[1:]), 1.0)
    return normalize(counts, types, types, allow_zero_lines=True)


def ingest_text(
    path: str | Path, alphabet_policy: AlphabetPolicy = AlphabetPolicy.OBSERVED
) -> ContingencyTable:
    """Bigram table of a UTF-8 text file.

    Raises:
        UnmappableEncodingError: The file is not valid UTF-8.
        EmptyTextError: Fewer than two tokens remain.
    """
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UnmappableEncodingError(f"{path}: not valid UTF-8 ({exc.reason})") from exc
    return bigram_table(text, alphabet_policy)


__all__ = [
    "ALPHABET",
    "SPACE",
    "AlphabetPolicy",
    "bigram_table",
    "ingest_text",
    "tokenize",
]
