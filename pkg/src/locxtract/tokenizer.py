"""Tokenizer for preprocessed social-network text.

A token is a maximal run of token characters: Unicode letters, digits,
``-``, ``_``, and ``'`` when flanked by letters on both sides. Everything
else separates tokens and is discarded. The rule set is deliberately small;
it is a pragmatic reconstruction tuned for French social-media posts, not a
full tweet tokenizer:

- hyphens stay inside tokens, so hyphenated multi-word names arrive as one
  token ("Boucle-du-Mouhoun") — route phrases like "Tanwalbougou-Ougarou"
  glue together too, which the recognizer handles by retrying hyphen-split
  parts;
- underscores stay inside tokens ("N_Dorola");
- a letter-flanked apostrophe stays inside the token ("l'axe"), so French
  clitic splitting is left to the matcher's edit-distance tolerance.

No sentence segmentation, lemmatization or tagging happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
import re
from typing import Union

from .textprep import CleanText

__all__ = ["Token", "tokenize"]


@dataclass(frozen=True, slots=True)
class Token:
    """A text fragment with [start, end) character offsets into the clean text."""

    text: str
    start: int
    end: int


# \w covers Unicode letters, digits and underscore; [^\W\d_] is "letter only".
_LETTER = r"[^\W\d_]"
_TOKEN_RE = re.compile(rf"[\w\-]+(?:(?<={_LETTER})'(?={_LETTER})[\w\-]+)*", re.UNICODE)


def tokenize(clean: Union[CleanText, str]) -> list[Token]:
    """Split clean text into offset-carrying tokens.

    Joining the token slices back with the separators between their
    offsets reconstructs the input exactly.

    >>> [t.text for t in tokenize("attaque Boucle-du-Mouhoun.")]
    ['attaque', 'Boucle-du-Mouhoun']
    >>> [t.text for t in tokenize("l'axe Tanwalbougou-Ougarou")]
    ["l'axe", 'Tanwalbougou-Ougarou']
    """
    text = clean.text if isinstance(clean, CleanText) else clean
    return [Token(m.group(0), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]
