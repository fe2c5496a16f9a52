"""
Braid word parser
Turns ASCII words such as "s1 s2^-1 c1 z1^3" into BraidWord objects
"""
import re
from typing import List

from .braid_types import (
    AlphabetMode,
    BraidWord,
    GroupSignature,
    Letter,
    LetterKind,
    WordSyntaxError,
    check_letter,
)

_LETTER_RE = re.compile(r"([sabcz])([0-9]+)(?:\^([+-]?[0-9]+))?")
_SPACE_RE = re.compile(r"\s*")

_KINDS = {kind.value: kind for kind in LetterKind}


class BraidWordParser:
    """Parses the letter grammar: word := (letter WS*)*, letter := base ("^" signed-int)?"""

    def __init__(self, signature: GroupSignature, mode: AlphabetMode = AlphabetMode.RESTRICTED):
        self.signature = signature
        self.mode = mode

    def parse(self, text: str) -> BraidWord:
        """Parse text exactly as written (no reduction), validating every index"""
        letters: List[Letter] = []
        pos = _SPACE_RE.match(text, 0).end()

        while pos < len(text):
            match = _LETTER_RE.match(text, pos)
            if not match:
                raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)

            kind_text, index_text, exponent_text = match.groups()
            index = int(index_text)
            if index < 1:
                raise WordSyntaxError("generator index must be a positive integer", match.start(2))

            if exponent_text is None:
                exponent = 1
            else:
                exponent = int(exponent_text)
                if exponent == 0:
                    raise WordSyntaxError("exponent must be nonzero", match.start(3))

            letter = Letter(_KINDS[kind_text], index, exponent)
            check_letter(letter, self.signature, self.mode, position=pos)
            letters.append(letter)

            pos = _SPACE_RE.match(text, match.end()).end()

        return BraidWord(self.signature, tuple(letters), self.mode)


def parse_word(text: str, signature: GroupSignature,
               mode: AlphabetMode = AlphabetMode.RESTRICTED) -> BraidWord:
    return BraidWordParser(signature, mode).parse(text)


def format_word(word: BraidWord) -> str:
    """Render a word back into the grammar (inverse of parse_word)"""
    return str(word)
