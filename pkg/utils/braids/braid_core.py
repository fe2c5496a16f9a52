"""
Braid word operations: free reduction, expansion of c_i, exponent sums,
linking number, the last puncture loop and disc braid-relation moves
"""
import logging
from typing import List, Sequence

from .braid_types import (
    AlphabetMode,
    BraidWord,
    BraidWordError,
    ExponentSummary,
    GroupSignature,
    Letter,
    LetterKind,
)

logger = logging.getLogger(__name__)


def _merge_mode(*words: BraidWord) -> AlphabetMode:
    if all(w.alphabet_mode is AlphabetMode.RESTRICTED for w in words):
        return AlphabetMode.RESTRICTED
    return AlphabetMode.FULL


def _require_same_signature(words: Sequence[BraidWord]) -> GroupSignature:
    signature = words[0].signature
    for word in words[1:]:
        if word.signature != signature:
            raise BraidWordError(
                f"words live in different groups: {signature} vs {word.signature}"
            )
    return signature


def concat_words(*words: BraidWord) -> BraidWord:
    """Product w1 * w2 * ... (letters concatenated, nothing reduced)"""
    if not words:
        raise BraidWordError("concat_words needs at least one word")
    signature = _require_same_signature(words)
    letters = tuple(letter for word in words for letter in word.letters)
    return BraidWord(signature, letters, _merge_mode(*words))


def invert_word(word: BraidWord) -> BraidWord:
    letters = tuple(letter.inverse() for letter in reversed(word.letters))
    return BraidWord(word.signature, letters, word.alphabet_mode)


def power_word(word: BraidWord, n: int) -> BraidWord:
    """w^n for any integer n (n = 0 gives the identity)"""
    base = word if n >= 0 else invert_word(word)
    return BraidWord(word.signature, base.letters * abs(n), word.alphabet_mode)


def free_reduce(word: BraidWord) -> BraidWord:
    """Merge adjacent powers of the same generator and drop cancelled pairs"""
    stack: List[Letter] = []
    for letter in word.letters:
        if stack and stack[-1].generator == letter.generator:
            exponent = stack[-1].exponent + letter.exponent
            stack.pop()
            if exponent != 0:
                stack.append(letter.with_exponent(exponent))
        else:
            stack.append(letter)
    return BraidWord(word.signature, tuple(stack), word.alphabet_mode)


def expand_restricted(word: BraidWord) -> BraidWord:
    """
    Spell every c_i^e as b_i^-1 a_i^e b_i; the result is a FULL-mode word

    Raises:
        BraidWordError: If the word is not in restricted mode
    """
    if word.alphabet_mode is not AlphabetMode.RESTRICTED:
        raise BraidWordError("expand_restricted expects a restricted-mode word")

    letters: List[Letter] = []
    for letter in word.letters:
        if letter.kind is LetterKind.C:
            letters.extend([
                Letter(LetterKind.B, letter.index, -1),
                Letter(LetterKind.A, letter.index, letter.exponent),
                Letter(LetterKind.B, letter.index, 1),
            ])
        else:
            letters.append(letter)
    return BraidWord(word.signature, tuple(letters), AlphabetMode.FULL)


def exponent_summary(word: BraidWord) -> ExponentSummary:
    """
    Exponent sums of a restricted word

    k_gen counts a_i with +exponent and c_i with -exponent, so a_i and c_i^-1
    contribute alike; k_sigma sums the sigma exponents; k[j] sums the z_{j+1}
    exponents, the last slot (z_p) stays 0.

    Raises:
        BraidWordError: If the word is not in restricted mode
    """
    if word.alphabet_mode is not AlphabetMode.RESTRICTED:
        raise BraidWordError("exponent sums are only defined for restricted-mode words")

    k_gen = 0
    k_sigma = 0
    k = [0] * word.signature.punctures
    for letter in word.letters:
        if letter.kind is LetterKind.A:
            k_gen += letter.exponent
        elif letter.kind is LetterKind.C:
            k_gen -= letter.exponent
        elif letter.kind is LetterKind.SIGMA:
            k_sigma += letter.exponent
        elif letter.kind is LetterKind.Z:
            k[letter.index - 1] += letter.exponent
    return ExponentSummary(k_gen, k_sigma, tuple(k))


def linking_number(word: BraidWord) -> int:
    """
    Image of a disc braid under sigma_i -> 1

    Raises:
        BraidWordError: If a non-sigma letter is present
    """
    if not word.is_sigma_only():
        raise BraidWordError("linking number is only defined for sigma-only words")
    return sum(letter.exponent for letter in word.letters)


def full_twist_letters(k: int) -> List[Letter]:
    """sigma_1 sigma_2 ... sigma_{k-1}^2 ... sigma_2 sigma_1 (empty when k = 1)"""
    if k < 2:
        return []
    up = [Letter(LetterKind.SIGMA, i) for i in range(1, k - 1)]
    middle = [Letter(LetterKind.SIGMA, k - 1, 2)]
    return up + middle + list(reversed(up))


def z_last_word(signature: GroupSignature) -> BraidWord:
    """
    Loop z_p around the last puncture, written in the restricted alphabet

    From [a_1,b_1^-1]...[a_g,b_g^-1] = D z_1^-1 ... z_p^-1 with
    D = sigma_1...sigma_{k-1}^2...sigma_1 and [a_i, b_i^-1] = a_i c_i^-1:
        z_p = (a_1 c_1^-1 ... a_g c_g^-1)^-1 D z_1^-1 ... z_{p-1}^-1
            = c_g a_g^-1 ... c_1 a_1^-1 D z_1^-1 ... z_{p-1}^-1
    """
    k = signature.contractible
    g = signature.genus
    letters: List[Letter] = []
    for i in range(g, 0, -1):
        letters.append(Letter(LetterKind.C, i, 1))
        letters.append(Letter(LetterKind.A, i, -1))
    letters.extend(full_twist_letters(k))
    letters.extend(Letter(LetterKind.Z, j, -1) for j in range(1, signature.punctures))
    return BraidWord(signature, tuple(letters), AlphabetMode.RESTRICTED)


def braid_relation_moves(word: BraidWord) -> List[BraidWord]:
    """
    Every word reachable by one disc braid relation at some position

    Far commutation sigma_i^e sigma_j^f <-> sigma_j^f sigma_i^e (|i-j| > 1) and
    sigma_i sigma_{i+1} sigma_i <-> sigma_{i+1} sigma_i sigma_{i+1}, the latter also
    with all three exponents -1.

    Raises:
        BraidWordError: If a non-sigma letter is present
    """
    if not word.is_sigma_only():
        raise BraidWordError("braid relation moves apply to sigma-only words")

    letters = word.letters
    results: List[BraidWord] = []
    seen = set()

    def emit(new_letters):
        key = tuple(new_letters)
        if key != letters and key not in seen:
            seen.add(key)
            results.append(BraidWord(word.signature, key, word.alphabet_mode))

    for pos in range(len(letters) - 1):
        x, y = letters[pos], letters[pos + 1]
        if abs(x.index - y.index) > 1:
            emit(letters[:pos] + (y, x) + letters[pos + 2:])

    for pos in range(len(letters) - 2):
        x, y, z = letters[pos:pos + 3]
        if not (x.exponent == y.exponent == z.exponent and abs(x.exponent) == 1):
            continue
        if x.index == z.index and abs(x.index - y.index) == 1:
            swapped = (
                Letter(LetterKind.SIGMA, y.index, x.exponent),
                Letter(LetterKind.SIGMA, x.index, x.exponent),
                Letter(LetterKind.SIGMA, y.index, x.exponent),
            )
            emit(letters[:pos] + swapped + letters[pos + 3:])

    logger.debug("%d braid relation moves from %s", len(results), word)
    return results
