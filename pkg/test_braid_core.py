"""
Test braid word operations: reduction, expansion, exponent sums and relations
"""
import pytest
from hypothesis import given, strategies as st

from conftest import sigma_words, words
from utils.braids.braid_core import (
    braid_relation_moves,
    concat_words,
    expand_restricted,
    exponent_summary,
    free_reduce,
    full_twist_letters,
    invert_word,
    linking_number,
    power_word,
    z_last_word,
)
from utils.braids.braid_types import (
    AlphabetMode,
    BraidWord,
    BraidWordError,
    ExponentSummary,
    GroupSignature,
)
from utils.braids.word_parser import BraidWordParser, format_word, parse_word

SIG = GroupSignature.for_link(3, 2, 3)
DISC = GroupSignature.for_link(4, 0, 1)


def test_free_reduce_merges_and_cancels():
    word = parse_word("s1 s1 s2 s2^-1 s1^-2 z1", SIG)
    assert format_word(free_reduce(word)) == "z1"


def test_free_reduce_keeps_distinct_generators():
    word = parse_word("a1 c1 a1^-1", SIG)
    assert free_reduce(word) == word


def test_expand_restricted_spells_c_through_b():
    expanded = expand_restricted(parse_word("s1 c2^-2", SIG))
    assert expanded.alphabet_mode is AlphabetMode.FULL
    assert format_word(expanded) == "s1 b2^-1 a2^-2 b2"


def test_expand_rejects_full_words():
    full = BraidWordParser(SIG, AlphabetMode.FULL).parse("b1")
    with pytest.raises(BraidWordError):
        expand_restricted(full)


def test_exponent_summary_counts_a_and_c_with_opposite_signs():
    summary = exponent_summary(parse_word("a1^2 c2 s1^-1 s2^3 z1 z2^-2 z1", SIG))
    assert summary == ExponentSummary(k_gen=1, k_sigma=2, k=(2, -2, 0))


def test_exponent_summary_of_worked_word():
    sig = GroupSignature.for_link(2, 1, 2)
    assert exponent_summary(parse_word("s1 z1^2 a1", sig)) == ExponentSummary(1, 1, (2, 0))


def test_exponent_summary_rejects_full_words():
    with pytest.raises(BraidWordError):
        exponent_summary(BraidWordParser(SIG, AlphabetMode.FULL).parse("s1"))


def test_linking_number():
    assert linking_number(parse_word("s1 s2 s3^-1 s2^4", DISC)) == 5
    with pytest.raises(BraidWordError):
        linking_number(parse_word("s1 a1", SIG))


def test_full_twist_letters():
    assert [str(x) for x in full_twist_letters(4)] == ["s1", "s2", "s3^2", "s2", "s1"]
    assert [str(x) for x in full_twist_letters(2)] == ["s1^2"]
    assert full_twist_letters(1) == []


@pytest.mark.parametrize("k, g, p", [(3, 0, 1), (2, 1, 1), (2, 2, 3), (4, 1, 2)])
def test_z_last_summary(k, g, p):
    summary = exponent_summary(z_last_word(GroupSignature.for_link(k, g, p)))
    assert summary.k_gen == -2 * g
    assert summary.k_sigma == 2 * (k - 1)
    assert summary.k == (-1,) * (p - 1) + (0,)


def test_z_last_word_text():
    word = z_last_word(GroupSignature.for_link(3, 1, 2))
    assert format_word(word) == "c1 a1^-1 s1 s2^2 s1 z1^-1"


def test_braid_relation_moves_far_commutation():
    moves = {format_word(w) for w in braid_relation_moves(parse_word("s1 s3^2", DISC))}
    assert moves == {"s3^2 s1"}


def test_braid_relation_moves_three_term():
    moves = {format_word(w) for w in braid_relation_moves(parse_word("s1 s2 s1", DISC))}
    assert "s2 s1 s2" in moves
    moves = {format_word(w) for w in braid_relation_moves(parse_word("s2^-1 s1^-1 s2^-1", DISC))}
    assert "s1^-1 s2^-1 s1^-1" in moves


def test_braid_relation_moves_need_sigma_words():
    with pytest.raises(BraidWordError):
        braid_relation_moves(parse_word("s1 z1", SIG))


def test_concat_rejects_mixed_signatures():
    with pytest.raises(BraidWordError):
        concat_words(parse_word("s1", SIG), parse_word("s1", DISC))


@given(words(SIG), words(SIG))
def test_summary_is_additive(u, v):
    assert exponent_summary(concat_words(u, v)) == exponent_summary(u) + exponent_summary(v)


@given(words(SIG))
def test_summary_of_inverse_and_powers(w):
    assert exponent_summary(invert_word(w)) == -exponent_summary(w)
    assert exponent_summary(power_word(w, 3)) == exponent_summary(w).scaled(3)
    assert exponent_summary(power_word(w, -2)) == exponent_summary(w).scaled(-2)


@given(words(SIG))
def test_free_reduce_preserves_summary_and_is_idempotent(w):
    reduced = free_reduce(w)
    assert exponent_summary(reduced) == exponent_summary(w)
    assert free_reduce(reduced) == reduced
    assert len(reduced) <= len(w)


@given(words(SIG))
def test_word_times_inverse_reduces_to_identity(w):
    assert len(free_reduce(concat_words(w, invert_word(w)))) == 0


@given(sigma_words(DISC))
def test_relation_moves_preserve_linking_number(w):
    lk = linking_number(w)
    for moved in braid_relation_moves(w):
        assert linking_number(moved) == lk


@given(st.integers(2, 6))
def test_full_twist_linking_number(k):
    sig = GroupSignature.for_link(k, 0, 1)
    twist = BraidWord(sig, tuple(full_twist_letters(k)))
    assert linking_number(twist) == 2 * (k - 1)
