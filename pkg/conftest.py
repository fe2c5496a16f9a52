"""Shared fixtures and hypothesis strategies for the test suites"""
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from utils.braids.braid_types import (
    AlphabetMode,
    BraidWord,
    GroupSignature,
    Letter,
    LetterKind,
)
from utils.hofer.link_params import LinkParams, WeightPair, sample_weight_vector


def lambda_in_range(k: int, numerator: int, denominator: int, area: Fraction = Fraction(1)) -> Fraction:
    """Point of [A/(k+1), A/k) at relative position numerator/denominator"""
    low, high = area / (k + 1), area / k
    return low + (high - low) * Fraction(numerator, denominator)


@st.composite
def link_params(draw, max_k=5, max_g=3, max_p=4):
    k = draw(st.integers(2, max_k))
    g = draw(st.integers(0, max_g))
    p = draw(st.integers(1, max_p))
    denominator = draw(st.integers(1, 60))
    numerator = draw(st.integers(0, denominator - 1))
    return LinkParams(k=k, g=g, p=p, lam=lambda_in_range(k, numerator, denominator))


def restricted_letters(signature: GroupSignature):
    k = signature.contractible
    choices = [(LetterKind.SIGMA, i) for i in range(1, k)]
    for i in range(1, signature.genus + 1):
        choices += [(LetterKind.A, i), (LetterKind.C, i)]
    choices += [(LetterKind.Z, j) for j in range(1, signature.punctures)]
    return choices


def letters_strategy(signature: GroupSignature, max_exponent: int = 3):
    choices = restricted_letters(signature)
    exponents = st.integers(-max_exponent, max_exponent).filter(lambda e: e != 0)
    return st.builds(
        lambda choice, e: Letter(choice[0], choice[1], e),
        st.sampled_from(choices),
        exponents,
    )


def words(signature: GroupSignature, max_length: int = 40, max_exponent: int = 3):
    return st.lists(letters_strategy(signature, max_exponent), max_size=max_length).map(
        lambda letters: BraidWord(signature, tuple(letters), AlphabetMode.RESTRICTED)
    )


def sigma_words(signature: GroupSignature, max_length: int = 12):
    letters = st.builds(
        Letter,
        st.just(LetterKind.SIGMA),
        st.integers(1, signature.contractible - 1),
        st.sampled_from([-1, 1]),
    )
    return st.lists(letters, max_size=max_length).map(
        lambda ls: BraidWord(signature, tuple(ls), AlphabetMode.RESTRICTED)
    )


@st.composite
def params_with_word(draw, max_length=40):
    params = draw(link_params())
    signature = GroupSignature.for_link(params.k, params.g, params.p)
    return params, draw(words(signature, max_length))


@st.composite
def weight_pairs(draw, params: LinkParams):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = random.Random(seed)
    return WeightPair(sample_weight_vector(params, rng), sample_weight_vector(params, rng))


def random_link_params(rng: random.Random, max_k=5, max_g=3, max_p=4) -> LinkParams:
    k = rng.randint(2, max_k)
    denominator = rng.randint(1, 60)
    return LinkParams(
        k=k,
        g=rng.randint(0, max_g),
        p=rng.randint(1, max_p),
        lam=lambda_in_range(k, rng.randint(0, denominator - 1), denominator),
    )


def random_word(rng: random.Random, signature: GroupSignature, max_length=40, max_exponent=3) -> BraidWord:
    choices = restricted_letters(signature)
    letters = []
    for _ in range(rng.randint(0, max_length)):
        kind, index = rng.choice(choices)
        exponent = rng.choice([e for e in range(-max_exponent, max_exponent + 1) if e != 0])
        letters.append(Letter(kind, index, exponent))
    return BraidWord(signature, tuple(letters), AlphabetMode.RESTRICTED)


@pytest.fixture
def worked_params():
    """k=2, g=1, p=1, lambda=2/5"""
    return LinkParams(k=2, g=1, p=1, lam=Fraction(2, 5))


@pytest.fixture
def worked_params_p2():
    return LinkParams(k=2, g=1, p=2, lam=Fraction(2, 5))


@pytest.fixture
def disc_params():
    """k=3, g=0, p=1, lambda=3/10"""
    return LinkParams(k=3, g=0, p=1, lam=Fraction(3, 10))
