"""
Consistency suite behind `check-relations`: the last-puncture relation, the
generator values, their action-difference derivation and the monotone cappings
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from utils.braids.braid_core import exponent_summary, z_last_word
from utils.braids.braid_types import (
    AlphabetMode,
    BraidWord,
    ExponentSummary,
    GroupSignature,
    Letter,
    LetterKind,
)
from utils.symprod.sym_product import action_difference

from .helpers import debug_print
from .hofer_functionals import (
    f_generator,
    f_max_closed,
    f_max_lp,
    f_value,
    theorem_generator_values,
    z_generator_via_eta,
)
from .link_params import (
    LinkParams,
    WeightPair,
    check_monotone_cappings,
    eta,
    eta_diff,
    general_monotonicity_check,
    link_components,
    sample_weight_pair,
)

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _single_letter_word(signature: GroupSignature, letter: Letter) -> BraidWord:
    return BraidWord(signature, (letter,), AlphabetMode.RESTRICTED)


def restricted_generators(params: LinkParams) -> List[Letter]:
    """sigma_1..sigma_{k-1}, a_i, c_i (i <= g) and z_1..z_{p-1}"""
    letters = [Letter(LetterKind.SIGMA, i) for i in range(1, params.k)]
    for i in range(1, params.g + 1):
        letters.append(Letter(LetterKind.A, i))
        letters.append(Letter(LetterKind.C, i))
    letters.extend(Letter(LetterKind.Z, j) for j in range(1, params.p))
    return letters


def _check_over_pairs(name: str, pairs: List[WeightPair],
                      predicate: Callable[[WeightPair], bool]) -> CheckResult:
    failures = [pair for pair in pairs if not predicate(pair)]
    if failures:
        logger.debug("%s failed on %s", name, failures[0])
        return CheckResult(name, False, f"{len(failures)}/{len(pairs)} weight pairs fail")
    return CheckResult(name, True, f"{len(pairs)} weight pairs")


def run_relation_checks(params: LinkParams, samples: int = 100, seed: int = 0,
                        max_denominator: int = 50) -> List[CheckResult]:
    """
    Run every identity on random exact weight pairs

    Args:
        params: Validated link parameters
        samples: Number of random weight pairs
        seed: Seed for the weight sampler
        max_denominator: Largest integer barycentric weight drawn
    """
    rng = random.Random(seed)
    pairs = [sample_weight_pair(params, rng, max_denominator) for _ in range(samples)]
    signature = GroupSignature.for_link(params.k, params.g, params.p)
    n = params.strands
    results: List[CheckResult] = []

    z_last = exponent_summary(z_last_word(signature))
    results.append(_check_over_pairs(
        "last puncture relation",
        pairs,
        lambda pair: f_value(params, pair, z_last)
        == (pair.v2.s[-1] - pair.v1.s[-1]) / n,
    ))

    generators = restricted_generators(params)

    def generators_match(pair: WeightPair) -> bool:
        return all(
            f_generator(params, pair, letter)
            == f_value(params, pair, exponent_summary(_single_letter_word(signature, letter)))
            for letter in generators
        )

    results.append(_check_over_pairs("generator values", pairs, generators_match))

    def a_c_antisymmetric(pair: WeightPair) -> bool:
        return all(
            f_generator(params, pair, Letter(LetterKind.A, i))
            == -f_generator(params, pair, Letter(LetterKind.C, i))
            == 2 * eta_diff(params, pair) / n
            for i in range(1, params.g + 1)
        )

    results.append(_check_over_pairs("f(a_i) = -f(c_i) = 2 d_eta/(k+g)", pairs, a_c_antisymmetric))

    def z_via_eta(pair: WeightPair) -> bool:
        for j in range(1, params.p):
            alt = z_generator_via_eta(params, pair, j)
            if alt is not None and alt != f_generator(params, pair, Letter(LetterKind.Z, j)):
                return False
        return True

    results.append(_check_over_pairs("z_j through eta shift", pairs, z_via_eta))

    zero_m = [0] * params.p

    def action_reproduces(pair: WeightPair) -> bool:
        if params.k >= 2 and action_difference(params, pair, -1, zero_m) != \
                f_generator(params, pair, Letter(LetterKind.SIGMA, 1)):
            return False
        if params.g >= 1:
            if action_difference(params, pair, 2, zero_m) != f_generator(params, pair, Letter(LetterKind.A, 1)):
                return False
            if action_difference(params, pair, -2, zero_m) != f_generator(params, pair, Letter(LetterKind.C, 1)):
                return False
        for j in range(1, params.p):
            m = [1 if i == j - 1 else 0 for i in range(params.p)]
            if action_difference(params, pair, 0, m) != f_generator(params, pair, Letter(LetterKind.Z, j)):
                return False
        return True

    results.append(_check_over_pairs("action difference", pairs, action_reproduces))

    sigma_value, a_value, c_value = theorem_generator_values(params)
    explicit_ok = True
    zero_summary = ExponentSummary.zero(params.p)
    for letter, expected in (
        (Letter(LetterKind.SIGMA, 1), sigma_value),
        (Letter(LetterKind.A, 1), a_value),
        (Letter(LetterKind.C, 1), c_value),
    ):
        if letter.kind is not LetterKind.SIGMA and params.g == 0:
            continue
        summary = exponent_summary(_single_letter_word(signature, letter))
        closed, _ = f_max_closed(params, summary)
        oracle, _ = f_max_lp(params, summary)
        explicit_ok &= closed == oracle == expected
    explicit_ok &= f_max_closed(params, zero_summary)[0] == 0
    results.append(CheckResult(
        "explicit generator maxima",
        explicit_ok,
        f"f(sigma) = {sigma_value}, f(a) = f(c) = {a_value}",
    ))

    monotone = all(
        check_monotone_cappings(params, total)
        and general_monotonicity_check(link_components(params, total), params.lam, eta(params, total))
        for total in (Fraction(0), params.s_max / 2, params.s_max)
    )
    results.append(CheckResult("monotone cappings", monotone, "s in {0, s_max/2, s_max}"))

    for result in results:
        debug_print(f"  {'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    return results
