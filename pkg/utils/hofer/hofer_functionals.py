"""
The homomorphisms f_{v1,v2} on the link braid group, their maximum over V x V
(closed form and vertex-enumeration oracle) and the Hofer-norm lower bounds
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from utils.braids.braid_core import (
    concat_words,
    exponent_summary,
    invert_word,
    linking_number,
)
from utils.braids.braid_types import (
    AlphabetMode,
    AlphabetError,
    BraidWord,
    BraidWordError,
    ExponentSummary,
    Letter,
    LetterKind,
)

from .link_params import (
    LinkParams,
    LinkParamsError,
    WeightPair,
    WeightVector,
    eta_diff,
    weight_vertices,
)

logger = logging.getLogger(__name__)


class OracleMismatchError(RuntimeError):
    """Closed-form maximum and vertex enumeration disagree"""


@dataclass(frozen=True)
class BoundReport:
    """Hofer-norm lower bound for one braid word"""
    f_max: Fraction
    argmax_pair: WeightPair
    summary: ExponentSummary
    per_term: Dict[str, Fraction] = field(default_factory=dict)

    @property
    def half_bound(self) -> Fraction:
        return self.f_max / 2

    @property
    def asymptotic_bound(self) -> Fraction:
        return self.half_bound


def _check_summary(params: LinkParams, summary: ExponentSummary) -> None:
    if len(summary.k) != params.p:
        raise LinkParamsError(
            f"summary has {len(summary.k)} puncture slots, parameters have p = {params.p}"
        )


def f_value(params: LinkParams, pair: WeightPair, summary: ExponentSummary) -> Fraction:
    """
    f_{v1,v2} on a braid with the given exponent sums:
    (k+g) f = (s_1 - s_2)/(2(k+2g-1)) (2 k_gen - k_sigma) + sum_j k_j (s_{2,j} - s_{1,j})
    """
    _check_summary(params, summary)
    shift = eta_diff(params, pair) * (2 * summary.k_gen - summary.k_sigma)
    area = sum(
        (k_j * (s2 - s1) for k_j, s1, s2 in zip(summary.k, pair.v1.s, pair.v2.s)),
        Fraction(0),
    )
    return (shift + area) / params.strands


def f_generator(params: LinkParams, pair: WeightPair, letter: Letter) -> Fraction:
    """
    Value of f_{v1,v2} on a single (powered) generator

    Raises:
        AlphabetError: For b letters, on which f_{v1,v2} is not defined
    """
    d_eta = eta_diff(params, pair)
    n = params.strands
    if letter.kind is LetterKind.A:
        unit = 2 * d_eta / n
    elif letter.kind is LetterKind.C:
        unit = -2 * d_eta / n
    elif letter.kind is LetterKind.SIGMA:
        unit = -d_eta / n
    elif letter.kind is LetterKind.Z:
        j = letter.index - 1
        unit = (pair.v2.s[j] - pair.v1.s[j]) / n
    else:
        raise AlphabetError(f"f is not defined on {letter}; b_i is outside the link braid group")
    return letter.exponent * unit


def summary_terms(params: LinkParams, summary: ExponentSummary) -> Dict[str, Fraction]:
    """R, S, T and D = (2 k_gen - k_sigma)/(2(k+2g-1)); k_max/k_min include the zero slot"""
    _check_summary(params, summary)
    d = Fraction(2 * summary.k_gen - summary.k_sigma, 2 * params.euler_term)
    k_max = max(summary.k)
    k_min = min(summary.k)
    return {
        "R": Fraction(k_max - k_min),
        "S": k_max - d,
        "T": d - k_min,
        "D": d,
    }


def f_max_closed(params: LinkParams, summary: ExponentSummary) -> Tuple[Fraction, WeightPair]:
    """
    max over V x V of |f_{v1,v2}| = s_max/(k+g) * max{R, S, T}

    The witness puts all mass of v2 on the first slot with k_j = k_max (when
    k_max > D) and all mass of v1 on the first slot with k_j = k_min (when
    D > k_min), so f_value(witness) is the positive maximum.
    """
    terms = summary_terms(params, summary)
    value = params.s_max / params.strands * max(terms["R"], terms["S"], terms["T"])

    j_max = summary.k.index(max(summary.k))
    j_min = summary.k.index(min(summary.k))
    v2 = WeightVector.vertex(params.p, j_max, params.s_max) if terms["S"] > 0 \
        else WeightVector.zero(params.p)
    v1 = WeightVector.vertex(params.p, j_min, params.s_max) if terms["T"] > 0 \
        else WeightVector.zero(params.p)
    return value, WeightPair(v1, v2)


def vertex_sweep(params: LinkParams, summary: ExponentSummary) -> List[Tuple[WeightPair, Fraction]]:
    """f_value at all (p+1)^2 vertex pairs, in enumeration order"""
    vertices = weight_vertices(params)
    return [
        (WeightPair(v1, v2), f_value(params, WeightPair(v1, v2), summary))
        for v1, v2 in itertools.product(vertices, repeat=2)
    ]


def f_max_lp(params: LinkParams, summary: ExponentSummary) -> Tuple[Fraction, WeightPair]:
    """
    Oracle: |f_{v1,v2}| is the absolute value of a linear function on the
    polytope V x V, so its maximum sits on a vertex pair
    """
    best_value: Optional[Fraction] = None
    best_pair: Optional[WeightPair] = None
    for pair, value in vertex_sweep(params, summary):
        if best_value is None or abs(value) > best_value:
            best_value, best_pair = abs(value), pair
    return best_value, best_pair


def f_max_checked(params: LinkParams, summary: ExponentSummary) -> Tuple[Fraction, WeightPair]:
    """
    Closed-form maximum after agreement with the oracle

    Raises:
        OracleMismatchError: If the two maxima differ
    """
    closed, witness = f_max_closed(params, summary)
    oracle, oracle_pair = f_max_lp(params, summary)
    if closed != oracle:
        raise OracleMismatchError(
            f"closed form {closed} != vertex oracle {oracle} for {summary} at {params}"
        )
    if abs(f_value(params, witness, summary)) != closed:
        raise OracleMismatchError(f"witness {witness} does not attain {closed}")
    logger.debug("f_max = %s (oracle argmax %s)", closed, oracle_pair)
    return closed, witness


def _require_restricted(word: BraidWord) -> None:
    if word.alphabet_mode is not AlphabetMode.RESTRICTED:
        raise BraidWordError("bounds need a restricted-mode word of the link braid group")


def hofer_lower_bound(params: LinkParams, word: BraidWord) -> BoundReport:
    """
    ||phi|| >= (1/2) max |f_{v1,v2}(b(phi))|; the same half-maximum bounds the
    asymptotic Hofer norm and the braid pseudonorm
    """
    _require_restricted(word)
    summary = exponent_summary(word)
    f_max, witness = f_max_checked(params, summary)
    return BoundReport(
        f_max=f_max,
        argmax_pair=witness,
        summary=summary,
        per_term=summary_terms(params, summary),
    )


def hofer_distance_bound(params: LinkParams, word_phi: BraidWord, word_psi: BraidWord) -> BoundReport:
    """d_H(phi, psi) >= (1/2) max |f_{v1,v2}(b(phi) b(psi)^-1)|"""
    _require_restricted(word_phi)
    _require_restricted(word_psi)
    return hofer_lower_bound(params, concat_words(word_phi, invert_word(word_psi)))


def disc_lk_bound(params: LinkParams, word: BraidWord) -> Fraction:
    """
    Disc-supported braids: ||phi|| >= 1/(4(k+g)) * ((k+1)lam - A)/(k+2g-1) * |lk(h)|

    Raises:
        BraidWordError: If the word has non-sigma letters
    """
    lk = linking_number(word)
    return params.s_max / (4 * params.strands * params.euler_term) * abs(lk)


def theorem_generator_values(params: LinkParams) -> Tuple[Fraction, Fraction, Fraction]:
    """Explicit maxima f(sigma_j), f(a_i), f(c_i) = ((k+1)lam - A)/(2(k+g)(k+2g-1)) * (1, 2, 2)"""
    sigma = params.s_max / (2 * params.strands * params.euler_term)
    return sigma, 2 * sigma, 2 * sigma


def z_generator_via_eta(params: LinkParams, pair: WeightPair, j: int) -> Optional[Fraction]:
    """
    f(z_j) through the eta shift: -2 (eta_2 - eta_1)(k+2g-1)/(k+g) * (s_{2,j} - s_{1,j})/(s_2 - s_1);
    None when s_1 = s_2 (j is 1-based)
    """
    s1, s2 = pair.v1.total, pair.v2.total
    if s1 == s2:
        return None
    d_eta = eta_diff(params, pair)
    ratio = (pair.v2.s[j - 1] - pair.v1.s[j - 1]) / (s2 - s1)
    return -2 * d_eta * params.euler_term / params.strands * ratio
