"""
Premonotone link parameters: monotonicity constants, the weight simplex V
and monotonicity checks for capping classes and link components
"""
import logging
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .helpers import parse_rational

logger = logging.getLogger(__name__)


class LinkParamsError(ValueError):
    """Invalid premonotone link data or weight vector"""


def _count(value, name: str) -> int:
    """An integer parameter: a JSON int or a plain integer string, never a float or bool"""
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise LinkParamsError(f"link parameter {name} must be an integer, got {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?[0-9]+", text):
            raise LinkParamsError(f"link parameter {name} must be an integer, got {value!r}")
        return int(text)
    return value


@dataclass(frozen=True)
class LinkParams:
    """
    Area data of a premonotone link: k contractible circles bounding discs of
    area lam, g non-contractible circles, p boundary components, total area
    ambient_area
    """
    k: int
    g: int
    p: int
    lam: Fraction
    ambient_area: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "ambient_area", Fraction(self.ambient_area))

    @property
    def s_max(self) -> Fraction:
        """(k+1)*lam - ambient_area, the largest total gluing area"""
        return (self.k + 1) * self.lam - self.ambient_area

    @property
    def strands(self) -> int:
        """k + g"""
        return self.k + self.g

    @property
    def euler_term(self) -> int:
        """k + 2g - 1"""
        return self.k + 2 * self.g - 1

    @classmethod
    def from_dict(cls, data: dict) -> "LinkParams":
        """
        Build from the JSON config schema {"k", "g", "p", "lambda", "area"}

        Raises:
            LinkParamsError: If a key is missing or malformed
        """
        try:
            return cls(
                k=_count(data["k"], "k"),
                g=_count(data.get("g", 0), "g"),
                p=_count(data.get("p", 1), "p"),
                lam=parse_rational(data["lambda"]),
                ambient_area=parse_rational(data.get("area", 1)),
            )
        except KeyError as e:
            raise LinkParamsError(f"missing link parameter: {e.args[0]}") from e
        except (TypeError, ValueError) as e:
            raise LinkParamsError(f"malformed link parameters: {e}") from e

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "g": self.g,
            "p": self.p,
            "lambda": f"{self.lam.numerator}/{self.lam.denominator}",
            "area": f"{self.ambient_area.numerator}/{self.ambient_area.denominator}",
        }


@dataclass(frozen=True)
class WeightVector:
    """Gluing areas (s_1, ..., s_p) of the discs glued along the boundary components"""
    s: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(Fraction(x) for x in self.s))

    @classmethod
    def zero(cls, p: int) -> "WeightVector":
        return cls((Fraction(0),) * p)

    @classmethod
    def vertex(cls, p: int, j: int, height: Fraction) -> "WeightVector":
        """height * e_j (0-based slot j)"""
        return cls(tuple(Fraction(height) if i == j else Fraction(0) for i in range(p)))

    @property
    def total(self) -> Fraction:
        return sum(self.s, Fraction(0))

    def scaled(self, factor: Fraction) -> "WeightVector":
        return WeightVector(tuple(factor * x for x in self.s))


@dataclass(frozen=True)
class WeightPair:
    v1: WeightVector
    v2: WeightVector

    def swapped(self) -> "WeightPair":
        return WeightPair(self.v2, self.v1)

    def scaled(self, factor: Fraction) -> "WeightPair":
        return WeightPair(self.v1.scaled(factor), self.v2.scaled(factor))


@dataclass(frozen=True)
class ComponentData:
    """A connected component of the link complement: boundary count, genus, area"""
    k_i: int
    g_i: int
    area: Fraction


@dataclass(frozen=True)
class CappingClass:
    """Generator of the relative capping classes with its area, diagonal count and Maslov index"""
    name: str
    area: Fraction
    diagonal: int
    maslov: int


def validate(params: LinkParams, strict: bool = False) -> None:
    """
    Check the premonotone invariants

    Args:
        params: Link parameters
        strict: Require lam in the open interval (A/(k+1), A/k) instead of [A/(k+1), A/k)

    Raises:
        LinkParamsError: If any invariant fails
    """
    if params.k < 2:
        raise LinkParamsError(f"k must be >= 2, got {params.k}")
    if params.g < 0:
        raise LinkParamsError(f"g must be >= 0, got {params.g}")
    if params.p < 1:
        raise LinkParamsError(f"p must be >= 1, got {params.p}")
    if params.ambient_area <= 0:
        raise LinkParamsError(f"ambient area must be positive, got {params.ambient_area}")

    low = params.ambient_area / (params.k + 1)
    high = params.ambient_area / params.k
    below = params.lam <= low if strict else params.lam < low
    if below or params.lam >= high:
        bracket = "(" if strict else "["
        raise LinkParamsError(
            f"lambda = {params.lam} must lie in {bracket}{low}, {high})"
        )


def validate_weights(params: LinkParams, v: WeightVector) -> None:
    """
    Raises:
        LinkParamsError: If v has the wrong length, a negative entry or total above s_max
    """
    if len(v.s) != params.p:
        raise LinkParamsError(f"weight vector needs {params.p} entries, got {len(v.s)}")
    if any(x < 0 for x in v.s):
        raise LinkParamsError(f"weights must be non-negative, got {list(map(str, v.s))}")
    if v.total > params.s_max:
        raise LinkParamsError(f"weights sum to {v.total}, above s_max = {params.s_max}")


def eta(params: LinkParams, extra_area: Fraction = Fraction(0)) -> Fraction:
    """
    Monotonicity constant after gluing extra_area onto the surface:
    ((k+1)lam - (A + extra_area)) / (2(k+2g-1))

    Raises:
        LinkParamsError: If extra_area is negative or above s_max
    """
    extra_area = Fraction(extra_area)
    if extra_area < 0:
        raise LinkParamsError(f"extra area must be non-negative, got {extra_area}")
    if extra_area > params.s_max:
        raise LinkParamsError(
            f"extra area {extra_area} exceeds s_max = {params.s_max} (eta would be negative)"
        )
    return (params.s_max - extra_area) / (2 * params.euler_term)


def eta_diff(params: LinkParams, pair: WeightPair) -> Fraction:
    """eta_{s_2} - eta_{s_1} = (s_1 - s_2) / (2(k+2g-1))"""
    return (pair.v1.total - pair.v2.total) / (2 * params.euler_term)


def weight_vertices(params: LinkParams) -> List[WeightVector]:
    """The p+1 vertices of V: the origin, then s_max * e_j for j = 1..p"""
    vertices = [WeightVector.zero(params.p)]
    vertices.extend(WeightVector.vertex(params.p, j, params.s_max) for j in range(params.p))
    return vertices


def barycentric_coordinates(params: LinkParams, v: WeightVector) -> List[Fraction]:
    """
    Coordinates of v over weight_vertices (origin weight first)

    Raises:
        LinkParamsError: If v is not a point of V
    """
    validate_weights(params, v)
    if params.s_max == 0:
        return [Fraction(1)] + [Fraction(0)] * params.p
    coords = [x / params.s_max for x in v.s]
    return [1 - sum(coords, Fraction(0))] + coords


def sample_weight_vector(params: LinkParams, rng: random.Random,
                         max_denominator: int = 50) -> WeightVector:
    """Exact rational point of V from random integer barycentric weights"""
    weights = [rng.randint(0, max_denominator) for _ in range(params.p + 1)]
    if not any(weights):
        weights[0] = 1
    total = sum(weights)
    return WeightVector(tuple(Fraction(w, total) * params.s_max for w in weights[1:]))


def sample_weight_pair(params: LinkParams, rng: random.Random,
                       max_denominator: int = 50) -> WeightPair:
    return WeightPair(
        sample_weight_vector(params, rng, max_denominator),
        sample_weight_vector(params, rng, max_denominator),
    )


def general_monotonicity_check(components: Sequence[ComponentData], lam: Fraction,
                               eta_value: Fraction) -> bool:
    """True iff every component satisfies A_i + 2*eta*(k_i + 2g_i - 1) = lam exactly"""
    for component in components:
        lhs = Fraction(component.area) + 2 * Fraction(eta_value) * (
            component.k_i + 2 * component.g_i - 1
        )
        if lhs != lam:
            logger.debug("component %s fails monotonicity: %s != %s", component, lhs, lam)
            return False
    return True


def link_components(params: LinkParams, extra_area: Fraction = Fraction(0)) -> List[ComponentData]:
    """The k discs of area lam and the big component of area A + extra - k*lam"""
    discs = [ComponentData(k_i=1, g_i=0, area=params.lam) for _ in range(params.k)]
    big = ComponentData(
        k_i=params.k,
        g_i=params.g,
        area=params.ambient_area + Fraction(extra_area) - params.k * params.lam,
    )
    return discs + [big]


def diagonal_count_big_component(k: int, g: int) -> int:
    """
    Diagonal intersections of the big capping class: the branch points of a simple
    (k+g)-fold cover of the sphere by a genus g surface, 2(k+g) - (2 - 2g)
    """
    return 2 * (k + g) - (2 - 2 * g)


def capping_generators(params: LinkParams, extra_area: Fraction = Fraction(0)) -> List[CappingClass]:
    """Generators u_1..u_{k+1} of the capping classes (each of Maslov index 2)"""
    classes = [
        CappingClass(name=f"u{i}", area=params.lam, diagonal=0, maslov=2)
        for i in range(1, params.k + 1)
    ]
    classes.append(CappingClass(
        name=f"u{params.k + 1}",
        area=params.ambient_area + Fraction(extra_area) - params.k * params.lam,
        diagonal=diagonal_count_big_component(params.k, params.g),
        maslov=2,
    ))
    return classes


def check_monotone_cappings(params: LinkParams, extra_area: Fraction = Fraction(0),
                            eta_value: Optional[Fraction] = None) -> bool:
    """area + eta * diagonal = (lam / 2) * maslov on every capping generator"""
    if eta_value is None:
        eta_value = eta(params, extra_area)
    return all(
        c.area + eta_value * c.diagonal == params.lam / 2 * c.maslov
        for c in capping_generators(params, extra_area)
    )
