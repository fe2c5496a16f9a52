"""Data classes and type definitions for surface braid words"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple


class BraidWordError(ValueError):
    """Invalid braid word or letter"""


class WordSyntaxError(BraidWordError):
    """Word text does not follow the letter grammar"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LetterRangeError(BraidWordError):
    """Generator index outside the range allowed by the signature"""


class AlphabetError(BraidWordError):
    """Letter not allowed in the word's alphabet mode"""


class LetterKind(Enum):
    SIGMA = "s"
    A = "a"
    B = "b"
    C = "c"
    Z = "z"


class AlphabetMode(Enum):
    # sigma, a, c = b^-1 a b and z only; sigma restricted to the contractible circles
    RESTRICTED = "restricted"
    FULL = "full"


@dataclass(frozen=True)
class GroupSignature:
    """
    Surface braid group B_{n,g,p}: n strands on a genus g surface with p boundary components
    """
    n_strands: int
    genus: int
    punctures: int

    def __post_init__(self):
        if self.n_strands < 1:
            raise BraidWordError(f"n_strands must be >= 1, got {self.n_strands}")
        if self.genus < 0:
            raise BraidWordError(f"genus must be >= 0, got {self.genus}")
        if self.punctures < 1:
            raise BraidWordError(f"punctures must be >= 1, got {self.punctures}")

    @classmethod
    def for_link(cls, k: int, g: int, p: int) -> "GroupSignature":
        """Signature of a link with k contractible and g non-contractible circles"""
        return cls(n_strands=k + g, genus=g, punctures=p)

    @property
    def contractible(self) -> int:
        """k = n_strands - genus, the strands allowed to exchange in restricted mode"""
        return self.n_strands - self.genus

    def index_bound(self, kind: LetterKind, mode: AlphabetMode) -> int:
        """Largest admissible index for a letter kind (0 means no index is admissible)"""
        if kind is LetterKind.SIGMA:
            if mode is AlphabetMode.RESTRICTED:
                return max(self.contractible - 1, 0)
            return self.n_strands - 1
        if kind is LetterKind.Z:
            return self.punctures - 1
        return self.genus


@dataclass(frozen=True)
class Letter:
    """A generator raised to a nonzero power"""
    kind: LetterKind
    index: int
    exponent: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise LetterRangeError(f"letter index must be positive, got {self.index}")
        if self.exponent == 0:
            raise BraidWordError("letter exponent must be nonzero")

    @property
    def generator(self) -> Tuple[LetterKind, int]:
        return (self.kind, self.index)

    def inverse(self) -> "Letter":
        return Letter(self.kind, self.index, -self.exponent)

    def with_exponent(self, exponent: int) -> "Letter":
        return Letter(self.kind, self.index, exponent)

    def __str__(self) -> str:
        base = f"{self.kind.value}{self.index}"
        return base if self.exponent == 1 else f"{base}^{self.exponent}"


@dataclass(frozen=True)
class BraidWord:
    """Unreduced sequence of letters over a group signature"""
    signature: GroupSignature
    letters: Tuple[Letter, ...] = ()
    alphabet_mode: AlphabetMode = AlphabetMode.RESTRICTED

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            check_letter(letter, self.signature, self.alphabet_mode)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters)

    def is_sigma_only(self) -> bool:
        return all(letter.kind is LetterKind.SIGMA for letter in self.letters)


@dataclass(frozen=True)
class ExponentSummary:
    """
    Exponent sums (k_gen, k_sigma, k_1..k_p) of a restricted word; k[p-1] is always 0
    """
    k_gen: int
    k_sigma: int
    k: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(self.k))
        if self.k and self.k[-1] != 0:
            raise BraidWordError("the last puncture slot of an exponent summary must be 0")

    @classmethod
    def zero(cls, punctures: int) -> "ExponentSummary":
        return cls(0, 0, (0,) * punctures)

    def __add__(self, other: "ExponentSummary") -> "ExponentSummary":
        if len(self.k) != len(other.k):
            raise BraidWordError("cannot add summaries over different puncture counts")
        return ExponentSummary(
            self.k_gen + other.k_gen,
            self.k_sigma + other.k_sigma,
            tuple(x + y for x, y in zip(self.k, other.k)),
        )

    def __neg__(self) -> "ExponentSummary":
        return ExponentSummary(-self.k_gen, -self.k_sigma, tuple(-x for x in self.k))

    def scaled(self, factor: int) -> "ExponentSummary":
        return ExponentSummary(
            factor * self.k_gen, factor * self.k_sigma, tuple(factor * x for x in self.k)
        )


def check_letter(letter: Letter, signature: GroupSignature, mode: AlphabetMode,
                 position: Optional[int] = None) -> None:
    """
    Validate a letter against a signature and alphabet mode

    Raises:
        AlphabetError: Letter kind forbidden in the mode (b in restricted mode)
        LetterRangeError: Index outside the admissible range
    """
    where = "" if position is None else f" (at position {position})"
    if mode is AlphabetMode.RESTRICTED and letter.kind is LetterKind.B:
        raise AlphabetError(f"letter {letter} is not allowed in restricted mode{where}")
    bound = signature.index_bound(letter.kind, mode)
    if letter.index > bound:
        if bound == 0:
            raise LetterRangeError(
                f"letter {letter} has no admissible index for {signature}{where}"
            )
        raise LetterRangeError(
            f"{letter.kind.name.lower()} index must be <= {bound}, got {letter.index}{where}"
        )
