"""
Built-in homotopies into Sym^2(C) and the homotopy JSON file format

File format: {"M": int, "N": int, "a": [[re, im], ...], "b": [[re, im], ...]}
with (M+1)*(N+1) entries per grid in row-major order (s index outer).
"""
import json
import logging
import math
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np

from .sym_product import Homotopy, HomotopyError, Sampler

logger = logging.getLogger(__name__)


def homotopy_from_sampler(fn: Sampler, M: int, N: int) -> Homotopy:
    """Sample fn(s, t) -> (a, b) on the (M+1) x (N+1) grid and keep fn for refinement"""
    a = np.empty((M + 1, N + 1), dtype=complex)
    b = np.empty((M + 1, N + 1), dtype=complex)
    for i in range(M + 1):
        for j in range(N + 1):
            a[i, j], b[i, j] = fn(i / M, j / N)
    return Homotopy(M, N, a, b, sampler=fn)


def _check_grid(M: int, N: int) -> None:
    if M < 2 or N < 2:
        raise HomotopyError(f"models need M, N >= 2, got M={M}, N={N}")


def _centered(x: float) -> float:
    """Affine map [0, 1] -> [-1, 1]"""
    return 2 * x - 1


def elementary_model(M: int, N: int) -> Homotopy:
    """The strand pair +-sqrt(s + it) over [-1, 1]^2: (a, b) = (0, -(s + it)); one positive crossing"""
    _check_grid(M, N)
    return homotopy_from_sampler(
        lambda s, t: (0j, -complex(_centered(s), _centered(t))), M, N
    )


def mirrored_elementary_model(M: int, N: int) -> Homotopy:
    """(a, b) = (0, -(s - it)) over [-1, 1]^2; one negative crossing"""
    _check_grid(M, N)
    return homotopy_from_sampler(
        lambda s, t: (0j, -complex(_centered(s), -_centered(t))), M, N
    )


def sigma_contraction_model(M: int, N: int) -> Homotopy:
    """
    Contraction of the half twist: (a, b) = (0, -c) with
    c(s, t) = (1 - s) e^{2 pi i t} + s - 1/2, colliding once at (3/4, 1/2)
    """
    _check_grid(M, N)

    def sampler(s: float, t: float) -> Tuple[complex, complex]:
        c = (1 - s) * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)) + s - 0.5
        return 0j, -c

    return homotopy_from_sampler(sampler, M, N)


def polynomial_field_model(roots: Sequence[complex], conjugate_flags: Sequence[bool],
                           M: int, N: int) -> Homotopy:
    """
    Homotopy whose discriminant is prod_r (z - r), with the factor conjugated
    where the flag is set, z = s + it; zeros at the roots with sign +1 or -1
    """
    _check_grid(M, N)
    if len(roots) != len(conjugate_flags):
        raise HomotopyError("roots and conjugate_flags must have the same length")
    roots = [complex(r) for r in roots]
    flags = [bool(f) for f in conjugate_flags]

    def sampler(s: float, t: float) -> Tuple[complex, complex]:
        z = complex(s, t)
        d = 1 + 0j
        for r, conj in zip(roots, flags):
            d *= (z - r).conjugate() if conj else z - r
        return 0j, -d / 4

    return homotopy_from_sampler(sampler, M, N)


def constant_model(M: int, N: int, value: complex = 1 + 0j) -> Homotopy:
    """Discriminant constantly equal to value; no crossings for value != 0"""
    _check_grid(M, N)
    return homotopy_from_sampler(lambda s, t: (0j, -complex(value) / 4), M, N)


def _encode_grid(grid: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in grid.reshape(-1)]


def _decode_grid(entries, M: int, N: int, name: str) -> np.ndarray:
    try:
        flat = np.array([complex(float(re), float(im)) for re, im in entries], dtype=complex)
    except (TypeError, ValueError) as e:
        raise HomotopyError(f"grid '{name}' must be a list of [re, im] pairs: {e}") from e
    if flat.size != (M + 1) * (N + 1):
        raise HomotopyError(
            f"grid '{name}' has {flat.size} entries, expected {(M + 1) * (N + 1)}"
        )
    return flat.reshape(M + 1, N + 1)


def homotopy_from_dict(data: dict) -> Homotopy:
    try:
        M, N = int(data["M"]), int(data["N"])
        a_entries, b_entries = data["a"], data["b"]
    except KeyError as e:
        raise HomotopyError(f"homotopy file is missing '{e.args[0]}'") from e
    except (TypeError, ValueError) as e:
        raise HomotopyError(f"malformed homotopy header: {e}") from e
    return Homotopy(M, N, _decode_grid(a_entries, M, N, "a"), _decode_grid(b_entries, M, N, "b"))


def homotopy_to_dict(h: Homotopy) -> dict:
    return {"M": h.M, "N": h.N, "a": _encode_grid(h.a), "b": _encode_grid(h.b)}


def load_homotopy(path: Union[str, Path]) -> Homotopy:
    """
    Load a sampled homotopy; between nodes it is interpolated bilinearly

    Raises:
        FileNotFoundError: If the file does not exist
        HomotopyError: If the JSON is invalid or the grids are malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Homotopy file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise HomotopyError(f"Invalid JSON in homotopy file: {e}") from e
    h = homotopy_from_dict(data)
    logger.info("loaded %dx%d homotopy from %s", h.M, h.N, path)
    return h


def save_homotopy(h: Homotopy, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(homotopy_to_dict(h), f)
