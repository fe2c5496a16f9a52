"""
Two-strand intersections with the diagonal of Sym^2(C)

A homotopy of strand pairs is given in the chart (a, b) = (x_- + x_+, x_- x_+);
the pair collides exactly where the discriminant a^2 - 4b vanishes. Zeros are
located by per-cell winding numbers on the sampling grid, refined by
subdivision and signed by the Jacobian of the discriminant field, which is
cross-checked against the 4x4 transversality determinant.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from utils.hofer.link_params import LinkParams, LinkParamsError, WeightPair, eta_diff

from .parallel_cells import ParallelCellProcessor

logger = logging.getLogger(__name__)

DEGENERATE = "degenerate"
# argument given to grid nodes where the discriminant vanishes; any value that is
# not a multiple of pi/4 keeps the zero inside exactly one adjacent cell
NODE_ZERO_ARGUMENT = 1.0

Sampler = Callable[[float, float], Tuple[complex, complex]]


class HomotopyError(ValueError):
    """The homotopy violates the assumptions of the intersection count"""


@dataclass(frozen=True)
class ChartPoint:
    """Unordered strand pair {x_-, x_+} as the coefficients of X^2 - aX + b"""
    a: complex
    b: complex

    def strand_pair(self) -> Tuple[complex, complex]:
        root = cmath.sqrt(discriminant(self))
        return (self.a - root) / 2, (self.a + root) / 2


@dataclass(frozen=True)
class IntersectionRecord:
    cell: Tuple[int, int]
    location_estimate: Tuple[float, float]
    sign: int


class Homotopy:
    """
    Map [0,1]^2 -> Sym^2(C) sampled on an (M+1) x (N+1) grid

    a[i, j] and b[i, j] are the chart coordinates at (s, t) = (i/M, j/N).
    Between grid nodes the map is the analytic sampler when one is attached,
    otherwise the bilinear interpolation of the grids.
    """

    def __init__(self, M: int, N: int, a: np.ndarray, b: np.ndarray,
                 sampler: Optional[Sampler] = None):
        if M < 1 or N < 1:
            raise HomotopyError(f"grid size must be positive, got M={M}, N={N}")
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if a.shape != (M + 1, N + 1) or b.shape != (M + 1, N + 1):
            raise HomotopyError(
                f"grids must have shape {(M + 1, N + 1)}, got a{a.shape} and b{b.shape}"
            )
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise HomotopyError("grid contains non-finite values")
        self.M = M
        self.N = N
        self.a = a
        self.b = b
        self.sampler = sampler

    def evaluate(self, s: float, t: float) -> ChartPoint:
        if self.sampler is not None:
            a, b = self.sampler(s, t)
            return ChartPoint(complex(a), complex(b))

        x = min(max(s, 0.0), 1.0) * self.M
        y = min(max(t, 0.0), 1.0) * self.N
        i = min(int(math.floor(x)), self.M - 1)
        j = min(int(math.floor(y)), self.N - 1)
        fx, fy = x - i, y - j

        def interpolate(grid: np.ndarray) -> complex:
            return complex(
                (1 - fx) * (1 - fy) * grid[i, j]
                + fx * (1 - fy) * grid[i + 1, j]
                + (1 - fx) * fy * grid[i, j + 1]
                + fx * fy * grid[i + 1, j + 1]
            )

        return ChartPoint(interpolate(self.a), interpolate(self.b))

    def discriminant_grid(self) -> np.ndarray:
        return self.a ** 2 - 4 * self.b


def to_chart(x_minus: complex, x_plus: complex) -> ChartPoint:
    return ChartPoint(x_minus + x_plus, x_minus * x_plus)


def discriminant(pt: ChartPoint) -> complex:
    """a^2 - 4b; zero exactly on the diagonal b = a^2/4"""
    return pt.a ** 2 - 4 * pt.b


def _real_columns(pair: Tuple[complex, complex]) -> List[float]:
    return [pair[0].real, pair[0].imag, pair[1].real, pair[1].imag]


def transversality_sign(du_s: Tuple[complex, complex], du_t: Tuple[complex, complex],
                        a: complex, degenerate_tol: float = 1e-12) -> Union[int, str]:
    """
    Sign of det[du_s, du_t, (1, a/2), (i, ia/2)] as a real 4x4 matrix

    (1, a/2) and (i, ia/2) span the tangent line of the diagonal at the point
    with sum a. Returns DEGENERATE when |det| is below degenerate_tol times the
    product of the column norms.
    """
    du_s = (complex(du_s[0]), complex(du_s[1]))
    du_t = (complex(du_t[0]), complex(du_t[1]))
    a = complex(a)
    columns = [
        _real_columns(du_s),
        _real_columns(du_t),
        _real_columns((1 + 0j, a / 2)),
        _real_columns((1j, 1j * a / 2)),
    ]
    matrix = np.array(columns, dtype=float).T
    det = float(np.linalg.det(matrix))
    scale = float(np.prod(np.linalg.norm(matrix, axis=0)))
    if scale == 0.0 or abs(det) <= degenerate_tol * scale:
        return DEGENERATE
    return 1 if det > 0 else -1


def _edge_increments(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Argument increments in (-pi, pi] along the s edges and the t edges"""
    along_s = np.angle(values[1:, :] / values[:-1, :])
    along_t = np.angle(values[:, 1:] / values[:, :-1])
    return along_s, along_t


def _cell_windings(values: np.ndarray) -> np.ndarray:
    """
    Winding number of every cell, corners visited counter-clockwise in (s, t):
    (i, j) -> (i+1, j) -> (i+1, j+1) -> (i, j+1). Shared edges enter with
    opposite signs, so the windings add up to the boundary winding.
    """
    along_s, along_t = _edge_increments(values)
    total = along_s[:, :-1] + along_t[1:, :] - along_s[:, 1:] - along_t[:-1, :]
    return np.rint(total / (2 * np.pi)).astype(int)


def _move_node_zeros(values: np.ndarray, threshold: float) -> np.ndarray:
    moved = values.copy()
    mask = np.abs(moved) <= threshold
    if np.any(mask):
        moved[mask] = max(threshold, np.finfo(float).tiny) * np.exp(1j * NODE_ZERO_ARGUMENT)
    return moved


def _boundary_values(values: np.ndarray) -> np.ndarray:
    """Boundary samples counter-clockwise from (0, 0), first point repeated at the end"""
    return np.concatenate([
        values[:, 0],
        values[-1, 1:],
        values[-2::-1, -1],
        values[0, -2::-1],
    ])


def _field_scale(values: np.ndarray) -> float:
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        raise HomotopyError("discriminant vanishes on the whole grid")
    return scale


def _check_boundary(values: np.ndarray, zero_eps: float) -> None:
    threshold = zero_eps * _field_scale(values)
    boundary = _boundary_values(values)
    if np.any(np.abs(boundary) <= threshold):
        raise HomotopyError("homotopy meets the diagonal on the boundary of [0,1]^2")


def boundary_winding(h: Homotopy, zero_eps: float = 1e-12) -> int:
    """
    Winding number of the discriminant along the boundary of [0,1]^2

    Raises:
        HomotopyError: If the boundary touches the diagonal or one sampling step
            turns the argument by more than pi/2
    """
    values = h.discriminant_grid()
    _check_boundary(values, zero_eps)
    boundary = _boundary_values(values)
    increments = np.angle(boundary[1:] / boundary[:-1])
    worst = float(np.max(np.abs(increments)))
    if worst > np.pi / 2:
        raise HomotopyError(
            f"boundary undersampled: argument jumps by {worst:.3f} rad in one step"
        )
    return int(np.rint(np.sum(increments) / (2 * np.pi)))


def _partials(h: Homotopy, s: float, t: float, step: float):
    """Central differences of (a, b), one-sided at the edges of the square"""
    s_lo, s_hi = max(s - step, 0.0), min(s + step, 1.0)
    t_lo, t_hi = max(t - step, 0.0), min(t + step, 1.0)
    p_s_hi, p_s_lo = h.evaluate(s_hi, t), h.evaluate(s_lo, t)
    p_t_hi, p_t_lo = h.evaluate(s, t_hi), h.evaluate(s, t_lo)
    du_s = ((p_s_hi.a - p_s_lo.a) / (s_hi - s_lo), (p_s_hi.b - p_s_lo.b) / (s_hi - s_lo))
    du_t = ((p_t_hi.a - p_t_lo.a) / (t_hi - t_lo), (p_t_hi.b - p_t_lo.b) / (t_hi - t_lo))
    return du_s, du_t


def jacobian_sign(h: Homotopy, s: float, t: float, step: float,
                  degenerate_tol: float = 1e-12) -> Union[int, str]:
    """Sign of det D(discriminant o h) at (s, t) as a map R^2 -> R^2"""
    du_s, du_t = _partials(h, s, t, step)
    a = h.evaluate(s, t).a
    dd_s = 2 * a * du_s[0] - 4 * du_s[1]
    dd_t = 2 * a * du_t[0] - 4 * du_t[1]
    det = dd_s.real * dd_t.imag - dd_s.imag * dd_t.real
    if abs(det) <= degenerate_tol * abs(dd_s) * abs(dd_t) or det == 0:
        return DEGENERATE
    return 1 if det > 0 else -1


class _CellRefiner:
    """Subdivides one flagged grid cell until every zero inside is isolated"""

    def __init__(self, h: Homotopy, zero_eps: float, tol: float,
                 max_depth: int, degenerate_tol: float):
        self.h = h
        self.zero_eps = zero_eps
        self.tol = tol
        self.max_depth = max_depth
        self.degenerate_tol = degenerate_tol
        self.step = min(1.0 / h.M, 1.0 / h.N) * 1e-3

    def _sample(self, s_values: Sequence[float], t_values: Sequence[float]) -> np.ndarray:
        values = np.array(
            [[discriminant(self.h.evaluate(s, t)) for t in t_values] for s in s_values],
            dtype=complex,
        )
        # relative to the local magnitude, which shrinks with the cell
        scale = float(np.max(np.abs(values)))
        if scale == 0.0:
            raise HomotopyError("discriminant vanishes on a whole cell")
        return _move_node_zeros(values, self.zero_eps * scale)

    def __call__(self, cell: Tuple[int, int]) -> List[IntersectionRecord]:
        i, j = cell
        h = self.h
        stack = [(i / h.M, (i + 1) / h.M, j / h.N, (j + 1) / h.N, 0)]
        records: List[IntersectionRecord] = []

        while stack:
            s0, s1, t0, t1, depth = stack.pop()
            sm, tm = (s0 + s1) / 2, (t0 + t1) / 2

            if math.hypot(s1 - s0, t1 - t0) < self.tol:
                winding = int(_cell_windings(self._sample((s0, s1), (t0, t1)))[0, 0])
                if abs(winding) != 1:
                    raise HomotopyError(
                        f"winding {winding} near ({sm:.9f}, {tm:.9f}) in cell {cell}: "
                        "intersection is not transverse or zeros cluster below tolerance"
                    )
                records.append(self._record(cell, sm, tm, winding))
                continue

            if depth >= self.max_depth:
                raise HomotopyError(
                    f"cell {cell} not resolved after {self.max_depth} subdivisions"
                )

            windings = _cell_windings(self._sample((s0, sm, s1), (t0, tm, t1)))
            for (di, dj), winding in np.ndenumerate(windings):
                if winding != 0:
                    stack.append((
                        (s0, sm)[di], (sm, s1)[di],
                        (t0, tm)[dj], (tm, t1)[dj],
                        depth + 1,
                    ))

        return records

    def _record(self, cell, s: float, t: float, winding: int) -> IntersectionRecord:
        sign = jacobian_sign(self.h, s, t, self.step, self.degenerate_tol)
        du_s, du_t = _partials(self.h, s, t, self.step)
        geometric = transversality_sign(du_s, du_t, self.h.evaluate(s, t).a, self.degenerate_tol)
        if sign == DEGENERATE or geometric == DEGENERATE:
            raise HomotopyError(f"degenerate intersection at ({s:.9f}, {t:.9f})")
        if sign != geometric or sign != winding:
            raise HomotopyError(
                f"inconsistent signs at ({s:.9f}, {t:.9f}): jacobian {sign}, "
                f"transversality {geometric}, winding {winding}"
            )
        logger.debug("intersection at (%.9f, %.9f) in cell %s, sign %+d", s, t, cell, sign)
        return IntersectionRecord(cell=cell, location_estimate=(s, t), sign=sign)


def signed_intersections(h: Homotopy, tol: float = 1e-9, zero_eps: float = 1e-12,
                         max_depth: int = 60, max_workers: int = 4,
                         degenerate_tol: float = 1e-12) -> Tuple[List[IntersectionRecord], int]:
    """
    Locate and sign every intersection of the homotopy with the diagonal

    Args:
        h: Sampled homotopy, boundary off the diagonal
        tol: Final cell diameter in (s, t) units
        zero_eps: Values below zero_eps * max|discriminant| count as zero
        max_depth: Subdivision limit per grid cell
        max_workers: Thread pool size for refining flagged cells
        degenerate_tol: Relative determinant size below which a sign is degenerate

    Returns:
        Records sorted by cell, and the signed total

    Raises:
        HomotopyError: Boundary zero, unresolved or non-transverse zero, or
            disagreeing sign computations
    """
    if tol <= 0:
        raise HomotopyError(f"tol must be positive, got {tol}")

    values = h.discriminant_grid()
    _check_boundary(values, zero_eps)
    threshold = zero_eps * _field_scale(values)

    windings = _cell_windings(_move_node_zeros(values, threshold))
    flagged = [(int(i), int(j)) for i, j in zip(*np.nonzero(windings))]
    logger.info("%d of %d cells carry nonzero winding", len(flagged), h.M * h.N)

    refiner = _CellRefiner(h, zero_eps, tol, max_depth, degenerate_tol)
    records = ParallelCellProcessor(max_workers=max_workers).process_cells(flagged, refiner)
    records.sort(key=lambda r: (r.cell, r.location_estimate))
    total = sum(r.sign for r in records)
    logger.info("%d intersections, signed total %+d", len(records), total)
    return records, total


def action_difference(params: LinkParams, pair: WeightPair, n_delta: int,
                      m: Sequence[int]) -> Fraction:
    """
    (1/(k+g)) * [(eta_{s_2} - eta_{s_1}) n_delta + sum_j m_j (s_{2,j} - s_{1,j})]

    n_delta is the signed diagonal count of the capping, m_j its signed winding
    across the disc glued at boundary j.
    """
    if len(m) != params.p:
        raise LinkParamsError(f"m needs {params.p} entries, got {len(m)}")
    area = sum(
        (int(m_j) * (s2 - s1) for m_j, s1, s2 in zip(m, pair.v1.s, pair.v2.s)),
        Fraction(0),
    )
    return (eta_diff(params, pair) * int(n_delta) + area) / params.strands
