"""
Test the Sym^2(C) chart, transversality signs and the signed intersection count
"""
import json
import random

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from utils.symprod.homotopy_models import (
    constant_model,
    elementary_model,
    homotopy_from_sampler,
    load_homotopy,
    mirrored_elementary_model,
    polynomial_field_model,
    save_homotopy,
    sigma_contraction_model,
)
from utils.symprod.parallel_cells import ParallelCellProcessor
from utils.symprod.sym_product import (
    DEGENERATE,
    ChartPoint,
    Homotopy,
    HomotopyError,
    boundary_winding,
    discriminant,
    signed_intersections,
    to_chart,
    transversality_sign,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def test_to_chart_examples():
    assert to_chart(1, -1) == ChartPoint(0, -1)
    assert to_chart(0, 3 + 2j) == ChartPoint(3 + 2j, 0)
    w = 0.3 + 0.2j
    assert to_chart(w, w) == ChartPoint(2 * w, w * w)
    assert discriminant(to_chart(w, w)) == 0


@given(complexes, complexes)
def test_to_chart_is_symmetric(x, y):
    assert to_chart(x, y) == to_chart(y, x)


@given(complexes, complexes)
def test_strand_pair_recovers_roots(x, y):
    a, b = sorted(to_chart(x, y).strand_pair(), key=lambda z: (z.real, z.imag))
    expected = sorted([x, y], key=lambda z: (z.real, z.imag))
    scale = 1 + abs(x) + abs(y)
    assert abs(a - expected[0]) + abs(b - expected[1]) < 1e-5 * scale or \
        abs(a - expected[1]) + abs(b - expected[0]) < 1e-5 * scale


def test_discriminant_examples():
    assert discriminant(ChartPoint(0, -(0.25 + 0.5j))) == 4 * (0.25 + 0.5j)
    assert discriminant(ChartPoint(2, 0)) == 4


def test_transversality_sign_examples():
    assert transversality_sign((0, -1), (0, -1j), 0) == 1
    assert transversality_sign((0, 1), (0, 1j), 0) == 1
    assert transversality_sign((0, -1), (0, 1j), 0) == -1
    assert transversality_sign((1, 2j), (1, 2j), 0.5) == DEGENERATE
    # a tangent direction of the diagonal is not transverse
    assert transversality_sign((1, 0.25), (0, -1j), 0.5) == DEGENERATE


@given(complexes, complexes, complexes, complexes, complexes, complexes)
def test_sign_matches_discriminant_jacobian(a, da_s, db_s, da_t, db_t, shift):
    dd_s = 2 * a * da_s - 4 * db_s
    dd_t = 2 * a * da_t - 4 * db_t
    det = dd_s.real * dd_t.imag - dd_s.imag * dd_t.real
    assume(abs(det) > 1e-3 * (1 + abs(dd_s) * abs(dd_t)))
    expected = 1 if det > 0 else -1
    assert transversality_sign((da_s, db_s), (da_t, db_t), a) == expected
    # moving along the diagonal's tangent line leaves the sign alone
    moved = (da_s + shift, db_s + shift * a / 2)
    assert transversality_sign(moved, (da_t, db_t), a) == expected


@pytest.mark.parametrize("grid", [8, 9, 16, 64, 256])
def test_elementary_model_has_one_positive_crossing(grid):
    h = elementary_model(grid, grid)
    records, total = signed_intersections(h)
    assert len(records) == 1
    assert records[0].sign == 1
    assert total == 1
    s, t = records[0].location_estimate
    assert abs(s - 0.5) < 1e-6 and abs(t - 0.5) < 1e-6
    assert boundary_winding(h) == 1


def test_mirrored_model_is_negative():
    h = mirrored_elementary_model(32, 32)
    records, total = signed_intersections(h)
    assert [r.sign for r in records] == [-1]
    assert boundary_winding(h) == total == -1


def test_sigma_contraction_model():
    h = sigma_contraction_model(256, 256)
    records, total = signed_intersections(h)
    assert len(records) == 1
    assert abs(total) == 1
    s, t = records[0].location_estimate
    assert abs(s - 0.75) < 1e-6
    assert abs(t - 0.5) < 1e-6
    assert boundary_winding(h) == total


def test_constant_model_has_no_crossings():
    h = constant_model(16, 16, 2 - 1j)
    assert signed_intersections(h) == ([], 0)
    assert boundary_winding(h) == 0


def test_cancelling_pair():
    h = polynomial_field_model([0.3 + 0.45j, 0.7 + 0.55j], [False, True], 64, 64)
    records, total = signed_intersections(h)
    assert [r.sign for r in records] == [1, -1]
    assert total == 0
    assert boundary_winding(h) == 0


def _separated_roots(rng: random.Random, count: int, separation: float = 0.1):
    roots = []
    while len(roots) < count:
        z = complex(rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8))
        if all(abs(z - r) >= separation for r in roots):
            roots.append(z)
    return roots


def test_random_polynomial_fields_match_boundary_winding():
    rng = random.Random(31)
    for _ in range(50):
        count = rng.randint(1, 5)
        roots = _separated_roots(rng, count)
        flags = [rng.random() < 0.5 for _ in roots]
        h = polynomial_field_model(roots, flags, 64, 64)
        records, total = signed_intersections(h)
        assert len(records) == count
        assert total == sum(-1 if flag else 1 for flag in flags)
        assert boundary_winding(h) == total
        for record in records:
            s, t = record.location_estimate
            nearest = min(range(count), key=lambda i: abs(complex(s, t) - roots[i]))
            assert abs(complex(s, t) - roots[nearest]) < 1e-6
            assert record.sign == (-1 if flags[nearest] else 1)


def test_zero_on_boundary_is_rejected():
    h = polynomial_field_model([0.5j], [False], 16, 16)
    with pytest.raises(HomotopyError, match="boundary"):
        signed_intersections(h)
    with pytest.raises(HomotopyError, match="boundary"):
        boundary_winding(h)


def test_undersampled_boundary_is_rejected():
    with pytest.raises(HomotopyError, match="undersampled"):
        boundary_winding(sigma_contraction_model(2, 2))


def test_double_zero_is_not_transverse():
    h = polynomial_field_model([0.45 + 0.55j, 0.45 + 0.55j], [False, False], 16, 16)
    with pytest.raises(HomotopyError):
        signed_intersections(h)
    assert boundary_winding(h) == 2


def test_records_do_not_depend_on_worker_count():
    h = polynomial_field_model([0.3 + 0.3j, 0.6 + 0.7j, 0.7 + 0.25j], [False, True, False], 48, 48)
    serial = signed_intersections(h, max_workers=1)
    parallel = signed_intersections(h, max_workers=8)
    assert serial == parallel


def test_parallel_processor_merges_in_cell_order():
    processor = ParallelCellProcessor(max_workers=4)
    out = processor.process_cells([(2, 0), (0, 1), (1, 1), (0, 1)], lambda cell: [cell])
    assert out == [(0, 1), (1, 1), (2, 0)]
    with pytest.raises(ValueError):
        ParallelCellProcessor(max_workers=0)


def test_bilinear_evaluate_hits_grid_nodes():
    h = homotopy_from_sampler(lambda s, t: (s + 1j * t, s * t), 4, 4)
    plain = Homotopy(h.M, h.N, h.a, h.b)
    assert plain.evaluate(0.25, 0.75) == ChartPoint(0.25 + 0.75j, 0.1875)
    assert plain.evaluate(0.125, 0) == ChartPoint(0.125, 0)


def test_grid_shape_is_checked():
    with pytest.raises(HomotopyError):
        Homotopy(2, 2, np.zeros((3, 3)), np.zeros((2, 3)))
    with pytest.raises(HomotopyError):
        elementary_model(1, 8)


def test_saved_homotopy_counts_the_same(tmp_path):
    path = tmp_path / "elementary.json"
    save_homotopy(elementary_model(16, 16), path)
    data = json.loads(path.read_text())
    assert data["M"] == 16 and len(data["a"]) == 17 * 17
    loaded = load_homotopy(path)
    assert loaded.sampler is None
    records, total = signed_intersections(loaded)
    assert total == 1
    s, t = records[0].location_estimate
    assert abs(s - 0.5) < 1e-6 and abs(t - 0.5) < 1e-6


def test_load_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_homotopy(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(HomotopyError):
        load_homotopy(bad)
    short = tmp_path / "short.json"
    short.write_text(json.dumps({"M": 2, "N": 2, "a": [[0, 0]] * 4, "b": [[0, 0]] * 9}))
    with pytest.raises(HomotopyError, match="entries"):
        load_homotopy(short)
    missing = tmp_path / "missing_b.json"
    missing.write_text(json.dumps({"M": 2, "N": 2, "a": [[0, 0]] * 9}))
    with pytest.raises(HomotopyError, match="'b'"):
        load_homotopy(missing)
