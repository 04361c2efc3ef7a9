import json

from latticetri.exact import Matrix
from latticetri.fixtures import (
    FIXTURES,
    SIGNED_A,
    SIGNED_B,
    cyclic_generators,
    export_fixtures,
    load_fixture_data,
    run_fixtures,
)


def test_builtin_fixtures_pass():
    results = run_fixtures()
    assert [r.name for r in results] == list(FIXTURES)
    for r in results:
        assert r.passed, r.diff()


def test_cyclic_generators_shape():
    gens = cyclic_generators(4)
    assert gens[0] == Matrix.outer([1, 0, 0, 0], [0, 1, 0, 0])
    assert gens[3] == Matrix.outer([0, 0, 0, 1], [1, 0, 0, 0])


def test_signed_pair_squares_to_zero():
    for x in (SIGNED_A, SIGNED_B):
        for y in (SIGNED_A, SIGNED_B):
            assert (x @ y).is_zero()
    assert not SIGNED_A.is_nonnegative()


def test_export_then_load_round_trip(tmp_path):
    paths = export_fixtures(tmp_path)
    assert len(paths) == 6
    assert load_fixture_data(tmp_path) == load_fixture_data(None)
    assert all(r.passed for r in run_fixtures(tmp_path))


def test_corrupted_matrix_reports_diff(tmp_path):
    export_fixtures(tmp_path)
    path = tmp_path / "signed-square-zero" / "B.json"
    path.write_text(json.dumps(Matrix.identity(4).to_json()), encoding="utf-8")
    results = {r.name: r for r in run_fixtures(tmp_path)}
    assert results["cyclic-nilpotents"].passed
    bad = results["signed-square-zero"]
    assert not bad.passed
    assert any("expected" in line for line in bad.diff())


def test_fixture_error_is_a_failure(tmp_path):
    export_fixtures(tmp_path)
    (tmp_path / "cyclic-nilpotents" / "A1.json").write_text(
        json.dumps(Matrix([[0, -1, 0, 0]] + [[0] * 4] * 3).to_json()), encoding="utf-8"
    )
    results = {r.name: r for r in run_fixtures(tmp_path)}
    assert not results["cyclic-nilpotents"].passed


def test_subset_by_name():
    assert [r.name for r in run_fixtures(names=["signed-square-zero"])] == ["signed-square-zero"]
