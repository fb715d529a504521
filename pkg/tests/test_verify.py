from __future__ import annotations

import json

from coincidence.verify import load_corpus, run_corpus, run_fixture


def test_corpus_passes_and_external_rows_are_skipped():
    results = run_corpus()
    assert [r.id for r in results] == sorted(r.id for r in results)
    assert not [r for r in results if r.status == "FAILED"]
    skipped = [r for r in results if r.status == "SKIPPED"]
    assert skipped and all(r.id.startswith("padic.table_row.") for r in skipped)


def test_every_fixture_records_its_basis():
    for fx in load_corpus():
        assert fx["basis"] and fx["citation"], fx["id"]


def test_runner_is_deterministic():
    assert run_corpus(workers=1) == run_corpus(workers=4)


def test_external_image_enables_a_table_row(tmp_path):
    # a surjective mod-5 image stands in for externally supplied data
    (tmp_path / "11.a2.json").write_text(
        json.dumps({"p": 5, "depth": 1, "group": {"modulus": 5, "generators": [[2, 0, 0, 1], [1, 1, 0, 1], [0, 4, 1, 0]]}})
    )
    results = {r.id: r for r in run_corpus(tmp_path)}
    # GL2(5) has u = (1, 1), which is the printed row for 11.a2
    assert results["padic.table_row.11.a2"].status == "PASSED"
    assert results["padic.table_row.11.a1"].status == "SKIPPED"


def test_mismatch_is_reported_as_failure():
    fx = {"id": "x", "kind": "gl2_order", "inputs": {"n": 2}, "expected": 7}
    result = run_fixture(fx)
    assert result.status == "FAILED" and "got 6" in result.detail
