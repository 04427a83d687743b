from __future__ import annotations

import json

import pytest

from gosset import cli


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("GOSSET_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_writes_cache(capsys, cache_dir):
    code, out, _ = run(capsys, "catalog", "--kind", "lines", "--r", "8")
    assert code == 0 and out == "count: 240\n"
    first = (cache_dir / "lines_r8.jsonl").read_bytes()
    code, out, err = run(capsys, "catalog", "--kind", "lines", "--r", "8")
    assert code == 0 and "cache verified" in err
    assert (cache_dir / "lines_r8.jsonl").read_bytes() == first
    assert run(capsys, "catalog", "--kind", "rulings", "--r", "7")[1] == "count: 126\n"


def test_corrupted_cache_is_an_invariant_failure(capsys, cache_dir):
    run(capsys, "catalog", "--kind", "lines", "--r", "6")
    p = cache_dir / "lines_r6.jsonl"
    lines = p.read_text().splitlines()
    p.write_text("\n".join(lines[:-1]) + "\n")
    assert run(capsys, "catalog", "--kind", "lines", "--r", "6")[0] == cli.EXIT_INVARIANT


@pytest.mark.parametrize("argv,expected", [
    (["inscribed", "--r", "8", "--n", "3", "--b", "1", "--centers-only"], "17520\n"),
    (["inscribed", "--r", "7", "--n", "3", "--b", "1", "--centers-only"], "1\n"),
])
def test_inscribed_centers(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_inscribed_streams_pairs(capsys):
    code, out, _ = run(capsys, "inscribed", "--r", "8", "--n", "1", "--b", "3")
    assert code == 0 and len(out.splitlines()) == 120


def test_inscribed_classify(capsys):
    code, out, _ = run(capsys, "inscribed", "--r", "8", "--n", "3", "--classify", "--sample", "30", "--seed", "5")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(rows) == 30 and {r["tag"] for r in rows} <= {"cornered", "uncornered"}


def test_infeasible_triple_is_usage_error(capsys):
    code, out, err = run(capsys, "inscribed", "--r", "8", "--n", "8", "--b", "1")
    assert code == cli.EXIT_USAGE and out == "" and "degree 1 needs" in err


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == cli.EXIT_USAGE
    assert run(capsys, "catalog", "--kind", "lines", "--r", "9")[0] == cli.EXIT_USAGE
    assert run(capsys, "--help")[0] == 0


def test_graph_table_csv(capsys):
    code, out, _ = run(capsys, "graph", "--r", "6", "--table", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "r,polytope,expected,computed,pass"
    code, out, _ = run(capsys, "graph", "--r", "8", "--v", "3")
    assert json.loads(out)["edges"] == 120


def test_steiner_and_fano(capsys):
    code, out, _ = run(capsys, "steiner", "--name", "SA2S7")
    obj = json.loads(out)
    assert code == 0 and obj["name"] == "SA2S7" and len(obj["blocks"]) == 28
    code, out, _ = run(capsys, "fano", "--sample", "3")
    assert code == 0 and all(json.loads(x)["steiner_237"] for x in out.splitlines())


def test_cubes(capsys):
    code, out, _ = run(capsys, "cubes", "--r", "7")
    assert code == 0 and json.loads(out)["dimension"] == 3


def test_verify_small_rank(capsys):
    code, out, err = run(capsys, "verify", "--scope", "all", "--r", "6")
    report = json.loads(out)
    assert code == 0 and report["passed"] and not report["failing"]
    assert "[tables]" in err


def test_verify_reports_failures(capsys, monkeypatch):
    from gosset import inscribed
    monkeypatch.setitem(inscribed.CENTER_TABLE_LOW, (6, 1), 28)
    code, out, err = run(capsys, "verify", "--scope", "tables", "--r", "6", "--format", "csv")
    assert code == cli.EXIT_FAIL
    assert "centers A1^6(1),false,\"expected 28, computed 27\"" in out and "FAIL" in err


def test_export(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "--out", str(tmp_path / "x"), "--ranks", "5")
    assert code == 0
    names = out.split()
    assert "lines_r5.jsonl" in names and "subpolytopes_r5.csv" in names and "SC4S7.json" in names
