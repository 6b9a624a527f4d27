from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from quizzy import cli
from quizzy import reports as R
from quizzy.errors import CacheCorruptionError


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QUIZZY_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_exact_strings():
    assert R.exact_string(Fraction(6, 4)) == "3/2"
    assert R.exact_string(7) == "7"
    with pytest.raises(TypeError):
        R.OrbitalReport("x", "g", 1, 1, "m", 0.5)


def test_cache_roundtrip(isolated_cache):
    cache = R.ResultCache()
    assert cache.directory == isolated_cache
    assert cache.get("fixdim", {"k": 3}) is None
    cache.put("fixdim", {"k": 3}, Fraction(1, 60))
    assert cache.get("fixdim", {"k": 3}) == Fraction(1, 60)
    assert cache.get("fixdim", {"k": 4}) is None
    assert not list(isolated_cache.glob("*.tmp"))


def test_cache_key_is_canonical():
    assert R.ResultCache.key("c", {"a": 1, "b": 2}) == R.ResultCache.key("c", {"b": 2, "a": 1})


@pytest.mark.parametrize("payload", ["not json", '{"key": "other", "num": "1", "den": "1"}',
                                     '{"num": "1"}'])
def test_cache_corruption_is_detected(payload):
    cache = R.ResultCache()
    params = {"category": "NC", "N": 5, "k": 3}
    cache.put("fixdim", params, 5)
    cache.path(cache.key("fixdim", params)).write_text(payload)
    with pytest.raises(CacheCorruptionError):
        cache.get("fixdim", params)


def test_cached_and_uncached_results_agree():
    params = {"group": "H_N+", "N": 5, "k": 3, "space": "segments", "method": "constrained-rank"}
    cache = R.ResultCache()
    first = R.compute("orbitals-quantum", params, cache=cache)
    second = R.compute("orbitals-quantum", params, cache=cache)
    bare = R.compute("orbitals-quantum", params)
    assert first.value == second.value == bare.value == 11


def test_emit_formats():
    reps = [R.OrbitalReport("fixdim", "NC", 5, 3, "gram-rank", 5),
            R.OrbitalReport("fixdim", "NC", 5, 2, "gram-rank", Fraction(1, 2))]
    rows = list(csv.reader(io.StringIO(R.emit(reps, "csv"))))
    assert rows[0] == R.CSV_HEADER
    assert [r[3] for r in rows[1:]] == ["2", "3"]
    assert rows[1][5:8] == ["1/2", "1", "2"]
    lines = [json.loads(x) for x in R.emit(reps, "json").splitlines()]
    assert lines[1]["value"] == "5" and lines[0]["den"] == "2"
    table = R.emit(reps)
    assert table.splitlines()[0].split() == ["computation", "group", "N", "k", "method", "value"]


def test_discrepancy_status():
    d = R.DiscrepancyReport("claim", 41, 45, {"a": 40, "b": 5}, {"rank": 45, "weingarten": 45})
    assert d.status == R.REFUTED and d.complete
    assert R.DiscrepancyReport("c", 45, 45, {}, {"rank": 45}).status == R.CONFIRMED
    assert R.DiscrepancyReport("c", 41, 45, {}, {"rank": 45}).status == R.INCONCLUSIVE
    assert R.DiscrepancyReport("c", 41, 45, {}, {"rank": 45, "w": 44}).status == R.INCONCLUSIVE
    assert not R.DiscrepancyReport("c", 41, 45, {"a": 1}, {}).complete
    assert d.to_dict()["status"] == "refuted-by-two-independent-methods"


def test_sudoku_discrepancy_is_refuted_by_two_routes():
    d, by_n = R.sudoku_discrepancy()
    assert d.computed == 45 and d.status == R.REFUTED and d.complete
    assert by_n == {5: 45, 6: 45}


def test_determinant_helpers():
    g = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert R.determinant(g) == 18
    assert R.elementary_from_power_traces(g) == [R.principal_minor_sum(g, r) for r in range(4)]


def test_cli_classical_orbitals(capsys):
    code, out = run(capsys, "orbitals", "classical", "--group", "hyperoctahedral", "--N", "4",
                    "--k", "1,2,3,4", "--json")
    assert code == 0
    assert [json.loads(x)["value"] for x in out.splitlines()] == ["1", "3", "11", "49"]


def test_cli_quantum_csv(capsys):
    code, out = run(capsys, "orbitals", "quantum", "--group", "H_N+", "--N", "5", "--k", "3", "--csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == R.CSV_HEADER and rows[1][5] == "11"


def test_cli_misc_commands(capsys):
    assert run(capsys, "fixdim", "--category", "NC2", "--N", "3", "--k", "0")[1].splitlines()[-1].split()[-1] == "1"
    code, out = run(capsys, "twist", "--partition", "{1,3}{2,4}")
    assert code == 0 and "+2·T{{1,2,3,4}} -1·T{{1,3},{2,4}}" in out
    code, out = run(capsys, "orbitals", "dual", "--orders", "2,3", "--k", "2", "--method", "classes")
    assert code == 0 and out.split()[-1] == "7"
    code, out = run(capsys, "weingarten", "--group", "S_N", "--N", "5", "--rows", "1,2,3",
                    "--cols", "1,2,3")
    assert code == 0 and out.split()[-1] == "1/60"
    code, out = run(capsys, "character", "--N", "2", "--at", "1,0;0,-1")
    assert code == 0 and out.splitlines()[-1].endswith("[at g: 0]")


def test_cli_exit_codes(capsys, isolated_cache):
    assert run(capsys, "orbitals", "quantum", "--bogus")[0] == cli.EXIT_USAGE
    assert run(capsys, "fixdim", "--category", "NC", "--N", "20", "--k", "8")[0] == cli.EXIT_BUDGET
    assert run(capsys, "fixdim", "--category", "Q", "--N", "3", "--k", "2")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "fixdim", "--category", "NC", "--N", "3", "--k", "2")[0] == cli.EXIT_OK
    for f in isolated_cache.glob("*.json"):
        f.write_text("{broken")
    assert run(capsys, "fixdim", "--category", "NC", "--N", "3", "--k", "2")[0] == cli.EXIT_CACHE
    assert run(capsys, "fixdim", "--category", "NC", "--N", "3", "--k", "2",
                "--no-cache")[0] == cli.EXIT_OK


def test_cli_verify_quick_suite(capsys):
    code, out = run(capsys, "verify", "partitions")
    assert code == 0 and "[PASS]" in out


def test_suite_aliases_share_checks():
    for alias, name in R.SUITE_ALIASES.items():
        assert R.SUITES[alias] is R.SUITES[name]
    with pytest.raises(ValueError):
        R.verify("nonexistent")
