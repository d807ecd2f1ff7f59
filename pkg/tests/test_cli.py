import contextlib
import io
import json

import pytest

from chainavoid import cli
from chainavoid.sequences import fibonacci, table1_2143, tribonacci


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = cli.main(list(argv))
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def rows(*argv):
    code, text, _ = run("--format", "json", *argv)
    assert code == 0
    return json.loads(text)["rows"]


def test_count_table1_row():
    got = rows("count", "--avoid", "312;321", "--power-avoid", "231", "--n-range", "2..10")
    assert [r["value"] for r in got] == [str(tribonacci(n + 2)) for n in range(2, 11)]


def test_count_123_vanishes():
    assert rows("count", "--avoid", "312;4321", "--power-avoid", "123", "--n", "7")[0]["value"] == "0"


def test_count_cube_chain_with_free_level():
    got = rows("count", "--avoid", "312;321", "--power-avoid", "-", "--power-avoid", "2143",
               "--n", "6", "--method", "comp-brute", "--verify")
    assert got[0]["match"] is True
    assert got[0]["value"] == got[0]["oracle"]


def test_verify_only_annotates():
    plain = rows("count", "--avoid", "312;4321", "--power-avoid", "321", "--n-range", "1..8")
    checked = rows("count", "--avoid", "312;4321", "--power-avoid", "321", "--n-range", "1..8",
                   "--verify")
    assert [r["value"] for r in plain] == [r["value"] for r in checked]
    assert all(r["match"] is True for r in checked)


def test_threads_do_not_change_rows():
    args = ("count", "--avoid", "312;4321", "--power-avoid", "2143", "--n-range", "1..8")
    assert rows("--threads", "1", *args) == rows("--threads", "4", *args)


def test_json_round_trip_is_byte_identical():
    code, text, _ = run("--format", "json", "compcount", "--avoid-comps", "3,2;6", "--n-range", "1..40")
    assert code == 0
    doc = json.loads(text)
    assert json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == text
    assert set(doc) == {"query", "rows", "timing_ms", "version"}
    assert all(isinstance(r["value"], str) for r in doc["rows"])


def test_big_values_are_exact_strings():
    got = rows("compcount", "--avoid-comps", "3,2", "--n", "200")
    assert got[0]["value"] == str(fibonacci(203) - 201)


def test_table_csv_structure():
    code, text, _ = run("--format", "csv", "table", "--preset", "table2", "--n-max", "10")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "n,123,132,213,231,312,321"
    assert len(lines) == 11


def test_table1_verify():
    got = rows("table", "--preset", "table1", "--n-max", "9", "--verify")
    assert all(r[k] is True for r in got for k in r if k.endswith("_match"))


def test_table_oeis_offline():
    got = rows("--offline", "table", "--preset", "table1", "--n-max", "20", "--oeis")
    assert got[0]["n"] == "2"
    assert all(r[k] is not False for r in got for k in r if k.endswith("_oeis_match"))
    assert got[-1]["2143_oeis"] == str(table1_2143(20))


def test_csigma():
    got = rows("csigma", "--sigma", "12345")
    assert len(got) == 16
    assert rows("csigma", "--sigma", "2143") == [{"index": "1", "composition": "(3,3)"}]
    code, _, err = run("csigma", "--sigma", "321")
    assert code == 1 and "321" in err


def test_compcount_paths():
    assert rows("compcount", "--avoid-comps", "3,2", "--n", "5")[0]["value"] == "15"
    assert rows("compcount", "--avoid-comps", "2", "--n", "100")[0]["value"] == "1"
    got = rows("compcount", "--avoid-comps", "3,2;6", "--n-range", "1..10", "--verify")
    assert all(r["match"] is True for r in got)


def test_conjecture_unknown_id():
    code, _, err = run("conjecture", "--id", "bogus", "--n-max", "3")
    assert code == 1
    assert "cube-2143" in err and "chain-54321-132" in err


def test_bfile_preset_row():
    code, text, _ = run("bfile", "--preset-row", "table1-231", "--offset", "2", "--n-max", "20")
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 19
    assert lines == [f"{n} {tribonacci(n + 2)}" for n in range(2, 21)]
    code, text, _ = run("bfile", "--preset-row", "table1-2143", "--offset", "2", "--n-max", "12")
    assert text.splitlines() == [f"{n} {table1_2143(n)}" for n in range(2, 13)]


def test_bfile_empty_range():
    assert run("bfile", "--preset-row", "table1-231", "--offset", "5", "--n-max", "3")[:2] == (0, "")


@pytest.mark.parametrize("argv, code", [
    (("count", "--avoid", "3x2", "--power-avoid", "21", "--n", "3"), 1),
    (("count", "--avoid", "312;321", "--power-avoid", "231"), 1),
    (("count", "--avoid", "312;4321", "--power-avoid", "2143", "--n", "4", "--method", "recurrence"), 1),
    (("count", "--bogus-flag"), 1),
    (("count", "--avoid", "312", "--power-avoid", "21", "--n", "17", "--method", "perm-brute"), 3),
    (("--max-brute", "4", "count", "--avoid", "312", "--power-avoid", "21", "--n", "5",
      "--method", "perm-brute"), 3),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_network_unavailable_exit_code(monkeypatch, tmp_path):
    import urllib.request

    monkeypatch.setenv("CHAINAVOID_OEIS_CACHE", str(tmp_path))
    monkeypatch.setattr(urllib.request, "urlopen", lambda *a, **k: (_ for _ in ()).throw(OSError("down")))
    assert run("table", "--preset", "table2", "--n-max", "3", "--oeis")[0] == 4


def test_mismatch_exit_code(monkeypatch):
    from chainavoid import chains

    real = chains.count_chain_312_4321
    monkeypatch.setattr(cli, "fast_path", lambda spec: (lambda n: real(n, "312"))
                        if spec.levels[0] == chains.P312_4321 else None)
    code, _, err = run("count", "--avoid", "312;4321", "--power-avoid", "321", "--n", "5", "--verify")
    assert code == 2 and "mismatch" in err
