import threading

import pytest

from chainavoid.errors import NetworkUnavailableError, ParseError
from chainavoid.oeis import (
    FIXTURE_DIR,
    KNOWN,
    bfile_name,
    check_id,
    compare,
    fetch_bfile,
    fixture_text,
    parse_bfile,
    _atomic_write,
)
from chainavoid.sequences import FORMULAS, closed_form, tribonacci


def test_id_validation():
    assert check_id("A000073") == "A000073"
    for bad in ("123", "A12345", "a000073", "A0000731"):
        with pytest.raises(ValueError):
            check_id(bad)
    assert bfile_name("A000073") == "b000073.txt"


def test_parse_grammar():
    b = parse_bfile("# header\n\n  0 0\n1  0\n2 1\n", "A000073")
    assert b.entries == [(0, 0), (1, 0), (2, 1)]
    with pytest.raises(ParseError, match="line 2"):
        parse_bfile("0 0\n1 x\n", "A000073")
    with pytest.raises(ParseError):
        parse_bfile("1 0\n1 1\n", "A000073")


def test_fixture_tribonacci(tmp_path):
    b = fetch_bfile("A000073", offline=True, cache_dir=tmp_path)
    assert b.source == "fixture"
    assert b.entries[:3] == [(0, 0), (1, 0), (2, 1)]
    rep = compare({n: tribonacci(n) for n in range(40)}, b)
    assert rep.ok


def test_zero_sequence_mismatch(tmp_path):
    b = fetch_bfile("A000073", offline=True, cache_dir=tmp_path)
    rep = compare([0] * 10, b)
    assert not rep.ok
    assert rep.mismatches[0][0] == 2
    assert [r[0] for r in rep.mismatches] == [n for n in range(10) if tribonacci(n) != 0]


def test_empty_overlap_rejected(tmp_path):
    b = fetch_bfile("A000073", offline=True, cache_dir=tmp_path)
    with pytest.raises(ValueError):
        compare({1000: 1}, b)


@pytest.mark.parametrize("ident", sorted(k for k, f in FORMULAS.items() if f.oeis_id))
def test_registry_matches_fixtures(ident, tmp_path):
    f = FORMULAS[ident]
    b = fetch_bfile(f.oeis_id, offline=True, cache_dir=tmp_path)
    seq = {n: closed_form(ident, n) for n in range(f.start, 30)}
    assert compare(seq, b, f.oeis_shift, f.oeis_adjust).ok


@pytest.mark.parametrize("oeis_id", sorted(KNOWN))
def test_fixtures_regenerate_identically(oeis_id):
    assert (FIXTURE_DIR / bfile_name(oeis_id)).read_text() == fixture_text(oeis_id)


def test_cache_round_trip(tmp_path):
    raw = b"# cached copy\n0 0\n1 0\n2 1\n3 1\n"
    _atomic_write(tmp_path / "b000073.txt", raw)
    b1 = fetch_bfile("A000073", offline=True, cache_dir=tmp_path)
    b2 = fetch_bfile("A000073", offline=True, cache_dir=tmp_path)
    assert b1.source == "cache" and b1.entries == b2.entries == [(0, 0), (1, 0), (2, 1), (3, 1)]
    assert (tmp_path / "b000073.txt").read_bytes() == raw


def test_offline_missing_is_explicit(tmp_path):
    with pytest.raises(NetworkUnavailableError):
        fetch_bfile("A999999", offline=True, cache_dir=tmp_path, fixture_dir=tmp_path)


def test_network_failure_is_explicit(tmp_path, monkeypatch):
    import urllib.request

    def refuse(*args, **kwargs):
        raise OSError("no route")

    monkeypatch.setattr(urllib.request, "urlopen", refuse)
    with pytest.raises(NetworkUnavailableError):
        fetch_bfile("A000073", cache_dir=tmp_path)
    assert not list(tmp_path.iterdir())


def test_download_is_cached(tmp_path, monkeypatch):
    import io
    import urllib.request

    payload = b"0 0\n1 0\n2 1\n"
    monkeypatch.setattr(urllib.request, "urlopen", lambda *a, **k: io.BytesIO(payload))
    b = fetch_bfile("A000073", cache_dir=tmp_path)
    assert b.source == "network"
    assert (tmp_path / "b000073.txt").read_bytes() == payload
    assert fetch_bfile("A000073", offline=True, cache_dir=tmp_path).source == "cache"


def test_concurrent_cache_writes(tmp_path):
    target = tmp_path / "b000073.txt"
    payloads = [f"0 {i}\n".encode() * 200 for i in range(8)]
    threads = [threading.Thread(target=_atomic_write, args=(target, p)) for p in payloads]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert target.read_bytes() in payloads
    assert [p.name for p in tmp_path.iterdir()] == ["b000073.txt"]
