import json

import pytest

from polyknots.corpus import (
    crossing_bound,
    entry,
    load_corpus,
    load_data,
    octant_table,
    payload_checksum,
    representative,
    verify_entry,
)
from polyknots.diagram import extract_diagram
from polyknots.embedding import in_pd_tilde
from polyknots.errors import CorpusCorrupt
from polyknots.invariants import identify
from polyknots.poly import parse

CORPUS = load_corpus()
NAMES = [e.name for e in CORPUS]


def test_corpus_has_every_printed_entry():
    assert NAMES == ["3_1", "3_1*", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "3_1#3_1", "3_1#3_1*", "8_19"]


def test_entries_keep_their_printed_text():
    assert entry("3_1").knot.f == parse("t^3 - 3t")
    e = entry("8_19")
    assert e.printed[2] == "t^7 - 8.13297 t^5 + 18.5762 t^3 - 10.4337 t"
    assert e.knot.h == parse("t^7 - 8.13297 t^5 + 18.5762 t^3 - 10.4337 t")


def test_degree_sequences():
    assert entry("4_1").degree_sequence == (4, 5, 6)
    assert entry("6_3").degree_sequence == (5, 6, 7)
    for e in CORPUS:
        assert e.knot.degree_sequence == e.degree_sequence


def test_unknown_entry():
    with pytest.raises(KeyError):
        entry("7_1")


def test_tampered_data_is_rejected():
    data = load_data()
    data["entries"][0]["h"] = "t^5 - 11t"
    with pytest.raises(CorpusCorrupt):
        load_corpus(json.dumps(data))
    data["sha256"] = payload_checksum(data)
    assert load_corpus(json.dumps(data))[0].knot.h == parse("t^5 - 11t")


def test_shipped_checksum():
    data = load_data()
    assert data["sha256"] == payload_checksum(data)


@pytest.mark.parametrize("d,bound", [(3, 0), (4, 1), (5, 3), (6, 6), (7, 10)])
def test_crossing_bound(d, bound):
    assert crossing_bound(d) == bound


@pytest.mark.parametrize("e", CORPUS, ids=NAMES)
def test_verify_entry(e):
    rep = verify_entry(e)
    assert rep.ok, rep.to_json()
    assert rep.identified == e.name
    assert rep.crossings <= crossing_bound(e.d)


def test_entry_report_json():
    data = verify_entry(entry("3_1")).to_json()
    assert data["ok"] and data["crossings"] == 3 and data["crossing_bound"] == 3
    assert data["degree_sequence"] == [3, 4, 5]


def test_mirror_entry_identifies_as_mirror():
    assert identify(extract_diagram(entry("3_1").knot.mirror())).name == "3_1*"
    assert identify(extract_diagram(entry("3_1*").knot.mirror())).name == "3_1"


@pytest.mark.parametrize("d,bound", [(5, 16), (6, 24), (7, 88)])
def test_octant_tables(d, bound):
    table = octant_table(d)
    assert table.ok, table.to_json()
    assert table.lower_bound == table.claimed == bound
    for row in table.rows:
        assert row.components == row.expected


def test_representatives_fit_their_degree():
    for name, d in [("0_1", 6), ("3_1", 7), ("3_1*", 6), ("4_1", 7), ("8_19*", 7)]:
        k, note = representative(name, d)
        assert in_pd_tilde(k) == d
        assert identify(extract_diagram(k)).name == name, note


def test_representative_too_big():
    with pytest.raises(ValueError):
        representative("5_1", 6)
    with pytest.raises(KeyError):
        representative("7_1", 7)
