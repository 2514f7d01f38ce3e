import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from d3torus.decomposer import (
    SCHEMA_VERSION,
    construct,
    decompose,
    export,
    load,
    verify_decomposition,
)
from d3torus.errors import ModulusTooSmall, UnsupportedFormat
from d3torus.torus import DirectionAssignment

from oracles import orbit_length, table_rule


@pytest.mark.parametrize("m, tag", [(3, "odd"), (4, "m4"), (6, "even_case_I"),
                                    (10, "even_case_II"), (9, "odd"), (12, "even_case_I")])
def test_dispatch(m, tag):
    dec = decompose(m)
    assert dec.case_tag == tag
    assert dec.certificate["method"] == "direct_iteration"
    assert all(len(dec.cycles[c]) == m ** 3 for c in range(3))


@pytest.mark.parametrize("m", [3, 4, 6])
def test_cycles_by_walker(m):
    _, assign = construct(m)
    rule = table_rule(assign)
    assert [orbit_length(rule, m, c) for c in range(3)] == [m ** 3] * 3


def test_too_small():
    with pytest.raises(ModulusTooSmall):
        decompose(2)


@pytest.mark.parametrize("m", range(3, 21))
def test_verify_matrix(m):
    report = verify_decomposition(decompose(m))
    assert report.ok, report.lines()


def test_sign_check_for_even():
    report = verify_decomposition(decompose(10))
    assert report.checks["sign product is -1"]
    assert "sign product is -1" not in verify_decomposition(decompose(5)).checks


def test_tampered_triple_is_caught():
    dec = decompose(6)
    table = dec.assignment.triples.copy()
    table[7] = table[7][[1, 0, 2]]
    dec.assignment = DirectionAssignment(6, table)
    dec.cycles = None
    report = verify_decomposition(dec)
    assert not report.ok
    assert not report.checks["color maps are bijections"]
    assert "both reach" in report.witnesses["color maps are bijections"]


def test_ill_formed_is_caught():
    dec = decompose(5)
    table = dec.assignment.triples.copy()
    table[0] = (0, 0, 1)
    dec.assignment = DirectionAssignment(5, table, check=False)
    report = verify_decomposition(dec)
    assert report.checks == {"triples are permutations": False}


@pytest.mark.parametrize("m", [22, 34, 40, 51])
def test_section_certificate(m):
    dec = decompose(m)
    assert dec.certificate["method"] == "return_counting"
    assert dec.cycles is None
    for entry in dec.certificate["per_color"]:
        assert entry["return_cycle_count"] == 1
        if m % 2 == 0:
            assert entry["lane_return_total"] == m * m and entry["lane_single_cycle"]
    # spot check: every color closes from the origin after exactly m^3 steps
    from d3torus.decomposer import color_cycle
    assert all(color_cycle(dec.assignment, c).size == m ** 3 for c in range(3))


class TestSerialization:
    def test_json_schema(self):
        doc = json.loads(export(decompose(4)))
        assert set(doc) == {"schema_version", "m", "case", "triples", "cycles", "certificate"}
        assert doc["schema_version"] == SCHEMA_VERSION == 1
        assert doc["m"] == 4 and doc["case"] == "m4"
        assert len(doc["triples"]) == 64 and all(len(w) == 3 for w in doc["triples"])
        assert len(doc["cycles"]) == 3 and doc["cycles"][0][0] == [0, 0, 0]
        assert set(doc["certificate"]) == {"method", "per_color"}

    def test_json_without_cycles(self):
        doc = json.loads(export(decompose(5), include_cycles=False))
        assert "cycles" not in doc

    def test_cycles_text(self):
        lines = export(decompose(3), "cycles").splitlines()
        assert len(lines) == 3
        for line in lines:
            items = line.split()
            assert len(items) == 27 and items[0] == "0,0,0"

    def test_arcs_text(self):
        lines = export(decompose(3), "arcs").splitlines()
        assert len(lines) == 81
        assert lines[0].split() == ["0,0,0", "0", "0"]

    def test_deterministic(self):
        assert export(decompose(6)) == export(decompose(6))

    def test_unknown_format(self):
        with pytest.raises(UnsupportedFormat):
            export(decompose(3), "xml")

    @settings(max_examples=15, deadline=None)
    @given(st.integers(3, 12), st.sampled_from(["json", "cycles", "arcs"]))
    def test_round_trip(self, m, fmt):
        dec = decompose(m)
        back = load(export(dec, fmt), fmt)
        assert back.m == m
        assert back.assignment == dec.assignment
        assert verify_decomposition(back).ok

    def test_load_bad_version(self):
        doc = json.loads(export(decompose(3)))
        doc["schema_version"] = 2
        with pytest.raises(UnsupportedFormat):
            load(json.dumps(doc))

    def test_loaded_cycles_checked(self):
        doc = json.loads(export(decompose(5)))
        doc["cycles"][1] = doc["cycles"][1][1:] + doc["cycles"][1][:1]
        report = verify_decomposition(load(json.dumps(doc)))
        assert not report.checks["recorded cycles match the table"]
        assert np.all(load(json.dumps(doc)).assignment.triples >= 0)
