import hashlib

from d3torus.decomposer import decompose, export, load
from d3torus.kempe import sign_product
from d3torus.torus import Vertex, cycle_decomposition, is_valid_coloring
from d3torus.witness_m4 import M4_SHA256, M4_TABLE, m4_assignment, m4_words, verify_m4

from oracles import orbit_length, step, table_rule


def test_checksum():
    assert hashlib.sha256(" ".join(m4_words()).encode()).hexdigest() == M4_SHA256
    assert len(m4_words()) == 64 and len(M4_TABLE) == 4


def test_entries():
    a = m4_assignment()
    assert tuple(a.triple_at(Vertex(0, 0, 0, 4))) == (2, 1, 0)
    assert tuple(a.triple_at(Vertex(1, 1, 1, 4))) == (0, 2, 1)
    assert tuple(a.triple_at(Vertex(3, 3, 3, 4))) == (2, 1, 0)


def test_valid_and_hamilton():
    a = m4_assignment()
    assert is_valid_coloring(a)
    rule = table_rule(a)
    assert [orbit_length(rule, 4, c) for c in range(3)] == [64, 64, 64]
    report = verify_m4()
    assert report.ok and report.all_permutations
    assert report.orbit_lengths == (64, 64, 64)
    assert report.sign_product == -1 == sign_product(a)


def test_color_zero_orbit_start():
    report = verify_m4()
    start = [v.coords for v in report.orbits[0][:5]]
    assert start == [(0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 0, 2), (1, 1, 2)]


def test_orbits_match_recomputation():
    a = m4_assignment()
    rule = table_rule(a)
    report = verify_m4()
    for c in range(3):
        v = (0, 0, 0)
        fresh = []
        for _ in range(64):
            fresh.append(v)
            v = step(rule, 4, c, v)
        assert [w.coords for w in report.orbits[c]] == fresh
        cyc = cycle_decomposition(a.step_table(c)).cycles[0]
        assert [w.index for w in report.orbits[c]] == cyc


def test_export_round_trip():
    dec = decompose(4)
    assert dec.case_tag == "m4"
    back = load(export(dec, "json"))
    assert back.assignment == m4_assignment()
    assert [list(map(tuple, back.cycle_vertices(c))) for c in range(3)] == \
        [[w.coords for w in o] for o in verify_m4().orbits]
