import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from d3torus.errors import IllFormedTriple, MixedModulus, ModulusTooSmall, NotAPermutation
from d3torus.odd import odometer
from d3torus.route_e import route_e_assignment
from d3torus.torus import (
    DirectionAssignment,
    DirectionTriple,
    Vertex,
    bump,
    color_step,
    composed_return,
    cycle_decomposition,
    is_hamilton_color,
    is_valid_coloring,
    iterate_return,
    layer,
    permutation_sign,
    section_vertices,
    validity_via_return,
    vertex_coordinates,
)

from oracles import cycle_lengths, sign_by_inversions

PERMS = [DirectionTriple(*p) for p in itertools.permutations(range(3))]


class TestVertex:
    @pytest.mark.parametrize("coords, m, expected", [
        ((1, 2, 3), 6, 0),
        ((0, 0, 0), 5, 0),
        ((3, 3, 3), 4, 1),
    ])
    def test_layer(self, coords, m, expected):
        assert layer(Vertex(*coords, m)) == expected

    @pytest.mark.parametrize("coords, d, expected", [
        ((0, 0, 0), 0, (1, 0, 0)),
        ((2, 2, 4), 2, (2, 2, 0)),
        ((1, 4, 0), 1, (1, 0, 0)),
    ])
    def test_bump(self, coords, d, expected):
        assert bump(Vertex(*coords, 5), d).coords == expected

    def test_coordinates_are_reduced(self):
        v = Vertex(7, -1, 12, 5)
        assert v.coords == (2, 4, 2)

    def test_index_round_trip(self):
        m = 7
        for idx in range(m ** 3):
            assert Vertex.from_index(idx, m).index == idx

    def test_small_modulus_rejected(self):
        with pytest.raises(ModulusTooSmall):
            Vertex(0, 0, 0, 2)

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            bump(Vertex(0, 0, 0, 3), 3)


class TestDirectionTriple:
    def test_parse_and_str(self):
        t = DirectionTriple.parse("201")
        assert t == (2, 0, 1) and str(t) == "201"
        assert t.is_permutation()

    def test_not_permutation(self):
        assert not DirectionTriple(0, 0, 2).is_permutation()

    @pytest.mark.parametrize("word", ["21", "2101", "a10", "310"])
    def test_parse_rejects(self, word):
        with pytest.raises(ValueError):
            DirectionTriple.parse(word)


class TestAssignment:
    def test_canonical_steps(self):
        a = DirectionAssignment.canonical(3)
        assert color_step(a, 0, Vertex(0, 0, 0, 3)).coords == (1, 0, 0)
        assert color_step(a, 2, Vertex(1, 1, 2, 3)).coords == (1, 1, 0)

    def test_ill_formed_rejected(self):
        table = DirectionAssignment.canonical(3).triples.copy()
        table[5] = (0, 0, 2)
        with pytest.raises(IllFormedTriple) as info:
            DirectionAssignment(3, table)
        assert info.value.vertex == Vertex.from_index(5, 3)

    def test_unchecked_ill_formed_is_reported_before_bijectivity(self):
        table = DirectionAssignment.canonical(4).triples.copy()
        table[9] = (1, 1, 2)
        report = is_valid_coloring(DirectionAssignment(4, table, check=False))
        assert not report
        assert report.ill_formed == Vertex.from_index(9, 4)
        assert report.collisions == {}

    def test_mixed_modulus(self):
        with pytest.raises(MixedModulus):
            DirectionAssignment.canonical(4).triple_at(Vertex(0, 0, 0, 5))

    def test_from_function_matches_table(self):
        m = 4
        rule = lambda v: PERMS[(v.i + 2 * v.j + v.k) % 6]  # noqa: E731
        a = DirectionAssignment.from_function(m, rule)
        for idx in range(m ** 3):
            v = Vertex.from_index(idx, m)
            assert a.triple_at(v) == rule(v)

    def test_is_immutable(self):
        a = DirectionAssignment.canonical(3)
        with pytest.raises(ValueError):
            a.triples[0, 0] = 1

    @pytest.mark.parametrize("m", range(3, 13))
    def test_every_step_raises_layer(self, m):
        rng = np.random.default_rng(m)
        table = np.array([PERMS[x] for x in rng.integers(0, 6, m ** 3)], dtype=np.int8)
        a = DirectionAssignment(m, table, check=False)
        I, J, K = vertex_coordinates(m)
        S = (I + J + K) % m
        for c in range(3):
            nxt = a.step_table(c)
            assert np.array_equal(S[nxt], (S + 1) % m)


class TestCycles:
    def test_identity(self):
        dec = cycle_decomposition(np.arange(27))
        assert dec.count == 27 and set(dec.lengths.tolist()) == {1}

    def test_canonical_color(self):
        dec = cycle_decomposition(DirectionAssignment.canonical(3).step_table(0))
        assert dec.count == 9 and set(dec.lengths.tolist()) == {3}
        assert dec.element_count == 27

    def test_odometer_single(self):
        assert cycle_decomposition(odometer(3).table).count == 1

    def test_callable_domain(self):
        pts = [(a, b) for a in range(3) for b in range(2)]
        dec = cycle_decomposition(lambda p: ((p[0] + 1) % 3, p[1]), pts)
        assert dec.count == 2
        assert sorted(len(c) for c in dec.cycles) == [3, 3]
        assert dec.cycles[0][0] == (0, 0)

    def test_collision_witness(self):
        with pytest.raises(NotAPermutation) as info:
            cycle_decomposition([2, 0, 2, 1])
        assert (info.value.v1, info.value.v2, info.value.image) == (0, 2, 2)

    def test_collision_witness_in_domain_terms(self):
        with pytest.raises(NotAPermutation) as info:
            cycle_decomposition(lambda p: "x", ["x", "y"])
        assert info.value.image == "x"

    @given(st.permutations(list(range(12))))
    def test_partition_and_cycles_closed(self, perm):
        dec = cycle_decomposition(perm)
        flat = [x for c in dec.cycles for x in c]
        assert sorted(flat) == list(range(12))
        for cyc in dec.cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                assert perm[a] == b
        assert sorted(dec.lengths.tolist()) == cycle_lengths(lambda x: perm[x], range(12))

    @given(st.permutations(list(range(9))))
    def test_sign_matches_inversions(self, perm):
        assert permutation_sign(cycle_decomposition(perm)) == sign_by_inversions(perm)

    def test_sign_examples(self):
        assert permutation_sign(cycle_decomposition([1, 2, 3, 0])) == -1
        canonical = DirectionAssignment.canonical(4)
        assert permutation_sign(cycle_decomposition(canonical.step_table(0))) == 1
        assert permutation_sign(cycle_decomposition(list(range(1, 64)) + [0])) == -1


class TestValidityViaReturn:
    def test_route_e_and_canonical(self):
        assert validity_via_return(route_e_assignment(8))
        assert validity_via_return(DirectionAssignment.canonical(5))
        assert is_valid_coloring(route_e_assignment(6))

    def test_composition_matches_iteration(self):
        a = route_e_assignment(10)
        for c in range(3):
            assert np.array_equal(composed_return(a, c), iterate_return(a, c))

    def test_section_vertices_lie_on_layer(self):
        m = 6
        I, J, K = vertex_coordinates(m)
        for t in range(m):
            idx = section_vertices(m, t)
            assert set(((I + J + K) % m)[idx].tolist()) == {t}

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([4, 6]), st.data())
    def test_agrees_with_direct_check(self, m, data):
        I, J, K = vertex_coordinates(m)
        S = (I + J + K) % m
        table = DirectionAssignment.canonical(m).triples.copy()
        for t in range(3):
            on = np.flatnonzero(S == t)
            if data.draw(st.booleans(), label=f"uniform layer {t}"):
                table[on] = data.draw(st.sampled_from(PERMS))
            else:
                picks = data.draw(st.lists(st.integers(0, 5), min_size=on.size, max_size=on.size))
                table[on] = [PERMS[p] for p in picks]
        a = DirectionAssignment(m, table)
        assert validity_via_return(a) == bool(is_valid_coloring(a))

    def test_hamilton_color(self):
        a = route_e_assignment(6)
        assert all(is_hamilton_color(a, c) for c in range(3))
        assert not is_hamilton_color(DirectionAssignment.canonical(6), 0)
