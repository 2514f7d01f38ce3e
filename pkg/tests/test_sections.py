import pytest
from hypothesis import given, strategies as st

from d3torus.sections import AffineSectionMap, SectionMap, mod_inverse


def test_from_function_and_call():
    f = SectionMap.from_function(5, lambda a, b: (a + 1, b - 1))
    assert f(4, 0) == (0, 4)
    assert f.is_bijective()


def test_iterate_and_compose():
    f = SectionMap.from_function(6, lambda a, b: (a + 1, b))
    assert f.iterate(6) == SectionMap.from_function(6, lambda a, b: (a, b))
    g = SectionMap.from_function(6, lambda a, b: (a, b + 2))
    assert f.compose(g)(1, 1) == (2, 3)


def test_non_bijective():
    f = SectionMap.from_function(4, lambda a, b: (a, 0))
    assert not f.is_bijective()


@pytest.mark.parametrize("a, m", [(2, 5), (-2, 9), (7, 20), (1, 1)])
def test_mod_inverse(a, m):
    x = mod_inverse(a, m)
    assert (a * x) % m == 1 % m


def test_mod_inverse_missing():
    with pytest.raises(ValueError):
        mod_inverse(4, 6)


@given(st.integers(2, 15), st.integers(0, 14), st.integers(0, 14), st.integers(0, 14),
       st.integers(0, 14), st.integers(0, 14), st.integers(0, 14))
def test_affine_inverse(m, p, q, r, s, ta, tb):
    f = AffineSectionMap(m, ((p, q), (r, s)), (ta, tb))
    if not f.is_invertible():
        with pytest.raises(ValueError):
            f.inverse()
        return
    g = f.inverse()
    for a in range(m):
        for b in range(m):
            assert g(*f(a, b)) == (a, b)
    assert f.as_section_map().is_bijective()


def test_affine_matches_section_map():
    f = AffineSectionMap(7, ((2, 1), (-1, -1)), (3, 0))
    table = f.as_section_map()
    for a in range(7):
        for b in range(7):
            assert table(a, b) == f(a, b)
    assert f.determinant == 6
