import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from d3torus import _kernels, _kernels_py

try:
    from d3torus import _ckernels
except ImportError:  # pragma: no cover - extension missing
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

permutations = st.integers(1, 60).flatmap(lambda n: st.permutations(list(range(n))))
self_maps = st.integers(1, 40).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n))


def _as_tuple(result):
    collision, starts, lengths = result
    if starts is None:
        return collision, None, None
    return collision, list(starts), list(lengths)


@needs_ext
@given(permutations)
@settings(max_examples=150)
def test_scan_agrees_on_permutations(perm):
    arr = np.array(perm, dtype=np.int64)
    assert _as_tuple(_ckernels.scan_permutation(arr)) == _as_tuple(_kernels_py.scan_permutation(arr))


@needs_ext
@given(self_maps)
@settings(max_examples=150)
def test_scan_agrees_on_arbitrary_maps(images):
    arr = np.array(images, dtype=np.int64)
    assert _as_tuple(_ckernels.scan_permutation(arr)) == _as_tuple(_kernels_py.scan_permutation(arr))


@needs_ext
@given(self_maps, st.integers(0, 39), st.integers(1, 80))
def test_orbit_agrees(images, start, limit):
    arr = np.array(images, dtype=np.int64)
    start %= arr.size
    assert list(_ckernels.orbit(arr, start, limit)) == list(_kernels_py.orbit(arr, start, limit))


@needs_ext
@given(st.integers(2, 8).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.integers(0, m * m - 1), min_size=m * m, max_size=m * m))))
def test_lane_returns_agree(data):
    m, images = data
    arr = np.array(images, dtype=np.int64)
    a = _ckernels.lane_returns(arr, m, m * m)
    b = _kernels_py.lane_returns(arr, m, m * m)
    assert list(a[0]) == list(b[0]) and list(a[1]) == list(b[1])


def test_scan_reports_first_collision():
    collision, starts, lengths = _kernels.scan_permutation([1, 2, 1, 0])
    assert collision == (0, 2, 1)
    assert starts is None and lengths is None


def test_scan_cycle_structure():
    _, starts, lengths = _kernels.scan_permutation([1, 0, 3, 4, 2])
    assert list(starts) == [0, 2]
    assert list(lengths) == [2, 3]


def test_orbit_stops_at_limit():
    assert list(_kernels.orbit([1, 2, 3, 0], 0, 2)) == [0, 1]
    assert list(_kernels.orbit([1, 2, 3, 0], 1)) == [1, 2, 3, 0]


def test_lane_returns_marks_trapped_lanes():
    m = 2
    # lane 0 returns after one step; lane 1 falls into (0,1) <-> (1,1) forever
    table = [0, 3, 3, 1]
    targets, times = _kernels.lane_returns(table, m, m * m)
    assert list(targets) == [0, -1]
    assert times[1] == m * m


def test_use_backend_round_trip():
    previous = _kernels.use_backend("python")
    try:
        assert _kernels.BACKEND == "python"
        assert list(_kernels.orbit([1, 0], 0)) == [0, 1]
    finally:
        _kernels.use_backend(previous)
    assert _kernels.BACKEND == previous
    with pytest.raises(ValueError):
        _kernels.use_backend("fortran")


@needs_ext
@pytest.mark.parametrize("m", [7, 10])
def test_backends_give_same_certificate(m):
    from d3torus.decomposer import decompose

    results = []
    for name in ("cython", "python"):
        previous = _kernels.use_backend(name)
        try:
            dec = decompose(m, threshold=5)
            results.append((dec.certificate, decompose(m).cycles[0].tolist()))
        finally:
            _kernels.use_backend(previous)
    assert results[0] == results[1]
