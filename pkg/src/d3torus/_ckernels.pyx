# cython: language_level=3
"""Compiled inner loops. Signatures mirror :mod:`d3torus._kernels_py`."""

import numpy as np

cimport cython


def scan_permutation(const long long[::1] step):
    cdef Py_ssize_t n = step.shape[0]
    cdef Py_ssize_t v, w, length
    cdef long long img
    seen_arr = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] seen = seen_arr
    for v in range(n):
        img = step[v]
        if img < 0 or img >= n:
            raise ValueError(f"image {img} of {v} outside domain of size {n}")
        if seen[img] != -1:
            return (int(seen[img]), int(v), int(img)), None, None
        seen[img] = v

    visited_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] visited = visited_arr
    starts = []
    lengths = []
    for v in range(n):
        if visited[v]:
            continue
        length = 0
        w = v
        while not visited[w]:
            visited[w] = 1
            w = step[w]
            length += 1
        starts.append(v)
        lengths.append(length)
    return None, np.asarray(starts, dtype=np.int64), np.asarray(lengths, dtype=np.int64)


def orbit(const long long[::1] step, long long start, Py_ssize_t limit):
    cdef Py_ssize_t count = 0
    cdef long long w = start
    out_arr = np.empty(limit, dtype=np.int64)
    cdef long long[::1] out = out_arr
    while count < limit:
        out[count] = w
        count += 1
        w = step[w]
        if w == start:
            break
    return out_arr[:count].copy()


def lane_returns(const long long[::1] table, Py_ssize_t m, Py_ssize_t cap):
    cdef Py_ssize_t u, steps
    cdef long long z
    targets_arr = np.full(m, -1, dtype=np.int64)
    times_arr = np.zeros(m, dtype=np.int64)
    cdef long long[::1] targets = targets_arr
    cdef long long[::1] times = times_arr
    for u in range(m):
        z = table[u * m]
        steps = 1
        while z % m != 0 and steps < cap:
            z = table[z]
            steps += 1
        if z % m == 0:
            targets[u] = z // m
            times[u] = steps
        else:
            times[u] = steps
    return targets_arr, times_arr
