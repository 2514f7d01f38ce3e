"""Pure-Python inner loops, used when the compiled extension is unavailable."""

import numpy as np


def scan_permutation(step):
    """Return ``(collision, starts, lengths)`` for a self-map given as an index array.

    ``collision`` is ``(first_preimage, second_preimage, image)`` for the first
    repeated image in index order, in which case ``starts``/``lengths`` are None.
    """
    images = np.asarray(step, dtype=np.int64).tolist()
    n = len(images)
    seen = [-1] * n
    for v, img in enumerate(images):
        if img < 0 or img >= n:
            raise ValueError(f"image {img} of {v} outside domain of size {n}")
        if seen[img] != -1:
            return (seen[img], v, img), None, None
        seen[img] = v

    visited = bytearray(n)
    starts = []
    lengths = []
    for v in range(n):
        if visited[v]:
            continue
        length = 0
        w = v
        while not visited[w]:
            visited[w] = 1
            w = images[w]
            length += 1
        starts.append(v)
        lengths.append(length)
    return None, np.asarray(starts, dtype=np.int64), np.asarray(lengths, dtype=np.int64)


def orbit(step, start, limit):
    """Visit ``start, step[start], ...`` until the walk closes or ``limit`` points are seen."""
    images = np.asarray(step, dtype=np.int64).tolist()
    out = []
    w = int(start)
    while len(out) < limit:
        out.append(w)
        w = images[w]
        if w == start:
            break
    return np.asarray(out, dtype=np.int64)


def lane_returns(table, m, cap):
    """First return of each lane ``(u, 0)`` to the line ``second == 0``.

    ``table`` is a flattened section map indexed by ``first * m + second``.
    Lanes that fail to return within ``cap`` steps get target -1.
    """
    images = np.asarray(table, dtype=np.int64).tolist()
    targets = [-1] * m
    times = [0] * m
    for u in range(m):
        z = images[u * m]
        steps = 1
        while z % m != 0 and steps < cap:
            z = images[z]
            steps += 1
        if z % m == 0:
            targets[u] = z // m
        times[u] = steps
    return np.asarray(targets, dtype=np.int64), np.asarray(times, dtype=np.int64)
