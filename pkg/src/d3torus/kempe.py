"""Kempe maps and swaps on colorings, and the sign-product invariant."""

from dataclasses import dataclass

import numpy as np

from .errors import NotAPermutation, SameColor, SupportNotClosed
from .torus import (
    COLORS,
    DirectionAssignment,
    Vertex,
    check_modulus,
    cycle_decomposition,
    first_collision,
    permutation_sign,
    vertex_coordinates,
)


def _require_coloring(assign):
    for c in COLORS:
        hit = first_collision(assign.step_table(c))
        if hit is not None:
            v1, v2, img = (Vertex.from_index(x, assign.m) for x in hit)
            raise NotAPermutation(v1, v2, img)


def _check_colors(r, s):
    if r not in COLORS or s not in COLORS:
        raise ValueError(f"colors must be in {COLORS}, got {r}, {s}")
    if r == s:
        raise SameColor(f"Kempe map needs two distinct colors, got {r} twice")


def kempe_map(assign: DirectionAssignment, r: int, s: int) -> np.ndarray:
    """Index array of ``f_s^{-1} o f_r``."""
    _check_colors(r, s)
    _require_coloring(assign)
    f_r = assign.step_table(r)
    f_s = assign.step_table(s)
    inverse = np.empty_like(f_s)
    inverse[f_s] = np.arange(f_s.size, dtype=np.int64)
    return inverse[f_r]


def kempe_cycles(assign, r, s):
    return cycle_decomposition(kempe_map(assign, r, s))


# Supports are boolean masks over the dense vertex index.

def support_from_vertices(m, vertices):
    mask = np.zeros(m ** 3, dtype=bool)
    for v in vertices:
        idx = v.index if isinstance(v, Vertex) else int(v)
        mask[idx] = True
    return mask


def plane_support(m, t):
    """The plane ``S = t``."""
    I, J, K = vertex_coordinates(m)
    return (I + J + K) % m == t % m


def line_support(m, t):
    """The line ``S = t, k = 0``."""
    I, J, K = vertex_coordinates(m)
    return ((I + J + K) % m == t % m) & (K == 0)


def kempe_swap(assign: DirectionAssignment, r: int, s: int, support) -> DirectionAssignment:
    """Exchange colors ``r`` and ``s`` at every vertex of ``support``.

    The support must be a union of cycles of the Kempe map; this is checked by
    confirming it is closed under that map.
    """
    _check_colors(r, s)
    support = np.asarray(support, dtype=bool)
    if not support.any():
        _require_coloring(assign)
        return assign
    tau = kempe_map(assign, r, s)
    members = np.flatnonzero(support)
    images = tau[members]
    escaped = ~support[images]
    if escaped.any():
        n = int(np.argmax(escaped))
        raise SupportNotClosed(Vertex.from_index(members[n], assign.m),
                               Vertex.from_index(images[n], assign.m))
    table = assign.triples.copy()
    table[members, r], table[members, s] = assign.triples[members, s], assign.triples[members, r]
    return DirectionAssignment(assign.m, table)


def color_signs(assign: DirectionAssignment):
    return tuple(permutation_sign(cycle_decomposition(assign.step_table(c))) for c in COLORS)


def sign_product(assign: DirectionAssignment) -> int:
    a, b, c = color_signs(assign)
    return a * b * c


@dataclass(frozen=True)
class ParityBarrierReport:
    m: int
    canonical_product: int
    hamilton_product: int

    @property
    def obstructed(self):
        return self.canonical_product != self.hamilton_product

    @property
    def verdict(self):
        if self.obstructed:
            return "unreachable by Kempe swaps from canonical"
        return "no parity obstruction"

    def lines(self):
        return [
            f"m = {self.m}",
            f"canonical sign product: {self.canonical_product:+d}",
            f"required Hamilton sign product: {self.hamilton_product:+d}",
            f"verdict: {self.verdict}",
        ]


def parity_barrier_report(m) -> ParityBarrierReport:
    m = check_modulus(m)
    canonical = sign_product(DirectionAssignment.canonical(m))
    n = m ** 3
    single = -1 if (n - 1) % 2 else 1
    return ParityBarrierReport(m, canonical, single ** 3)


def random_kempe_walk(assign, steps, rng):
    """Apply ``steps`` random valid Kempe swaps, each on a random union of cycles.

    Yields ``(r, s, support_mask, coloring)`` after every swap.
    """
    for _ in range(steps):
        r, s = (int(x) for x in rng.choice(3, size=2, replace=False))
        dec = kempe_cycles(assign, r, s)
        chosen = rng.random(dec.count) < 0.5
        mask = np.zeros(assign.m ** 3, dtype=bool)
        for cycle, keep in zip(dec.cycles, chosen):
            if keep:
                mask[cycle] = True
        assign = kempe_swap(assign, r, s, mask)
        yield r, s, mask, assign
