"""The explicit coloring of D3(4) and its finite verification.

No closed-form construction covers ``m = 4``; the table below is the witness.
Rows are indexed by ``(i, j)`` and list the words for ``k = 0..3``.
"""

import hashlib
from dataclasses import dataclass

from .kempe import sign_product
from .torus import COLORS, DirectionAssignment, DirectionTriple, Vertex, color_step, is_valid_coloring

M4_TABLE = (
    # i = 0
    ("210 012 120 021", "201 021 120 210", "120 012 201 210", "201 201 210 102"),
    # i = 1
    ("120 210 120 210", "102 021 201 012", "021 201 210 120", "210 201 012 201"),
    # i = 2
    ("021 210 201 021", "012 201 120 210", "210 120 210 102", "102 102 012 210"),
    # i = 3
    ("021 201 012 120", "210 210 120 021", "201 021 201 210", "201 120 201 210"),
)

# sha256 of the 64 words joined by single spaces in row-major order
M4_SHA256 = "3204e9efc28a0c50eed10c4d8737d7b16e8053186bd1a75331c7f70a7d35c944"


def m4_words():
    return [w for plane in M4_TABLE for row in plane for w in row.split()]


def m4_checksum():
    return hashlib.sha256(" ".join(m4_words()).encode("ascii")).hexdigest()


def m4_assignment() -> DirectionAssignment:
    if m4_checksum() != M4_SHA256:
        raise RuntimeError("embedded m=4 table does not match its checksum")
    return DirectionAssignment(4, [tuple(DirectionTriple.parse(w)) for w in m4_words()])


def walk_orbit(assign, c, start=None):
    """Orbit of color ``c`` from ``start`` by repeated table lookup, until it closes."""
    m = assign.m
    start = start or Vertex(0, 0, 0, m)
    out = [start]
    v = color_step(assign, c, start)
    while v != start and len(out) <= m ** 3:
        out.append(v)
        v = color_step(assign, c, v)
    return out


@dataclass
class M4Report:
    all_permutations: bool
    valid: bool
    orbit_lengths: tuple
    orbits: tuple
    sign_product: int

    @property
    def ok(self):
        return self.valid and self.orbit_lengths == (64, 64, 64)

    def __bool__(self):
        return self.ok


def verify_m4() -> M4Report:
    assign = m4_assignment()
    perms = assign.first_ill_formed() is None
    valid = bool(is_valid_coloring(assign))
    orbits = tuple(tuple(walk_orbit(assign, c)) for c in COLORS)
    return M4Report(perms, valid, tuple(len(o) for o in orbits), orbits,
                    sign_product(assign) if valid else 0)
