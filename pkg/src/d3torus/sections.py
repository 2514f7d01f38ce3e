"""Self-maps of (Z_m)^2, used for return maps, the odometer and frame changes."""

from math import gcd

import numpy as np

from .torus import cycle_decomposition, first_collision


class SectionMap:
    """A total self-map of ``(Z_m)^2`` stored as a flat table over ``a*m + b``."""

    def __init__(self, m, table, name=None):
        self.m = int(m)
        table = np.array(table, dtype=np.int64, copy=True).reshape(self.m * self.m)
        table.setflags(write=False)
        self.table = table
        self.name = name

    @classmethod
    def from_function(cls, m, fn, name=None):
        table = np.empty(m * m, dtype=np.int64)
        for a in range(m):
            for b in range(m):
                x, y = fn(a, b)
                table[a * m + b] = (x % m) * m + (y % m)
        return cls(m, table, name)

    def __call__(self, a, b):
        z = int(self.table[(a % self.m) * self.m + (b % self.m)])
        return divmod(z, self.m)

    def iterate(self, n):
        cur = np.arange(self.m * self.m, dtype=np.int64)
        for _ in range(n):
            cur = self.table[cur]
        return SectionMap(self.m, cur)

    def compose(self, inner):
        """``self o inner``."""
        return SectionMap(self.m, self.table[inner.table])

    def conjugate(self, frame, frame_inverse):
        """``frame o self o frame_inverse``."""
        return frame.compose(self.compose(frame_inverse))

    def is_bijective(self):
        return first_collision(self.table) is None

    def cycles(self):
        return cycle_decomposition(self.table)

    def points(self):
        m = self.m
        return [(a, b) for a in range(m) for b in range(m)]

    def __eq__(self, other):
        if not isinstance(other, SectionMap):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.m, self.table.tobytes()))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<SectionMap{label} m={self.m}>"


def mod_inverse(a, m):
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    a %= m
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return s0 % m


class AffineSectionMap:
    """``z -> M z + t`` over ``Z_m``."""

    def __init__(self, m, matrix, translation=(0, 0)):
        self.m = int(m)
        self.matrix = tuple(tuple(int(x) % self.m for x in row) for row in matrix)
        self.translation = tuple(int(x) % self.m for x in translation)

    def __call__(self, a, b):
        (p, q), (r, s) = self.matrix
        ta, tb = self.translation
        return ((p * a + q * b + ta) % self.m, (r * a + s * b + tb) % self.m)

    @property
    def determinant(self):
        (p, q), (r, s) = self.matrix
        return (p * s - q * r) % self.m

    def is_invertible(self):
        return gcd(self.determinant, self.m) == 1

    def inverse(self):
        (p, q), (r, s) = self.matrix
        d = mod_inverse(self.determinant, self.m)
        inv = ((s * d, -q * d), (-r * d, p * d))
        ta, tb = self.translation
        (ip, iq), (ir, is_) = inv
        shift = (-(ip * ta + iq * tb), -(ir * ta + is_ * tb))
        return AffineSectionMap(self.m, inv, shift)

    def as_section_map(self):
        m = self.m
        a = np.arange(m * m, dtype=np.int64)
        x, y = a // m, a % m
        (p, q), (r, s) = self.matrix
        ta, tb = self.translation
        nx = (p * x + q * y + ta) % m
        ny = (r * x + s * y + tb) % m
        return SectionMap(m, nx * m + ny)

    def __repr__(self):
        return f"AffineSectionMap(m={self.m}, matrix={self.matrix}, translation={self.translation})"
