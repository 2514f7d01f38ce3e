"""Arithmetic on (Z_m)^3, direction assignments, and permutation bookkeeping.

Vertices are stored densely as ``i*m*m + j*m + k``.  A direction assignment is an
``(m**3, 3)`` table whose row ``v`` is the triple ``(d0, d1, d2)``: color ``c``
leaves ``v`` along coordinate axis ``d_c``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    IllFormedTriple,
    MixedModulus,
    ModulusTooSmall,
    NotAPermutation,
)

COLORS = (0, 1, 2)
MIN_MODULUS = 3


def check_modulus(m, minimum=MIN_MODULUS):
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise TypeError(f"modulus must be an integer, got {type(m).__name__}")
    if m < minimum:
        raise ModulusTooSmall(f"modulus must be >= {minimum}, got {m}")
    return int(m)


@dataclass(frozen=True, order=True)
class Vertex:
    i: int
    j: int
    k: int
    m: int = field(compare=False)

    def __post_init__(self):
        check_modulus(self.m)
        object.__setattr__(self, "i", int(self.i) % self.m)
        object.__setattr__(self, "j", int(self.j) % self.m)
        object.__setattr__(self, "k", int(self.k) % self.m)

    @classmethod
    def from_index(cls, index, m):
        index = int(index)
        return cls(index // (m * m), (index // m) % m, index % m, m)

    @property
    def index(self):
        return (self.i * self.m + self.j) * self.m + self.k

    @property
    def coords(self):
        return (self.i, self.j, self.k)

    def layer(self):
        return layer(self)

    def bump(self, direction):
        return bump(self, direction)

    def __str__(self):
        return f"({self.i},{self.j},{self.k})"


def layer(v: Vertex) -> int:
    """Layer of ``v``: ``(i + j + k) mod m``."""
    return (v.i + v.j + v.k) % v.m


def bump(v: Vertex, direction: int) -> Vertex:
    if direction == 0:
        return Vertex(v.i + 1, v.j, v.k, v.m)
    if direction == 1:
        return Vertex(v.i, v.j + 1, v.k, v.m)
    if direction == 2:
        return Vertex(v.i, v.j, v.k + 1, v.m)
    raise ValueError(f"direction must be 0, 1 or 2, got {direction}")


class DirectionTriple(NamedTuple):
    d0: int
    d1: int
    d2: int

    @classmethod
    def parse(cls, word: str) -> "DirectionTriple":
        if len(word) != 3 or any(ch not in "012" for ch in word):
            raise ValueError(f"not a direction word: {word!r}")
        return cls(int(word[0]), int(word[1]), int(word[2]))

    def is_permutation(self) -> bool:
        return sorted(self) == [0, 1, 2]

    def __str__(self):
        return f"{self.d0}{self.d1}{self.d2}"


CANONICAL_TRIPLE = DirectionTriple(0, 1, 2)


@lru_cache(maxsize=8)
def vertex_coordinates(m):
    """Read-only coordinate arrays ``(I, J, K)`` over the dense vertex index."""
    idx = np.arange(m ** 3, dtype=np.int64)
    coords = (idx // (m * m), (idx // m) % m, idx % m)
    for a in coords:
        a.setflags(write=False)
    return coords


_PERMUTATION_CODES = {100 * a + 10 * b + c for a, b, c in
                      [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]}


class DirectionAssignment:
    """Total map from vertices to direction triples, held as a dense table.

    Instances are immutable.  ``check=False`` lets ill-formed tables through so
    that verification code can report them instead of failing at load time.
    """

    def __init__(self, m, triples, check=True):
        self.m = check_modulus(m)
        table = np.array(triples, dtype=np.int8, copy=True).reshape(self.m ** 3, 3)
        table.setflags(write=False)
        self.triples = table
        self._steps = {}
        if check:
            bad = self.first_ill_formed()
            if bad is not None:
                raise IllFormedTriple(bad, self.triple_at(bad))

    @classmethod
    def canonical(cls, m):
        table = np.tile(np.array([0, 1, 2], dtype=np.int8), (m ** 3, 1))
        return cls(m, table)

    @classmethod
    def from_function(cls, m, rule: Callable[[Vertex], Sequence[int]]):
        m = check_modulus(m)
        table = np.empty((m ** 3, 3), dtype=np.int8)
        for idx in range(m ** 3):
            table[idx] = rule(Vertex.from_index(idx, m))
        return cls(m, table)

    def triple_at(self, v) -> DirectionTriple:
        idx = self._index(v)
        a, b, c = self.triples[idx]
        return DirectionTriple(int(a), int(b), int(c))

    def _index(self, v):
        if isinstance(v, Vertex):
            if v.m != self.m:
                raise MixedModulus(f"vertex has m={v.m}, assignment has m={self.m}")
            return v.index
        return int(v)

    def first_ill_formed(self) -> Optional[Vertex]:
        t = self.triples.astype(np.int16)
        codes = 100 * t[:, 0] + 10 * t[:, 1] + t[:, 2]
        bad = ~np.isin(codes, list(_PERMUTATION_CODES))
        if bad.any():
            return Vertex.from_index(int(np.argmax(bad)), self.m)
        return None

    def step_table(self, c) -> np.ndarray:
        """Dense successor array of the color-``c`` map ``v -> v + e_{d_c(v)}``."""
        if c not in COLORS:
            raise ValueError(f"color must be 0, 1 or 2, got {c}")
        cached = self._steps.get(c)
        if cached is not None:
            return cached
        m = self.m
        I, J, K = vertex_coordinates(m)
        d = self.triples[:, c]
        ni = np.where(d == 0, (I + 1) % m, I)
        nj = np.where(d == 1, (J + 1) % m, J)
        nk = np.where(d == 2, (K + 1) % m, K)
        table = (ni * m + nj) * m + nk
        table.setflags(write=False)
        self._steps[c] = table
        return table

    def with_triples(self, indices, new_triples, check=True):
        table = self.triples.copy()
        table[np.asarray(indices, dtype=np.int64)] = new_triples
        return DirectionAssignment(self.m, table, check=check)

    def words(self):
        """Row-major list of ``"d0d1d2"`` strings."""
        t = self.triples
        return [f"{a}{b}{c}" for a, b, c in t.tolist()]

    def __eq__(self, other):
        if not isinstance(other, DirectionAssignment):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.triples, other.triples)

    def __hash__(self):
        return hash((self.m, self.triples.tobytes()))

    def __repr__(self):
        return f"DirectionAssignment(m={self.m})"


def color_step(assign: DirectionAssignment, c: int, v: Vertex) -> Vertex:
    return bump(v, assign.triple_at(v)[c])


class CycleDecomposition:
    """Cycle structure of a permutation of a finite domain.

    Cycles are materialized lazily; ``lengths`` and ``count`` are cheap.
    """

    def __init__(self, step, starts, lengths, domain=None):
        self._step = step
        self.starts = starts
        self.lengths = lengths
        self._domain = domain
        self._cycles = None

    @property
    def element_count(self):
        return int(self.lengths.sum())

    @property
    def count(self):
        return len(self.lengths)

    @property
    def cycles(self):
        if self._cycles is None:
            out = []
            for s, n in zip(self.starts.tolist(), self.lengths.tolist()):
                path = _kernels.orbit(self._step, s, n).tolist()
                if self._domain is not None:
                    path = [self._domain[p] for p in path]
                out.append(path)
            self._cycles = out
        return self._cycles

    def is_single_cycle(self):
        return self.count == 1

    def __repr__(self):
        return f"CycleDecomposition(count={self.count}, elements={self.element_count})"


def cycle_decomposition(step, domain=None) -> CycleDecomposition:
    """Cycle decomposition of ``step``.

    ``step`` is either an index array (``step[x]`` is the image of ``x``) or a
    callable, in which case ``domain`` lists the points.  Raises
    :class:`NotAPermutation` carrying the first collision in index order.
    """
    if callable(step):
        if domain is None:
            raise ValueError("a callable step needs an explicit domain")
        domain = list(domain)
        position = {p: n for n, p in enumerate(domain)}
        try:
            table = np.array([position[step(p)] for p in domain], dtype=np.int64)
        except KeyError as exc:
            raise ValueError(f"image {exc.args[0]!r} is outside the domain") from None
    else:
        table = np.ascontiguousarray(step, dtype=np.int64)
    collision, starts, lengths = _kernels.scan_permutation(table)
    if collision is not None:
        v1, v2, img = collision
        if domain is not None:
            v1, v2, img = domain[v1], domain[v2], domain[img]
        raise NotAPermutation(v1, v2, img)
    return CycleDecomposition(table, starts, lengths, domain)


def permutation_sign(dec: CycleDecomposition) -> int:
    """Sign as a product of ``(-1)**(len - 1)`` over cycles."""
    even_cycles = int(np.count_nonzero(dec.lengths % 2 == 0))
    return -1 if even_cycles % 2 else 1


def first_collision(step):
    """``(v1, v2, image)`` indices of the first collision, or None for a bijection."""
    collision, _, _ = _kernels.scan_permutation(step)
    return collision


@dataclass
class ValidityReport:
    valid: bool
    ill_formed: Optional[Vertex] = None
    collisions: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid


def is_valid_coloring(assign: DirectionAssignment) -> ValidityReport:
    bad = assign.first_ill_formed()
    if bad is not None:
        return ValidityReport(False, ill_formed=bad)
    collisions = {}
    m = assign.m
    for c in COLORS:
        hit = first_collision(assign.step_table(c))
        if hit is not None:
            collisions[c] = tuple(Vertex.from_index(x, m) for x in hit)
    return ValidityReport(not collisions, collisions=collisions)


# Section P_t = {S = t} is parameterized by (i, k) with j = t - i - k; index i*m + k.

@lru_cache(maxsize=1024)
def _section_vertices(m, t):
    a = np.arange(m * m, dtype=np.int64)
    i, k = a // m, a % m
    j = (t - i - k) % m
    out = (i * m + j) * m + k
    out.setflags(write=False)
    return out


def section_vertices(m, t=0):
    """Dense vertex indices of the plane ``S = t`` in section order."""
    return _section_vertices(m, t % m)


def vertices_to_section(indices, m):
    indices = np.asarray(indices, dtype=np.int64)
    return (indices // (m * m)) * m + indices % m


def iterate_return(assign: DirectionAssignment, c: int) -> np.ndarray:
    """``f_c^m`` restricted to ``P_0``, by direct iteration, in section indices."""
    step = assign.step_table(c)
    cur = section_vertices(assign.m)
    for _ in range(assign.m):
        cur = step[cur]
    return vertices_to_section(cur, assign.m)


def layer_maps(assign: DirectionAssignment, c: int):
    """Per-layer maps ``g_t: P_t -> P_{t+1}`` in section indices."""
    step = assign.step_table(c)
    m = assign.m
    return [vertices_to_section(step[section_vertices(m, t)], m) for t in range(m)]


def composed_return(assign: DirectionAssignment, c: int) -> np.ndarray:
    """``g_{m-1} o ... o g_0`` on ``P_0``, in section indices."""
    maps = layer_maps(assign, c)
    cur = np.arange(assign.m ** 2, dtype=np.int64)
    for g in maps:
        cur = g[cur]
    return cur


def checked_return_maps(assign: DirectionAssignment):
    """The three return maps, each computed by layer composition and by iteration.

    Raises RuntimeError if the two computations ever disagree.
    """
    maps = []
    for c in COLORS:
        composed = composed_return(assign, c)
        if not np.array_equal(composed, iterate_return(assign, c)):
            raise RuntimeError(f"layer composition and m-step iteration disagree for color {c}")
        maps.append(composed)
    return maps


def validity_via_return(assign: DirectionAssignment, maps=None) -> bool:
    """Decide validity from the three ``m``-step return maps on ``P_0``.

    Every arc raises the layer by one, so a color map is a bijection of V
    exactly when each layer-to-layer map is; the return map is injective iff
    all of its layer factors are.
    """
    if assign.first_ill_formed() is not None:
        return False
    if maps is None:
        maps = checked_return_maps(assign)
    return all(np.unique(r).size == r.size for r in maps)


def is_hamilton_color(assign: DirectionAssignment, c: int) -> bool:
    step = assign.step_table(c)
    n = step.shape[0]
    return _kernels.orbit(step, 0, n + 1).size == n
