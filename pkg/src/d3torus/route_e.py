"""The even-modulus construction (m >= 6) and its lane-level analysis.

Only the layers ``S = 0, 1, 2`` are modified; everything above is canonical.
Layer 0 carries a small scaffold of affine defect families whose shape depends
on ``m mod 6``.  The return maps to ``S = 0`` are analysed in coordinates where
the generic step is a pure clock tick, which reduces Hamiltonicity to a
one-dimensional first-return map on a transversal.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .errors import (
    BadModulus,
    BlockMismatch,
    NoReturn,
    PartitionViolation,
    UnclassifiedDefect,
)
from .sections import AffineSectionMap, SectionMap
from .torus import (
    COLORS,
    DirectionAssignment,
    DirectionTriple,
    check_modulus,
    composed_return,
    cycle_decomposition,
    iterate_return,
    vertex_coordinates,
)

CASE_I = "even_case_I"
CASE_II = "even_case_II"
VARIANTS = ("actual", "primary", "deleted_repair")
DEFAULT_TRIPLE = DirectionTriple(1, 2, 0)


def check_even_modulus(m):
    m = check_modulus(m, minimum=6)
    if m % 2:
        raise BadModulus(f"this construction needs even m >= 6, got {m}")
    return m


def case_of(m):
    m = check_even_modulus(m)
    return CASE_II if m % 6 == 4 else CASE_I


# ---------------------------------------------------------------------------
# Layer-0 scaffold

@dataclass(frozen=True)
class Layer0Families:
    """Layer-0 vertex sets, each carrying a fixed triple; the rest get (1,2,0)."""

    m: int
    case_tag: str
    family_102: frozenset
    family_021: frozenset
    family_210: frozenset
    exceptional_012: frozenset
    exceptional_201: frozenset

    def branches(self):
        return (
            (DirectionTriple(1, 0, 2), self.family_102),
            (DirectionTriple(0, 2, 1), self.family_021),
            (DirectionTriple(2, 1, 0), self.family_210),
            (DirectionTriple(0, 1, 2), self.exceptional_012),
            (DirectionTriple(2, 0, 1), self.exceptional_201),
        )

    def triple_for(self, i, j, k):
        v = (i % self.m, j % self.m, k % self.m)
        for triple, members in self.branches():
            if v in members:
                return triple
        return DEFAULT_TRIPLE

    def check_partition(self):
        """Every listed vertex lies on ``S = 0`` and belongs to exactly one set."""
        m = self.m
        seen = {}
        for triple, members in self.branches():
            for v in members:
                if sum(v) % m != 0:
                    raise PartitionViolation(f"{v} in family {triple} is not on layer 0")
                if v in seen:
                    raise PartitionViolation(f"{v} lies in families {seen[v]} and {triple}")
                seen[v] = triple
        return True

    def section_sets(self):
        """The five sets in ``(i, k)`` section coordinates."""
        return {str(t): frozenset((i, k) for i, _, k in s) for t, s in self.branches()}


def _case_i_sets(m, low):
    f102 = {(0, 0, 0), (m - 1, 2, m - 1)} | {(i, 1, m - 1 - i) for i in range(low, m - 2)}
    f021 = {(0, 1, m - 1), (m - 1, 0, 1)} | {(i, m - i, 0) for i in range(low, m - 2)}
    f210 = {(0, j, m - j) for j in range(2, m)} | {(1, 0, m - 1)}
    return f102, f021, f210


def repair_family(m):
    """The extra color-210 vertices of the ``m = 4 mod 6`` scaffold."""
    track = {(1, j, m - 1 - j) for j in range(2, m - 1)}
    return frozenset(track | {(2, 0, m - 2), (2, m - 1, m - 1)})


def _families(m, case_tag, with_repair=True):
    if case_tag == CASE_I:
        f102, f021, f210 = _case_i_sets(m, 1)
        e012 = {(m - 2, 1, 1)}
        e201 = {(m - 2, 2, 0)}
    else:
        f102, f021, f210 = _case_i_sets(m, 2)
        if with_repair:
            f210 |= repair_family(m)
        e012 = {(1, 1, m - 2), (m - 2, 1, 1)}
        e201 = {(1, m - 1, 0), (m - 2, 2, 0)}
    fams = Layer0Families(m, case_tag, frozenset(f102), frozenset(f021), frozenset(f210),
                          frozenset(e012), frozenset(e201))
    fams.check_partition()
    return fams


def layer0_families(m, variant="actual") -> Layer0Families:
    m = check_even_modulus(m)
    if variant == "actual":
        return _families(m, case_of(m))
    if variant == "primary":
        return _families(m, CASE_I)
    if variant == "deleted_repair":
        if m % 6 != 4 or m < 10:
            raise BadModulus(f"the deleted-repair variant needs m = 4 mod 6, m >= 10; got {m}")
        return _families(m, CASE_II, with_repair=False)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def assignment_from_families(fams: Layer0Families) -> DirectionAssignment:
    m = fams.m
    I, J, K = vertex_coordinates(m)
    S = (I + J + K) % m
    table = np.tile(np.array([0, 1, 2], dtype=np.int8), (m ** 3, 1))
    table[(S == 1) & (I == 0)] = (1, 0, 2)
    table[(S == 1) & (I != 0)] = (2, 0, 1)
    table[(S == 2) & (J == 0)] = (2, 1, 0)
    table[S == 0] = DEFAULT_TRIPLE
    for triple, members in fams.branches():
        if members:
            idx = np.array([(i * m + j) * m + k for i, j, k in members], dtype=np.int64)
            table[idx] = triple
    return DirectionAssignment(m, table)


def route_e_assignment(m) -> DirectionAssignment:
    return assignment_from_families(layer0_families(m, "actual"))


def primary_geometry_assignment(m) -> DirectionAssignment:
    return assignment_from_families(layer0_families(m, "primary"))


def deleted_repair_assignment(m) -> DirectionAssignment:
    return assignment_from_families(layer0_families(m, "deleted_repair"))


def variant_assignment(m, variant) -> DirectionAssignment:
    return assignment_from_families(layer0_families(m, variant))


# ---------------------------------------------------------------------------
# Three-step transducer

class LowLayerWord(NamedTuple):
    """Directions taken by one color on layers 0, 1 and 2."""

    a: int
    b: int
    c: int

    def count(self, letter):
        return sum(1 for x in self if x == letter)

    def __str__(self):
        return f"{self.a}{self.b}{self.c}"


def _section_start(m, i, k):
    i, k = i % m, k % m
    return (i * m + (-i - k) % m) * m + k


def transducer_word(assign: DirectionAssignment, c, i, k) -> LowLayerWord:
    m = assign.m
    step = assign.step_table(c)
    v = _section_start(m, i, k)
    letters = []
    for _ in range(3):
        letters.append(int(assign.triples[v, c]))
        v = int(step[v])
    return LowLayerWord(*letters)


def transducer_words(assign: DirectionAssignment, c) -> np.ndarray:
    """Words for every section point, as an ``(m*m, 3)`` array in section order."""
    m = assign.m
    a = np.arange(m * m, dtype=np.int64)
    i, k = a // m, a % m
    v = (i * m + (-i - k) % m) * m + k
    step = assign.step_table(c)
    out = np.empty((m * m, 3), dtype=np.int64)
    for n in range(3):
        out[:, n] = assign.triples[v, c]
        v = step[v]
    return out


def _displacement(c, n0, n2):
    if c == 0:
        return n0 - 3, n2
    if c == 1:
        return n0, n2
    if c == 2:
        return n0, n2 - 3
    raise ValueError(f"color must be 0, 1 or 2, got {c}")


def return_from_word(c, word, i, k, m):
    """Return point implied by the low-layer word; higher layers are canonical."""
    word = LowLayerWord(*word)
    di, dk = _displacement(c, word.count(0), word.count(2))
    return ((i + di) % m, (k + dk) % m)


def transducer_return(assign: DirectionAssignment, c) -> SectionMap:
    m = assign.m
    words = transducer_words(assign, c)
    n0 = (words == 0).sum(axis=1)
    n2 = (words == 2).sum(axis=1)
    di, dk = _displacement(c, n0, n2)
    a = np.arange(m * m, dtype=np.int64)
    i, k = a // m, a % m
    return SectionMap(m, ((i + di) % m) * m + (k + dk) % m, name=f"transducer R{c}")


# ---------------------------------------------------------------------------
# Closed-form return maps, branch order is precedence

def _branch_table(m, c, case_tag):
    a = np.arange(m * m, dtype=np.int64)
    I, K = a // m, a % m

    def pt(x, y):
        return (I == x % m) & (K == y % m)

    def diag(s):
        return (I + K) % m == s % m

    def between(arr, lo, hi):
        return (arr >= lo) & (arr <= hi)

    if c == 2:
        rules = [
            (pt(2, 0), (1, -3)),
            (diag(1) & ~pt(1, 0) & ~pt(m - 1, 2), (2, -3)),
            ((diag(m - 1) & (I != m - 1)) | pt(m - 1, m - 1), (0, -1)),
            (((K == 0) & ~np.isin(I, [0, 2, m - 1])) | pt(m - 1, 1), (0, -2)),
            (((I == m - 1) & ~np.isin(K, [1, m - 1])) | pt(0, 0), (1, -1)),
        ]
        fallback = (1, -2)
    elif c == 1 and case_tag == CASE_I:
        rules = [
            ((diag(m - 1) & between(I, 1, m - 3)) | pt(0, 0) | pt(m - 2, 0) | pt(m - 1, m - 1),
             (2, 0)),
            (((I == 0) & between(K, 1, m - 2)) | pt(1, m - 1) | pt(m - 2, 1), (1, 0)),
        ]
        fallback = (1, 1)
    elif c == 1:
        rules = [
            ((diag(m - 1) & between(I, 2, m - 3)) | pt(0, 0) | pt(1, 0) | pt(m - 2, 0)
             | pt(m - 1, m - 1), (2, 0)),
            (((I == 0) & between(K, 1, m - 2)) | ((I == 1) & between(K, 1, m - 1))
             | pt(2, m - 2) | pt(2, m - 1) | pt(m - 2, 1), (1, 0)),
        ]
        fallback = (1, 1)
    elif c == 0 and case_tag == CASE_I:
        rules = [
            (pt(0, 0), (-2, 0)),
            (pt(1, m - 1), (-3, 3)),
            (pt(m - 2, 0), (-2, 2)),
            (pt(m - 1, 1), (-1, 0)),
            (diag(1) & ~pt(1, 0), (-3, 2)),
            (((K == 0) & between(I, 1, m - 3)) | pt(0, m - 1) | pt(m - 2, 1), (-1, 1)),
        ]
        fallback = (-2, 1)
    elif c == 0:
        rules = [
            (pt(0, 0), (-2, 0)),
            (pt(m - 1, 1), (-1, 0)),
            (pt(1, m - 1) | pt(2, m - 2), (-3, 3)),
            (((I == 1) & between(K, 0, m - 3)) | pt(2, m - 1) | pt(m - 2, 0), (-2, 2)),
            (diag(1) & ~pt(1, 0) & ~pt(2, m - 1), (-3, 2)),
            (((K == 0) & between(I, 2, m - 3)) | pt(0, m - 1) | pt(1, m - 2) | pt(m - 2, 1),
             (-1, 1)),
        ]
        fallback = (-2, 1)
    else:
        raise ValueError(f"color must be 0, 1 or 2, got {c}")

    conds = [cond for cond, _ in rules]
    branch = np.select(conds, list(range(1, len(rules) + 1)), default=len(rules) + 1)
    shifts = [d for _, d in rules] + [fallback]
    di = np.array([d[0] for d in shifts], dtype=np.int64)[branch - 1]
    dk = np.array([d[1] for d in shifts], dtype=np.int64)[branch - 1]
    table = ((I + di) % m) * m + (K + dk) % m
    return table, branch


def closed_form_R(c, m) -> SectionMap:
    """Piecewise return map of color ``c``, in ``(i, k)`` section coordinates."""
    m = check_even_modulus(m)
    table, _ = _branch_table(m, c, case_of(m))
    return SectionMap(m, table, name=f"R{c}")


def closed_form_branches(c, m) -> np.ndarray:
    """1-based index of the branch taken at each section point."""
    m = check_even_modulus(m)
    return _branch_table(m, c, case_of(m))[1]


@dataclass
class CrossCheckReport:
    m: int
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches

    def __bool__(self):
        return self.ok


def cross_check_R(m, assign: Optional[DirectionAssignment] = None) -> CrossCheckReport:
    """Compare closed form, transducer and direct iteration at every point.

    Mismatches are recorded as ``(color, (i, k), label)`` with label naming the
    pair that disagreed.
    """
    m = check_even_modulus(m)
    if assign is None:
        assign = route_e_assignment(m)
    report = CrossCheckReport(m)
    for c in COLORS:
        closed = closed_form_R(c, m).table
        trans = transducer_return(assign, c).table
        iterated = iterate_return(assign, c)
        composed = composed_return(assign, c)
        for label, other in (("transducer", trans), ("iteration", iterated),
                             ("layer composition", composed)):
            bad = np.flatnonzero(closed != other)
            if bad.size:
                a = int(bad[0])
                report.mismatches.append((c, divmod(a, m), f"closed form vs {label}"))
    return report


# ---------------------------------------------------------------------------
# Bulk frames and defects

@dataclass(frozen=True)
class BulkFrame:
    color: int
    matrix: tuple
    inverse_matrix: tuple
    bulk_vector: tuple

    def forward(self, m) -> AffineSectionMap:
        return AffineSectionMap(m, self.matrix)

    def inverse(self, m) -> AffineSectionMap:
        return AffineSectionMap(m, self.inverse_matrix)

    @property
    def determinant(self):
        (p, q), (r, s) = self.matrix
        return p * s - q * r

    def image_of_bulk_vector(self):
        (p, q), (r, s) = self.matrix
        x, y = self.bulk_vector
        return (p * x + q * y, r * x + s * y)


_FRAMES = {
    0: BulkFrame(0, ((1, 2), (0, 1)), ((1, -2), (0, 1)), (-2, 1)),
    1: BulkFrame(1, ((1, -1), (0, 1)), ((1, 1), (0, 1)), (1, 1)),
    2: BulkFrame(2, ((2, 1), (-1, -1)), ((1, 1), (-1, -2)), (1, -2)),
}

# Color 2's lanes are read in (x, y) = (i, i + k), where the bulk step is (x+1, y-1).
WORKING_FRAME_2 = BulkFrame(2, ((1, 0), (1, 1)), ((1, 0), (-1, 1)), (1, -2))


def bulk_frame(c) -> BulkFrame:
    frame = _FRAMES[c]
    if abs(frame.determinant) != 1 or frame.image_of_bulk_vector() != (0, 1):
        raise RuntimeError(f"bulk frame for color {c} is malformed")
    return frame


# Allowed (lane, clock) increments of non-generic steps, in enumeration order.
DEFECT_STEPS = {
    1: ((1, 0), (2, 0)),
    2: ((-1, 2), (1, 1), (-1, 1), (-2, 2), (1, 0)),
    0: ((-2, 0), (3, 3), (2, 2), (-1, 0), (1, 2), (1, 1)),
}


def defect_lines(c, m):
    """Named affine conditions carrying the defects of color ``c``."""
    lines = {
        1: [("u+t=0", lambda u, t: (u + t) % m == 0),
            ("u+2t=m-1", lambda u, t: (u + 2 * t) % m == m - 1)],
        2: [("t=1", lambda u, t: t % m == 1),
            ("t=m-1", lambda u, t: t % m == m - 1),
            ("u+2t=0", lambda u, t: (u + 2 * t) % m == 0),
            ("u+t=m-1", lambda u, t: (u + t) % m == m - 1)],
        0: [("t=0", lambda u, t: t % m == 0),
            ("u=t+1", lambda u, t: (u - t - 1) % m == 0)],
    }[c]
    if case_of(m) == CASE_II:
        if c == 1:
            lines.append(("u+t=1", lambda u, t: (u + t) % m == 1))
        elif c == 0:
            lines.append(("u=1+2t", lambda u, t: (u - 1 - 2 * t) % m == 0))
    return lines


@dataclass(frozen=True)
class DefectBranch:
    color: int
    u: int
    t: int
    label: str
    delta: tuple
    lines: tuple

    @property
    def generic(self):
        return self.label == "G"

    @property
    def isolated(self):
        return not self.generic and not self.lines


def _signed(x, m):
    x %= m
    return x - m if x > m // 2 else x


def bulk_return(c, m, section: Optional[SectionMap] = None) -> SectionMap:
    """Return map of color ``c`` conjugated into its bulk frame."""
    if section is None:
        section = closed_form_R(c, m)
    frame = bulk_frame(c)
    return section.conjugate(frame.forward(m).as_section_map(),
                             frame.inverse(m).as_section_map())


def _classify(c, m, u, t, image, lines):
    x, y = image
    delta = (_signed(x - u, m), _signed(y - t, m))
    if delta == (0, 1):
        return DefectBranch(c, u, t, "G", delta, ())
    allowed = DEFECT_STEPS[c]
    if delta not in allowed:
        raise UnclassifiedDefect(f"color {c}, m={m}: step {delta} at {(u, t)} is not an allowed defect")
    on = tuple(name for name, test in lines if test(u, t))
    return DefectBranch(c, u, t, f"d{allowed.index(delta) + 1}", delta, on)


def defect_classify(c, m, point, section: Optional[SectionMap] = None) -> DefectBranch:
    m = check_even_modulus(m)
    u, t = point[0] % m, point[1] % m
    return _classify(c, m, u, t, bulk_return(c, m, section)(u, t), defect_lines(c, m))


def defect_table(c, m, section: Optional[SectionMap] = None):
    """Every non-generic bulk-frame point of color ``c``, in ``(u, t)`` order."""
    m = check_even_modulus(m)
    bulk = bulk_return(c, m, section)
    lines = defect_lines(c, m)
    out = []
    for u in range(m):
        for t in range(m):
            branch = _classify(c, m, u, t, bulk(u, t), lines)
            if not branch.generic:
                out.append(branch)
    return out


# ---------------------------------------------------------------------------
# First return to the transversal

TRANSVERSALS = {
    0: "t = 0 in (u, t) = (i + 2k, k)",
    1: "t = 0 in (u, t) = (i - k, k)",
    2: "y = 0 in (x, y) = (i, i + k)",
}


def lane_frame(c) -> BulkFrame:
    return WORKING_FRAME_2 if c == 2 else bulk_frame(c)


@dataclass
class LaneReturnData:
    color: int
    m: int
    variant: str
    targets: tuple
    times: tuple
    frame_map: Optional[SectionMap] = None

    @property
    def transversal(self):
        return TRANSVERSALS[self.color]

    @property
    def total_time(self):
        return sum(self.times)

    def is_injective(self):
        return -1 not in self.targets and len(set(self.targets)) == self.m

    def lane_cycles(self):
        """Cycles of the lane map, or None when it is not a permutation."""
        if not self.is_injective():
            return None
        return cycle_decomposition(np.array(self.targets, dtype=np.int64)).cycles

    def is_single_cycle(self):
        cycles = self.lane_cycles()
        return cycles is not None and len(cycles) == 1

    def lane_orbit(self, start=0):
        out = [start]
        x = self.targets[start]
        while x != start and x != -1 and len(out) <= self.m:
            out.append(x)
            x = self.targets[x]
        return out

    def itinerary(self, x):
        """Labels of the steps taken from lane ``x`` until it returns."""
        if self.frame_map is None:
            raise ValueError("itineraries need the frame map; closed-form data has none")
        m = self.m
        if self.color == 2:
            frame = self.frame_map
            generic = lambda p, q: ((p + 1) % m, (q - 1) % m)  # noqa: E731
        else:
            frame = self.frame_map
            generic = lambda p, q: (p, (q + 1) % m)  # noqa: E731
        labels = []
        p, q = x, 0
        for _ in range(m * m):
            nxt = frame(p, q)
            labels.append("G" if nxt == generic(p, q) else f"S{(_signed(nxt[0] - p, m), _signed(nxt[1] - q, m))}")
            p, q = nxt
            if q == 0:
                return labels
        raise NoReturn(x, m * m)


def lane_map_from_section(c, m, section: SectionMap, variant="actual", strict=True) -> LaneReturnData:
    frame = lane_frame(c)
    framed = section.conjugate(frame.forward(m).as_section_map(), frame.inverse(m).as_section_map())
    targets, times = _kernels.lane_returns(framed.table, m, m * m)
    targets = tuple(int(x) for x in targets)
    if strict and -1 in targets:
        lane = targets.index(-1)
        raise NoReturn(lane, m * m)
    return LaneReturnData(c, m, variant, targets, tuple(int(x) for x in times), framed)


def first_return(c, m, variant="actual", strict=None) -> LaneReturnData:
    """Lane map and return times, computed by iterating the section map.

    The section map comes from the direction assignment of ``variant``.  Lanes
    that fail to return within ``m*m`` steps raise :class:`NoReturn` when
    ``strict`` (the default for the actual construction) and are recorded with
    target -1 otherwise.
    """
    m = check_even_modulus(m)
    if strict is None:
        strict = variant == "actual"
    assign = variant_assignment(m, variant)
    section = SectionMap(m, composed_return(assign, c))
    lane = lane_map_from_section(c, m, section, variant, strict)
    if variant == "actual":
        expected = first_return_closed_form(c, m)
        if lane.targets != expected.targets or lane.times != expected.times:
            bad = next(x for x in range(m)
                       if (lane.targets[x], lane.times[x]) != (expected.targets[x], expected.times[x]))
            raise RuntimeError(f"color {c}, m={m}: lane {bad} disagrees with the closed-form tables")
    return lane


def _closed_tables(c, m, case_tag):
    T = [None] * m
    rho = [None] * m

    def put(x, target, time):
        T[x % m] = target % m
        rho[x % m] = time

    if c == 2:
        for x in range(3, m):
            put(x, x - 1, m)
        put(0, 1, 1)
        put(1, m - 1, m - 1)
        put(2, 0, 2 * m)
    elif c == 1 and case_tag == CASE_I:
        for x in range(1, m - 3):
            put(x, x + 3, m + 2)
        put(0, 2, 1)
        put(m - 3, 1, m + 3)
        put(m - 2, 0, 1)
        put(m - 1, 3, m + 3)
    elif c == 1:
        for x in range(m):
            if x % 2 == 0:
                put(x, x + 2, m + 2)
            else:
                put(x, x + 6, m + 4)
        put(0, 2, 1)
        put(1, 3, 1)
        put(2, 5, m + 3)
        put(m - 2, 0, 1)
        put(m - 3, 4, m + 6)
        put(m - 1, 7, m + 6)
    elif c == 0 and case_tag == CASE_I:
        for x in range(1, m - 4):
            put(x, x + 2, m - 1)
        put(0, m - 2, 1)
        put(m - 4, m - 1, m - 1)
        put(m - 3, 2, 2 * m - 3)
        put(m - 2, 1, 2 * m - 1)
        put(m - 1, 0, m - 1)
    elif c == 0:
        for x in range(3, m - 6):
            put(x, x + 4, m - 2)
        put(0, m - 2, 1)
        put(1, 4, m - 2)
        put(2, 6, m - 2)
        put(m - 6, 3, 2 * m - 4)
        put(m - 5, m - 1, m - 1)
        put(m - 4, 0, m - 2)
        put(m - 3, 2, 2 * m - 3)
        put(m - 2, 5, 2 * m - 4)
        put(m - 1, 1, m - 1)
    else:
        raise ValueError(f"color must be 0, 1 or 2, got {c}")
    if None in T:
        raise RuntimeError(f"closed-form lane table for color {c}, m={m} is incomplete")
    return tuple(T), tuple(rho)


def first_return_closed_form(c, m) -> LaneReturnData:
    m = check_even_modulus(m)
    T, rho = _closed_tables(c, m, case_of(m))
    return LaneReturnData(c, m, "actual", T, rho)


def counting_check(lane: LaneReturnData) -> bool:
    """Single lane cycle and total return time ``m*m``: the lift certificate."""
    return lane.is_single_cycle() and lane.total_time == lane.m * lane.m


# ---------------------------------------------------------------------------
# Splice blocks

def _run(start, stop, step):
    """Inclusive arithmetic run; empty when ``stop`` precedes ``start``."""
    if stop < start:
        return []
    return list(range(start, stop + 1, step))


def expected_blocks(c, m):
    """Ordered arithmetic family-blocks of the transversal, empty runs dropped."""
    m = check_even_modulus(m)
    if c == 2:
        blocks = [[0, 1], list(range(m - 1, 1, -1))]
    elif c == 1:
        r = m % 6
        if r == 2:
            blocks = [[0, 2] + _run(5, m - 3, 3), _run(1, m - 1, 3), _run(3, m - 2, 3)]
        elif r == 0:
            blocks = [[0, 2] + _run(5, m - 1, 3), _run(3, m - 3, 3) + [1], _run(4, m - 2, 3)]
        else:
            blocks = [[0, 2] + _run(5, m - 5, 6) + [1],
                      _run(3, m - 1, 6) + _run(7, m - 3, 6),
                      _run(4, m - 2, 2)]
    elif c == 0:
        if case_of(m) == CASE_I:
            blocks = [[0, m - 2], _run(1, m - 3, 2), _run(2, m - 4, 2), [m - 1]]
        elif m % 12 == 10:
            blocks = [[0, m - 2] + _run(5, m - 1, 4) + [1], _run(4, m - 6, 4),
                      _run(3, m - 3, 4), _run(2, m - 4, 4)]
        else:
            blocks = [[0, m - 2] + _run(5, m - 3, 4), _run(2, m - 6, 4),
                      _run(3, m - 1, 4) + [1], _run(4, m - 4, 4)]
    else:
        raise ValueError(f"color must be 0, 1 or 2, got {c}")
    return [tuple(b) for b in blocks if b]


@dataclass(frozen=True)
class SpliceResult:
    blocks: tuple
    permutation: tuple
    single_cycle: bool

    def permutation_cycles(self):
        """Cycles of the splice permutation, 1-based."""
        return [[x + 1 for x in cyc] for cyc in
                cycle_decomposition(np.array(self.permutation, dtype=np.int64) - 1).cycles]


def splice_blocks(c, m, lane: Optional[LaneReturnData] = None) -> SpliceResult:
    """Check the lane map against the block decomposition and read off the splice.

    Inside a block the lane map advances to the next entry; the last entry of
    block ``j`` must map to the first entry of some block, which defines the
    splice permutation.
    """
    m = check_even_modulus(m)
    if lane is None:
        lane = first_return(c, m)
    blocks = expected_blocks(c, m)
    flat = [x for b in blocks for x in b]
    if sorted(flat) != list(range(m)):
        raise BlockMismatch(f"color {c}, m={m}: blocks do not partition the transversal")
    heads = {b[0]: n for n, b in enumerate(blocks)}
    T = lane.targets
    perm = []
    for n, block in enumerate(blocks):
        for a, b in zip(block, block[1:]):
            if T[a] != b:
                raise BlockMismatch(f"color {c}, m={m}: lane {a} maps to {T[a]}, block says {b}")
        tail = T[block[-1]]
        if tail not in heads:
            raise BlockMismatch(f"color {c}, m={m}: block {n + 1} ends at {tail}, not a block head")
        perm.append(heads[tail] + 1)
    perm = tuple(perm)
    cycles = cycle_decomposition(np.array(perm, dtype=np.int64) - 1)
    return SpliceResult(tuple(blocks), perm, cycles.count == 1)
