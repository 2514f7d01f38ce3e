"""The odd-modulus construction and its section-level analysis.

The coloring is reached from the canonical one by five Kempe swaps and also has
a direct piecewise description; both are built and compared.  On the section
``S = 0`` each color returns by an affine-skew map that is conjugate to the
standard odometer when ``m`` is odd.
"""

from dataclasses import dataclass
from math import gcd
from typing import Callable

import numpy as np

from .errors import EvenModulus, OddModulus, StepNotUnit
from .kempe import kempe_swap, line_support, plane_support
from .sections import AffineSectionMap, SectionMap, mod_inverse
from .torus import (
    COLORS,
    DirectionAssignment,
    check_modulus,
    cycle_decomposition,
    iterate_return,
    vertex_coordinates,
)

# (r, s, support builder) in application order
FIVE_SWAPS = (
    (0, 1, lambda m: line_support(m, 0)),
    (0, 2, lambda m: plane_support(m, 0)),
    (0, 1, lambda m: plane_support(m, 0)),
    (0, 1, lambda m: line_support(m, 1)),
    (0, 2, lambda m: plane_support(m, 1)),
)


def five_swap_coloring(m) -> DirectionAssignment:
    m = check_modulus(m)
    assign = DirectionAssignment.canonical(m)
    for r, s, support in FIVE_SWAPS:
        assign = kempe_swap(assign, r, s, support(m))
    return assign


def odd_closed_form(m) -> DirectionAssignment:
    """Piecewise coloring: special triples on layers 0 and 1, canonical elsewhere."""
    m = check_modulus(m)
    I, J, K = vertex_coordinates(m)
    S = (I + J + K) % m
    table = np.tile(np.array([0, 1, 2], dtype=np.int8), (m ** 3, 1))
    on_axis = K == 0
    table[(S == 0) & ~on_axis] = (1, 2, 0)
    table[(S == 0) & on_axis] = (0, 2, 1)
    table[(S == 1) & on_axis] = (2, 0, 1)
    table[(S == 1) & ~on_axis] = (2, 1, 0)
    return DirectionAssignment(m, table)


def odometer(m) -> SectionMap:
    """``(u, v) -> (u + 1, v + [u == 0])``."""
    m = check_modulus(m, minimum=1)
    return SectionMap.from_function(m, lambda u, v: (u + 1, v + (u == 0)), name="odometer")


def _return_rule(c, m):
    if c == 0:
        return lambda i, k: (i - 2 + (k == 0), k + 1)
    if c == 1:
        return lambda i, k: (i + (k == m - 1), k + 1)
    if c == 2:
        return lambda i, k: (i + 2 - 2 * (k == 0), k - 2)
    raise ValueError(f"color must be 0, 1 or 2, got {c}")


def return_map_F(c, m) -> SectionMap:
    """Closed-form return map of color ``c`` on ``S = 0``, in ``(i, k)`` coordinates."""
    m = check_modulus(m)
    return SectionMap.from_function(m, _return_rule(c, m), name=f"F{c}")


def iterated_return_map(c, m) -> SectionMap:
    return SectionMap(m, iterate_return(odd_closed_form(m), c), name=f"f{c}^m")


def inverse_of_minus_two(m):
    if m % 2 == 0:
        raise EvenModulus(f"-2 has no inverse modulo even m={m}")
    return mod_inverse(-2, m)


def psi(c, m) -> AffineSectionMap:
    """Affine conjugacy carrying the color-``c`` return map onto the odometer."""
    m = check_modulus(m)
    if m % 2 == 0:
        raise EvenModulus(f"conjugacies need odd m, got {m}")
    if c == 0:
        return AffineSectionMap(m, ((0, 1), (1, 2)))
    if c == 1:
        return AffineSectionMap(m, ((0, 1), (1, 0)), (1, 0))
    if c == 2:
        lam = inverse_of_minus_two(m)
        return AffineSectionMap(m, ((0, lam), (lam, lam)))
    raise ValueError(f"color must be 0, 1 or 2, got {c}")


def conjugacy_holds(c, m) -> bool:
    """Pointwise check of ``psi o F == O o psi``."""
    p = psi(c, m).as_section_map()
    return p.compose(return_map_F(c, m)) == odometer(m).compose(p)


@dataclass(frozen=True)
class ShatterReport:
    m: int
    cycle_counts: tuple
    hamilton: tuple
    section_census: dict

    def lines(self):
        out = [f"m = {self.m}"]
        for c in COLORS:
            tag = "Hamilton" if self.hamilton[c] else "not Hamilton"
            out.append(f"color {c}: {self.cycle_counts[c]} cycles ({tag})")
        return out


def _length_census(dec):
    lengths, counts = np.unique(dec.lengths, return_counts=True)
    return {int(a): int(b) for a, b in zip(lengths, counts)}


def even_shatter_analysis(m, full_threshold=12) -> ShatterReport:
    """Cycle counts of the odd-case coloring at even ``m``.

    For ``m`` up to ``full_threshold`` the full color maps are decomposed; above
    it the counts come from the section return maps, whose cycles correspond one
    to one with those of the full maps.
    """
    m = check_modulus(m, minimum=4)
    if m % 2:
        raise OddModulus(f"shatter analysis needs even m, got {m}")
    assign = odd_closed_form(m)
    if m <= full_threshold:
        counts = tuple(cycle_decomposition(assign.step_table(c)).count for c in COLORS)
    else:
        counts = tuple(cycle_decomposition(iterate_return(assign, c)).count for c in COLORS)
    f2 = return_map_F(2, m)
    odd_k = np.array([(a % m) % 2 == 1 for a in range(m * m)])
    census = {"odd_k": {}, "even_k": {}}
    for cyc, length in zip(f2.cycles().cycles, f2.cycles().lengths.tolist()):
        half = "odd_k" if odd_k[cyc[0]] else "even_k"
        census[half][length] = census[half].get(length, 0) + 1
    return ShatterReport(m, counts, tuple(n == 1 for n in counts), census)


@dataclass(frozen=True)
class ClockAndCarry:
    delta: int
    orbit_length: int
    single_cycle: bool


def clock_and_carry(m, d, alpha: Callable[[int], int]) -> ClockAndCarry:
    """Cycle verdict for ``(i, k) -> (i + alpha(k), k + d)`` with ``d`` a unit.

    The closed-form answer is compared against a direct decomposition.
    """
    m = check_modulus(m, minimum=1)
    if gcd(d % m, m) != 1:
        raise StepNotUnit(f"clock step {d} is not a unit modulo {m}")
    values = [int(alpha(t)) for t in range(m)]
    delta = sum(values) % m
    orbit_length = m * m // gcd(delta, m)
    direct = SectionMap.from_function(m, lambda i, k: (i + values[k % m], k + d)).cycles()
    if set(direct.lengths.tolist()) != {orbit_length}:
        raise RuntimeError("clock-and-carry formula disagrees with direct decomposition")
    return ClockAndCarry(delta, orbit_length, orbit_length == m * m)
