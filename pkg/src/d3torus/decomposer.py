"""Top-level construction, certification, re-verification and serialization."""

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .errors import UnsupportedFormat
from .kempe import sign_product
from .odd import conjugacy_holds, odd_closed_form
from .route_e import case_of, counting_check, lane_map_from_section, route_e_assignment
from .sections import SectionMap
from .torus import (
    COLORS,
    DirectionAssignment,
    Vertex,
    check_modulus,
    checked_return_maps,
    cycle_decomposition,
    first_collision,
    validity_via_return,
    vertex_coordinates,
)
from .witness_m4 import m4_assignment

SCHEMA_VERSION = 1
DIRECT_THRESHOLD = 20
FORMATS = {"json": "json", "cycles": "cycles_text", "cycles_text": "cycles_text",
           "arcs": "arcs_edgelist", "arcs_edgelist": "arcs_edgelist"}


@dataclass
class HamiltonDecomposition:
    m: int
    case_tag: str
    assignment: DirectionAssignment
    cycles: Optional[tuple] = None
    certificate: dict = field(default_factory=dict)

    def cycle_vertices(self, c):
        """Cycle of color ``c`` as a list of ``(i, j, k)`` tuples."""
        m = self.m
        return [(x // (m * m), (x // m) % m, x % m) for x in np.asarray(self.cycles[c]).tolist()]


def construct(m) -> tuple:
    """``(case_tag, assignment)`` for the construction that covers ``m``."""
    m = check_modulus(m)
    if m % 2:
        return "odd", odd_closed_form(m)
    if m == 4:
        return "m4", m4_assignment()
    return case_of(m), route_e_assignment(m)


def color_cycle(assign: DirectionAssignment, c) -> np.ndarray:
    """Orbit of color ``c`` from (0,0,0), stopping when it closes or covers V."""
    step = assign.step_table(c)
    return _kernels.orbit(step, 0, step.shape[0] + 1)


def _direct_certificate(assign):
    per_color = []
    ok = True
    for c in COLORS:
        dec = cycle_decomposition(assign.step_table(c))
        per_color.append({"color": c, "cycle_count": dec.count,
                          "cycle_length": int(dec.lengths.max())})
        ok &= dec.count == 1
    return {"method": "direct_iteration", "per_color": per_color}, ok


def _section_certificate(case_tag, assign):
    m = assign.m
    maps = checked_return_maps(assign)
    ok = validity_via_return(assign, maps)
    per_color = []
    for c in COLORS:
        section = SectionMap(m, maps[c])
        dec = section.cycles()
        entry = {"color": c, "return_cycle_count": dec.count}
        single = dec.count == 1
        if case_tag.startswith("even"):
            lane = lane_map_from_section(c, m, section)
            entry["lane_return_total"] = lane.total_time
            entry["lane_single_cycle"] = lane.is_single_cycle()
            single = single and counting_check(lane)
        elif case_tag == "odd":
            entry["odometer_conjugate"] = conjugacy_holds(c, m)
            single = single and entry["odometer_conjugate"]
        per_color.append(entry)
        ok = ok and single
    return {"method": "return_counting", "per_color": per_color}, ok


def decompose(m, threshold=DIRECT_THRESHOLD, with_cycles=None) -> HamiltonDecomposition:
    """Build and certify a Hamilton decomposition of D3(m).

    Up to ``threshold`` the certificate decomposes the three color maps fully;
    above it, the return maps to ``S = 0`` are checked instead, which suffices
    because their cycles correspond one to one with those of the color maps.
    Cycles are attached by default only below the threshold.
    """
    m = check_modulus(m)
    case_tag, assign = construct(m)
    if m <= threshold:
        certificate, ok = _direct_certificate(assign)
    else:
        certificate, ok = _section_certificate(case_tag, assign)
    if not ok:
        raise RuntimeError(f"construction for m={m} failed its certificate: {certificate}")
    if with_cycles is None:
        with_cycles = m <= threshold
    cycles = tuple(color_cycle(assign, c) for c in COLORS) if with_cycles else None
    return HamiltonDecomposition(m, case_tag, assign, cycles, certificate)


@dataclass
class VerificationReport:
    m: int
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def __bool__(self):
        return self.ok

    def lines(self):
        out = [f"m = {self.m}"]
        for name, passed in self.checks.items():
            line = f"{name}: {'ok' if passed else 'FAILED'}"
            if name in self.witnesses:
                line += f" ({self.witnesses[name]})"
            out.append(line)
        out.append("verdict: " + ("verified" if self.ok else "not verified"))
        return out


def verify_decomposition(dec: HamiltonDecomposition) -> VerificationReport:
    """Re-check a decomposition from its direction table alone, by full iteration."""
    assign = dec.assignment
    m = assign.m
    n = m ** 3
    report = VerificationReport(m)

    bad = assign.first_ill_formed()
    report.checks["triples are permutations"] = bad is None
    if bad is not None:
        report.witnesses["triples are permutations"] = f"{assign.triple_at(bad)} at {bad}"
        return report

    bijective = True
    for c in COLORS:
        hit = first_collision(assign.step_table(c))
        if hit is not None:
            bijective = False
            v1, v2, img = (Vertex.from_index(x, m) for x in hit)
            report.witnesses["color maps are bijections"] = f"color {c}: {v1} and {v2} both reach {img}"
            break
    report.checks["color maps are bijections"] = bijective
    if not bijective:
        return report

    counts = [cycle_decomposition(assign.step_table(c)).count for c in COLORS]
    report.checks["each color is one cycle"] = counts == [1, 1, 1]
    if counts != [1, 1, 1]:
        report.witnesses["each color is one cycle"] = f"cycle counts {counts}"

    arcs = np.concatenate([np.arange(n, dtype=np.int64) * 3 + assign.triples[:, c] for c in COLORS])
    distinct = np.unique(arcs).size
    report.checks["arcs are disjoint and cover D3(m)"] = distinct == arcs.size == 3 * n

    if dec.cycles is not None:
        same = all(np.array_equal(np.asarray(dec.cycles[c]), color_cycle(assign, c)) for c in COLORS)
        report.checks["recorded cycles match the table"] = same

    if m % 2 == 0:
        product = sign_product(assign)
        report.checks["sign product is -1"] = product == -1
    return report


# ---------------------------------------------------------------------------
# Serialization

def _format_name(fmt):
    try:
        return FORMATS[fmt]
    except KeyError:
        raise UnsupportedFormat(f"unknown format {fmt!r}; expected one of {sorted(FORMATS)}") from None


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _vertex_lists(dec):
    return [[list(v) for v in dec.cycle_vertices(c)] for c in COLORS]


def export(dec: HamiltonDecomposition, fmt="json", include_cycles=True) -> str:
    fmt = _format_name(fmt)
    m = dec.m
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "m": m,
            "case": dec.case_tag,
            "triples": dec.assignment.words(),
        }
        if include_cycles and dec.cycles is not None:
            doc["cycles"] = _vertex_lists(dec)
        doc["certificate"] = _plain(dec.certificate)
        return json.dumps(doc, separators=(",", ":")) + "\n"
    cycles = dec.cycles if dec.cycles is not None else tuple(color_cycle(dec.assignment, c) for c in COLORS)
    if fmt == "cycles_text":
        full = HamiltonDecomposition(m, dec.case_tag, dec.assignment, cycles)
        return "".join(" ".join(f"{i},{j},{k}" for i, j, k in full.cycle_vertices(c)) + "\n"
                       for c in COLORS)
    I, J, K = vertex_coordinates(m)
    lines = []
    for idx in range(m ** 3):
        for c in COLORS:
            lines.append(f"{I[idx]},{J[idx]},{K[idx]} {dec.assignment.triples[idx, c]} {c}")
    return "\n".join(lines) + "\n"


def _cube_root(n):
    m = round(n ** (1 / 3))
    for cand in (m - 1, m, m + 1):
        if cand ** 3 == n:
            return cand
    raise ValueError(f"{n} is not a cube")


def _triples_from_cycles(m, cycles):
    table = np.full((m ** 3, 3), -1, dtype=np.int8)
    for c, cyc in enumerate(cycles):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            diff = [(y - x) % m for x, y in zip(a, b)]
            if sorted(diff) != [0, 0, 1]:
                raise ValueError(f"color {c}: {a} -> {b} is not an arc")
            table[(a[0] * m + a[1]) * m + a[2], c] = diff.index(1)
    if (table < 0).any():
        raise ValueError("cycles do not cover every vertex")
    return table


def _from_table(m, table, case_tag=None, cycles=None, certificate=None):
    assign = DirectionAssignment(m, table, check=False)
    if case_tag is None:
        case_tag = "odd" if m % 2 else ("m4" if m == 4 else case_of(m))
    return HamiltonDecomposition(m, case_tag, assign, cycles, certificate or {})


def load(text, fmt="json") -> HamiltonDecomposition:
    """Inverse of :func:`export`.  The table is loaded unchecked so it can be verified."""
    fmt = _format_name(fmt)
    if fmt == "json":
        doc = json.loads(text)
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise UnsupportedFormat(f"unsupported schema version {doc.get('schema_version')!r}")
        m = check_modulus(doc["m"])
        table = [tuple(int(ch) for ch in w) for w in doc["triples"]]
        cycles = None
        if "cycles" in doc:
            cycles = tuple(np.array([(i * m + j) * m + k for i, j, k in cyc], dtype=np.int64)
                           for cyc in doc["cycles"])
        return _from_table(m, table, doc["case"], cycles, doc.get("certificate"))
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if fmt == "cycles_text":
        cycles = [[tuple(int(x) for x in item.split(",")) for item in ln.split()] for ln in lines]
        if len(cycles) != 3:
            raise ValueError(f"expected 3 cycle lines, got {len(cycles)}")
        m = _cube_root(len(cycles[0]))
        dense = tuple(np.array([(i * m + j) * m + k for i, j, k in cyc], dtype=np.int64) for cyc in cycles)
        return _from_table(m, _triples_from_cycles(m, cycles), cycles=dense)
    m = _cube_root(len(lines) // 3)
    table = np.full((m ** 3, 3), -1, dtype=np.int8)
    for ln in lines:
        v, d, c = ln.split()
        i, j, k = (int(x) for x in v.split(","))
        table[(i * m + j) * m + k, int(c)] = int(d)
    return _from_table(m, table)

