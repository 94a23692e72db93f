"""Dilations from colored chains to ordinary partitions with congruence
conditions, minimal-difference tables, and the two specialised identities
(two colors: distinct odd parts; three colors: parts 4, 6, 9 mod 10).

The three-color identity is usually written with colors ``a, b, d``; here
they are colors 0, 1, 2, displayed ``a, b, c`` (see :data:`M3_ALIASES`).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .enumeration import Report, iter_chains
from .parts import (
    InvalidPartition,
    Mode,
    Part,
    Primary,
    Secondary,
    color_name,
    delta,
    stats,
    strong_gt,
    validate,
)


@dataclass(frozen=True)
class Dilation:
    """``q -> q^scale`` and ``a_i -> a_i q^(-shifts[i])``."""

    scale: int
    shifts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(self.shifts))
        for i, d in enumerate(self.shifts):
            if self.scale - d < 1:
                raise ValueError(
                    f"color {color_name(i)}: part 1 would dilate to {self.scale - d}, not positive"
                )

    @property
    def m(self) -> int:
        return len(self.shifts)

    def __call__(self, part: Part) -> int:
        return self.scale * part.length - sum(self.shifts[c] for c in part.colors)


SILADIC_DILATION = Dilation(4, (3, 1))
M3_DILATION = Dilation(10, (6, 4, 1))
M3_ALIASES = {"a": "a", "b": "b", "c": "d"}


@dataclass(frozen=True)
class DilatedPart:
    value: int
    label: str

    def __str__(self) -> str:
        return f"{self.value}_{self.label}"


def color_label(part: Part) -> str:
    return "".join(color_name(c) for c in part.colors)


def dilate_partition(parts: Sequence[Part], dilation: Dilation) -> list[DilatedPart]:
    """Dilate every part of a C- or D-chain, keeping its color as a label."""
    parts = list(parts)
    if validate(parts, Mode.C) and validate(parts, Mode.D):
        raise InvalidPartition(Mode.D, validate(parts, Mode.D))
    out = [DilatedPart(dilation(x), color_label(x)) for x in parts]
    for x, d in zip(parts, out):
        if d.value <= 0:
            raise ValueError(f"{x} dilates to non-positive {d.value}")
    return out


# -- minimal difference tables -------------------------------------------

@dataclass(frozen=True, order=True)
class ColorClass:
    """Parts sharing a color and, optionally, a length parity (0 even, 1 odd)."""

    colors: tuple[int, ...]
    parity: int | None = None

    @property
    def label(self) -> str:
        name = "".join(color_name(c) for c in self.colors)
        if self.parity is None:
            return name
        return f"{name}_{'odd' if self.parity else 'even'}"

    def members(self, max_k: int) -> Iterator[Part]:
        for k in range(1, max_k + 1):
            part: Part = Primary(k, *self.colors) if len(self.colors) == 1 else Secondary(k, *self.colors)
            if self.parity is None or part.length % 2 == self.parity:
                yield part


def color_classes(m: int, granularity: str = "reduced") -> list[ColorClass]:
    if granularity not in ("reduced", "parity-split"):
        raise ValueError(f"granularity must be 'reduced' or 'parity-split', got {granularity!r}")
    classes = []
    for p in range(m):
        if granularity == "reduced":
            classes.append(ColorClass((p,)))
        else:
            classes += [ColorClass((p,), 1), ColorClass((p,), 0)]
    pairs = sorted(product(range(m), repeat=2), key=lambda pq: (1 - delta(*pq), pq))
    classes += [ColorClass(pq) for pq in pairs]
    return classes


@dataclass
class DiffTable:
    """Minimal admissible ``len(row part) - len(column part)`` per pair of color classes."""

    classes: list[ColorClass]
    entries: dict[tuple[ColorClass, ColorClass], int] = field(default_factory=dict)

    @property
    def labels(self) -> list[str]:
        return [cls.label for cls in self.classes]

    def _class(self, key) -> ColorClass:
        if isinstance(key, ColorClass):
            return key
        for cls in self.classes:
            if cls.label == key:
                return cls
        raise KeyError(key)

    def __getitem__(self, key) -> int:
        row, col = key
        return self.entries[self._class(row), self._class(col)]

    def as_dict(self) -> dict[tuple[str, str], int]:
        return {(r.label, c.label): v for (r, c), v in self.entries.items()}

    def zero_cycle_free(self) -> bool:
        """No cycle of classes whose minimal differences sum to zero."""
        zero = defaultdict(list)
        for (r, c), v in self.entries.items():
            if v <= 0:
                zero[r].append(c)
        state: dict[ColorClass, int] = {}

        def visit(node) -> bool:
            state[node] = 1
            for nxt in zero[node]:
                if state.get(nxt) == 1 or (nxt not in state and not visit(nxt)):
                    return False
            state[node] = 2
            return True

        return all(visit(cls) for cls in self.classes if cls not in state)

    def format(self, aliases: dict[str, str] | None = None) -> str:
        def show(label: str) -> str:
            if not aliases:
                return label
            head, _, tail = label.partition("_")
            head = "".join(aliases.get(ch, ch) for ch in head)
            return f"{head}_{tail}" if tail else head

        labels = [show(label) for label in self.labels]
        width = max(len(label) for label in labels + ["row\\col"]) + 1
        lines = ["row\\col".ljust(width) + "".join(label.rjust(width) for label in labels)]
        for row, row_label in zip(self.classes, labels):
            cells = "".join(str(self.entries[row, col]).rjust(width) for col in self.classes)
            lines.append(row_label.ljust(width) + cells)
        return "\n".join(lines)


def generate_diff_table(m: int, granularity: str = "reduced", max_k: int = 8) -> DiffTable:
    """Minimise the length gap over sampled part pairs related by ``>>``.

    Every relation between two classes is a lower bound on the length gap,
    so parts with ``k <= max_k`` already realise the minimum.
    """
    table = DiffTable(color_classes(m, granularity))
    members = {cls: list(cls.members(max_k)) for cls in table.classes}
    for row, col in product(table.classes, repeat=2):
        gaps = [
            x.length - y.length
            for x in members[row]
            for y in members[col]
            if strong_gt(x, y)
        ]
        table.entries[row, col] = min(gaps)
    return table


# -- two colors: distinct odd parts ---------------------------------------

def distinct_part_partitions(n: int, allowed=lambda part: True, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Strictly decreasing partitions of ``n`` whose parts pass ``allowed``."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        if allowed(first):
            for rest in distinct_part_partitions(n - first, allowed, first - 1):
                yield (first,) + rest


def distinct_odd_partitions(n: int) -> list[tuple[int, ...]]:
    return list(distinct_part_partitions(n, lambda part: part % 2 == 1))


SILADIC_RESIDUES = {
    5: {1, 4},
    6: {1, 3, 5, 7},
    7: {0, 1, 3, 4, 6, 7},
    8: {0, 1, 3, 4, 5, 7},
}


def siladic_pair_ok(hi: int, lo: int) -> bool:
    gap = hi - lo
    if gap < 5:
        return False
    return gap > 8 or hi % 8 in SILADIC_RESIDUES[gap]


def siladic_ok(parts: Sequence[int]) -> bool:
    """Parts positive and not 2, consecutive gaps at least 5 with the mod 8 rules."""
    if any(part < 1 or part == 2 for part in parts):
        return False
    return all(siladic_pair_ok(hi, lo) for hi, lo in zip(parts, parts[1:]))


def siladic_partitions(n: int) -> list[tuple[int, ...]]:
    return [p for p in distinct_part_partitions(n, lambda part: part != 2) if siladic_ok(p)]


def _dilated_chains(m: int, max_n: int, side: str, dilation: Dilation) -> dict[int, list[tuple[Part, ...]]]:
    by_n: dict[int, list[tuple[Part, ...]]] = defaultdict(list)
    for chain in iter_chains(m, max_n, side, dilation):
        by_n[sum(dilation(x) for x in chain)].append(chain)
    return by_n


def order_faithfulness_failures(dilation: Dilation, pair_ok, max_length: int) -> list[str]:
    """Pairs of valid parts where ``>>`` disagrees with the dilated pair rule."""
    m = dilation.m
    parts: list[Part] = [Primary(k, p) for p in range(m) for k in range(1, max_length + 1)]
    parts += [
        Secondary(k, p, q)
        for p in range(m) for q in range(m)
        for k in range(1, max_length // 2 + 1)
        if 2 * k + delta(p, q) <= max_length
    ]
    bad = []
    for x in parts:
        for y in parts:
            if strong_gt(x, y) != pair_ok(dilation(x), dilation(y)):
                bad.append(f"{x} vs {y}: >> is {strong_gt(x, y)}, dilated rule disagrees")
    return bad


def verify_siladic(max_n: int, faithfulness_length: int = 30) -> Report:
    """Check the two-color identity for every ``n <= max_n``.

    The dilated D-chains must be exactly the partitions obeying the gap and
    mod 8 rules (generated independently), the dilated C-chains exactly the
    partitions into distinct odd parts, and the two counts equal.
    """
    report = Report(f"siladic max_n={max_n}")
    dil = SILADIC_DILATION
    d_side = _dilated_chains(2, max_n, "D", dil)
    c_side = _dilated_chains(2, max_n, "C", dil)
    for n in range(max_n + 1):
        dilated_d = sorted(tuple(dil(x) for x in chain) for chain in d_side.get(n, []))
        dilated_c = sorted(tuple(dil(x) for x in chain) for chain in c_side.get(n, []))
        rules = sorted(siladic_partitions(n))
        odd = sorted(distinct_odd_partitions(n))
        report.checked += 1
        report.details.append(f"n={n}: distinct odd {len(odd)}, gap rules {len(rules)}")
        if dilated_d != rules:
            report.fail(f"n={n}: dilated D-chains {dilated_d} != rule partitions {rules}")
        if dilated_c != odd:
            report.fail(f"n={n}: dilated C-chains {dilated_c} != distinct odd {odd}")
        if len(rules) != len(odd):
            report.fail(f"n={n}: {len(odd)} distinct odd vs {len(rules)} gap-rule partitions")
    for failure in order_faithfulness_failures(dil, siladic_pair_ok, faithfulness_length):
        report.fail(failure)
    return report


# -- three colors: parts 4, 6, 9 mod 10 -----------------------------------

COROLLARY_RESIDUES = {
    9: {4, 19},
    10: set(),
    11: {4, 6, 10, 15},
    12: {6, 15, 16},
    13: {3, 6, 9, 16, 19},
    14: {4, 9, 10, 13, 19},
    15: {4, 5, 9, 10, 14, 15, 19},
    16: {0, 4, 6, 9, 10, 15, 16, 19},
    17: {0, 3, 6, 10, 13, 15, 16, 19},
    18: {2, 3, 4, 6, 8, 13, 14, 16},
    19: {2, 3, 4, 5, 9, 13, 14, 15, 18, 19},
    20: {0, 3, 4, 5, 6, 9, 10, 13, 14, 15, 16, 19},
}
FORBIDDEN_PARTS = {2, 3, 5, 8}
FORBIDDEN_RESIDUES_20 = {1, 7, 11, 12, 17}


def corollary_part_ok(part: int) -> bool:
    return part >= 1 and part not in FORBIDDEN_PARTS and part % 20 not in FORBIDDEN_RESIDUES_20


def corollary_pair_ok(hi: int, lo: int) -> bool:
    gap = hi - lo
    if gap < 9:
        return False
    return gap > 20 or hi % 20 in COROLLARY_RESIDUES[gap]


def corollary_b_ok(parts: Sequence[int]) -> bool:
    return all(corollary_part_ok(x) for x in parts) and all(
        corollary_pair_ok(hi, lo) for hi, lo in zip(parts, parts[1:])
    )


def residue_stats_a(parts: Iterable[int]) -> tuple[int, int, int]:
    """Parts congruent to 4, 6, 9 mod 10."""
    u = [0, 0, 0]
    for x in parts:
        u[{4: 0, 6: 1, 9: 2}[x % 10]] += 1
    return tuple(u)


def residue_stats_b(parts: Iterable[int]) -> tuple[int, int, int]:
    """Color counts read off residues: single residues mod 10, doubled ones mod 20."""
    u = [0, 0, 0]
    for x in parts:
        if x % 20 == 18:
            u[0] += 2
        elif x % 20 == 2:
            u[1] += 2
        elif x % 20 == 8:
            u[2] += 2
        else:
            r = x % 10
            if r in (0, 3, 4):
                u[0] += 1
            if r in (0, 5, 6):
                u[1] += 1
            if r in (3, 5, 9):
                u[2] += 1
    return tuple(u)


def corollary_a_partitions(n: int) -> list[tuple[int, ...]]:
    return list(distinct_part_partitions(n, lambda x: x % 10 in (4, 6, 9)))


def corollary_b_partitions(n: int) -> list[tuple[int, ...]]:
    return [p for p in distinct_part_partitions(n, corollary_part_ok) if corollary_b_ok(p)]


def derive_residue_table(dilation: Dilation = M3_DILATION, gaps=range(9, 21), max_k: int = 8) -> dict[int, set[int]]:
    """``(gap, hi mod 20)`` pairs realised by ``>>``-related valid parts."""
    realised: dict[int, set[int]] = {gap: set() for gap in gaps}
    m = dilation.m
    parts: list[Part] = [Primary(k, p) for p in range(m) for k in range(1, 2 * max_k + 2)]
    parts += [Secondary(k, p, q) for p in range(m) for q in range(m) for k in range(1, max_k + 1)]
    for x in parts:
        for y in parts:
            gap = dilation(x) - dilation(y)
            if gap in realised and strong_gt(x, y):
                realised[gap].add(dilation(x) % 20)
    return realised


def bucket_a(n: int) -> dict[tuple[int, int, int], list[tuple[int, ...]]]:
    out = defaultdict(list)
    for p in corollary_a_partitions(n):
        out[residue_stats_a(p)].append(p)
    return dict(out)


def bucket_b(n: int) -> dict[tuple[int, int, int], list[tuple[int, ...]]]:
    out = defaultdict(list)
    for p in corollary_b_partitions(n):
        out[residue_stats_b(p)].append(p)
    return dict(out)


def verify_corollary_m3(max_n: int, faithfulness_length: int = 30) -> Report:
    """Check the three-color identity bucket by bucket for every ``n <= max_n``.

    A and B are generated from their congruence descriptions alone; they are
    compared with each other and with the dilated C- and D-chains.
    """
    report = Report(f"corollary m=3 max_n={max_n}")
    dil = M3_DILATION
    d_side = _dilated_chains(3, max_n, "D", dil)
    c_side = _dilated_chains(3, max_n, "C", dil)
    for n in range(max_n + 1):
        a, b = bucket_a(n), bucket_b(n)
        dil_c: dict = defaultdict(list)
        for chain in c_side.get(n, []):
            dil_c[stats(chain, 3).u].append(tuple(dil(x) for x in chain))
        dil_d: dict = defaultdict(list)
        for chain in d_side.get(n, []):
            dil_d[stats(chain, 3).u].append(tuple(dil(x) for x in chain))
        for u in sorted(set(a) | set(b) | set(dil_c) | set(dil_d)):
            report.checked += 1
            na, nb = len(a.get(u, [])), len(b.get(u, []))
            report.details.append(f"n={n} (u,v,w)={u}: A={na} B={nb}")
            if na != nb:
                report.fail(f"n={n} {u}: A={na} B={nb}")
            if sorted(a.get(u, [])) != sorted(dil_c.get(u, [])):
                report.fail(f"n={n} {u}: A {a.get(u)} != dilated C {dil_c.get(u)}")
            if sorted(b.get(u, [])) != sorted(dil_d.get(u, [])):
                report.fail(f"n={n} {u}: B {b.get(u)} != dilated D {dil_d.get(u)}")
    derived = derive_residue_table()
    for gap, residues in COROLLARY_RESIDUES.items():
        if derived[gap] != residues:
            report.fail(f"gap {gap}: derived residues {sorted(derived[gap])} != stated {sorted(residues)}")

    def pair_ok(hi: int, lo: int) -> bool:
        return corollary_part_ok(hi) and corollary_part_ok(lo) and corollary_pair_ok(hi, lo)

    for failure in order_faithfulness_failures(dil, pair_ok, faithfulness_length):
        report.fail(failure)
    return report
