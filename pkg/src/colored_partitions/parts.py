"""Colored parts, the two orders on them, statistics and chain validation.

Colors are 0-based indices into an ordered alphabet ``a_1 < ... < a_m``.
A primary part ``(k, p)`` has length ``k``; a secondary part ``(k, p, q)``
has length ``2k + delta(p, q)`` and splits into the upper half
``(k + delta(p, q), p)`` and the lower half ``(k, q)``.

Sizes are plain integers and may be zero or negative; positivity is only
enforced by :func:`validate`.
"""

from __future__ import annotations

import enum
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


def delta(p: int, q: int) -> int:
    """Indicator of ``p <= q`` on color indices."""
    return 1 if p <= q else 0


@dataclass(frozen=True)
class ColorAlphabet:
    """The ordered set of ``m`` primary colors."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"need at least one color, got m={self.m}")

    def __len__(self) -> int:
        return self.m

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.m))

    def __contains__(self, color) -> bool:
        return isinstance(color, int) and 0 <= color < self.m

    def name(self, color: int) -> str:
        if color not in self:
            raise ValueError(f"color {color} outside alphabet of size {self.m}")
        return color_name(color, self.m)

    def index(self, name: str) -> int:
        color = color_index(name)
        if color not in self:
            raise ValueError(f"color {name!r} outside alphabet of size {self.m}")
        return color


def color_name(color: int, m: int | None = None) -> str:
    """Letter for ``color`` (``a``, ``b``, ...), or ``(i)`` with 1-based ``i`` past 26 colors."""
    if (m is None or m <= 26) and 0 <= color < 26:
        return string.ascii_lowercase[color]
    return f"({color + 1})"


def color_index(name: str) -> int:
    if len(name) == 1 and name in string.ascii_lowercase:
        return string.ascii_lowercase.index(name)
    if name.startswith("(") and name.endswith(")") and name[1:-1].isdigit():
        index = int(name[1:-1]) - 1
        if index >= 0:
            return index
    raise ValueError(f"not a color name: {name!r}")


@dataclass(frozen=True, slots=True)
class Primary:
    """Part ``(k, p)`` of length ``k`` and color ``p``."""

    k: int
    p: int

    @property
    def length(self) -> int:
        return self.k

    @property
    def colors(self) -> tuple[int]:
        return (self.p,)

    def __str__(self) -> str:
        return f"{self.k}:{color_name(self.p)}"


@dataclass(frozen=True, slots=True)
class Secondary:
    """Part ``(k, p, q)`` of length ``2k + delta(p, q)`` and color ``pq``."""

    k: int
    p: int
    q: int

    @property
    def length(self) -> int:
        return 2 * self.k + delta(self.p, self.q)

    @property
    def colors(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def upper(self) -> Primary:
        return gamma(self)

    @property
    def lower(self) -> Primary:
        return mu(self)

    def __str__(self) -> str:
        return f"{self.length}:{color_name(self.p)}{color_name(self.q)}"


Part = Union[Primary, Secondary]


def actual_length(part: Part) -> int:
    return part.length


def gamma(part: Secondary) -> Primary:
    """Upper half of a secondary part."""
    return Primary(part.k + delta(part.p, part.q), part.p)


def mu(part: Secondary) -> Primary:
    """Lower half of a secondary part."""
    return Primary(part.k, part.q)


def split(part: Secondary) -> tuple[Primary, Primary]:
    return gamma(part), mu(part)


def merge(hi: Primary, lo: Primary) -> Secondary:
    """Inverse of :func:`split`: glue two parts that are consecutive for the natural order."""
    if hi.k - lo.k != delta(hi.p, lo.p):
        raise ValueError(
            f"{hi} and {lo} are not consecutive: size gap {hi.k - lo.k}, "
            f"expected {delta(hi.p, lo.p)}"
        )
    return Secondary(lo.k, hi.p, lo.p)


def natural_gt(x: Primary, y: Primary) -> bool:
    """``x >_c y``: size first, color as tiebreak."""
    return x.k - y.k >= delta(x.p, y.p)


def strong_gt(x: Part, y: Part) -> bool:
    """``x >>_c y``: the minimal difference condition between consecutive parts."""
    if isinstance(x, Primary):
        if isinstance(y, Primary):
            return x.k - y.k >= 1 + delta(x.p, y.p)
        return x.k - y.length >= delta(x.p, y.p) + delta(y.p, y.q)
    if isinstance(y, Primary):
        return x.length - y.k >= 1 + delta(x.p, x.q) + delta(x.q, y.p)
    return x.length - y.length >= (
        delta(x.p, x.q) + 2 * delta(x.q, y.p) + delta(y.p, y.q)
    )


def strong_gt_by_halves(x: Secondary, y: Secondary) -> bool:
    """Secondary-secondary comparison through ``mu(x) >_c gamma(y)``."""
    return natural_gt(mu(x), gamma(y))


def weight(parts: Iterable[Part]) -> int:
    return sum(part.length for part in parts)


def color_sequence(parts: Iterable[Part]) -> tuple[int, ...]:
    """Primary colors read in position order, upper before lower for secondary parts."""
    return tuple(c for part in parts for c in part.colors)


def expand_halves(parts: Iterable[Part]) -> list[Primary]:
    """Replace every secondary part by its upper and lower halves, in place."""
    out: list[Primary] = []
    for part in parts:
        if isinstance(part, Secondary):
            out.extend(split(part))
        else:
            out.append(part)
    return out


@dataclass(frozen=True)
class StatVector:
    """Weight ``n`` and per-color counts ``u``."""

    n: int
    u: tuple[int, ...]

    def __str__(self) -> str:
        return f"n={self.n} u=({','.join(map(str, self.u))})"


def stats(parts: Iterable[Part], m: int | None = None) -> StatVector:
    """Weight and color statistics.

    ``u[i]`` counts parts colored ``a_i``, parts colored ``a_i a_j`` or
    ``a_j a_i`` with ``j != i``, and twice the parts colored ``a_i a_i``; a
    secondary part simply contributes one to each of its two colors.
    """
    parts = list(parts)
    if m is None:
        m = 1 + max((c for part in parts for c in part.colors), default=0)
    u = [0] * m
    n = 0
    for part in parts:
        n += part.length
        for c in part.colors:
            u[c] += 1
    return StatVector(n, tuple(u))


class Mode(enum.Enum):
    C = "C-chain"
    D = "D-chain"
    RAW = "raw"


@dataclass(frozen=True)
class Violation:
    index: int
    reason: str

    def __str__(self) -> str:
        return f"part {self.index + 1}: {self.reason}"


def validate(parts: Sequence[Part], mode: Mode) -> list[Violation]:
    """Every violation of ``mode`` in ``parts``, lowest index first.

    Indices are 0-based. A pair violation is reported at the index of the
    first part of the pair. ``Mode.RAW`` accepts anything.
    """
    if mode is Mode.RAW:
        return []
    found: list[Violation] = []
    for i, part in enumerate(parts):
        if mode is Mode.C and isinstance(part, Secondary):
            found.append(Violation(i, f"{part} is not a primary part"))
        elif isinstance(part, Secondary) and part.length == 1:
            found.append(Violation(i, f"secondary part {part} has length 1"))
        elif part.k < 1:
            found.append(Violation(i, f"{part} has non-positive size index {part.k}"))
        if i + 1 < len(parts):
            nxt = parts[i + 1]
            if mode is Mode.C:
                if isinstance(part, Primary) and isinstance(nxt, Primary):
                    if not natural_gt(part, nxt):
                        found.append(Violation(i, f"{part} >_c {nxt} fails"))
            elif not strong_gt(part, nxt):
                found.append(Violation(i, f"{part} >>_c {nxt} fails"))
    return found


class InvalidPartition(ValueError):
    def __init__(self, mode: Mode, violations: list[Violation]):
        self.mode = mode
        self.violations = violations
        super().__init__(
            f"not a {mode.value}: " + "; ".join(str(v) for v in violations)
        )


@dataclass(frozen=True)
class ColoredPartition(Sequence):
    """An ordered sequence of parts, validated against ``mode`` on construction."""

    parts: tuple[Part, ...] = ()
    mode: Mode = Mode.RAW

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        violations = validate(self.parts, self.mode)
        if violations:
            raise InvalidPartition(self.mode, violations)

    def __getitem__(self, index):
        return self.parts[index]

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "+".join(str(part) for part in self.parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, ColoredPartition):
            return self.parts == other.parts
        if isinstance(other, (tuple, list)):
            return self.parts == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.parts)

    @property
    def weight(self) -> int:
        return weight(self.parts)

    def stats(self, m: int | None = None) -> StatVector:
        return stats(self.parts, m)
