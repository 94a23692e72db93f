"""Text and JSON forms of parts and partitions.

Text grammar::

    partition := "" | part ("+" part)*
    part      := LENGTH ":" COLOR           primary, e.g. 24:a
               | LENGTH ":" COLOR COLOR     secondary, e.g. 19:ab, 8:ba, 11:aa
    COLOR     := one of a..z | "(" INDEX ")"   (INDEX is 1-based)

A secondary part of length ``L`` colored ``pq`` must have ``L`` with the
parity of ``delta(p, q)``.
"""

from __future__ import annotations

import re
from typing import Any, Iterable

from .parts import (
    ColoredPartition,
    Mode,
    Part,
    Primary,
    Secondary,
    color_index,
    color_name,
    delta,
)

GRAMMAR = "LENGTH:COLOR or LENGTH:COLORCOLOR, joined by '+' (e.g. 24:a+19:ab+8:ba)"

_PART_RE = re.compile(r"^(-?\d+):((?:[a-z]|\(\d+\))+)$")
_COLOR_RE = re.compile(r"[a-z]|\(\d+\)")


class ParseError(ValueError):
    def __init__(self, token: str, problem: str):
        self.token = token
        self.problem = problem
        super().__init__(f"bad part {token!r}: {problem}; expected {GRAMMAR}")


def parse_part(token: str, m: int | None = None) -> Part:
    token = token.strip()
    match = _PART_RE.match(token)
    if not match:
        raise ParseError(token, "cannot read length and colors")
    length = int(match.group(1))
    colors = [color_index(name) for name in _COLOR_RE.findall(match.group(2))]
    if m is not None:
        for c in colors:
            if c >= m:
                raise ParseError(token, f"color {color_name(c)} outside the {m} primary colors")
    if len(colors) == 1:
        return Primary(length, colors[0])
    if len(colors) == 2:
        p, q = colors
        if (length - delta(p, q)) % 2:
            parity = "odd" if delta(p, q) else "even"
            raise ParseError(token, f"color {color_name(p)}{color_name(q)} only colors {parity} lengths")
        return Secondary((length - delta(p, q)) // 2, p, q)
    raise ParseError(token, f"{len(colors)} colors, expected 1 or 2")


def parse_partition(text: str, m: int | None = None, mode: Mode = Mode.RAW) -> ColoredPartition:
    text = text.strip()
    if not text:
        return ColoredPartition((), mode)
    parts = [parse_part(token, m) for token in text.split("+")]
    return ColoredPartition(parts, mode)


def format_part(part: Part, m: int | None = None) -> str:
    names = "".join(color_name(c, m) for c in part.colors)
    return f"{part.length}:{names}"


def format_partition(parts: Iterable[Part], m: int | None = None) -> str:
    return "+".join(format_part(part, m) for part in parts)


def part_to_json(part: Part, m: int | None = None) -> dict[str, Any]:
    return {
        "kind": "primary" if isinstance(part, Primary) else "secondary",
        "k": part.k,
        "colors": [color_name(c, m) for c in part.colors],
        "length": part.length,
    }


def part_from_json(obj: dict[str, Any]) -> Part:
    try:
        kind, k, names = obj["kind"], obj["k"], obj["colors"]
    except (KeyError, TypeError) as exc:
        raise ParseError(str(obj), f"missing field {exc}") from None
    colors = [color_index(name) for name in names]
    if kind == "primary" and len(colors) == 1:
        part: Part = Primary(int(k), colors[0])
    elif kind == "secondary" and len(colors) == 2:
        part = Secondary(int(k), *colors)
    else:
        raise ParseError(str(obj), f"kind {kind!r} does not match {len(colors)} colors")
    if "length" in obj and obj["length"] != part.length:
        raise ParseError(str(obj), f"length {obj['length']} disagrees with k={k}")
    return part


def max_color(parts: Iterable[Part]) -> int:
    """Largest color index used, or -1 for no parts."""
    return max((c for part in parts for c in part.colors), default=-1)
