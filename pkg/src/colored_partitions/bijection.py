"""The maps ``phi: C -> D`` and ``psi: D -> C``.

Each map is available twice: as the crossing process (:func:`run_phi`,
:func:`run_psi`), with a pluggable choice of which violating pair to cross
next, and as a closed-form prediction of where every part ends up
(:func:`predict_p`, :func:`predict_q`). The two are meant to be checked
against each other.

Position indices in traces are 1-based and count primary halves: a
secondary part at position ``i`` occupies ``i`` (upper half) and ``i + 1``
(lower half).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from .crossing import cross, uncross
from .parts import (
    ColoredPartition,
    InvalidPartition,
    Mode,
    Part,
    Primary,
    Secondary,
    delta,
    expand_halves,
    merge,
    mu,
    natural_gt,
    strong_gt,
    validate,
)

Chooser = Callable[[Sequence[int]], int]
Strategy = Union[str, Chooser]

STRATEGIES = ("smallest", "largest", "random")


def make_chooser(strategy: Strategy, seed: int | str | None = 0) -> Chooser:
    """Turn a strategy name into a function picking one index among sorted candidates."""
    if callable(strategy):
        return strategy
    if strategy == "smallest":
        return lambda candidates: candidates[0]
    if strategy == "largest":
        return lambda candidates: candidates[-1]
    if strategy == "random":
        return random.Random(seed).choice
    raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")


@dataclass(frozen=True)
class TroublesomeSelection:
    """Indices (1-based) of upper halves ``I`` and of parts staying primary ``J``."""

    upper: tuple[int, ...]
    free: tuple[int, ...]
    size: int

    @property
    def lower(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.upper)


def select_troublesome(parts: Sequence[Primary]) -> TroublesomeSelection:
    """Greedy disjoint choice of consecutive pairs, smallest index first."""
    s = len(parts)
    upper: list[int] = []
    i = 1
    while i < s:
        x, y = parts[i - 1], parts[i]
        if x.k - y.k == delta(x.p, y.p):
            upper.append(i)
            i += 2
        else:
            i += 1
    taken = set(upper) | {i + 1 for i in upper}
    free = tuple(j for j in range(1, s + 1) if j not in taken)
    return TroublesomeSelection(tuple(upper), free, s)


@dataclass(frozen=True)
class CrossingStep:
    step: int
    index: int
    before: tuple[Part, Part]
    after: tuple[Part, Part]

    def __str__(self) -> str:
        before = "+".join(str(p) for p in self.before)
        after = "+".join(str(p) for p in self.after)
        return f"step {self.step}: cross at {self.index}: {before} -> {after}"


@dataclass(frozen=True)
class Run:
    """Outcome of one crossing process.

    ``positions[k - 1]`` is where the primary half that started at ``k``
    sits after the crossings.
    """

    result: ColoredPartition
    steps: tuple[CrossingStep, ...]
    positions: tuple[int, ...]


def _tagged(parts: Iterable[Part]) -> list[tuple[Part, int]]:
    items = []
    pos = 1
    for part in parts:
        items.append((part, pos))
        pos += 2 if isinstance(part, Secondary) else 1
    return items


def _observed_positions(items: list[tuple[Part, int]], s: int) -> tuple[int, ...]:
    positions = [0] * s
    pos = 1
    for part, tag in items:
        positions[tag - 1] = pos
        if isinstance(part, Secondary):
            positions[tag] = pos + 1
            pos += 2
        else:
            pos += 1
    return tuple(positions)


def _kind_index_sum(items: list[tuple[Part, int]], kind: type) -> int:
    return sum(i for i, (part, _) in enumerate(items) if isinstance(part, kind))


def _require(parts: Sequence[Part], mode: Mode) -> list[Part]:
    parts = list(parts)
    violations = validate(parts, mode)
    if violations:
        raise InvalidPartition(mode, violations)
    return parts


def run_phi(parts: Sequence[Primary], strategy: Strategy = "smallest", seed: int | str | None = 0) -> Run:
    """Merge troublesome pairs, then cross until the sequence is ``>>``-ordered."""
    chain = _require(parts, Mode.C)
    choose = make_chooser(strategy, seed)
    selection = select_troublesome(chain)
    upper = set(selection.upper)

    merged: list[Part] = []
    i = 0
    while i < len(chain):
        if i + 1 in upper:
            merged.append(merge(chain[i], chain[i + 1]))
            i += 2
        else:
            merged.append(chain[i])
            i += 1
    items = _tagged(merged)

    steps: list[CrossingStep] = []
    potential = _kind_index_sum(items, Secondary)
    while True:
        candidates = [
            i for i in range(len(items) - 1)
            if isinstance(items[i][0], Primary)
            and isinstance(items[i + 1][0], Secondary)
            and not strong_gt(items[i][0], items[i + 1][0])
        ]
        if not candidates:
            break
        i = choose(candidates)
        (x, tx), (y, ty) = items[i], items[i + 1]
        first, second = cross(x, y)
        items[i], items[i + 1] = (first, ty), (second, tx)
        steps.append(CrossingStep(len(steps) + 1, i + 1, (x, y), (first, second)))
        new_potential = _kind_index_sum(items, Secondary)
        assert new_potential == potential - 1, "crossing did not move a secondary part left"
        potential = new_potential

    result = ColoredPartition([part for part, _ in items], Mode.D)
    return Run(result, tuple(steps), _observed_positions(items, len(chain)))


def run_psi(parts: Sequence[Part], strategy: Strategy = "smallest", seed: int | str | None = 0) -> Run:
    """Uncross until every lower half is ``>_c`` the next primary part, then split."""
    chain = _require(parts, Mode.D)
    choose = make_chooser(strategy, seed)
    items = _tagged(chain)
    s = len(expand_halves(chain))

    steps: list[CrossingStep] = []
    potential = _kind_index_sum(items, Primary)
    while True:
        candidates = [
            i for i in range(len(items) - 1)
            if isinstance(items[i][0], Secondary)
            and isinstance(items[i + 1][0], Primary)
            and not natural_gt(mu(items[i][0]), items[i + 1][0])
        ]
        if not candidates:
            break
        i = choose(candidates)
        (x, tx), (y, ty) = items[i], items[i + 1]
        first, second = uncross(x, y)
        items[i], items[i + 1] = (first, ty), (second, tx)
        steps.append(CrossingStep(len(steps) + 1, i + 1, (x, y), (first, second)))
        new_potential = _kind_index_sum(items, Primary)
        assert new_potential == potential - 1, "uncrossing did not move a primary part left"
        potential = new_potential

    result = ColoredPartition(expand_halves(part for part, _ in items), Mode.C)
    return Run(result, tuple(steps), _observed_positions(items, s))


def phi_map(parts: Sequence[Primary], strategy: Strategy = "smallest", seed: int | str | None = 0) -> ColoredPartition:
    return run_phi(parts, strategy, seed).result


def psi_map(parts: Sequence[Part], strategy: Strategy = "smallest", seed: int | str | None = 0) -> ColoredPartition:
    return run_psi(parts, strategy, seed).result


@dataclass(frozen=True)
class PositionTrace:
    """Index bookkeeping for one map, over the sequence of primary halves.

    ``kind`` is ``"phi"`` (input a C-chain, ``gauge`` holds phi(j, i),
    ``positions`` the predicted P) or ``"psi"`` (input a D-chain read as its
    halves, ``gauge`` holds psi(j, i), ``positions`` the predicted Q).
    """

    kind: str
    lengths: tuple[int, ...]
    colors: tuple[int, ...]
    upper: tuple[int, ...]
    free: tuple[int, ...]
    gauge: dict[tuple[int, int], int] = field(compare=False)
    positions: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.lengths)

    def l(self, k: int) -> int:
        return self.lengths[k - 1]

    def c(self, k: int) -> int:
        return self.colors[k - 1]

    def delta(self, i: int, j: int) -> int:
        """Number of weak color ascents between positions ``i`` and ``j``, signed."""
        if i == j:
            return 0
        if i < j:
            return sum(delta(self.c(k), self.c(k + 1)) for k in range(i, j))
        return -sum(delta(self.c(k), self.c(k + 1)) for k in range(j, i))

    def alpha(self, i: int, j: int) -> int:
        """``|[i, j) & J|``, antisymmetric."""
        if i <= j:
            return sum(1 for k in self.free if i <= k < j)
        return -self.alpha(j, i)

    def beta(self, i: int, j: int) -> int:
        """``|(i, j] & J|``, antisymmetric."""
        if i <= j:
            return sum(1 for k in self.free if i < k <= j)
        return -self.beta(j, i)

    def position(self, k: int) -> int:
        return self.positions[k - 1]

    def moved_part(self, k: int) -> Primary:
        """What the half starting at ``k`` becomes at its final position."""
        target = self.position(k)
        return Primary(self.l(k) + self.delta(target, k), self.c(target))

    def predicted_halves(self) -> list[Primary]:
        halves: list[Primary | None] = [None] * self.size
        for k in range(1, self.size + 1):
            halves[self.position(k) - 1] = self.moved_part(k)
        return halves  # type: ignore[return-value]

    def predicted_result(self) -> list[Part]:
        """The map's output computed from positions alone."""
        halves = self.predicted_halves()
        if self.kind == "psi":
            return halves
        starts = {self.position(i) for i in self.upper}
        out: list[Part] = []
        k = 1
        while k <= self.size:
            if k in starts:
                out.append(merge(halves[k - 1], halves[k]))
                k += 2
            else:
                out.append(halves[k - 1])
                k += 1
        return out

    def chasles_violations(self) -> list[str]:
        """Pairs where ``f(i, j) != f(1, j) - f(1, i)`` for f in delta, alpha, beta.

        Over all pairs this is equivalent to ``f(i,k) + f(k,j) == f(i,j)``
        for all triples.
        """
        bad = []
        s = self.size
        for name in ("delta", "alpha", "beta"):
            f = getattr(self, name)
            base = [None] + [f(1, k) for k in range(1, s + 1)]
            for i in range(1, s + 1):
                for j in range(1, s + 1):
                    if f(i, j) != base[j] - base[i]:
                        bad.append(f"{name}({i},{j})={f(i, j)} breaks additivity")
        return bad

    def delta_bound_violations(self) -> list[str]:
        """Checks ``0 <= chi(c_i <= c_j) <= delta(i, j) <= j - i`` and antisymmetry."""
        bad = []
        for i in range(1, self.size + 1):
            for j in range(i, self.size + 1):
                d = self.delta(i, j)
                lo = delta(self.c(i), self.c(j)) if i < j else 0
                if not lo <= d <= j - i:
                    bad.append(f"delta({i},{j})={d} outside [{lo},{j - i}]")
                if self.delta(j, i) != -d:
                    bad.append(f"delta({j},{i}) is not -delta({i},{j})")
        return bad

    def monotonicity_violations(self) -> list[str]:
        """The gauge must not increase along J and not decrease along I."""
        bad = []
        for i in self.upper:
            for j, j2 in zip(self.free, self.free[1:]):
                if self.gauge[j, i] < self.gauge[j2, i]:
                    bad.append(f"gauge({j},{i}) < gauge({j2},{i})")
        for j in self.free:
            for i, i2 in zip(self.upper, self.upper[1:]):
                if self.gauge[j, i] > self.gauge[j, i2]:
                    bad.append(f"gauge({j},{i}) > gauge({j},{i2})")
        return bad

    def difference_bound_violations(self) -> list[str]:
        """Size-gap lower bounds along the input.

        For phi traces: ``l_i - l_j >= alpha(i, j) + delta(i, j)``. For psi
        traces: with halves doubled, ``l'_k - l'_k2 >= beta(k, k2) + delta(k, k2)``,
        and ``l_i - l_i2 >= delta(i, i2)`` between halves.
        """
        bad = []
        s = self.size
        if self.kind == "phi":
            for i in range(1, s + 1):
                for j in range(i, s + 1):
                    bound = self.alpha(i, j) + self.delta(i, j)
                    if self.l(i) - self.l(j) < bound:
                        bad.append(f"l_{i} - l_{j} < {bound}")
            return bad
        free = set(self.free)
        doubled = [None] + [self.l(k) if k in free else 2 * self.l(k) for k in range(1, s + 1)]
        for k in range(1, s + 1):
            for k2 in range(k, s + 1):
                bound = self.beta(k, k2) + self.delta(k, k2)
                if doubled[k] - doubled[k2] < bound:
                    bad.append(f"l'_{k} - l'_{k2} < {bound}")
        halves = sorted(set(self.upper) | {i + 1 for i in self.upper})
        for a, i in enumerate(halves):
            for i2 in halves[a:]:
                if self.l(i) - self.l(i2) < self.delta(i, i2):
                    bad.append(f"l_{i} - l_{i2} < delta({i},{i2})")
        return bad

    def all_violations(self) -> list[str]:
        return (
            self.chasles_violations()
            + self.delta_bound_violations()
            + self.monotonicity_violations()
            + self.difference_bound_violations()
        )


def _fill_positions(s: int, upper: Sequence[int], free: Sequence[int], upper_pos: dict[int, int]) -> tuple[int, ...]:
    positions = [0] * s
    for i in upper:
        positions[i - 1] = upper_pos[i]
        positions[i] = upper_pos[i] + 1
    taken = set(positions) - {0}
    rest = iter(k for k in range(1, s + 1) if k not in taken)
    for j in free:
        positions[j - 1] = next(rest)
    return tuple(positions)


def predict_p(parts: Sequence[Primary]) -> PositionTrace:
    """Gauge table phi and the final positions P for a C-chain."""
    chain = _require(parts, Mode.C)
    selection = select_troublesome(chain)
    trace = PositionTrace(
        "phi",
        tuple(x.k for x in chain),
        tuple(x.p for x in chain),
        selection.upper,
        selection.free,
        {},
        (),
    )
    gauge = trace.gauge
    for j in selection.free:
        for i in selection.upper:
            gauge[j, i] = (
                trace.l(j)
                - 2 * trace.l(i + 1)
                - trace.delta(j, i + 1)
                - trace.delta(i + 1 - trace.alpha(j, i), i + 1)
            )
    upper_pos = {
        i: i - sum(1 for j in selection.free if j < i and gauge[j, i] < 0)
        for i in selection.upper
    }
    positions = _fill_positions(len(chain), selection.upper, selection.free, upper_pos)
    return PositionTrace("phi", trace.lengths, trace.colors, trace.upper, trace.free, gauge, positions)


def predict_q(parts: Sequence[Part]) -> PositionTrace:
    """Gauge table psi and the final positions Q for a D-chain."""
    chain = _require(parts, Mode.D)
    halves = expand_halves(chain)
    upper, free = [], []
    pos = 1
    for part in chain:
        if isinstance(part, Secondary):
            upper.append(pos)
            pos += 2
        else:
            free.append(pos)
            pos += 1
    trace = PositionTrace(
        "psi",
        tuple(x.k for x in halves),
        tuple(x.p for x in halves),
        tuple(upper),
        tuple(free),
        {},
        (),
    )
    gauge = trace.gauge
    for j in free:
        for i in upper:
            gauge[j, i] = trace.l(j) - trace.l(i) - trace.delta(j, i)
    upper_pos = {
        i: i + sum(1 for j in free if j > i and gauge[j, i] > 0)
        for i in upper
    }
    positions = _fill_positions(len(halves), upper, free, upper_pos)
    return PositionTrace("psi", trace.lengths, trace.colors, trace.upper, trace.free, gauge, positions)
