"""Exhaustive generation of C- and D-chains, counting by statistics, and the
product-series expansion they are compared against."""

from __future__ import annotations

import bisect
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .bijection import run_phi, run_psi
from .parts import (
    InvalidPartition,
    Part,
    Primary,
    Secondary,
    natural_gt,
    stats,
    strong_gt,
)

Bucket = tuple[int, tuple[int, ...]]
WeightFn = Callable[[Part], int]

DEFAULT_CAPS = {1: 80, 2: 40, 3: 25}
FALLBACK_CAP = 15


class CapExceeded(ValueError):
    pass


def check_cap(m: int, max_n: int, cap: int | None = None) -> None:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if max_n < 0:
        raise ValueError(f"max_n must be non-negative, got {max_n}")
    limit = cap if cap is not None else DEFAULT_CAPS.get(m, FALLBACK_CAP)
    if max_n > limit:
        raise CapExceeded(f"max_n={max_n} exceeds the cap {limit} for m={m}; pass a larger cap to override")


def _length(part: Part) -> int:
    return part.length


def candidate_parts(m: int, max_weight: int, secondary: bool, weight: WeightFn = _length) -> list[Part]:
    """Valid parts of weight at most ``max_weight``, in generation order.

    Order: decreasing length, primary before secondary, then colors. Weight
    functions must be positive and increasing in ``k`` for fixed colors.
    """
    parts: list[Part] = []
    for p in range(m):
        k = 1
        while weight(Primary(k, p)) <= max_weight:
            parts.append(Primary(k, p))
            k += 1
    if secondary:
        for p in range(m):
            for q in range(m):
                k = 1
                while weight(Secondary(k, p, q)) <= max_weight:
                    parts.append(Secondary(k, p, q))
                    k += 1
    parts.sort(key=lambda x: (-x.length, isinstance(x, Secondary), x.colors))
    return parts


class _ChainSearch:
    def __init__(self, candidates: list[Part], gt: Callable[[Part, Part], bool], weight: WeightFn):
        self.candidates = candidates
        self.weights = [weight(x) for x in candidates]
        self.gt = gt
        # candidates sorted by decreasing length; negated for bisect
        self.neg_lengths = [-x.length for x in candidates]

    def children(self, last: Part | None, remaining: int) -> Iterator[tuple[Part, int]]:
        # both orders force length(next) <= length(last)
        start = 0 if last is None else bisect.bisect_left(self.neg_lengths, -last.length)
        for idx in range(start, len(self.candidates)):
            w = self.weights[idx]
            if w > remaining:
                continue
            x = self.candidates[idx]
            if last is None or self.gt(last, x):
                yield x, w

    def walk(self, prefix: tuple[Part, ...], remaining: int) -> Iterator[tuple[Part, ...]]:
        yield prefix
        last = prefix[-1] if prefix else None
        for x, w in self.children(last, remaining):
            yield from self.walk(prefix + (x,), remaining - w)


def _search(m: int, max_n: int, side: str, weight: WeightFn) -> _ChainSearch:
    if side == "C":
        return _ChainSearch(candidate_parts(m, max_n, False, weight), natural_gt, weight)
    if side == "D":
        return _ChainSearch(candidate_parts(m, max_n, True, weight), strong_gt, weight)
    raise ValueError(f"side must be 'C' or 'D', got {side!r}")


def iter_chains(m: int, max_n: int, side: str, weight: WeightFn = _length) -> Iterator[tuple[Part, ...]]:
    """All C-chains (``side="C"``) or D-chains (``side="D"``) of weight at most ``max_n``."""
    return _search(m, max_n, side, weight).walk((), max_n)


def iter_c_chains(m: int, max_n: int) -> Iterator[tuple[Part, ...]]:
    return iter_chains(m, max_n, "C")


def iter_d_chains(m: int, max_n: int, weight: WeightFn = _length) -> Iterator[tuple[Part, ...]]:
    return iter_chains(m, max_n, "D", weight)


@dataclass
class CountTable:
    """Number of chains per bucket ``(n, u)``."""

    m: int
    max_n: int
    counts: dict[Bucket, int] = field(default_factory=dict)
    partitions: dict[Bucket, list[tuple[Part, ...]]] | None = None

    def count(self, u: tuple[int, ...], n: int) -> int:
        return self.counts.get((n, tuple(u)), 0)

    def total(self, n: int) -> int:
        return sum(c for (n2, _), c in self.counts.items() if n2 == n)

    def buckets(self) -> list[Bucket]:
        return sorted(self.counts)

    def add(self, chain: tuple[Part, ...]) -> None:
        st = stats(chain, self.m)
        key = (st.n, st.u)
        self.counts[key] = self.counts.get(key, 0) + 1
        if self.partitions is not None:
            self.partitions.setdefault(key, []).append(chain)

    def merge(self, other: "CountTable") -> None:
        for key, c in other.counts.items():
            self.counts[key] = self.counts.get(key, 0) + c
        if self.partitions is not None and other.partitions is not None:
            for key, chains in other.partitions.items():
                self.partitions.setdefault(key, []).extend(chains)

    def to_tsv(self) -> str:
        return "".join(
            f"{n}\t{','.join(map(str, u))}\t{c}\n" for (n, u), c in sorted(self.counts.items())
        )


def _subtree_table(args: tuple[int, int, str, int | None, bool]) -> CountTable:
    m, max_n, side, first_index, keep = args
    search = _search(m, max_n, side, _length)
    table = CountTable(m, max_n, partitions={} if keep else None)
    if first_index is None:
        table.add(())
        return table
    first = search.candidates[first_index]
    for chain in search.walk((first,), max_n - search.weights[first_index]):
        table.add(chain)
    return table


def enumerate_chains(
    m: int,
    max_n: int,
    side: str,
    *,
    keep_partitions: bool = False,
    cap: int | None = None,
    jobs: int = 1,
) -> CountTable:
    """Count every chain of weight at most ``max_n``, binned by statistics.

    With ``jobs > 1`` the subtrees below each first part are counted in
    separate processes and summed.
    """
    check_cap(m, max_n, cap)
    search = _search(m, max_n, side, _length)
    tasks = [(m, max_n, side, None, keep_partitions)]
    tasks += [(m, max_n, side, idx, keep_partitions) for idx in range(len(search.candidates))]
    table = CountTable(m, max_n, partitions={} if keep_partitions else None)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_subtree_table, tasks))
    else:
        partials = [_subtree_table(task) for task in tasks]
    for partial in partials:
        table.merge(partial)
    if table.partitions is not None:
        for chains in table.partitions.values():
            chains.sort(key=_listing_key)
    return table


def _listing_key(chain: tuple[Part, ...]):
    return [(-x.length, isinstance(x, Secondary), x.colors) for x in chain]


def enumerate_c(m: int, max_n: int, **kwargs) -> CountTable:
    return enumerate_chains(m, max_n, "C", **kwargs)


def enumerate_d(m: int, max_n: int, **kwargs) -> CountTable:
    return enumerate_chains(m, max_n, "D", **kwargs)


@dataclass
class MultiSeries:
    """Power series in ``q`` truncated above degree ``max_n``, with polynomial
    coefficients in ``a_1..a_m``; stored sparsely as ``{(n, u): coefficient}``."""

    m: int
    max_n: int
    coeffs: dict[Bucket, int] = field(default_factory=dict)

    @classmethod
    def one(cls, m: int, max_n: int) -> "MultiSeries":
        return cls(m, max_n, {(0, (0,) * m): 1})

    @classmethod
    def monomial(cls, m: int, max_n: int, n: int, u: tuple[int, ...], c: int = 1) -> "MultiSeries":
        if n > max_n or c == 0:
            return cls(m, max_n)
        return cls(m, max_n, {(n, tuple(u)): c})

    def _check(self, other: "MultiSeries") -> int:
        if self.m != other.m:
            raise ValueError("series over different numbers of colors")
        return min(self.max_n, other.max_n)

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        max_n = self._check(other)
        out: dict[Bucket, int] = defaultdict(int)
        for coeffs in (self.coeffs, other.coeffs):
            for (n, u), c in coeffs.items():
                if n <= max_n:
                    out[n, u] += c
        return MultiSeries(self.m, max_n, {k: c for k, c in out.items() if c})

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        max_n = self._check(other)
        out: dict[Bucket, int] = defaultdict(int)
        for (n1, u1), c1 in self.coeffs.items():
            for (n2, u2), c2 in other.coeffs.items():
                if n1 + n2 <= max_n:
                    out[n1 + n2, tuple(a + b for a, b in zip(u1, u2))] += c1 * c2
        return MultiSeries(self.m, max_n, {k: c for k, c in out.items() if c})

    def coefficient(self, u: tuple[int, ...], n: int) -> int:
        return self.coeffs.get((n, tuple(u)), 0)

    def q_coefficient(self, n: int) -> int:
        """Coefficient of ``q^n`` with every ``a_i`` set to 1."""
        return sum(c for (n2, _), c in self.coeffs.items() if n2 == n)


def expand_product(m: int, max_n: int) -> MultiSeries:
    """``prod_i prod_{k=1..max_n} (1 + a_i q^k)`` truncated at ``q^max_n``."""
    series = MultiSeries.one(m, max_n)
    for i in range(m):
        unit = tuple(1 if j == i else 0 for j in range(m))
        for k in range(1, max_n + 1):
            series = series * (MultiSeries.one(m, max_n) + MultiSeries.monomial(m, max_n, k, unit))
    return series


@dataclass
class Report:
    """Outcome of a verification run: ``checked`` items, any ``failures``."""

    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures"


def verify_equinumerosity(m: int, max_n: int, *, cap: int | None = None, jobs: int = 1) -> Report:
    """Compare C counts, D counts and product coefficients bucket by bucket."""
    report = Report(f"equinumerosity m={m} max_n={max_n}")
    c_table = enumerate_c(m, max_n, cap=cap, jobs=jobs)
    d_table = enumerate_d(m, max_n, cap=cap, jobs=jobs)
    series = expand_product(m, max_n)
    keys = set(c_table.counts) | set(d_table.counts) | set(series.coeffs)
    for n, u in sorted(keys):
        c, d, s = c_table.count(u, n), d_table.count(u, n), series.coefficient(u, n)
        report.checked += 1
        if not c == d == s:
            report.fail(f"n={n} u={u}: #C={c} #D={d} series={s}")
    return report


def verify_bijection_exhaustive(
    m: int,
    max_n: int,
    *,
    strategy: str = "smallest",
    extra: list[tuple[Part, ...]] = (),
    cap: int | None = None,
) -> Report:
    """Run phi on every C-chain and psi on every D-chain up to ``max_n``.

    Checks: images are valid chains of the other kind with the same
    statistics, both composites are the identity, and phi is injective on
    each bucket.
    """
    check_cap(m, max_n, cap)
    report = Report(f"bijection m={m} max_n={max_n}")
    images: dict[Bucket, set] = defaultdict(set)
    for chain in list(iter_c_chains(m, max_n)) + [tuple(x) for x in extra]:
        report.checked += 1
        try:
            image = run_phi(chain, strategy).result
            back = run_psi(image, strategy).result
        except InvalidPartition as exc:
            report.fail(f"{'+'.join(map(str, chain))}: {exc}")
            continue
        st = stats(chain, m)
        if stats(image, m) != st:
            report.fail(f"{'+'.join(map(str, chain))}: statistics changed to {stats(image, m)}")
        if back.parts != tuple(chain):
            report.fail(f"{'+'.join(map(str, chain))}: psi(phi) gave {back}")
        key = (st.n, st.u)
        if image.parts in images[key]:
            report.fail(f"{'+'.join(map(str, chain))}: image {image} already hit")
        images[key].add(image.parts)
    for chain in iter_d_chains(m, max_n):
        report.checked += 1
        try:
            image = run_psi(chain, strategy).result
            back = run_phi(image, strategy).result
        except InvalidPartition as exc:
            report.fail(f"{'+'.join(map(str, chain))}: {exc}")
            continue
        if stats(image, m) != stats(chain, m):
            report.fail(f"{'+'.join(map(str, chain))}: statistics changed to {stats(image, m)}")
        if back.parts != tuple(chain):
            report.fail(f"{'+'.join(map(str, chain))}: phi(psi) gave {back}")
    return report
