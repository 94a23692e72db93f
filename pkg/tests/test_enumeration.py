from functools import lru_cache
from itertools import combinations

import pytest

from colored_partitions.enumeration import (
    CapExceeded,
    MultiSeries,
    candidate_parts,
    check_cap,
    enumerate_c,
    enumerate_d,
    expand_product,
    iter_c_chains,
    iter_d_chains,
    verify_bijection_exhaustive,
    verify_equinumerosity,
)
from colored_partitions.parts import Mode, Primary, validate


@lru_cache(maxsize=None)
def distinct(n: int, u: int, largest: int) -> int:
    """Partitions of n into u distinct parts, each at most ``largest``."""
    if u == 0:
        return 1 if n == 0 else 0
    if largest <= 0 or n <= 0:
        return 0
    return distinct(n, u, largest - 1) + distinct(n - largest, u - 1, largest - 1)


def test_one_color_matches_distinct_parts_recurrence():
    c, d = enumerate_c(1, 30), enumerate_d(1, 30)
    for n in range(31):
        for u in range(9):
            assert c.count((u,), n) == distinct(n, u, n) == d.count((u,), n)


def test_small_counts():
    # D side for u = (1,1), n = 3: 3:ab and 2:a+1:b
    assert enumerate_d(1, 5).count((2,), 3) == 1
    assert enumerate_c(2, 5).count((1, 1), 3) == 2
    assert enumerate_d(2, 5).count((1, 1), 3) == 2


def test_two_color_brute_force():
    def brute(n):
        out = {}
        sets = [s for r in range(6) for s in combinations(range(1, n + 1), r)]
        for sa in sets:
            for sb in sets:
                if sum(sa) + sum(sb) == n:
                    key = (len(sa), len(sb))
                    out[key] = out.get(key, 0) + 1
        return out

    c = enumerate_c(2, 10)
    for n in range(11):
        for u, count in brute(n).items():
            assert c.count(u, n) == count


def test_chains_are_valid():
    for chain in iter_c_chains(2, 12):
        assert validate(chain, Mode.C) == []
    for chain in iter_d_chains(3, 10):
        assert validate(chain, Mode.D) == []


def test_candidate_order():
    cands = candidate_parts(2, 4, secondary=True)
    lengths = [x.length for x in cands]
    assert lengths == sorted(lengths, reverse=True)
    assert cands[0] == Primary(4, 0)
    assert all(x.length >= 2 for x in cands if len(x.colors) == 2)


def test_series_arithmetic():
    one = MultiSeries.one(2, 5)
    x = MultiSeries.monomial(2, 5, 1, (1, 0))
    y = MultiSeries.monomial(2, 5, 2, (0, 1))
    prod = (one + x) * (one + y)
    assert prod.coefficient((1, 1), 3) == 1
    assert prod.q_coefficient(2) == 1
    assert (x * MultiSeries.monomial(2, 5, 5, (0, 1))).coeffs == {}


def test_product_coefficients():
    s = expand_product(2, 8)
    assert s.coefficient((1, 1), 3) == 2
    assert s.coefficient((2, 0), 5) == 2
    assert s.q_coefficient(4) == 9
    assert s.coefficient((0, 0), 0) == 1


def test_equinumerosity_small():
    assert verify_equinumerosity(2, 14).passed
    assert verify_equinumerosity(3, 10).passed


def test_parallel_matches_serial():
    serial = enumerate_d(2, 16)
    parallel = enumerate_d(2, 16, jobs=2)
    assert serial.counts == parallel.counts


def test_listing():
    table = enumerate_c(2, 4, keep_partitions=True)
    assert [str("+".join(map(str, p))) for p in table.partitions[3, (1, 1)]] == ["2:a+1:b", "2:b+1:a"]


def test_caps():
    check_cap(2, 40)
    with pytest.raises(CapExceeded):
        check_cap(2, 41)
    check_cap(2, 41, cap=50)
    with pytest.raises(CapExceeded):
        enumerate_c(4, 16)


def test_bijection_exhaustive_small():
    report = verify_bijection_exhaustive(3, 12)
    assert report.passed, report.failures[:3]
