"""Acceptance criteria, one printed PASS/FAIL line each.

Tolerances are pinned: every comparison is exact, and each criterion has
a wall-clock budget in seconds. Run directly with ``python3
tests/test_acceptance.py`` or through pytest, which repeats the lines in
its terminal summary.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from colored_partitions.bijection import phi_map, predict_p, psi_map
from colored_partitions.dilation import (
    bucket_a,
    bucket_b,
    distinct_odd_partitions,
    generate_diff_table,
    siladic_partitions,
    verify_corollary_m3,
    verify_siladic,
)
from colored_partitions.enumeration import verify_bijection_exhaustive, verify_equinumerosity
from colored_partitions.formats import format_partition, parse_partition
from colored_partitions.parts import Mode
from colored_partitions.verify import verify_confluence, verify_crossing, verify_positions

from reference_data import (
    N48,
    SILADIC_16_GAPS,
    SILADIC_16_ODD,
    TABLE_M3,
    TABLE_REDUCED_M2,
    TABLE_SPLIT_M2,
    WORKED_C,
    WORKED_D,
    WORKED_FREE,
    WORKED_P_FREE,
    WORKED_P_UPPER,
    WORKED_PHI,
    WORKED_UPPER,
)

BUDGET = {
    "1": 1.0,
    "2": 1.0,
    "3": 10.0,
    "4": 60.0,
    "5": 120.0,
    "6a": 10.0,
    "6b": 10.0,
    "6c": 150.0,
    "6d": 30.0,
    "6e": 60.0,
    "6f": 5.0,
}
BUDGET_6_TOTAL = 300.0

RESULTS: list[str] = []
_ELAPSED: dict[str, float] = {}


def record(key: str, title: str, started: float, problems: list[str]) -> None:
    elapsed = time.perf_counter() - started
    _ELAPSED[key] = elapsed
    budget = BUDGET[key]
    if elapsed > budget:
        problems = problems + [f"took {elapsed:.1f}s, budget {budget:.0f}s"]
    status = "PASS" if not problems else "FAIL"
    line = f"criterion {key} {title}: {status} ({elapsed:.2f}s of {budget:.0f}s)"
    if problems:
        line += " | " + "; ".join(problems[:5])
    RESULTS.append(line)
    print(line)
    assert not problems, line


def test_1_worked_example():
    t = time.perf_counter()
    chain = parse_partition(WORKED_C, mode=Mode.C)
    image = phi_map(chain)
    problems = []
    if format_partition(image) != WORKED_D:
        problems.append(f"phi gave {format_partition(image)}")
    if psi_map(image) != chain:
        problems.append("psi does not invert phi")
    record("1", "worked example phi and psi", t, problems)


def test_2_gauge_oracle():
    t = time.perf_counter()
    trace = predict_p(parse_partition(WORKED_C))
    problems = []
    if (trace.upper, trace.free) != (WORKED_UPPER, WORKED_FREE):
        problems.append(f"I={trace.upper} J={trace.free}")
    for key, value in WORKED_PHI.items():
        if trace.gauge.get(key) != value:
            problems.append(f"phi{key}={trace.gauge.get(key)}, expected {value}")
    for k, pos in {**WORKED_P_UPPER, **WORKED_P_FREE}.items():
        if trace.position(k) != pos:
            problems.append(f"P({k})={trace.position(k)}, expected {pos}")
    record("2", "gauge table and final positions", t, problems)


def test_3_siladic():
    t = time.perf_counter()
    problems = []
    odd, gaps = sorted(distinct_odd_partitions(16)), sorted(siladic_partitions(16))
    if odd != sorted(SILADIC_16_ODD):
        problems.append(f"distinct odd at 16: {odd}")
    if gaps != sorted(SILADIC_16_GAPS):
        problems.append(f"gap rules at 16: {gaps}")
    report = verify_siladic(40)
    problems += report.failures
    record("3", "two-color dilation n=16 lists, all n<=40", t, problems)


def test_4_corollary_n48():
    t = time.perf_counter()
    problems = []
    sides = {"A": bucket_a(48), "B": bucket_b(48)}
    for bucket, expected in N48.items():
        for side, want in zip("AB", expected):
            got = sorted(sides[side].get(bucket, []))
            if got != sorted(want):
                problems.append(f"{bucket} side {side}: got {got}, expected {sorted(want)}")
    for side, found in sides.items():
        extra = sorted(set(found) - set(N48))
        if extra:
            problems.append(f"side {side} has unexpected buckets {extra}")
    report = verify_corollary_m3(60)
    problems += report.failures
    record("4", "three-color corollary n=48 buckets, all n<=60", t, problems)


def test_5_equinumerosity():
    t = time.perf_counter()
    problems = []
    for m, max_n in ((2, 25), (3, 18)):
        problems += verify_equinumerosity(m, max_n).failures
    record("5", "equinumerosity m=2 n<=25, m=3 n<=18", t, problems)


def test_6a_crossing_inverse_and_conservation():
    t = time.perf_counter()
    report = verify_crossing(3, 8)
    inverse = [f for f in report.failures if "equivalence" not in f]
    record("6a", "crossing inverse and conservation |k|,|l|<=8 m<=3", t, inverse)


def test_6b_reordering_equivalences():
    t = time.perf_counter()
    report = verify_crossing(3, 8)
    record("6b", "crossing and uncrossing repair order, same range", t,
           [f for f in report.failures if "equivalence" in f])


def test_6c_confluence():
    t = time.perf_counter()
    report = verify_confluence(2, 20, orders=100, seed=0)
    record("6c", "confluence 3 strategies x 100 random orders m=2 n<=20", t, report.failures)


def test_6d_roundtrip():
    t = time.perf_counter()
    report = verify_bijection_exhaustive(2, 25)
    record("6d", "roundtrips both ways m=2 n<=25", t, report.failures)


def test_6e_trace_invariants():
    t = time.perf_counter()
    report = verify_positions(2, 25)
    record("6e", "Chasles and monotonicity on every trace m=2 n<=25", t, report.failures)


def test_6f_tables():
    t = time.perf_counter()
    problems = []
    for name, table, expected in (
        ("two-color split", generate_diff_table(2, "parity-split"), TABLE_SPLIT_M2),
        ("two-color reduced", generate_diff_table(2, "reduced"), TABLE_REDUCED_M2),
        ("three-color", generate_diff_table(3, "reduced"), TABLE_M3),
    ):
        for key, value in expected.items():
            if table[key] != value:
                problems.append(f"{name} {key}: generated {table[key]}, reference {value}")
    record("6f", "generated tables match reference tables", t, problems)


def test_6_total_budget():
    parts = [k for k in BUDGET if k.startswith("6")]
    missing = [k for k in parts if k not in _ELAPSED]
    total = sum(_ELAPSED.get(k, 0.0) for k in parts)
    status = "PASS" if not missing and total <= BUDGET_6_TOTAL else "FAIL"
    line = f"criterion 6 total time: {status} ({total:.1f}s of {BUDGET_6_TOTAL:.0f}s)"
    if missing:
        line += f" | not run: {missing}"
    RESULTS.append(line)
    print(line)
    assert status == "PASS", line


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
