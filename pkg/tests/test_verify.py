from colored_partitions.verify import (
    SUITES,
    run_suite,
    verify_confluence,
    verify_crossing,
    verify_orders,
    verify_positions,
    verify_tables,
)


def test_crossing_suite():
    assert verify_crossing(2, 4).passed


def test_orders_suite():
    assert verify_orders(3, 8).passed


def test_positions_suite():
    report = verify_positions(3, 10)
    assert report.passed, report.failures[:3]


def test_confluence_suite():
    assert verify_confluence(2, 10, orders=5).passed


def test_tables_suite():
    assert verify_tables(3).passed


def test_every_suite_runs_small():
    for name in SUITES:
        report = run_suite(name, 2, 8, orders=2)
        assert report.passed, (name, report.failures[:3])


def test_confluence_parallel_is_deterministic():
    serial = verify_confluence(2, 9, orders=3, seed=4)
    parallel = verify_confluence(2, 9, orders=3, seed=4, jobs=2)
    assert (serial.checked, serial.failures) == (parallel.checked, parallel.failures)
