"""Verification suites behind ``colored-partitions verify``."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import product

from .bijection import predict_p, predict_q, run_phi, run_psi
from .crossing import cross, crossing_repairs_order, uncross, uncrossing_repairs_order
from .dilation import generate_diff_table, verify_corollary_m3, verify_siladic
from .enumeration import (
    Report,
    iter_c_chains,
    iter_d_chains,
    verify_bijection_exhaustive,
    verify_equinumerosity,
)
from .parts import (
    Primary,
    Secondary,
    color_sequence,
    delta,
    expand_halves,
    natural_gt,
    strong_gt,
    strong_gt_by_halves,
    weight,
)


def _chain_str(chain) -> str:
    return "+".join(map(str, chain)) or "(empty)"


def verify_crossing(max_m: int = 3, bound: int = 8) -> Report:
    """Inverse pair, conservation and both reordering equivalences over
    every pair with sizes in ``[-bound, bound]``."""
    report = Report(f"crossing m<={max_m} |k|<={bound}")
    sizes = range(-bound, bound + 1)
    for m in range(1, max_m + 1):
        colors = range(m)
        primaries = [Primary(k, p) for k in sizes for p in colors]
        secondaries = [Secondary(k, p, q) for k in sizes for p in colors for q in colors]
        for x, y in product(primaries, secondaries):
            report.checked += 1
            out = cross(x, y)
            if uncross(*out) != (x, y):
                report.fail(f"uncross(cross({x},{y})) = {uncross(*out)}")
            if weight(out) != weight((x, y)) or color_sequence(out) != color_sequence((x, y)):
                report.fail(f"cross({x},{y}) = {out} changes weight or colors")
            if not crossing_repairs_order(x, y):
                report.fail(f"crossing equivalence fails for {x},{y}")
        for y, x in product(secondaries, primaries):
            report.checked += 1
            out = uncross(y, x)
            if cross(*out) != (y, x):
                report.fail(f"cross(uncross({y},{x})) = {cross(*out)}")
            if weight(out) != weight((y, x)) or color_sequence(out) != color_sequence((y, x)):
                report.fail(f"uncross({y},{x}) = {out} changes weight or colors")
            if not uncrossing_repairs_order(y, x):
                report.fail(f"uncrossing equivalence fails for {y},{x}")
    return report


def verify_orders(max_m: int = 3, max_length: int = 12) -> Report:
    """Irreflexivity and transitivity of both orders, ``>>`` implying ``>_c``,
    and the two secondary-secondary forms agreeing."""
    report = Report(f"orders m<={max_m} length<={max_length}")
    for m in range(1, max_m + 1):
        primaries = [Primary(k, p) for p in range(m) for k in range(1, max_length + 1)]
        secondaries = [
            Secondary(k, p, q)
            for p in range(m) for q in range(m) for k in range(1, max_length // 2 + 1)
            if 2 * k + delta(p, q) <= max_length
        ]
        for gt, parts, name in ((natural_gt, primaries, ">_c"), (strong_gt, primaries + secondaries, ">>")):
            above = {x: [y for y in parts if gt(x, y)] for x in parts}
            for x in parts:
                report.checked += 1
                if gt(x, x):
                    report.fail(f"{x} {name} {x}")
                for y in above[x]:
                    for z in above[y]:
                        if not gt(x, z):
                            report.fail(f"{name} not transitive: {x}, {y}, {z}")
        for x, y in product(primaries, repeat=2):
            if strong_gt(x, y) and not natural_gt(x, y):
                report.fail(f"{x} >> {y} without >_c")
        for x, y in product(secondaries, repeat=2):
            report.checked += 1
            if strong_gt(x, y) != strong_gt_by_halves(x, y):
                report.fail(f"secondary forms disagree on {x}, {y}")
    return report


def verify_positions(m: int, max_n: int) -> Report:
    """Predicted P and Q against the simulated crossings, plus every trace
    invariant, on all chains up to ``max_n``."""
    report = Report(f"positions m={m} max_n={max_n}")
    for chain in iter_c_chains(m, max_n):
        report.checked += 1
        trace = predict_p(chain)
        run = run_phi(chain)
        if trace.positions != run.positions:
            report.fail(f"{_chain_str(chain)}: predicted P {trace.positions} != simulated {run.positions}")
        if tuple(trace.predicted_result()) != run.result.parts:
            report.fail(f"{_chain_str(chain)}: moved parts disagree with phi")
        if trace.predicted_halves() != expand_halves(run.result):
            report.fail(f"{_chain_str(chain)}: vectorial moves fail")
        for problem in trace.all_violations():
            report.fail(f"{_chain_str(chain)}: {problem}")
        image = run.result
        back = predict_q(image)
        if any(back.position(trace.position(k)) != k for k in range(1, trace.size + 1)):
            report.fail(f"{_chain_str(chain)}: Q(P(k)) != k")
    for chain in iter_d_chains(m, max_n):
        report.checked += 1
        trace = predict_q(chain)
        run = run_psi(chain)
        if trace.positions != run.positions:
            report.fail(f"{_chain_str(chain)}: predicted Q {trace.positions} != simulated {run.positions}")
        if trace.predicted_result() != list(run.result):
            report.fail(f"{_chain_str(chain)}: moved parts disagree with psi")
        for problem in trace.all_violations():
            report.fail(f"{_chain_str(chain)}: {problem}")
        forward = predict_p(run.result)
        if any(forward.position(trace.position(k)) != k for k in range(1, trace.size + 1)):
            report.fail(f"{_chain_str(chain)}: P(Q(k)) != k")
    return report


def _confluence_chunk(args: tuple[str, list, int, int, int]) -> tuple[int, list[str]]:
    side, chains, start, orders, seed = args
    run = run_phi if side == "C" else run_psi
    checked, failures = 0, []
    for idx, chain in enumerate(chains, start):
        checked += 1
        expected = run(chain, "smallest").result
        if run(chain, "largest").result != expected:
            failures.append(f"{run.__name__} {_chain_str(chain)}: largest-first differs")
        for r in range(orders):
            got = run(chain, "random", seed=f"{seed}:{idx}:{r}").result
            if got != expected:
                failures.append(f"{run.__name__} {_chain_str(chain)}: random order {r} gave {got}")
                break
    return checked, failures


def verify_confluence(m: int, max_n: int, orders: int = 100, seed: int = 0, jobs: int = 1) -> Report:
    """Same output under smallest-first, largest-first and ``orders`` random
    crossing orders, for phi on C-chains and psi on D-chains.

    Random order ``r`` of chain ``idx`` is seeded with ``"seed:idx:r"``, so
    results do not depend on ``jobs``.
    """
    report = Report(f"confluence m={m} max_n={max_n} random orders={orders}")
    tasks = []
    for side, chains in (("C", list(iter_c_chains(m, max_n))), ("D", list(iter_d_chains(m, max_n)))):
        size = max(1, len(chains) // (4 * jobs)) if jobs > 1 else max(1, len(chains))
        for start in range(0, len(chains), size):
            tasks.append((side, chains[start:start + size], start, orders, seed))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_confluence_chunk, tasks))
    else:
        results = [_confluence_chunk(task) for task in tasks]
    for checked, failures in results:
        report.checked += checked
        report.failures.extend(failures)
    return report


def verify_tables(max_m: int = 3) -> Report:
    """Generated tables are internally consistent: each reduced entry is the
    minimum over its parity-split entries, every entry equals the constant
    of the matching order definition, and no zero-gap cycle exists."""
    report = Report(f"tables m<={max_m}")
    for m in range(1, max_m + 1):
        reduced = generate_diff_table(m, "reduced")
        split = generate_diff_table(m, "parity-split")
        for table in (reduced, split):
            report.checked += 1
            if not table.zero_cycle_free():
                report.fail(f"m={m}: zero-gap cycle in {len(table.classes)}-class table")
        for row, col in product(reduced.classes, repeat=2):
            report.checked += 1
            rows = [c for c in split.classes if c.colors == row.colors]
            cols = [c for c in split.classes if c.colors == col.colors]
            low = min(split[r, c] for r in rows for c in cols)
            if reduced[row, col] != low:
                report.fail(f"m={m} ({row.label},{col.label}): reduced {reduced[row, col]} != {low}")
            bound = _order_constant(row.colors, col.colors)
            if reduced[row, col] not in (bound, bound + 1):
                report.fail(f"m={m} ({row.label},{col.label}): {reduced[row, col]} vs order bound {bound}")
    return report


def _order_constant(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    if len(x) == 1 and len(y) == 1:
        return 1 + delta(x[0], y[0])
    if len(x) == 1:
        return delta(x[0], y[0]) + delta(*y)
    if len(y) == 1:
        return 1 + delta(*x) + delta(x[1], y[0])
    return delta(*x) + 2 * delta(x[1], y[0]) + delta(*y)


SUITES = ("crossing", "orders", "bijection", "positions", "confluence", "equinumerosity", "tables", "siladic", "corollary3")


def run_suite(name: str, m: int, max_n: int, *, orders: int = 100, seed: int = 0, jobs: int = 1) -> Report:
    if name == "crossing":
        return verify_crossing(max(m, 3))
    if name == "orders":
        return verify_orders(max(m, 3))
    if name == "bijection":
        return verify_bijection_exhaustive(m, max_n)
    if name == "positions":
        return verify_positions(m, max_n)
    if name == "confluence":
        return verify_confluence(m, max_n, orders, seed, jobs)
    if name == "equinumerosity":
        return verify_equinumerosity(m, max_n, jobs=jobs)
    if name == "tables":
        return verify_tables(max(m, 3))
    if name == "siladic":
        return verify_siladic(max_n)
    if name == "corollary3":
        return verify_corollary_m3(max_n)
    raise ValueError(f"unknown suite {name!r}, expected one of {SUITES}")
