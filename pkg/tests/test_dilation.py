import pytest

from colored_partitions.dilation import (
    COROLLARY_RESIDUES,
    M3_DILATION,
    SILADIC_DILATION,
    Dilation,
    bucket_a,
    bucket_b,
    color_label,
    corollary_part_ok,
    derive_residue_table,
    dilate_partition,
    distinct_odd_partitions,
    generate_diff_table,
    order_faithfulness_failures,
    siladic_ok,
    siladic_pair_ok,
    siladic_partitions,
    verify_corollary_m3,
    verify_siladic,
)
from colored_partitions.formats import parse_partition
from colored_partitions.parts import Primary, Secondary

from reference_data import (
    COROLLARY_GAP_RESIDUES,
    DILATED_ORDER_M2,
    DILATED_ORDER_M3,
    SILADIC_16_GAPS,
    SILADIC_16_ODD,
    TABLE_M3,
    TABLE_REDUCED_M2,
    TABLE_SPLIT_M2,
)


def _dilated_order(dilation, m, top):
    parts = [Primary(k, p) for k in range(0, 4) for p in range(m)]
    parts += [Secondary(k, p, q) for k in range(0, 3) for p in range(m) for q in range(m)]
    return sorted((dilation(x), color_label(x)) for x in parts if 0 <= dilation(x) <= top)


def test_dilated_order_two_colors():
    assert _dilated_order(SILADIC_DILATION, 2, 11) == DILATED_ORDER_M2


def test_dilated_order_three_colors():
    assert _dilated_order(M3_DILATION, 3, 20) == DILATED_ORDER_M3


def test_dilation_rejects_nonpositive():
    with pytest.raises(ValueError):
        Dilation(4, (4, 1))


def test_dilate_partition():
    chain = parse_partition("7:b+5:aa")
    assert [str(x) for x in dilate_partition(chain, SILADIC_DILATION)] == ["27_b", "14_aa"]


def test_parity_split_table_two_colors():
    table = generate_diff_table(2, "parity-split")
    assert table.as_dict() == TABLE_SPLIT_M2


def test_reduced_table_two_colors_except_b_aa():
    table = generate_diff_table(2, "reduced")
    diffs = {key: (v, table[key]) for key, v in TABLE_REDUCED_M2.items() if table[key] != v}
    # the reference (b, aa) entry disagrees with the parity-split table
    assert diffs == {("b", "aa"): (2, 1)}
    split = generate_diff_table(2, "parity-split")
    assert min(split["b_odd", "aa"], split["b_even", "aa"]) == 1


def test_table_three_colors():
    table = generate_diff_table(3, "reduced")
    assert table.as_dict() == TABLE_M3
    assert table.zero_cycle_free()


def test_table_format_aliases():
    text = generate_diff_table(3).format({"a": "a", "b": "b", "c": "d"})
    assert text.splitlines()[0].split()[1:4] == ["a", "b", "d"]
    assert "db" in text.splitlines()[0]


def test_siladic_rules():
    assert siladic_ok((15, 1))
    assert not siladic_ok((14, 2))
    assert not siladic_pair_ok(10, 6)
    # gap 5 needs larger part 1 or 4 mod 8
    assert siladic_pair_ok(17, 12) and not siladic_pair_ok(18, 13)


def test_siladic_16():
    assert sorted(distinct_odd_partitions(16)) == sorted(SILADIC_16_ODD)
    assert sorted(siladic_partitions(16)) == sorted(SILADIC_16_GAPS)


def test_verify_siladic():
    report = verify_siladic(30)
    assert report.passed, report.failures[:3]


def test_residue_table_derived():
    assert COROLLARY_RESIDUES == COROLLARY_GAP_RESIDUES
    assert derive_residue_table() == COROLLARY_GAP_RESIDUES


def test_order_faithfulness_m3():
    from colored_partitions.dilation import corollary_pair_ok

    assert order_faithfulness_failures(M3_DILATION, corollary_pair_ok, 20) == []


def test_corollary_parts():
    assert [p for p in range(1, 22) if corollary_part_ok(p)] == [4, 6, 9, 10, 13, 14, 15, 16, 18, 19, 20]


def test_corollary_small_n():
    for n in range(0, 40):
        a = {k: len(v) for k, v in bucket_a(n).items()}
        b = {k: len(v) for k, v in bucket_b(n).items()}
        assert a == b, n


def test_verify_corollary():
    report = verify_corollary_m3(40)
    assert report.passed, report.failures[:3]
