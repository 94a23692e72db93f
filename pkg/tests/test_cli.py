import io
import json
import subprocess
import sys

import pytest

from colored_partitions.cli import run

from reference_data import WORKED_C, WORKED_D


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_phi_and_psi():
    assert call("phi", WORKED_C) == (0, WORKED_D + "\n")
    assert call("psi", WORKED_D) == (0, WORKED_C + "\n")


def test_phi_log_and_json():
    code, text = call("phi", WORKED_C, "--log")
    lines = text.splitlines()
    assert code == 0 and len(lines) == 7
    assert lines[0].startswith("step 1: cross at 3:")
    code, text = call("phi", "5:a+4:b", "--format", "json")
    assert json.loads(text) == [{"kind": "secondary", "k": 4, "colors": ["a", "b"], "length": 9}]


def test_empty_input():
    assert call("phi", "") == (0, "\n")


def test_bad_input_exit_codes(capsys):
    assert call("phi", "5:c", "--m", "2")[0] == 2
    assert "outside the 2 primary colors" in capsys.readouterr().err
    assert call("phi", "4:a+5:a")[0] == 2
    assert call("psi", "8:ab")[0] == 2
    with pytest.raises(SystemExit) as info:
        call("phi")
    assert info.value.code == 2


def test_explain():
    code, text = call("explain", WORKED_C)
    assert code == 0
    assert "I = {4, 7, 9}" in text
    assert "J = {1, 2, 3, 6}" in text
    assert "self-check: ok" in text
    assert "NO" not in text
    code, text = call("explain", "9:a+4:b")
    assert "no crossings required" in text
    code, text = call("explain", WORKED_D)
    assert code == 0 and "D-chain" in text and "psi(j,i)" in text


def test_enumerate_tsv():
    code, text = call("enumerate", "--m", "2", "--max-n", "3", "--side", "C")
    assert code == 0
    assert "3\t1,1\t2" in text.splitlines()


def test_enumerate_json_list():
    code, text = call("enumerate", "--m", "2", "--max-n", "3", "--side", "D", "--list", "--format", "json")
    rows = {(r["n"], tuple(r["u"])): r for r in json.loads(text)["D"]}
    assert rows[3, (1, 1)]["count"] == 2
    assert rows[3, (1, 1)]["partitions"] == ["3:ab", "2:b+1:a"]


def test_enumerate_cap():
    assert call("enumerate", "--m", "2", "--max-n", "99")[0] == 2


def test_series():
    code, text = call("series", "--m", "2", "--max-n", "3")
    assert "3\t1,1\t2" in text.splitlines()


def test_table():
    code, text = call("table", "--m", "3")
    assert code == 0 and text.startswith("colors a, b, c shown as a, b, d")
    code, text = call("table", "--m", "2", "--granularity", "parity-split", "--format", "json")
    assert json.loads(text)["labels"][:2] == ["a_odd", "a_even"]


def test_verify_small():
    code, text = call("verify", "bijection", "--m", "2", "--max-n", "10")
    assert code == 0 and text.splitlines()[-1] == "PASS"


def test_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "colored_partitions", "phi", "5:a+4:b"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "9:ab\n"


def test_verify_json_and_details():
    code, text = call("verify", "siladic", "--max-n", "16")
    assert code == 0 and "  n=16: distinct odd 5, gap rules 5" in text.splitlines()
    code, text = call("verify", "tables", "--format", "json")
    assert code == 0 and json.loads(text)["passed"] is True


@pytest.mark.parametrize("flags", [["--max-n", "-1"], ["--jobs", "0"], ["--m", "0"]])
def test_flags_validated(flags):
    with pytest.raises(SystemExit) as info:
        call("enumerate", *flags)
    assert info.value.code == 2


def test_explain_random_weight_30():
    import random

    from colored_partitions.enumeration import iter_c_chains
    from colored_partitions.formats import format_partition

    chains = [c for c in iter_c_chains(3, 30) if sum(x.length for x in c) == 30]
    rng = random.Random(7)
    for chain in rng.sample(chains, 20):
        code, text = call("explain", format_partition(chain), "--m", "3", "--side", "C")
        assert code == 0 and "self-check: ok" in text
