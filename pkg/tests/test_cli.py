import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

import oracles

from isovariant.cli import load_group, run
from isovariant.g_complex import GSemiSimplicialSet, GSimplicialMap, g_isomorphic
from isovariant.colimits import flip_disk
from isovariant.link_category import load_category

FIXTURES = Path(__file__).parent / "fixtures"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_dot_fixture_is_byte_stable():
    code, text = call("category", "--group", "c4", "--dot", "--no-self-maps")
    assert code == 0
    assert text == (FIXTURES / "c4.dot").read_text()


def test_category_json_round_trip():
    code, text = call("category", "--group", "s3", "--json")
    assert code == 0
    cat = load_category(json.loads(text))
    assert len(cat.objects) == len(oracles.chains_by_subsets(load_group("s3"))) == 19


def test_lattice_and_chains():
    code, text = call("lattice", "--group", "d4", "--json")
    assert code == 0 and len(json.loads(text)) == 10
    code, text = call("chains", "--group", "c4")
    assert code == 0 and text.startswith("7 chains")


def test_config_line_goes_to_stderr(capsys):
    code, text = call("lattice", "--group", "c2")
    assert code == 0 and "# config:" not in text
    assert "# config: command=lattice group=c2" in capsys.readouterr().err


def test_simplex_describe_with_point():
    code, text = call("simplex", "describe", "--group", "c2", "--chain", "e<C2", "--point", '{"g": 1, "coords": ["1", "0"]}')
    assert code == 0
    assert "k=1" in text


def test_unknown_chain_and_group_are_usage_errors():
    assert call("simplex", "describe", "--group", "c2", "--chain", "C7")[0] == 2
    assert call("lattice", "--group", "nope")[0] == 2
    assert call("bogus")[0] == 2


def test_group_from_json_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(load_group("c3").to_json()))
    code, text = call("lattice", "--group", str(path))
    assert code == 0 and "2 subgroups" in text


def test_non_associative_group_file_exits_2(tmp_path, capsys):
    path = tmp_path / "loop.json"
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    path.write_text(json.dumps({"order": 5, "mult": loop}))
    assert call("lattice", "--group", str(path))[0] == 2
    assert "NonAssociativeTable" in capsys.readouterr().err


def test_flipdisk_emit_and_check(tmp_path):
    disk, collapse, axis = tmp_path / "disk.json", tmp_path / "collapse.json", tmp_path / "axis.json"
    code, text = call("flipdisk", "--emit", str(disk), "--emit-collapse", str(collapse), "--emit-axis", str(axis))
    assert code == 0
    x = GSemiSimplicialSet.from_json(disk.read_text())
    assert g_isomorphic(x, flip_disk()) is not None
    code, text = call("check", "--isovariant", str(collapse))
    assert code == 1 and text.startswith("FAIL")
    assert call("check", "--equivariant", str(collapse))[0] == 0
    code, text = call("check", "--isovariant", str(axis))
    assert code == 0 and text.startswith("PASS")
    assert GSimplicialMap.from_json(axis.read_text()).dst.count(0) == x.count(0)


def test_check_missing_or_broken_file(tmp_path):
    assert call("check", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert call("check", str(bad))[0] == 2


def test_coend_commands(tmp_path):
    out = tmp_path / "x.json"
    code, text = call("coend", "--group", "c2", "--representable", "e<C2", "--emit", str(out))
    assert code == 0 and "[3, 2]" in text
    assert GSemiSimplicialSet.from_json(out.read_text()).count(1) == 2
    code, text = call("coend", "--group", "c2", "--constant")
    assert code == 0 and "[2, 1]" in text


def test_verify_exit_codes():
    code, text = call("verify", "functor", "--group", "s3")
    assert code == 0 and "PASS" in text
    code, text = call("verify", "lemma-pi0", "--group", "c2", "--trials", "20", "--seed", "7")
    assert code == 0


def test_verify_reports_budget_failure():
    code, text = call("verify", "classify", "--group", "c4", "--budget", "2")
    assert code in (1, 2)


@pytest.mark.parametrize("argv", [["--help"], ["verify", "--help"]])
def test_help_exits_zero(argv, capsys):
    assert run(argv) == 0
    capsys.readouterr()


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "isovariant.cli", "category", "--group", "c4", "--dot", "--no-self-maps"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == (FIXTURES / "c4.dot").read_text()
    assert proc.stderr.startswith("# config:")
