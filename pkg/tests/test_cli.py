from __future__ import annotations

import io
import json
import os
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from addcomb.cli import main
from addcomb.corpus import coordinate_subspace, example_B_subspace_A_directsum
from addcomb.formats import dumps, set_to_json
from addcomb.group import make_group
from addcomb.setops import GroupSet

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"


def _input_sets() -> dict[str, GroupSet]:
    z4, z7, z11 = make_group([4]), make_group([7]), make_group([11])
    g4, g6 = make_group([2] * 4), make_group([2] * 6)
    ds = example_B_subspace_A_directsum(3, 2, 6)
    return {
        "z4_pair": GroupSet.from_indices(z4, [0, 1]),
        "z7_123": GroupSet.from_indices(z7, [1, 2, 3]),
        "z7_12": GroupSet.from_indices(z7, [1, 2]),
        "z11_a": GroupSet.from_indices(z11, [0, 1, 2, 3, 5, 8]),
        "z11_b": GroupSet.from_indices(z11, [0, 2, 4, 6]),
        "g4_full": GroupSet(g4, tuple(range(16))),
        "g4_colors": GroupSet.from_indices(g4, range(1, 9)),
        "g6_subspace": coordinate_subspace(g6, range(3)),
        "ds_A": ds.A,
        "ds_B": ds.B,
    }


SCENARIOS = {
    "energy_z4": ["energy", "z4_pair", "z4_pair"],
    "convolve_z4": ["convolve", "z4_pair", "z4_pair"],
    "spectrum_z4": ["spectrum", "z4_pair"],
    "dissociate_z7": ["dissociate", "z7_123"],
    "span_check_z7": ["span-check", "z7_12", "--element", "4"],
    "symmetry_set_directsum": ["symmetry-set", "ds_A", "ds_B", "--sigma", "8"],
    "levels_z11": ["levels", "z11_a", "z11_b"],
    "special_cycle_g4": ["special-cycle", "g4_full", "g4_full", "g4_colors", "--sigma", "16"],
    "decompose_simple_subspace": ["decompose", "g6_subspace", "g6_subspace", "--method", "simple"],
    "decompose_levelset_directsum": ["decompose", "ds_A", "ds_B", "--method", "levelset"],
}


def _args(argv):
    return [str(INPUTS / f"{a}.json") if (INPUTS / f"{a}.json").exists() else a for a in argv]


def run_cli(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def write_inputs():
    INPUTS.mkdir(parents=True, exist_ok=True)
    for name, S in _input_sets().items():
        (INPUTS / f"{name}.json").write_text(dumps(set_to_json(S)))


if os.environ.get("ADDCOMB_REGEN_GOLDEN"):
    write_inputs()
    for _name, _argv in SCENARIOS.items():
        (GOLDEN / f"{_name}.json").write_text(run_cli(_args(_argv))[1])


def test_inputs_match_generators():
    for name, S in _input_sets().items():
        assert (INPUTS / f"{name}.json").read_text() == dumps(set_to_json(S))


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_golden(name):
    code, out = run_cli(_args(SCENARIOS[name]))
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()
    # and twice in a row
    assert run_cli(_args(SCENARIOS[name]))[1] == out


@pytest.mark.parametrize("name", [n for n, a in SCENARIOS.items() if a[0] not in ("convolve", "spectrum")])
def test_every_result_reverifies(name):
    code, out = run_cli(["verify", str(GOLDEN / f"{name}.json")])
    assert code == 0, out
    assert json.loads(out)["ok"] is True


def test_documented_examples():
    doc = json.loads(run_cli(_args(SCENARIOS["energy_z4"]))[1])
    assert {k: doc[k] for k in ("quadruple", "convolution", "spectral", "agree")} == {
        "quadruple": 6, "convolution": 6, "spectral": 6.0, "agree": True}
    assert json.loads(run_cli(_args(SCENARIOS["dissociate_z7"]))[1])["witness"] == [1, 1, -1]
    dec = json.loads(run_cli(_args(SCENARIOS["decompose_simple_subspace"]))[1])
    assert dec["B1"] == dec["inputs"]["B"]["elements"]
    assert all(c["holds"] for c in dec["checks"])


def test_special_cycle_certificate():
    doc = json.loads(run_cli(_args(SCENARIOS["special_cycle_g4"]))[1])
    assert doc["search"]["reason"] == "collision"
    assert doc["certificate"]["verifies"] and doc["cycle"]["length"] % 2 == 0


def _tamper(name, tmp_path, fn):
    doc = json.loads((GOLDEN / f"{name}.json").read_text())
    fn(doc)
    p = tmp_path / "tampered.json"
    p.write_text(json.dumps(doc))
    return run_cli(["verify", str(p)])


def test_tampered_B1_fails(tmp_path):
    code, out = _tamper("decompose_simple_subspace", tmp_path, lambda d: d["B1"].append([1, 1, 1, 1, 1, 1]))
    assert code == 2 and json.loads(out)["ok"] is False


def test_tampered_witness_fails(tmp_path):
    def flip(d):
        d["witness"][0] = -d["witness"][0]
    code, _ = _tamper("dissociate_z7", tmp_path, flip)
    assert code == 2


def test_tampered_certificate_fails(tmp_path):
    def bump(d):
        c = d["certificate"]["coeffs"]
        c[c.index(0)] = 1
    code, _ = _tamper("special_cycle_g4", tmp_path, bump)
    assert code == 2


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": {"orders": [4]},\n "elements": [1,, 2]}')
    assert main(["energy", str(bad), str(bad)]) == 1
    assert f"{bad}:2:" in capsys.readouterr().err
    assert main(["energy", str(tmp_path / "missing.json"), str(bad)]) == 1
    assert main(["symmetry-set", str(INPUTS / "z4_pair.json"), str(INPUTS / "z4_pair.json"), "--sigma", "1/0"]) == 1
    wrong = tmp_path / "wrong.json"
    wrong.write_text(dumps({"group": {"orders": [3, 3]}, "elements": [[1]]}))
    assert main(["dissociate", str(wrong)]) == 1
    with pytest.raises(SystemExit):
        main(["energy", "--frobnicate"])


def test_rational_sigma_is_exact():
    z = INPUTS / "z11_a.json"
    a = json.loads(run_cli(["symmetry-set", str(z), str(z), "--sigma", "5/2"])[1])
    b = json.loads(run_cli(["symmetry-set", str(z), str(z), "--sigma", "3"])[1])
    assert a["sigma"] == "5/2" and a["elements"] == b["elements"]


def test_demo_writes_files(tmp_path):
    code, out = run_cli(["demo", "directsum", "4", "4", "10", "--out-dir", str(tmp_path)])
    assert code == 0
    preds = json.loads((tmp_path / "predictions.json").read_text())
    assert any(p["name"] == "dim(S)" and p["actual"] == "8" for p in preds)
    code, out = run_cli(["decompose", str(tmp_path / "A.json"), str(tmp_path / "B.json")])
    assert code == 0
    code, out = run_cli(["demo", "random", "5", "7", "--orders", "3,4", "--seed", "2"])
    assert code == 0 and run_cli(["demo", "random", "5", "7", "--orders", "3,4", "--seed", "2"])[1] == out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "addcomb", "energy", str(INPUTS / "z4_pair.json"),
                        str(INPUTS / "z4_pair.json")], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == (GOLDEN / "energy_z4.json").read_text()
