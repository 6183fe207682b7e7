import io
import json
import os
import subprocess
import sys

import pytest

from qborcherds.cli import InputError, RunConfig, main, run

from conftest import DATA_DIR


def path(name):
    return os.path.join(DATA_DIR, name)


def call(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = call(["validate", path("a1.json")], capsys)
    assert code == 0 and out.startswith("valid")


def test_validate_invalid(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"indices": [{"name": "1", "parity": 0, "d": 1},
                                         {"name": "2", "parity": 1, "d": 1}],
                             "cartan": [[2, -1], [-1, 2]]}))
    code, out, _ = call(["validate", str(f)], capsys)
    assert code == 1 and out.startswith("invalid")


def test_malformed_file(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"indices": [{"name": "1", "parity": 0}], "cartan": [[2]]}))
    code, _, err = call(["validate", str(f)], capsys)
    assert code == 2 and "indices[0].d" in err


def test_missing_weight(capsys):
    code, _, err = call(["character", path("a1.json")], capsys)
    assert code == 2 and "weight" in err


def test_unknown_command(capsys):
    code, _, _ = call(["frobnicate", path("a1.json")], capsys)
    assert code == 2


def test_runconfig_validation():
    with pytest.raises(InputError):
        RunConfig("x", "nope")
    with pytest.raises(InputError):
        RunConfig("x", "dim", depth=-1)


def test_character_both(capsys):
    code, out, _ = call(["character", path("a1.json"), "--weight", "2", "--depth", "4",
                         "--source", "both"], capsys)
    assert code == 0
    assert out.splitlines()[:3] == ["(0) : 1 | 1", "(1) : 1 | 1", "(2) : 1 | 1"]
    assert out.strip().endswith("identical")


def test_character_tables_sorted(capsys):
    code, out, _ = call(["character", path("borcherds_iso.json"), "--weight", "1,0",
                         "--depth", "3", "--source", "module"], capsys)
    assert code == 0
    rows = [l.split(" : ")[0] for l in out.splitlines()]
    keys = [tuple(int(x) for x in r.strip("()").split(", ")) for r in rows]
    assert keys == sorted(keys, key=lambda b: (sum(b), b))


def test_serre_check(capsys):
    code, out, _ = call(["serre-check", path("a2.json"), "--depth", "6"], capsys)
    assert code == 0
    assert out.count("in radical: yes") == 2


def test_dim_gram_theta(capsys):
    code, out, _ = call(["dim", path("borcherds_super.json"), "--depth", "2"], capsys)
    assert code == 0 and "(1, 1) : 2" in out
    code, out, _ = call(["gram", path("a1.json"), "--depth", "2"], capsys)
    assert code == 0 and "rank 1" in out
    code, out, _ = call(["theta", path("a1.json"), "--height", "2"], capsys)
    assert code == 0 and "b[1,1] | -1 + q^2" in out


def test_verma_and_casimir(capsys):
    code, out, _ = call(["verma", path("a1.json"), "--weight", "1", "--depth", "3"], capsys)
    assert code == 0 and "V(lambda)" in out
    code, out, _ = call(["casimir", path("imaginary.json"), "--weight", "1", "--depth", "3"], capsys)
    assert code == 0 and "(2) : -8 0" in out and "ok" in out


def test_yaml_datum(capsys):
    code, out, _ = call(["validate", path("borcherds_super.yaml")], capsys)
    assert code == 0


def test_deterministic_output():
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        run(RunConfig(path("borcherds_super.json"), "theta", depth=3, output=buf))
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qborcherds", "validate", path("a1.json")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("valid")
