import json
import subprocess
import sys

import pytest

from flopgeom.cli import main, parse_args, parse_ray
from flopgeom.tropu import FlopConfig


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_theta_command():
    args = parse_args(["theta", "--n", "3", "--point", "0,2,1"])
    assert args.command == "theta" and args.n == 3 and args.point == (0, 2, 1)


def test_pair_query(capsys):
    code, out, _ = run(["pair", "--n", "2", "--u", "2,2,1", "--v", "V2:1,0,0"], capsys)
    assert code == 0 and out == "2\n"


def test_pair_rational_output(capsys):
    code, out, _ = run(["pair", "--n", "2", "--u", "0,1,0", "--v", "V1:0,1,0"], capsys)
    assert out == "1\n"


def test_theta_query(capsys):
    code, out, _ = run(["theta", "--n", "3", "--point", "0,2,1"], capsys)
    assert code == 0 and out == "1*v^2*w\n"
    code, out, _ = run(["theta", "--n", "1", "--point", "0,2,1"], capsys)
    assert out == "1*v^2*w + 1*u*v^2*w\n"


@pytest.mark.parametrize("argv", [
    ["subdivide", "--n", "2", "--side", "C"],
    ["theta", "--n", "3", "--point", "0,2,1", "--bogus"],
    ["verify"],
    ["verify", "--n-max", "0"],
    ["pair", "--n", "2", "--u", "1,2", "--v", "V2:1,0,0"],
    ["pair", "--n", "2", "--u", "1,2,3", "--v", "V3:1,0,0"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "usage" in err


def test_malformed_point_names_flag(capsys):
    code, _, err = run(["theta", "--n", "3", "--point", "0,x,1"], capsys)
    assert code == 2 and "--point" in err


def test_verify_passes(capsys):
    code, out, _ = run(["verify", "--n-max", "2"], capsys)
    assert code == 0
    assert "FAIL" not in out and out.rstrip().endswith("all passed")


def test_verify_fault_injection(capsys):
    code, out, _ = run(["verify", "--n-max", "1", "--inject-fault"], capsys)
    assert code == 1
    assert "FAIL n=1 inverse-transpose" in out


@pytest.mark.parametrize("fmt", ["text", "json", "svg"])
def test_subdivide_formats(fmt, capsys):
    code, out, _ = run(["subdivide", "--n", "2", "--side", "A", "--format", fmt], capsys)
    assert code == 0
    if fmt == "json":
        doc = json.loads(out)
        assert doc["side"] == "A" and len(doc["cells"]) == 2
    elif fmt == "svg":
        assert out.startswith("<svg")


def test_subdivide_writes_file(tmp_path, capsys):
    path = tmp_path / "b.svg"
    code, out, _ = run(["subdivide", "--n", "2", "--side", "B", "--format", "svg", "--out", str(path)], capsys)
    assert code == 0 and out == "" and path.read_text().startswith("<svg")


def test_unwritable_output(tmp_path, capsys):
    code, _, err = run(["pagoda", "--n", "2", "--out", str(tmp_path / "no" / "x.txt")], capsys)
    assert code == 1 and err


def test_pagoda_json(capsys):
    code, out, _ = run(["pagoda", "--n", "3", "--format", "json"], capsys)
    assert len(json.loads(out)["cells"]) == 7


def test_mirror_json(capsys):
    code, out, _ = run(["mirror", "--n", "3", "--check", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["verified"] is True
    assert len(doc["matrix"]) == 2 and len(doc["minors"]) == 6


def test_dual_tau1(capsys):
    code, out, _ = run(["dual", "--n", "2", "--cone", "d2", "d3", "L"], capsys)
    doc = json.loads(out)
    assert code == 0 and [1, -1, 0] in doc["hilbert_V2"]


def test_dual_rejects_non_convex(capsys):
    code, _, err = run(["dual", "--n", "2", "--cone", "L", "d3", "d1@1", "d2@1"], capsys)
    assert code == 2 and "non-convex" in err


def test_ray_tokens():
    cfg = FlopConfig.canonical(2)
    assert parse_ray(cfg, "d1@1").vector == (2, 1, 0)
    assert parse_ray(cfg, "f2").vector == (2, 2, 1)
    assert parse_ray(cfg, "L").kind == "singular"
    assert parse_ray(cfg, "1,0,3").vector == (1, 0, 3)
    with pytest.raises(ValueError):
        parse_ray(cfg, "q7")


@pytest.mark.parametrize("argv", [
    ["verify", "--n-max", "3"],
    ["pagoda", "--n", "3", "--format", "svg"],
    ["subdivide", "--n", "4", "--side", "B", "--format", "json"],
    ["mirror", "--n", "4"],
])
def test_deterministic_output(argv, capsys):
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "flopgeom", "pair", "--n", "2", "--u", "2,2,1",
                           "--v", "V2:1,0,0"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"
