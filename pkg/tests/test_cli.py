"""CLI surfaces: commands, formats, exit codes."""

import json
import subprocess
import sys

import pytest

from skewcode.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ring_dump_schema(capsys):
    code, out, _ = run_cli("ring", "--ring", "z4", "--dump", "--audit", capsys=capsys)
    assert code == 0
    info = json.loads(out)
    assert info["audit_passed"] is True
    tables = info["tables"]
    assert set(tables) == {"order", "zero", "one", "generators", "labels", "add", "mul"}
    assert tables["order"] == 4
    assert tables["add"][1][3] == 0


def test_aut_command(capsys):
    code, out, _ = run_cli("aut", "--ring", "m2f2", "--anti", "--involutions", capsys=capsys)
    assert code == 0
    info = json.loads(out)
    assert info["aut_order"] == 6
    assert info["anti_automorphisms"] == 6
    assert info["involutions"] == 4


def test_bases_command(capsys):
    code, out, _ = run_cli(
        "bases", "--ring", "gr42", "--subring", "prime", "--sigma", "id",
        "--group", "theta", "--class", "psd", "--list", capsys=capsys,
    )
    assert code == 0
    info = json.loads(out)
    assert info["count"] == 8 and info["gamma"] == "3"
    assert len(info["bases"]) == 8


def test_bases_symmetric(capsys):
    code, out, _ = run_cli(
        "bases", "--ring", "f4u", "--subring", "f4", "--class", "symmetric",
        capsys=capsys,
    )
    assert code == 0
    assert json.loads(out)["count"] == 18


def test_divisors_command(capsys):
    code, out, _ = run_cli(
        "divisors", "--ring", "f4u", "--theta", "sigma3", "--n", "2", "--d", "1",
        capsys=capsys,
    )
    assert code == 0
    info = json.loads(out)
    assert info["count"] == 6


def test_selfdual_gens_command(capsys):
    code, out, _ = run_cli(
        "selfdual-gens", "--ring", "f2v2", "--theta", "all", "--n", "4",
        capsys=capsys,
    )
    assert code == 0
    rows = json.loads(out)
    assert sum(r["+1"] for r in rows) == 2  # id and swap each give 1


def test_code_and_map_commands(capsys):
    code, out, _ = run_cli(
        "code", "--ring", "f2u", "--gen-poly", "1,x,1", "--n", "4", capsys=capsys
    )
    assert code == 0
    info = json.loads(out)
    assert (info["n"], info["k"], info["size"]) == (4, 2, 16)
    code, out, _ = run_cli(
        "map", "--ring", "f2u", "--gen-poly", "1,x,1", "--n", "4",
        "--basis", "1,x+1", capsys=capsys,
    )
    assert code == 0
    info = json.loads(out)
    assert info["min_distance"] == 4 and info["self_dual"] is True


def test_map_text_format(capsys):
    code, out, _ = run_cli(
        "--format", "text", "map", "--ring", "f2u", "--gen-poly", "1,x,1",
        "--n", "4", "--basis", "1,x+1", capsys=capsys,
    )
    assert code == 0
    assert out.splitlines()[0] == "1 0 1 1 1 0 0 0"


def test_verify_duality_exit_codes(capsys):
    code, _, _ = run_cli(
        "verify-duality", "--ring", "f2u", "--gen-poly", "1,x,1", "--n", "4",
        "--basis", "1,x+1", capsys=capsys,
    )
    assert code == 0
    code, _, _ = run_cli(
        "verify-duality", "--ring", "f2u", "--gen-poly", "1,x,1", "--n", "4",
        "--basis", "1,x", capsys=capsys,
    )
    assert code == 1  # violation: images not dual


def test_budget_refusal_is_usage_error(capsys):
    code, _, err = run_cli(
        "--budget", "10", "divisors", "--ring", "f4u", "--n", "8", "--d", "4",
        capsys=capsys,
    )
    assert code == 2
    assert "budget" in err


def test_config_error_exit(capsys):
    code, _, err = run_cli("ring", "--ring", "nosuchring", capsys=capsys)
    assert code == 2
    assert "unknown ring" in err


def test_recipe_command(capsys):
    code, out, _ = run_cli("recipe", "ex-f2u-images", capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    assert "basis_1_x1" in payload["text_blocks"]


def test_console_entrypoint_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "skewcode.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
