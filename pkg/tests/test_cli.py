import json
import os

import pytest

from pairedk.cli import build_parser, load_config, main
from pairedk.errors import MalformedConfig

A_JSON = '{"coeffs":{"-1":[1,0],"0":[1,0]}}'
B_JSON = '{"coeffs":{"0":[1,0],"1":[1,0]}}'
WH_G = json.dumps(
    {
        "gain": [1, 0],
        "zpow": 0,
        "zeros": [{"z": [2, 0], "m": 1}],
        "poles": [{"z": [0.5, 0], "m": 1}],
    }
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_kernel_paired_circle_zero_pair(capsys):
    code, data = run_cli(
        capsys, "kernel", "--type", "paired", "--a", A_JSON, "--b", B_JSON
    )
    assert code == 0
    assert data["status"] == "exact" and data["dimension"] == 1
    assert data["nontrivial"] is True
    # the witness is 1 - 1/z
    w = data["witness"]["coeffs"]
    assert w["0"] == [1.0, 0.0] and w["-1"] == [-1.0, 0.0]


def test_kernel_transposed_empty_with_certificate(capsys):
    code, data = run_cli(
        capsys, "kernel", "--type", "transposed", "--a", A_JSON, "--b", B_JSON
    )
    assert code == 0
    assert data["status"] == "empty" and data["dimension"] == 0
    side = data["certificate"]["side_conditions"]
    assert side == {"O_minus_over_a_in_L2": False, "O_plus_over_b_in_L2": False}


def test_factor_wh(capsys):
    code, data = run_cli(capsys, "factor", "--wh", "--g", WH_G)
    assert code == 0
    assert data["kappa"] == -1


def test_apply_and_round_trip(capsys):
    code, data = run_cli(
        capsys,
        "apply",
        "--type",
        "paired",
        "--a",
        A_JSON,
        "--b",
        B_JSON,
        "--f",
        '{"coeffs":{"0":[1,0],"-1":[-1,0]}}',
    )
    assert code == 0
    assert data["is_zero"] is True


def test_norm_subcommand(capsys):
    code, data = run_cli(
        capsys, "norm", "--type", "paired", "--a", A_JSON, "--b", B_JSON, "--N", "32"
    )
    assert code == 0
    assert 2.0 <= data["norm_lower_bound"] <= 2.0 * 2 ** 0.5 + 1e-9


def test_commutator_subcommand(capsys):
    code, data = run_cli(
        capsys,
        "commutator",
        "--type",
        "paired",
        "--a",
        A_JSON,
        "--b",
        B_JSON,
        "--g",
        '{"coeffs":{"1":[1,0]}}',
    )
    assert code == 0
    assert data["rank"] == 1


def test_verify_exit_code_and_report_rerender(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        [
            "verify",
            "--property",
            "P_RANK1",
            "--trials",
            "3",
            "--seed",
            "1",
            "--out",
            str(out),
            "--quiet",
        ]
    )
    assert code == 0
    capsys.readouterr()
    code2, data = run_cli(capsys, "report", "--f", str(out))
    assert code2 == 0
    assert data["all_pass"] is True


def test_verify_requires_target(capsys):
    assert main(["verify"]) == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["kernel", "--type", "bogus"])
    assert exc.value.code == 2


# ---------------------------------------------------------------- config


def test_load_config_roundtrip(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"oracle_N": 128, "trials": 10}))
    cfg = load_config(str(p))
    assert cfg == {"oracle_N": 128, "trials": 10}


def test_load_config_rejects_unknown_key(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"oracle_M": 12}))
    with pytest.raises(MalformedConfig) as exc:
        load_config(str(p))
    assert "oracle_M" in str(exc.value)


def test_load_config_rejects_nonpositive(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"oracle_N": -1}))
    with pytest.raises(MalformedConfig):
        load_config(str(p))


def test_missing_config_file_is_usage_error(capsys):
    assert main(["verify", "--all", "--config", "/nonexistent/cfg.json"]) == 2


def test_config_env_fallback(tmp_path, capsys, monkeypatch):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"trials": 2}))
    monkeypatch.setenv("PAIREDK_CONFIG", str(p))
    code = main(["verify", "--property", "P_ZERO", "--quiet"])
    assert code == 0


def test_symbol_json_round_trip_through_cli(tmp_path, capsys):
    # symbols printed by the CLI re-parse to probe-equivalent symbols
    code, data = run_cli(capsys, "factor", "--wh", "--g", WH_G)
    assert code == 0
    from pairedk import RationalSymbol
    from pairedk.rational import probe_points

    g_back = RationalSymbol.from_json(data["g_plus"])
    orig = RationalSymbol.from_json(json.loads(WH_G))
    fac_minus = RationalSymbol.from_json(data["g_minus"])
    prod = fac_minus * RationalSymbol.monomial(data["kappa"]) * g_back
    for t in probe_points(8):
        assert abs(prod.eval(t) - orig.eval(t)) <= 1e-11 * max(1.0, abs(orig.eval(t)))
