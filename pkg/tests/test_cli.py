import json

import pytest

from su2dortho import afamily as fa
from su2dortho.cli import main


def run_cli(args, capsys):
    status = main(args)
    out, err = capsys.readouterr()
    return status, out, err


def test_gen_a_json(tmp_path, capsys):
    target = tmp_path / "a.json"
    status, _, _ = run_cli(["gen-a", "--q", "0", "--c", "1/2", "--N", "6", "--out", str(target)], capsys)
    assert status == 0
    data = json.loads(target.read_text())
    assert data["polys"][0] == {"j": 0, "coeffs": ["1"]}
    assert all(entry["coeffs"][-1] == "1" for entry in data["polys"])
    params, polys = fa.family_from_dump(data)
    assert polys == fa.a_poly_recurrence(params, params.j_max)


def test_gen_b_csv(capsys):
    status, out, _ = run_cli(["gen-b", "--M", "2", "--f", "1/3", "--N", "3", "--format", "csv", "--out", "-"], capsys)
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "n,power,coeff"
    assert lines[-1] == "3,3,1"


def test_env_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SU2DORTHO_OUTPUT_DIR", str(tmp_path))
    status, _, err = run_cli(["gen-a", "--q", "1", "--c=-3/7", "--N", "5"], capsys)
    assert status == 0
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].suffix == ".json"
    assert str(files[0]) in err


@pytest.mark.parametrize(
    "args",
    [
        ["gen-a", "--q", "0", "--c", "0", "--N", "4"],
        ["gen-a", "--q", "0", "--c", "1/2", "--N", "65"],
        ["gen-a", "--q", "3", "--c", "1", "--N", "4"],
        ["gen-a", "--q", "0", "--c", "1/0", "--N", "4"],
        ["contract-b", "--M", "1", "--a", "1", "--b", "1", "--j", "1", "--q", "0", "--k", "1", "--N", "64,512"],
        ["contract-a", "--q", "0", "--c", "1", "--j", "2", "--N", "64,32"],
        ["verify", "--N-max", "100"],
    ],
)
def test_invalid_config_exit_2(args, capsys):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(args + ["--out", "-"]))
    assert info.value.code == 2


def test_verify_quick(capsys):
    status, out, _ = run_cli(["verify", "--quick", "--out", "-"], capsys)
    assert status == 0
    data = json.loads(out)
    assert data["passed"] and data["N_max"] == 6 and data["total"] > 0
    assert all(v["passed"] for v in data["checks"].values())


def test_verify_failure_exit_1(monkeypatch, capsys):
    from su2dortho import verify

    monkeypatch.setattr(verify.fa, "a_forward_shift", lambda *args: False)
    status, _, err = run_cli(["verify", "--N-max", "4", "--out", "-"], capsys)
    assert status == 1
    assert "A.forward_shift" in err


def test_contract_a_report(capsys):
    status, out, _ = run_cli(["contract-a", "--q", "0", "--c", "1", "--j", "2", "--N", "16,32,64,128", "--out", "-"], capsys)
    assert status == 0
    data = json.loads(out)
    assert 0.7 <= data["order"] <= 1.3
    assert data["winner"] == "4c/(4c-1)"
    assert set(data) >= {"target", "N", "dev_candidate1", "dev_candidate2", "order", "winner"}


def test_determinism_and_round_trip(tmp_path, capsys):
    outputs = []
    for i in range(2):
        target = tmp_path / f"r{i}.json"
        main(["gf-check", "--q", "1", "--c", "1/4", "--eta", "0.5+0.1j", "--N", "16,32", "--out", str(target), "--seed", "3"])
        outputs.append(target.read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[1]
    data = json.loads(outputs[0])
    assert json.loads(json.dumps(data, indent=2, sort_keys=True)) == data
    assert json.dumps(data, indent=2, sort_keys=True) + "\n" == outputs[0].decode()


def test_contract_b_csv(capsys):
    status, out, _ = run_cli(
        ["contract-b", "--M", "2", "--a", "7/10", "--b", "2/5", "--j", "1", "--q", "0", "--k", "2",
         "--N", "32,64", "--format", "csv", "--out", "-"],
        capsys,
    )
    assert status == 0
    assert out.splitlines()[0] == "index,N,dev_candidate1,dev_candidate2"
    assert len(out.splitlines()) == 3
