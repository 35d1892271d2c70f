import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from jacobigrammar.cli import RunConfig, UsageError, load_config, main


def schema(name):
    return json.loads(resources.files("jacobigrammar").joinpath(f"schemas/{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_pretty(capsys):
    code, out, _ = run(capsys, "expand", "--n", "2")
    assert code == 0 and out.strip() == "D^2(x) = x*y^2 + x*z^2"


def test_expand_custom_rules(capsys):
    code, out, _ = run(capsys, "expand", "--rules", "w->w*x; x->w*x", "--start", "w", "--n", "2")
    assert code == 0 and out.strip() == "D^2(w) = w^2*x + w*x^2"


@pytest.mark.parametrize("argv,name", [
    (["expand", "--n", "3", "--all"], "expand"),
    (["triangle", "--name", "t", "--nmax", "5", "--method", "both"], "triangle"),
    (["stats", "--statistic", "descents", "--n", "5"], "stats"),
    (["stats", "--statistic", "cycle-peaks", "--n", "5"], "stats"),
    (["series", "--function", "sn", "--order", "7"], "series"),
    (["verify", "--id", "conjecture", "--id", "CO:caseD", "--id", "rk4-order"], "verify"),
])
def test_json_output_validates(capsys, argv, name):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema(name))


def test_failing_verify_exit_code_and_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--id", "th_TT", "--format", "json")
    assert code == 1
    data = json.loads(out)
    jsonschema.validate(data, schema("verify"))
    assert data[0]["status"] == "fail" and data[0]["counterexample"]


def test_triangle_csv(capsys):
    code, out, _ = run(capsys, "triangle", "--name", "r", "--nmax", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,i,j,value" and "2,1,0,4" in out


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    ids = out.split()
    assert code == 0 and "thCCth" in ids and "mainthm02.v" in ids and "rk4-order" in ids


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["verify", "--id", "no-such-case"],
    ["verify"],
    ["stats", "--statistic", "descents", "--n", "99"],
    ["triangle", "--name", "q"],
    ["verify", "--id", "thCCth", "--tol", "-1"],
    ["verify", "--id", "thCCth", "--rk-steps", "8"],
    ["expand", "--n", "2", "--start", "w"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nsamples = 6\nformat=json\nrk-steps = 128\n")
    assert load_config(str(cfg)) == RunConfig(samples=6, format="json", rk_steps=128)
    code, out, _ = run(capsys, "verify", "--id", "CO:caseC.p0", "--config", str(cfg))
    assert code == 0 and json.loads(out)[0]["samples"] == 6
    (tmp_path / "bad.cfg").write_text("colour = red\n")
    with pytest.raises(UsageError):
        load_config(str(tmp_path / "bad.cfg"))


def test_env_config(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "env.cfg"
    cfg.write_text("format = csv\n")
    monkeypatch.setenv("JACOBIGRAMMAR_CONFIG", str(cfg))
    code, out, _ = run(capsys, "verify", "--id", "conjecture")
    assert code == 0 and out.startswith("id,status")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jacobigrammar.cli", "series", "--function", "J",
                           "--order", "5"], capture_output=True, text=True, check=True)
    assert "J_5(k2) = k2^2 + 14*k2 + 1" in proc.stdout
