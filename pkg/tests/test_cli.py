import json

import pytest
from click.testing import CliRunner

from idcodes.cli import main

T587 = "2 1 0 2 0 1 1 0 2 0 0 0 0 0 0 2 1 0 2 2 2 1 0 2 2 2 2"


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        result = runner.invoke(main, [str(a) for a in args], catch_exceptions=False)
        return result

    return invoke


def test_field_info(run):
    out = json.loads(run("field", "info", "--p", 3, "--m", 2).output)
    assert out == {"p": 3, "m": 2, "modulus": [2, 2, 1], "primitive": [0, 1]}


def test_field_element(run):
    assert run("field", "element", "--p", 3, "--m", 2, 7).output.strip() == "2,2"


def test_rs_commands(run):
    assert run("rs", "eval", "--p", 3, "--m", 2, "--k", 3, "--j", 1, "a^6", "a^1", "a^1").output.strip() == "2,1"
    cw = run("rs", "codeword", "--p", 3, "--k", 2, "2", "2").output.split()
    assert cw == ["2", "1", "0"]
    g = run("rs", "genmatrix", "--p", 3, "--k", 2).output.splitlines()
    assert g == ["1 1 1", "0 1 2"]
    assert run("rs", "mindist", "--p", 3, "--m", 2, "--k", 3).output.strip() == "7"


def test_id_params(run):
    out = json.loads(run("id", "params", "--q", 3, "--k", 2, "--delta", 1).output)
    assert (out["n_c"], out["k_c"], out["d_c"]) == (27, 6, 14)
    assert out["lambda2_bound"] == "13/27"
    assert out["identities"] == {"base": 3, "exponent": 6}


def test_id_tag_and_codeword(run):
    out = json.loads(run("id", "tag", "--q", 3, "--k", 2, "--delta", 1, "--identity-int", 587, "--j", 5).output)
    assert out == {"j": 5, "t": 1}
    cw = run("id", "codeword", "--q", 3, "--k", 2, "--delta", 1, "--identity-int", 587).output.strip()
    assert cw == T587


def test_id_export_and_file(run, tmp_path):
    path = tmp_path / "ident.txt"
    run("id", "export", "--q", 3, "--k", 2, "--delta", 1, "--identity-int", 587, "--out", path)
    assert path.read_text() == "3 2 1\n7\n2\n2\n"
    out = json.loads(run("id", "tag", "--q", 3, "--k", 2, "--delta", 1, "--identity-file", path, "--j", 5).output)
    assert out["t"] == 1


def test_id_seed_tag(run):
    a = run("id", "tag", "--q", 1009, "--k", 3, "--delta", 2, "--seed", 4, "--j", 123456789).output
    b = run("id", "tag", "--q", 1009, "--k", 3, "--delta", 2, "--seed", 4, "--j", 123456789).output
    assert a == b and 0 <= json.loads(a)["t"] < 1009


def test_identity_source_required(run):
    r = CliRunner().invoke(main, ["id", "tag", "--q", "3", "--k", "2", "--delta", "1", "--j", "5"])
    assert r.exit_code != 0 and "exactly one" in r.output


def test_check_capacity(run):
    out = json.loads(run("id", "check-capacity", "--family", "rs", "--qs", "23,193,1009").output)
    assert "tag" in out["failing"]
    out = json.loads(run("id", "check-capacity", "--qs", "23,193,1009").output)
    dist = next(c for c in out["conditions"] if c["name"] == "distance")
    assert dist["trend"] == "increasing"


def test_sim_fixed_with_csv(run, tmp_path):
    csv_path = tmp_path / "sim.csv"
    args = ("sim", "fixed", "--q", 3, "--k", 2, "--delta", 1, "--trials", 300, "--seed", 1, "--csv", csv_path)
    a = json.loads(run(*args).output)
    run(*args)
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 3 and lines[0].startswith("q,k,delta")
    assert lines[1] == lines[2]
    assert a["mode"] == "fixed-randomness" and a["bound_exact"] == "13/27"


def test_sim_average(run):
    out = json.loads(run("sim", "average", "--q", 3, "--k", 2, "--delta", 1, "--trials", 200).output)
    assert out["trials"] == 200 and 0 <= out["ratio"] <= 1


def test_bench_and_fig(run, tmp_path):
    rec = json.loads(run("bench", "tag", "--q", 23, "--k", 3, "--delta", 2, "--repetitions", 1).output)
    assert rec["wall_time_one_tag"] > 0
    text = run("fig", "emit", "--figure", "lambda2-vs-params", "--qs", "23,193").output
    assert text.splitlines()[0] == "q,k,delta,n_c,d_c,lambda2,log10_identities"
    out = tmp_path / "f.csv"
    run("fig", "emit", "--figure", "lambda2-vs-params", "--params", "3,2,1;23,3,2", "--out", out)
    assert len(out.read_text().splitlines()) == 3


def test_nearest_prime(run):
    assert run("util", "nearest-prime", 10000).output.strip() == "10007"


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "idcodes", "util", "nearest-prime", "24"], capture_output=True, text=True)
    assert r.stdout.strip() == "23"
