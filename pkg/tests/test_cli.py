import csv
import io
import json
import subprocess
import sys

import pytest

from defbinom.cli import FIGURES, main, run

E = '{"exp": {"kind": "MonomialSum", "f": ["0", "1"]}}'
GAUSS = '{"family": "Gauss", "a": "1/2"}'


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def exit_code(*argv):
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    return info.value.code


def test_dist_binomial_line():
    assert call("dist", E, "--n", "2", "--eta", "1/2") == (0, "1/4,1/2,1/4\n")


def test_dist_json_and_reparametrized():
    code, text = call("dist", E, "--n", "2", "--eta", "1/2", "--g", "pow:2", "--json")
    assert code == 0
    assert json.loads(text)["probs"] == ["9/16", "3/8", "1/16"]


def test_dist_warns_outside_sigma_plus(capsys):
    spec = '{"raw": ["1", "1", "1/2", "1/6", "1/23", "1/120"]}'
    code, text = call("dist", spec, "--n", "5", "--eta", "1/2")
    assert code == 0
    assert "not in Sigma+" in capsys.readouterr().err


def test_spec_check_codes():
    assert call("spec", "check", GAUSS)[0] == 0
    code, text = call("spec", "check", '{"raw": ["1", "1", "0", "1"]}')
    assert code == 3
    assert json.loads(text)["reports"][0]["first_violation"]["index"] == 2
    assert call("spec", "check", '{"kind": "MonomialSum", "f": ["0", "1", "2"]}')[0] == 0


def test_sequence_and_poly():
    code, text = call("sequence", '{"family": "Example1", "a": "1", "n0": "5"}', "--n-max", "3")
    assert code == 0
    assert [r["x"] for r in json.loads(text)["rows"]] == ["0", "1/5", "1/3", "3/7"]
    code, text = call("poly", '{"family": "Example2", "a1": "5/4", "a2": "6/4"}', "--n-max", "3", "--eta-grid", "4")
    polys = json.loads(text)["polynomials"]
    assert polys[2]["coeffs"] == ["1", "-121/91", "30/91"]
    assert polys[3]["coeffs"] == ["1", "-91/61", "30/61"]
    assert json.loads(text)["samples"]["p1"] == [1.0, 0.75, 0.5, 0.25, 0.0]


def test_deform_checks():
    code, text = call("deform", GAUSS, "--op", "d", "--alpha", "-1/2", "--order", "10")
    assert code == 0
    assert all(json.loads(text)["checks"].values())
    code, text = call("deform", '{"family": "Gauss", "a": "1"}', "--op", "e", "--alpha", "1/2", "--order", "8")
    assert code == 0
    assert json.loads(text)["series"][2] == "3"  # exp(t + 5/2 t^2) has a_2 = 1/2 + 5/2


def test_deform_needs_normalized_input():
    spec = '{"product": ["1/2"]}'
    assert call("deform", spec, "--op", "d", "--alpha", "1/2", "--order", "6")[0] == 2
    assert call("deform", spec, "--op", "d", "--alpha", "1/2", "--order", "6", "--normalize")[0] == 0


def test_flow_negative_alpha():
    code, text = call("flow", "--alpha", "-1/2", "--f", "0,1,1", "--steps", "2")
    assert code == 0
    assert json.loads(text)["trajectory"][-1] == ["0", "1", "1/9"]


def test_conjecture_commands():
    code, text = call("conjecture", "1", "--a", "1/2", "--m", "3", "--n-max", "40")
    assert code == 0 and json.loads(text)["reports"][0]["verdict"] == "pass"
    code, text = call("conjecture", "2", "--coeffs", "1/2", "--n-max", "20")
    verdicts = {r["convention"]: (r["verdict"], r["first_failure"]) for r in json.loads(text)["reports"]}
    assert verdicts == {"as-printed": ("fail", 2), "scaled-by-n": ("pass", None)}


def test_helstrom_command():
    code, text = call("helstrom", E, "--t", "0.6931471805599453")
    assert code == 0
    assert abs(json.loads(text)["bound"] - 0.1464466094067262) < 1e-12
    assert call("helstrom", '{"family": "Example1", "a": "1", "n0": "5"}', "--t", "0.9")[0] == 2


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_figure_csv(name):
    code, text = call("figure", name)
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0
    assert rows[0][0] == "eta" and len(rows) == 202
    assert all(float(v) == 1.0 for v in rows[1][1:])
    assert all(float(v) == 0.0 for v in rows[-1][1:])


def test_spec_from_file(tmp_path):
    path = tmp_path / "gauss.json"
    path.write_text(GAUSS)
    assert call("sequence", str(path), "--n-max", "4")[0] == 0


@pytest.mark.parametrize(
    "argv, code",
    [
        (["dist", "{oops", "--n", "2", "--eta", "1/2"], 2),
        (["dist", E, "--n", "2", "--eta", "3/2"], 2),
        (["dist", '{"family": "Gauss"}', "--n", "2", "--eta", "1/2"], 2),
        (["sequence", E, "--n-max", "70"], 1),
        (["sequence", E, "--order", "600"], 1),
        (["conjecture", "1", "--a", "1"], 1),
        (["frobnicate"], 1),
        (["dist", E, "--eta", "1/2"], 1),
    ],
)
def test_error_exit_codes(argv, code, capsys):
    assert exit_code(*argv) == code
    assert capsys.readouterr().err


def test_missing_field_is_named(capsys):
    exit_code("dist", '{"family": "Gauss"}', "--n", "2", "--eta", "1/2")
    assert "'a'" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "defbinom", "dist", E, "--n", "1", "--eta", "1/3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "2/3,1/3\n"
