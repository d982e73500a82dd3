import json
import subprocess
import sys

import pytest

from schwinger.cli import ConfigError, RunConfig, parse_complex, run
from schwinger.symbolic import Num


def _json(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("text,value", [
    ("1", Num(1)), ("-0.5", Num(-0.5)), ("2i", Num(0, 2)), ("i", Num(0, 1)), ("-i", Num(0, -1)),
    ("1+2i", Num(1, 2)), ("1/2", None), ("0.1-i", Num("0.1", -1)), ("1e-3", Num("0.001")),
])
def test_parse_complex(text, value):
    if value is None:
        with pytest.raises(ConfigError):
            parse_complex(text)
    else:
        assert parse_complex(text) == value


@pytest.mark.parametrize("kw", [dict(tolerance=0), dict(sector_max=65), dict(grid_n=0), dict(hbar=-1),
                                dict(output_format="xml")])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        RunConfig(command="verify-claims", **kw).validate()


def test_check_algebra_exit_code(capsys):
    code, doc = _json(capsys, ["check-algebra", "--sector-max", "4", "--tol", "1e-12"])
    assert code == 0
    assert [c["verdict"] for c in doc["claims"]] == ["match"] * 5


def test_solve_sector_single(capsys):
    code, doc = _json(capsys, ["solve-sector", "--sector", "1"])
    assert code == 0
    assert [s["N"] for s in doc["spectra"]] == [1]
    assert {c["claim_id"]: c["verdict"] for c in doc["claims"]} == {
        "sector-spectrum": "match", "spin-half-x-eigenstates": "match"}


def test_solve_sector_csv(capsys):
    assert run(["solve-sector", "--sector", "2", "--component", "z", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "N,component,index,eigenvalue,m,re,im"
    assert len(lines) == 1 + 9


def test_verify_claims_contents(capsys):
    code, doc = _json(capsys, ["verify-claims", "--sector-max", "3", "--grid-n", "3"])
    assert code == 0
    ids = [c["claim_id"] for c in doc["claims"]]
    assert ids.count("spin-half-eigenstate") == 3
    assert ids[-1] == "first-band-equation"
    assert doc["tool"] == "schwinger" and doc["tolerance"] == 1e-10


def test_verify_claims_without_band(capsys):
    _, doc = _json(capsys, ["verify-claims", "--grid-n", "1", "--sector-max", "1"])
    last = doc["claims"][-1]
    assert last["verdict"] == "not-applicable" and "no band" in last["details"]


def test_sector_max_zero_skips_sector_claims(capsys):
    _, doc = _json(capsys, ["verify-claims", "--sector-max", "0"])
    assert "spin-half-eigenstate" not in [c["claim_id"] for c in doc["claims"]]


def test_symbolic_text_and_json(capsys):
    assert run(["symbolic", "b a^+", "--set", "d=sym"]) == 0
    assert capsys.readouterr().out == "a^+ b + d\n"
    assert run(["symbolic", "b a", "--set", "c=2i", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["normal_form"] == "a b + 2 i"


def test_symbolic_parse_error(capsys):
    assert run(["symbolic", "a +"]) == 2
    assert "position 3" in capsys.readouterr().err


def test_uniqueness(capsys):
    code, doc = _json(capsys, ["uniqueness"])
    assert code == 0
    assert doc["iteration"]["status"] == "converged"
    assert doc["iteration"]["final_constraints"] == ["c = 0", "d = 0"]


def test_entangle(capsys):
    code, doc = _json(capsys, ["entangle", "--rep", "z", "--amplitudes", "1", "1", "--normalize"])
    assert code == 0
    assert doc["entangle"]["schmidt_rank"] == 2
    assert doc["entangle"]["entropy"] == pytest.approx(0.6931471805599453, abs=1e-12)


def test_entangle_unnormalized_is_config_error(capsys):
    assert run(["entangle", "--amplitudes", "1", "1"]) == 2
    assert "normalized" in capsys.readouterr().err


def test_grid_export_default_csv(capsys):
    assert run(["grid-export", "--grid-n", "2", "--amp", "1,0=1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("m,n,re,im") and out[3] == "1,0,1,0,1,1,1"


def test_invalid_config_exits_nonzero(capsys):
    assert run(["verify-claims", "--tol", "0"]) == 2
    assert "tolerance" in capsys.readouterr().err


def test_unwritable_output(tmp_path, capsys):
    target = tmp_path / "missing" / "out.json"
    assert run(["verify-claims", "--out", str(target)]) == 1
    assert "cannot write" in capsys.readouterr().err


def test_out_file(tmp_path):
    target = tmp_path / "claims.json"
    assert run(["verify-claims", "--sector-max", "2", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["command"] == "verify-claims"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "schwinger", "symbolic", "a a^+"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "a^+ a + 1\n"


def test_uniqueness_not_run(capsys):
    code, doc = _json(capsys, ["uniqueness", "--max-steps", "0"])
    assert code == 0
    assert doc["iteration"]["status"] == "not run" and doc["iteration"]["steps"] == []


def test_uniqueness_with_c_preset(capsys):
    _, doc = _json(capsys, ["uniqueness", "--set", "c=0"])
    constraints = [c["constraint"] for s in doc["iteration"]["steps"] for c in s["extracted_constraints"]]
    assert constraints == ["d = 0"]
    assert doc["iteration"]["table"]["[b,a]"] == "0"


def test_uniqueness_without_fixed_point_still_exits_zero(capsys):
    code, doc = _json(capsys, ["uniqueness", "--max-steps", "1"])
    assert code == 0
    assert doc["iteration"]["status"] == "max_steps reached"


def test_entangle_claim(capsys):
    _, doc = _json(capsys, ["entangle", "--rep", "x", "--amplitudes", "0.6", "0.8"])
    claim = doc["claims"][0]
    assert claim["verdict"] == "match" and claim["computed_value"]["entangled"] is True
