import json
from importlib import resources

import jsonschema
import pytest

from regulus.cli import main
from regulus.serialize import report_schema

CORPUS = resources.files("regulus.corpus")


def path(name):
    return str(CORPUS.joinpath(name))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    jsonschema.validate(data, report_schema())
    return code, data


def test_closure_member(capsys):
    code, out, _ = run(capsys, "closure", path("coequalizer.cat"), "--category", "C", "--class", "F")
    assert code == 0 and "verdict: Member" in out and "certificate" in out


def test_closure_json_and_sidecar(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, data = run_json(capsys, "closure", path("coequalizer.cat"), "--category", "C", "--class", "F",
                          "--cert", str(cert))
    assert code == 0 and data["verdict"] == "Member" and data["certificate"]["kind"] == "certificate"
    code, data = run_json(capsys, "eval-recipe", str(cert))
    assert code == 0 and data["verdict"] == "Member"


def test_cofinal_negative(capsys):
    code, data = run_json(capsys, "check-cofinal", path("inclusion.cat"), "--functor", "i", "--level", "connected")
    assert code == 1 and data["verdict"] == "NotCofinal" and data["witnesses"]["failing_object"] == "a"


def test_bounded_unknown(capsys):
    code, data = run_json(capsys, "closure", path("coequalizer.cat"), "--category", "C", "--class", "F",
                          "--max-stage", "0")
    assert code == 2 and data["verdict"] == "Unknown"


def test_usage_and_input_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 3
    with pytest.raises(SystemExit) as e:
        main(["closure", path("coequalizer.cat")])
    assert e.value.code == 3
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.cat"))
    assert code == 4 and "error" in err
    bad = tmp_path / "bad.cat"
    bad.write_text("category C { objects: a; arrows: f: a -> b; }\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 4 and "1:" in err


@pytest.mark.parametrize("argv", [
    ["validate", "shapes.cat"],
    ["check-sifted", "shapes.cat", "--category", "Dm"],
    ["check-filtered", "shapes.cat", "--category", "P"],
    ["check-contractible", "shapes.cat", "--category", "Idem"],
    ["karoubi", "shapes.cat", "--category", "Idem"],
    ["homology", "shapes.cat", "--category", "P", "--triplets"],
    ["components", "shapes.cat", "--category", "D2"],
    ["membership", "shapes.cat", "--presheaf", "T", "--class", "F", "--via-elements"],
    ["elements", "shapes.cat", "--presheaf", "Yb"],
    ["check-preservation", "lattices.cat", "--functor", "collapse", "--shape", "D2"],
    ["eval-recipe", "coequalizer.cat"],
])
def test_every_command_emits_valid_reports(capsys, argv):
    argv = [argv[0], path(argv[1]), *argv[2:]]
    code, data = run_json(capsys, *argv)
    assert code in (0, 1, 2) and data["command"] == argv[0]
    again_code, again = run_json(capsys, *argv)
    assert (again_code, again) == (code, data)


def test_human_output_is_deterministic(capsys):
    argv = ["homology", path("shapes.cat"), "--category", "P"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_corpus_command(capsys):
    code, data = run_json(capsys, "corpus")
    assert code == 0 and data["details"]["failed"] == 0
