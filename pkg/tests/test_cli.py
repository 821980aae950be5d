import json
import subprocess
import sys

import pytest

from realab.cli import main


def run(*args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "realab", *map(str, args)],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_components(data_dir):
    code, out, _ = run("components", data_dir / "diamond_sqrt2.lat")
    assert code == 0 and out == "components: 1 (connected)\n"
    code, out, _ = run("components", "--identity", data_dir / "rect_sqrt2.lat")
    assert out.splitlines() == ["components: 2", "identity component: torus of dimension 1"]


def test_components_prefixes_multiple(data_dir):
    code, out, _ = run("components", data_dir / "rect_sqrt2.lat", data_dir / "diamond_sqrt2.lat")
    assert out.splitlines() == ["rect-sqrt2: components: 2", "diamond-sqrt2: components: 1 (connected)"]


def test_isogeny(data_dir):
    code, out, _ = run("isogeny", data_dir / "rect_sqrt2.lat", data_dir / "rect_1_plus_sqrt2.lat")
    assert code == 0
    assert "verdict = no" in out and "ratio-test" in out
    code, out, _ = run("isogeny", data_dir / "rect_sqrt2.lat", data_dir / "diamond_sqrt2.lat")
    assert "verdict = yes" in out and "U = [[1]]" in out


def test_split_descended(data_dir):
    code, out, _ = run("split", data_dir / "descended_diamond.lat")
    assert code == 0
    assert "F = [[0/1 + 2/1 w]]" in out and "glue = [1|1]" in out


def test_polarize(data_dir):
    code, out, _ = run("polarize", "find", data_dir / "nonpolarizable.lat")
    assert code == 0 and "verdict = no" in out and "Q = [[1/1 + 0/1 w, 0/1 + 0/1 w], [0/1 + 0/1 w, 0/1 + 0/1 w]]" in out
    code, out, _ = run("polarize", "find", data_dir / "rect_sqrt2.lat")
    assert "verdict = yes" in out
    code2, out2, _ = run("polarize", "verify", stdin=out)
    assert code2 == 0 and out2 == "polarization: valid\n"


def test_dual_and_normal_form(data_dir):
    code, out, _ = run("dual", data_dir / "rect_sqrt2.lat")
    assert code == 0 and out.startswith("lattice rect-sqrt2.dual\n")
    code, out, _ = run("normal-form", data_dir / "diamond_sqrt2.lat")
    assert out.startswith("normal form: diamond(")


def test_gen_random_and_validate():
    code, out, _ = run("gen-random", "--g", 3, "--field", 2, "--count", 3, "--seed", 4)
    assert code == 0 and out.count("lattice ") == 3
    code, out2, _ = run("validate", stdin=out)
    assert code == 0 and out2.count(": ok") == 3


def test_classify_and_manifest(data_dir, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = run(
        "classify-corpus", "--manifest", path,
        data_dir / "rect_sqrt2.lat", data_dir / "diamond_sqrt2.lat", data_dir / "rect_1_plus_sqrt2.lat",
    )
    assert code == 0
    assert "class 0: rect-sqrt2 diamond-sqrt2" in out
    from realab.manifest import CorpusManifest, ManifestError

    text = path.read_text()
    CorpusManifest.from_json(text)
    payload = json.loads(text)
    for rec in payload["records"]:
        if rec["verdict"] == "yes":
            rec["witness"] = [[2]]
    with pytest.raises(ManifestError):
        CorpusManifest.from_json(json.dumps(payload))


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.lat"
    bad.write_text("lattice x\ng = 1\nF = [[1/0]]\n")
    code, _, err = run("validate", bad)
    assert code == 1 and "line 3" in err
    invalid = tmp_path / "invalid.lat"
    invalid.write_text("lattice x\ng = 2\nF = [[1, 0], [0, 1]]\nglue = [10|00]\n")
    assert run("validate", invalid)[0] == 1
    assert run("frobnicate")[0] == 3
    assert run("components", tmp_path / "missing.lat")[0] == 3
    assert run("gen-random", "--g", 9)[0] == 3


def test_field_mismatch_is_usage_error(tmp_path, data_dir):
    other = tmp_path / "r3.lat"
    other.write_text("lattice r3\ng = 1\nfield = Q(sqrt 3)\nF = [[w]]\n")
    assert run("isogeny", data_dir / "rect_sqrt2.lat", other)[0] == 3


def test_unknown_exit_code(monkeypatch, capsys, data_dir):
    from realab import cli
    from realab.polarization import PolarizabilityCertificate

    monkeypatch.setattr(cli, "decide_polarizable", lambda L, budget, seed: PolarizabilityCertificate("unknown"))
    assert main(["polarize", "find", str(data_dir / "rect_sqrt2.lat")]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["gen-random", "--g", "4", "--field", "Q(sqrt 5)", "--count", "4", "--seed", "9"],
        ["polarize", "find", "--seed", "3", "--budget", "40", "DATA/nonpolarizable.lat", "DATA/rect_sqrt2.lat"],
    ],
)
def test_determinism(argv, data_dir):
    argv = [a.replace("DATA", str(data_dir)) for a in argv]
    first = run(*argv)
    assert first[0] == 0
    assert run(*argv) == first
