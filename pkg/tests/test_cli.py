import json

import pytest
from click.testing import CliRunner

from univshift.cli import cli


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def _run(*args):
    return CliRunner().invoke(cli, list(args))


def test_lang(files):
    result = _run("lang", "--spec", files("gm.json", "golden_mean"), "--len", "3")
    assert result.exit_code == 0
    assert result.output.split() == ["000", "001", "010", "100", "101"]


def test_lang_exact(files):
    spec = files("alt.json", "no00no11")
    result = _run("lang", "--spec", spec, "--len", "4", "--exact")
    assert result.output.split() == ["0101", "1010"]


def test_config_defaults(files, tmp_path):
    config = tmp_path / "univshift.toml"
    config.write_text("[lang]\nlength = 3\n")
    spec = files("gm.json", "golden_mean")
    result = _run("--config", str(config), "lang", "--spec", spec)
    assert result.exit_code == 0
    assert len(result.output.split()) == 5


def test_unknown_flag():
    assert _run("lang", "--nope").exit_code == 2


def test_domain_error_is_json(files):
    result = _run("codec", "spec", "--spec", files("full.json", "fullshift:2"))
    assert result.exit_code == 1
    error = json.loads(result.output.strip().splitlines()[-1])
    assert error["error"] == "NoPatterns"


def test_skeleton_gen_and_check():
    result = _run("skeleton", "gen", "--depth", "1", "--bits", "b")
    assert result.output.strip() == "L1011R000000"
    result = _run("skeleton", "check", "--word", "L1011R000000L1")
    assert json.loads(result.output) == {"valid": True}
    result = _run("skeleton", "check", "--word", "L0R", "--depth", "1")
    assert json.loads(result.output)["rule"] == "coding-run"


def test_codec_commands(files):
    encode = ["codec", "pattern-encode", "--alphabet", "2", "--word"]
    assert _run(*encode, "101").output == "7\n"
    assert _run(*encode, "10").exit_code == 2
    result = _run("codec", "z", "--index", "8", "--dimension", "2")
    assert json.loads(result.output) == [1, -1]
    spec = files("gm.json", "golden_mean")
    result = _run("codec", "spec", "--spec", spec, "--prefix", "4")
    assert json.loads(result.output) == [2, 1, 8, 9]
    result = _run("codec", "config", "--word", "01", "--alphabet", "2", "--prefix", "6")
    assert json.loads(result.output) == [2, 1, 0, 1, 1, 0]


def test_modulus(files):
    spec = files("gm.json", "golden_mean")
    result = _run("modulus", "--spec", spec, "--op", "identity", "--r", "6")
    assert json.loads(result.output)["ell"] == 2
    result = _run(
        "modulus", "--spec", spec, "--op", "identity", "--r", "6", "--max-i", "1"
    )
    assert result.exit_code == 1


def test_universal_build_and_decode(files, tmp_path):
    targets = files("targets.json", ["golden_mean"])
    out = str(tmp_path / "bundle.json")
    result = _run(
        "universal", "build", "--targets", targets, "--max-layer", "2", "--out", out
    )
    assert result.exit_code == 0
    result = _run("universal", "decode", "--bundle", out, "--layer", "1", "--len", "3")
    assert result.output.split() == ["000", "001", "010", "100", "101"]


def test_certify(files):
    X = files("gm.json", "golden_mean")
    G = files("targets.json", ["golden_mean", "no00no11"])
    result = _run(
        "certify", "--x", X, "--registry", "identity", "--g", G, "--budget", "20"
    )
    assert result.exit_code == 0
    claims = [json.loads(line) for line in result.output.splitlines()]
    assert claims == [{"i": 1, "n": 0, "b": 2, "j": 3, "status": "claimed"}]


def test_certify_auto_needs_bundle(files):
    X = files("gm.json", "golden_mean")
    result = _run("certify", "--x", X, "--g", X)
    assert result.exit_code == 2


def test_certify_bundle_with_named_operator(files, tmp_path):
    out = str(tmp_path / "bundle.json")
    targets = files("targets.json", ["golden_mean"])
    _run("universal", "build", "--targets", targets, "--max-layer", "1", "--out", out)
    no_adjacent_c1 = files("g.json", [{"alphabet": 4, "forbidden": [{"word": "33"}]}])
    args = ["--x", out, "--registry", "identity", "--g", no_adjacent_c1]
    result = _run("certify", *args, "--budget", "4")
    assert result.exit_code == 0
    assert not [line for line in result.output.splitlines() if "claimed" in line]
