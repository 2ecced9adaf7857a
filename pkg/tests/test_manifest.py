import json

import pytest

from univshift.errors import ManifestError
from univshift.manifest import (
    build_bundle,
    builtin_spec,
    is_bundle,
    load_bundle,
    load_json,
    parse_entry,
    parse_manifest,
    read_bounds,
    read_spec,
    save_bundle,
)
from univshift.types import partial_pattern


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


@pytest.mark.parametrize(
    "name, size, sft",
    [
        ("golden_mean", 2, True),
        ("builtin:no00no11", 2, True),
        ("fullshift:3", 3, True),
        ("fullshift_sft:2", 3, True),
        ("forbid:101", 2, True),
        ("skeleton:4", 4, False),
    ],
)
def test_builtin_spec(name, size, sft):
    spec = builtin_spec(name)
    assert spec.size == size
    assert spec.is_sft == sft


@pytest.mark.parametrize("name", ["nope", "fullshift:0", "skeleton:2", "forbid:12"])
def test_bad_builtin(name):
    with pytest.raises(ManifestError):
        builtin_spec(name)


def test_inline_entries():
    found = parse_manifest(
        ["golden_mean", {"alphabet": 2, "forbidden": [{"word": "00"}]}]
    )
    assert len(found.targets) == 2
    second = found.targets[1]
    assert second.name == "target2"
    assert second.is_sft
    assert second.all_patterns() == [partial_pattern.from_word("00", 2)]


def test_two_dimensional_entry():
    spec = parse_entry(
        {
            "alphabet": 2,
            "dimension": 2,
            "forbidden": [{"cells": [[[0, 0], 1], [[0, 1], 1]]}],
            "name": "no_vertical_11",
        }
    )
    assert spec.name == "no_vertical_11"
    assert spec.first(1)[0].as_dict() == {(0, 0): 1, (0, 1): 1}


def test_code_entry():
    spec = parse_entry({"code": [2, 1, 8, 9, 5]})
    assert spec.size == 2
    assert spec.sft_bound == 3
    with pytest.raises(ManifestError, match="header"):
        parse_entry({"code": [2]})


@pytest.mark.parametrize(
    "entry",
    [
        {"dimension": 1},
        {"alphabet": 2, "dimension": 2, "forbidden": [{"word": "11"}]},
        {"alphabet": 2, "forbidden": [{"letters": "11"}]},
        3,
    ],
)
def test_bad_entries(entry):
    with pytest.raises(ManifestError):
        parse_entry(entry)


@pytest.mark.parametrize(
    "doc",
    [
        {"layers": {"x": "golden_mean"}},
        {"targets": ["golden_mean"], "caps": {"foo": 1}},
        {"k": 4},
        12,
    ],
)
def test_bad_manifests(doc):
    with pytest.raises(ManifestError):
        parse_manifest(doc)


def test_layers_and_options():
    found = parse_manifest(
        {"layers": {"2": "no00no11"}, "k": 3, "caps": {"max_windows": 4096}}
    )
    assert found.k == 3
    assert found.caps == {"max_windows": 4096}
    bundle = build_bundle(found)
    assert bundle.params.k == 3
    assert bundle.max_windows == 4096
    assert bundle.registry.first(3) == [2]


def test_load_json_errors(tmp_path):
    with pytest.raises(ManifestError, match="cannot read"):
        load_json(str(tmp_path / "missing.json"))
    with pytest.raises(ManifestError, match="not valid JSON"):
        load_json(_write(tmp_path, "bad.json", "{"))


def test_read_spec(tmp_path):
    assert read_spec(_write(tmp_path, "gm.json", '"golden_mean"')).name == "golden_mean"
    inline = {"alphabet": 2, "forbidden": [{"word": "11"}]}
    layered = _write(tmp_path, "layers.json", {"layers": {"3": inline}})
    assert read_spec(layered).name == "layer3"


def test_read_bounds(tmp_path):
    assert read_bounds(_write(tmp_path, "b.json", [2, 1])) == {1: 2, 2: 1}
    assert read_bounds(_write(tmp_path, "m.json", {"3": 4})) == {3: 4}
    with pytest.raises(ManifestError):
        read_bounds(_write(tmp_path, "s.json", '"oops"'))


def test_bundle_round_trip(tmp_path):
    doc = {"targets": ["golden_mean", "no00no11"], "k": 4}
    bundle = build_bundle(parse_manifest(doc), max_layer=3)
    path = str(tmp_path / "bundle.json")
    record = save_bundle(bundle, doc, path, 3)
    assert record["assignment"] == {"1": 1, "2": 2, "3": 2}
    assert is_bundle(path)
    assert not is_bundle(_write(tmp_path, "doc.json", doc))
    back = load_bundle(path)
    assert back.max_layer == 3
    assert back.to_json(3) == bundle.to_json(3)
    with pytest.raises(ManifestError, match="not a bundle"):
        load_bundle(_write(tmp_path, "plain.json", doc))
