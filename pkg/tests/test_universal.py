import pytest

import univshift
from univshift.layers.decode import layer_decoder
from univshift.layers.skeleton import skeleton
from univshift.symbolic.subshift import pattern_stream
from univshift.symbolic.words import sft_language
from univshift.types import partial_pattern, words_as_strings
from univshift.universal.assignment import assign_layers
from univshift.universal.builder import build_layered, build_universal_1d, dovetail


def _words(*texts):
    return [partial_pattern.from_word(t, 2) for t in texts]


def test_dovetail_is_fair():
    base = pattern_stream(_words("0", "00", "000"), "base")
    layers = {
        1: pattern_stream(_words("1"), "one"),
        2: pattern_stream(_words("11", "111"), "two"),
    }
    merged = dovetail(base, layers.get, 2)
    assert merged.prefix(10) == _words("0", "1", "00", "11", "000", "111")


def test_assignment_recodes_previous_target():
    layers = assign_layers([univshift.golden_mean(), univshift.fullshift_sft(2)])
    assert layers.table(4) == {1: 1, 2: 2, 3: 2, 4: 2}
    assert layers.first_layer(2) == 2


def test_assignment_waits_for_large_alphabets():
    layers = assign_layers([univshift.fullshift_sft(4), univshift.golden_mean()])
    assert layers.table(5) == {1: None, 2: None, 3: 1, 4: 2, 5: 2}
    assert layers.first_layer(2) == 4
    assert layers.spec_of(1) is None


def test_assignment_of_a_stream():
    layers = assign_layers(lambda i: univshift.fullshift_sft(i))
    # fullshift_sft(i) has i + 1 letters
    assert layers.table(4) == {1: 1, 2: 2, 3: 3, 4: 4}


def test_layered_registry():
    bundle = build_layered(skeleton(4), {2: univshift.no00no11()})
    assert bundle.registry.first(5) == [2]
    m = bundle.registry[2]
    assert isinstance(m, layer_decoder)
    assert m.layer == 2
    assert bundle.to_json(3)["assignment"] == {"1": None, "2": 1}


def test_layered_no00no11_language():
    bundle = build_layered(skeleton(4), {2: univshift.no00no11()})
    found = bundle.decoded_language(2, 4)
    assert words_as_strings(found) == ["0101", "1010"]


def test_universal_golden_mean_language():
    bundle = build_universal_1d([univshift.golden_mean()], skeleton(4), 2)
    found = bundle.decoded_language(1, 4)
    assert len(found) == 8
    assert all("11" not in w for w in words_as_strings(found))


def test_universal_record():
    bundle = build_universal_1d([univshift.golden_mean()], skeleton(4), 2)
    record = bundle.to_json(4, 2)
    assert record["k"] == 4
    assert record["assignment"] == {"1": 1, "2": 1}
    assert record["registry"] == [
        {"index": 1, "operator": "L1"},
        {"index": 2, "operator": "L2"},
    ]
    assert len(record["forbidden"]) == 2


def test_canonical_letters():
    bundle = build_layered(skeleton(4), {2: univshift.no00no11()})
    assert bundle.canonical(2) == (0, 1)
    assert bundle.canonical(1) == (0,)


@pytest.mark.parametrize("k", [3, 5])
def test_other_k(k):
    bundle = build_layered(skeleton(k), {1: univshift.golden_mean()})
    assert len(bundle.decoded_language(1, 3)) == 5


@pytest.mark.parametrize("layer, letters", [(1, ["0", "1"]), (2, ["0", "1", "2", "3"])])
def test_layer_decoders_are_onto(layer, letters):
    bundle = build_layered(skeleton(4), {1: univshift.golden_mean()})
    found = bundle.decoded_language(layer, 1)
    assert words_as_strings(found) == letters


def test_layers_are_independent():
    bundle = build_layered(skeleton(4), {1: univshift.golden_mean()})
    found = bundle.decoded_language(2, 2)
    assert len(found) == 16


def test_universal_two_targets_share_a_bundle():
    targets = [univshift.golden_mean(), univshift.no00no11()]
    bundle = build_universal_1d(targets, skeleton(4), 2)
    assert bundle.to_json(2)["assignment"] == {"1": 1, "2": 2}
    for layer, target in zip([1, 2], targets):
        found = words_as_strings(bundle.decoded_language(layer, 4))
        assert found == words_as_strings(sft_language(target, 4))
