import numpy as np
import pytest

from univshift.errors import SizeMismatch
from univshift.layers.skeleton import (
    C0,
    C1,
    LB,
    RB,
    format_letters,
    parse_letters,
    skeleton,
)


@pytest.mark.parametrize(
    "k, n, m, kappa",
    [
        (3, 1, 10, 3),
        (3, 2, 100, 15),
        (4, 1, 12, 4),
        (4, 2, 144, 24),
        (4, 3, 1728, 144),
        (5, 3, 2744, 245),
    ],
)
def test_geometry(k, n, m, kappa):
    g = skeleton(k).geometry(n)
    assert (g.m, g.kappa, g.rho) == (m, kappa, m // 2)


@pytest.mark.parametrize("k", [2, 0, 3.5, "4"])
def test_bad_k(k):
    with pytest.raises(Exception, match="k must be an integer greater than 2"):
        skeleton(k)


def test_generate_depth_one():
    params = skeleton(4)
    bits = params.bits_from_hex("b", 1)
    assert format_letters(params.generate(1, bits)) == "L1011R000000"
    assert format_letters(params.generate(1, fill=LB)) == "L0000RLLLLLL"


def test_generate_depth_two_layout():
    params = skeleton(4)
    lay = params.layout(2)
    assert lay.length == 144
    assert len(lay.coding(1)) == 48
    assert len(lay.coding(2)) == 24
    # one layer 2 letter fills a whole level 1 slot
    assert lay.brackets(2).tolist() == list(range(6, 12)) + list(range(66, 72))
    assert params.groups_per_period(1, 2) == 12


def test_generated_words_are_valid():
    params = skeleton(4)
    bits = params.bits_from_hex("9" * 12 + "c5a", 2)
    w = list(params.generate(2, bits)) * 2
    assert params.check(w[:144], 2)
    for start in range(0, 144, 7):
        assert params.check(w[start : start + 30], 2)


def test_check_reports_violation():
    params = skeleton(4)
    found = params.check(parse_letters("L0R"), 1)
    assert not found
    assert found.to_json() == {
        "valid": False,
        "layer": 1,
        "position": 2,
        "rule": "coding-run",
    }
    assert params.check(parse_letters("L0000R"), 1).to_json() == {"valid": True}


def test_slot_must_be_uniform():
    params = skeleton(4)
    assert not params.check(parse_letters("L0000R00L000L"), 1)


def test_parse():
    params = skeleton(4)
    w = list(params.generate(1)) * 2
    found = params.parse(w, 1)
    assert found.valid
    assert found.assignment(0) == (1, "left-bracket")
    assert found.assignment(1) == (1, "coding")
    assert found.assignment(5) == (1, "right-bracket")
    assert found.assignment(6) == (None, "unresolved")
    assert [g.start for g in found.groups[1]] == [1, 13]
    assert all(g.complete for g in found.groups[1])


def test_letters():
    assert parse_letters("LB RB C0 C1") == (LB, RB, C0, C1)
    assert parse_letters("LR01") == (LB, RB, C0, C1)
    assert format_letters([LB, C1, RB]) == "L1R"
    with pytest.raises(Exception, match="not a skeleton letter"):
        parse_letters("LX")


def test_bits_from_hex():
    params = skeleton(4)
    tables = params.bits_from_hex("8", 2)
    assert tables[0].shape == (12, 4)
    assert tables[1].shape == (1, 24)
    assert tables[0][0].tolist() == [1, 0, 0, 0]
    with pytest.raises(SizeMismatch):
        params.bits_from_hex("ff", 1)
    with pytest.raises(SizeMismatch):
        params.bits_from_hex("zz", 1)


def test_generate_checks_bits():
    params = skeleton(4)
    with pytest.raises(SizeMismatch):
        params.generate(1, [np.zeros((2, 4))])
    with pytest.raises(SizeMismatch):
        params.generate(1, [np.full((1, 4), 2)])
    with pytest.raises(SizeMismatch):
        params.generate(2, [np.zeros((12, 4))])


def test_depth_for_length():
    params = skeleton(4)
    assert params.depth_for_length(1) == 1
    assert params.depth_for_length(12) == 2
    assert params.depth_for_length(13) == 3


def test_forbidden_words_are_minimal():
    params = skeleton(3)
    first = params.forbidden_stream().prefix(40)
    words = [tuple(a for _, a in p.cells) for p in first]
    assert all(len(a) <= len(b) for a, b in zip(words, words[1:]))
    for w in words:
        assert not params.check(w, params.depth_for_length(len(w)))
        if len(w) > 1:
            assert params.check(w[1:], params.depth_for_length(len(w) - 1))
            assert params.check(w[:-1], params.depth_for_length(len(w) - 1))
