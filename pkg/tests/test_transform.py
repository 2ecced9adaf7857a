import pytest

import univshift
from univshift.errors import AlphabetTooLarge
from univshift.layers.skeleton import C0, C1, LB, RB, skeleton
from univshift.layers.transform import letter_pattern, transform_forbidden
from univshift.symbolic.words import matches


def test_letter_pattern_layer_one():
    params = skeleton(4)
    p = letter_pattern(params, 1, {0: 1, 1: 1})
    assert dict(p.cells) == {(0,): LB, (1,): C1, (5,): RB, (13,): C1}


def test_golden_mean_on_layer_one():
    params = skeleton(4)
    stream = transform_forbidden(params, 1, univshift.golden_mean())
    assert stream.prefix(5) == [letter_pattern(params, 1, {0: 1, 1: 1})]


def test_unused_letters_forbidden_first():
    params = skeleton(4)
    first = transform_forbidden(params, 2, univshift.golden_mean())[0]
    # letter 2 is the bits 1, 0 in the first two real cells of the group
    assert dict(first.cells) == {
        (0,): LB,
        (5,): RB,
        (6,): LB,
        (66,): RB,
        (18,): C1,
        (19,): C0,
    }


def test_pattern_occurs_in_generated_word():
    params = skeleton(4)
    first = transform_forbidden(params, 2, univshift.golden_mean())[0]
    tables = params.bits_from_hex("0" * 12 + "8", 2)
    assert matches(first, list(params.generate(2, tables)), 0)
    assert not matches(first, list(params.generate(2)), 0)


def test_alphabet_too_large():
    with pytest.raises(AlphabetTooLarge):
        transform_forbidden(skeleton(4), 1, univshift.fullshift_sft(2))
