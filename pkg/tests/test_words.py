import numpy as np
import pytest

import univshift
from univshift.errors import HeaderMismatch, WindowTooSmall
from univshift.symbolic.block_code import block_code
from univshift.symbolic.subshift import forbid_words, pattern_stream, subshift
from univshift.symbolic.words import (
    admissible_blocks,
    admissible_words,
    apply_block_code,
    avoid_mask,
    find_admissible,
    matches,
    periodic_point,
    sft_language,
    subsample,
)
from univshift.types import partial_pattern, word, words_as_strings


def test_golden_mean_local_language():
    gm = univshift.golden_mean()
    words = admissible_words(gm, 3, 1)
    assert words_as_strings(words) == ["000", "001", "010", "100", "101"]


def test_golden_mean_sft_language():
    gm = univshift.golden_mean()
    assert len(sft_language(gm, 4)) == 8
    assert sft_language(gm, 4) == admissible_words(gm, 4, 1)


def test_no00no11_language():
    spec = univshift.no00no11()
    assert words_as_strings(sft_language(spec, 4)) == ["0101", "1010"]


def test_sft_language_drops_dead_ends():
    # "01" occurs locally but never extends to the right
    spec = forbid_words(["10", "11"], 2, "zeros_then_nothing")
    assert words_as_strings(admissible_words(spec, 2, 2)) == ["00", "01"]
    assert words_as_strings(sft_language(spec, 2)) == ["00"]


def test_fullshift_language():
    assert len(admissible_words(univshift.fullshift(2), 3, 0)) == 8


def test_depth_zero_keeps_everything():
    gm = univshift.golden_mean()
    assert len(admissible_words(gm, 3, 0)) == 8


def test_admissible_blocks_2d():
    # 2x2 blocks with no vertical "11"
    p = partial_pattern({(0, 0): 1, (0, 1): 1}, 2, 2)
    spec = subshift(2, 2, [p], sft=True, name="no_vertical_11")
    rows = admissible_blocks(spec, (2, 2), 1)
    assert len(rows) == 9


def test_matches():
    p = partial_pattern.from_word("11", 2)
    assert matches(p, [0, 1, 1], 1)
    assert not matches(p, [0, 1, 1], 0)


def test_avoid_mask():
    table = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    mask = avoid_mask(table, (3,), [partial_pattern.from_word("11", 2)])
    assert mask.tolist() == [False, True, False]


def test_find_admissible():
    assert find_admissible(univshift.no00no11(), 5, 2) == (0, 1, 0, 1, 0)
    assert find_admissible(forbid_words(["0", "1"], 2), 1, 2) is None


@pytest.mark.parametrize(
    "spec, period", [(univshift.golden_mean(), (0,)), (univshift.no00no11(), (0, 1))]
)
def test_periodic_point(spec, period):
    assert periodic_point(spec, 8) == period


def test_apply_block_code():
    xor = block_code.xor()
    assert apply_block_code(xor, [0, 1, 1, 0]) == (1, 1)
    with pytest.raises(WindowTooSmall):
        apply_block_code(xor, [0, 1])


def test_subsample():
    assert subsample(word([0, 1, 2, 3, 4, 5], 6), 2, 1) == (1, 3, 5)


def test_word_letters_checked():
    with pytest.raises(Exception, match="outside alphabet"):
        word([0, 2], 2)


def test_header_mismatch():
    bad = subshift(2, 1, [partial_pattern.from_word("2", 3)], sft=True)
    with pytest.raises(HeaderMismatch):
        bad.first(1)


def test_pattern_stream_padding_and_laziness():
    pulled = []

    def source():
        for w in ["0", "11", "101"]:
            pulled.append(w)
            yield partial_pattern.from_word(w, 2)

    stream = pattern_stream(source, "three")
    assert stream[0] == partial_pattern.from_word("0", 2)
    assert pulled == ["0"]
    assert stream[10] == partial_pattern.from_word("101", 2)
    assert stream.exhausted
    assert len(stream.prefix(10)) == 3


def test_sft_needs_finite_source():
    with pytest.raises(Exception, match="finite list"):
        subshift(2, 1, lambda: iter([]), sft=True)
