import itertools

import pytest

import univshift
from univshift.codecs.nat import (
    beta1,
    beta1_inv,
    cantor_pair,
    cantor_unpair,
    decode_stream,
    encode_config,
    gamma_bits,
    gamma_read,
    m_join,
    m_meet,
    m_prepend,
    m_unjoin,
    nat_stream,
    serialize_bits,
    set_enumerator,
    z_coords,
    z_index,
)
from univshift.codecs.patterns import (
    decode_pattern,
    encode_pattern,
    square_completions,
)
from univshift.codecs.subshift_code import code_to_spec, spec_to_code
from univshift.errors import EmptySet, NoPatterns, ZeroAlphabet
from univshift.symbolic.configuration import periodic
from univshift.symbolic.words import admissible_words
from univshift.types import partial_pattern


def test_beta1_order():
    assert [beta1(n) for n in range(5)] == [0, 1, -1, 2, -2]
    assert all(beta1_inv(beta1(n)) == n for n in range(100))


def test_cantor():
    assert cantor_pair(1, 2) == 8
    assert cantor_unpair(8) == (1, 2)
    assert all(cantor_pair(*cantor_unpair(n)) == n for n in range(500))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_z_index_inverts_z_coords(d):
    assert all(z_index(z_coords(n, d)) == n for n in range(300))


def test_z_coords_spot_values():
    assert z_coords(0, 2) == (0, 0)
    assert z_coords(8, 2) == (1, -1)
    assert z_index(-2) == 4


def test_config_stream():
    w = encode_config(periodic([0, 1], 2))
    assert w.prefix(6) == [2, 1, 0, 1, 1, 0]
    c = decode_stream(w)
    assert [c(x) for x in range(-3, 4)] == [1, 0, 1, 0, 1, 0, 1]


def test_decode_stream_zero_alphabet():
    with pytest.raises(ZeroAlphabet):
        decode_stream(nat_stream.constant(0))


def test_join_and_prepend():
    a = nat_stream(lambda i: 2 * i)
    b = nat_stream(lambda i: 2 * i + 1)
    x = m_join(a, b)
    assert x.prefix(6) == [0, 1, 2, 3, 4, 5]
    even, odd = m_unjoin(x)
    assert even.prefix(4) == a.prefix(4)
    assert odd.prefix(4) == b.prefix(4)
    assert m_prepend(7, a).prefix(3) == [7, 0, 2]
    assert m_meet(a, b, 1).prefix(3) == [1, 1, 3]


def test_set_enumerator():
    assert set_enumerator([3, 5]).prefix(5) == [3, 5, 3, 5, 3]
    assert set_enumerator(iter([4, 6, 8])).prefix(6) == [4, 6, 8, 4, 6, 8]
    with pytest.raises(EmptySet):
        set_enumerator([])
    with pytest.raises(EmptySet):
        set_enumerator(iter([]))


def test_gamma():
    assert gamma_bits(0) == [1]
    assert gamma_bits(1) == [0, 1, 0]
    assert gamma_bits(2) == [0, 1, 1]
    bits = serialize_bits(nat_stream.from_values([2, 1, 0]))
    assert bits.prefix(7) == [0, 1, 1, 0, 1, 0, 1]
    assert gamma_read(bits, 3) == (1, 6)


def test_pattern_code_spot_values():
    assert encode_pattern(partial_pattern.from_word("1", 2)).code == 1
    assert encode_pattern(partial_pattern.from_word("101", 2, -1)).code == 7
    assert decode_pattern(7, 2, 1) == partial_pattern.from_word("101", 2, -1)


@pytest.mark.parametrize("size, d", [(2, 1), (3, 1), (2, 2)])
def test_pattern_code_bijection(size, d):
    codes = range(2000) if d == 1 else range(600)
    assert all(encode_pattern(decode_pattern(c, size, d)).code == c for c in codes)


def test_square_completions():
    done = list(square_completions(partial_pattern.from_word("11", 2)))
    words = ["".join(str(a) for _, a in p.cells) for p in done]
    assert words == ["110", "111", "011", "111"]


def test_golden_mean_code():
    assert spec_to_code(univshift.golden_mean()).prefix(8) == [2, 1, 8, 9, 5, 9, 9, 9]


def test_fullshift_has_no_code():
    with pytest.raises(NoPatterns):
        spec_to_code(univshift.fullshift(2))


@pytest.mark.parametrize(
    "spec",
    [univshift.golden_mean(), univshift.no00no11(), univshift.fullshift_sft(2)],
    ids=["golden_mean", "no00no11", "fullshift_sft"],
)
def test_code_preserves_language(spec):
    back = code_to_spec(spec_to_code(spec))
    # completions span three cells, so shorter words are not comparable
    for length, depth in itertools.product([3, 4, 5], [32]):
        assert admissible_words(back, length, depth) == admissible_words(
            spec, length, spec.sft_bound
        )


def test_code_to_spec_sft_bound():
    back = code_to_spec(nat_stream.from_values([2, 1, 9]), sft_bound=1)
    assert back.is_sft
    assert back.all_patterns() == [partial_pattern.from_word("111", 2, -1)]
