import numpy as np
import pytest

from univshift.codecs.nat import encode_config
from univshift.errors import NoCompleteCell
from univshift.layers.decode import L_n, phi_code, phi_n, resolve_operator
from univshift.layers.skeleton import parse_letters, skeleton
from univshift.operators.machine import run_operator
from univshift.symbolic.configuration import periodic


def _period(params, depth, bits):
    return list(params.generate(depth, bits))


def test_phi_1():
    params = skeleton(4)
    w = _period(params, 1, params.bits_from_hex("b", 1))
    assert phi_n(params, 1, (w * 2)[:13]) == 1
    assert phi_n(params, 1, (w * 2)[6:19]) == 1


def test_phi_2_reads_most_significant_first():
    params = skeleton(4)
    layer2 = np.zeros((1, 24), dtype=int)
    layer2[0, 0] = 1
    w = _period(params, 2, [np.zeros((12, 4), dtype=int), layer2])
    assert phi_n(params, 2, (w * 2)[:145]) == 2


def test_phi_needs_complete_cell():
    params = skeleton(4)
    with pytest.raises(NoCompleteCell):
        phi_n(params, 1, parse_letters("000000"))
    assert phi_code(params, 1)(tuple(parse_letters("0" * 13))) == 0


def test_L1_on_configuration():
    params = skeleton(4)
    w = encode_config(periodic(params.generate(1, params.bits_from_hex("b", 1)), 4))
    m = L_n(params, 1)
    assert m.oblivious
    assert m.describe() == {"name": "L1", "params": {"k": 4, "layer": 1}}
    assert [run_operator(m, w, n) for n in range(4)] == [2, 1, 1, 1]


def test_L1_reads_every_group():
    params = skeleton(4)
    bits = params.bits_from_hex("8" + "0" * 11, 2)
    w = encode_config(periodic(params.generate(2, bits), 4))
    m = L_n(params, 1)
    assert [run_operator(m, w, n) for n in range(5)] == [2, 1, 1, 0, 0]


def test_decode_rows_matches_phi():
    params = skeleton(4)
    m = L_n(params, 1)
    rows = []
    for text in ["b", "4", "f"]:
        period = _period(params, 1, params.bits_from_hex(text, 1))
        rows.append(period * 3)
    table = np.array(rows)
    out = m.decode_rows(table, rows[0], [6, 18, 29])
    assert out[:, 0].tolist() == [1, 0, 1]
    assert out[:, 0].tolist() == out[:, 2].tolist()


def test_resolve_operator():
    params = skeleton(4)
    assert resolve_operator("L3", params).layer == 3
    assert resolve_operator("identity", params).name == "identity"
    with pytest.raises(Exception, match="Unknown operator"):
        resolve_operator("L", params)
