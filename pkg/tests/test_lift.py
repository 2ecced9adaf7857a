import numpy as np

from univshift.codecs.nat import encode_config
from univshift.layers.skeleton import skeleton
from univshift.operators.machine import run_operator
from univshift.symbolic.configuration import periodic_2d
from univshift.universal.lift import (
    axis_constant_lift,
    decode_rowwise,
    lifted_decoder,
    vertical_patterns,
)


def _rows(params, *texts):
    return [list(params.generate(1, params.bits_from_hex(t, 1))) for t in texts]


def test_vertical_patterns():
    found = vertical_patterns()
    assert len(found) == 10
    assert all(p.shape() == (1, 2) for p in found)


def test_lift_keeps_row_patterns_on_one_row():
    params = skeleton(4)
    lifted = axis_constant_lift(params.spec())
    assert lifted.dimension == 2
    first = lifted.first(12)
    assert first[:10] == vertical_patterns()
    assert all(c[1] == 0 for p in first[10:] for c, _ in p.cells)


def test_lifted_decoder():
    params = skeleton(4)
    rows = _rows(params, "b", "4")
    w = encode_config(periodic_2d(rows, 4))
    m = lifted_decoder(params, 1)
    assert [run_operator(m, w, n) for n in range(5)] == [2, 2, 1, 1, 0]


def test_decode_rowwise():
    params = skeleton(4)
    rows = _rows(params, "b", "4")
    window = np.array([r * 2 for r in rows]).T
    assert decode_rowwise(params, 1, window, [6]).tolist() == [[1], [0]]
