import numpy as np
import pytest

import univshift
from univshift.codecs.nat import encode_config, nat_stream, serialize_bits
from univshift.errors import NotBit
from univshift.layers.skeleton import C0, C1, LB, RB, skeleton
from univshift.operators.machine import run_operator
from univshift.symbolic.configuration import periodic
from univshift.types import partial_pattern
from univshift.universal.packing import (
    gamma_decoder,
    pack_binary,
    packed_spec,
    serialization_violations,
    unpack_operator,
)


def test_pack_binary_layout():
    params = skeleton(4)
    c = pack_binary(params, [1, 0])
    assert [c(x) for x in range(6)] == [LB, C1, C1, C1, C1, RB]
    # cells 6..11 form the layer 2 left bracket
    assert c(6) == LB
    assert c(30) == C0


@pytest.mark.parametrize("seed", range(20))
def test_unpack_inverts_pack(seed):
    params = skeleton(4)
    bits = np.random.default_rng(seed).integers(0, 2, size=4).tolist()
    w = encode_config(pack_binary(params, nat_stream.from_values(bits)))
    psi = unpack_operator(params)
    assert [run_operator(psi, w, i) for i in range(3)] == bits[:3]


def test_pack_rejects_non_bits():
    c = pack_binary(skeleton(4), [2])
    with pytest.raises(NotBit):
        c(1)


def test_gamma_decoder():
    bits = serialize_bits(nat_stream.from_values([2, 1, 0, 5]))
    m = gamma_decoder()
    assert [run_operator(m, bits, n) for n in range(4)] == [2, 1, 0, 5]


def test_serialization_violations():
    params = skeleton(4)
    first = serialization_violations(params, univshift.golden_mean())[0]
    # the prefix "1" decodes to a header 0
    assert dict(first.cells) == {(0,): LB, (1,): C1, (5,): RB}


def test_build_KS_recovers_configuration():
    params = skeleton(4)
    spec = univshift.golden_mean()
    KS, psi = univshift.build_KS(spec, params)
    assert KS.size == 4
    assert KS.dimension == 1
    config = encode_config(periodic([0, 1, 0], 2))
    packed = encode_config(pack_binary(params, serialize_bits(config)))
    assert [run_operator(psi, packed, n) for n in range(4)] == config.prefix(4)


def test_packed_spec_forbids_mixed_layers():
    params = skeleton(4)
    spec = packed_spec(params)
    # layer 1 coding cells 1 and 2 may not disagree
    mixed = partial_pattern({(0,): LB, (1,): C0, (2,): C1, (5,): RB}, 4, 1)
    assert spec.first(2)[1] == mixed
