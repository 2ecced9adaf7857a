import numpy as np
import pytest

import univshift
from univshift.common import core
from univshift.errors import CapExceeded
from univshift.layers.decode import L_n
from univshift.layers.skeleton import skeleton
from univshift.operators.builtin import header_machine, identity_machine
from univshift.operators.machine import oracle_machine, run_operator
from univshift.operators.modulus import footprint_reach, modulus_of_continuity
from univshift.symbolic.subshift import forbid_words
from univshift.symbolic.windows import window_oracle
from univshift.symbolic.words import find_admissible


class peek_machine(oracle_machine):
    """Reads cell 1 only when cell 0 holds a 1."""

    name = "peek"

    def program(self, n):
        a = yield 2
        if a == 1:
            b = yield 3
            return b
        return a


def test_identity_golden_mean():
    found = modulus_of_continuity(identity_machine(), 6, univshift.golden_mean())
    assert found.ell == 2
    assert not found.vacuous
    assert found.max_cell == 2


def test_header_reads_nothing():
    found = modulus_of_continuity(header_machine(), 1, univshift.golden_mean())
    assert found.ell == 0


def test_adaptive_machine_is_run_on_windows():
    found = modulus_of_continuity(peek_machine(), 0, univshift.golden_mean())
    # level 0 fails on the window "1", level 1 has the five golden mean words
    assert found.ell == 1
    assert found.words_tested == 7
    assert found.max_cell == 1
    assert found.to_json()["levels"] == 2


def test_vacuous_level():
    empty = forbid_words(["0", "1"], 2, "empty")
    found = modulus_of_continuity(identity_machine(), 8, empty)
    assert found.vacuous
    assert found.ell == 2


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        modulus_of_continuity(
            identity_machine(), 6, univshift.golden_mean(), core(max_modulus_i=1)
        )


def test_layer_decoder_reach():
    assert footprint_reach(L_n(skeleton(4), 1), 6, 1) == 30


def test_cells_outside_modulus_never_matter():
    spec = univshift.golden_mean()
    m = identity_machine()
    r = 6
    ell = modulus_of_continuity(m, r, spec).ell
    radius = 8
    base = np.array(find_admissible(spec, 2 * radius + 1, 1))
    rng = np.random.default_rng(3)
    outside = [p for p in range(2 * radius + 1) if abs(p - radius) > ell]
    oracle = window_oracle(base, (len(base),), 2)
    expected = [run_operator(m, oracle, n) for n in range(r + 1)]
    for _ in range(20):
        mutated = base.copy()
        flips = rng.choice(outside, size=3, replace=False)
        mutated[flips] ^= 1
        oracle = window_oracle(mutated, (len(mutated),), 2)
        assert [run_operator(m, oracle, n) for n in range(r + 1)] == expected
