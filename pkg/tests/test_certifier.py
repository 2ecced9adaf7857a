import numpy as np
import pytest

import univshift
from univshift.certify.certifier import (
    build_B,
    certifier,
    claim_record,
    enumerate_simulated,
    pattern_bound,
    r_b,
    verify_claim,
)
from univshift.errors import NotSFT
from univshift.layers.decode import L_n
from univshift.layers.windows import layered_windows
from univshift.layers.skeleton import skeleton
from univshift.operators.builtin import identity_machine
from univshift.operators.machine import oracle_machine
from univshift.operators.registry import operator_registry
from univshift.symbolic.subshift import forbid_words
from univshift.symbolic.windows import local_windows, window_source
from univshift.universal.builder import build_layered


class slow_identity(oracle_machine):
    """Identity asking its cell fifteen times."""

    name = "slow_identity"
    oblivious = True

    def program(self, n):
        if n < 2:
            return 2 if n == 0 else 1
        answer = 0
        for _ in range(15):
            answer = yield n
        return answer


def _family():
    return [univshift.golden_mean(), univshift.fullshift_sft(2), univshift.no00no11()]


@pytest.mark.parametrize("b, d, r", [(1, 1, 4), (2, 1, 6), (1, 2, 14)])
def test_r_b(b, d, r):
    assert r_b(b, d) == r


def test_pattern_bound():
    assert pattern_bound(univshift.golden_mean()) == 2
    assert pattern_bound(univshift.fullshift(2)) == 1
    assert list(build_B(_family())) == [(1, 2), (2, 1), (3, 2)]
    with pytest.raises(NotSFT):
        pattern_bound(skeleton(4).spec())


def test_identity_claims():
    registry = operator_registry.from_list([identity_machine()])
    X = univshift.golden_mean()
    found = enumerate_simulated(X, registry, _family(), max_tuples=20)
    assert found == [claim_record(2, 0, 1, 2), claim_record(1, 0, 2, 3)]
    assert all(c.i != 3 for c in found)


def test_claims_are_recorded_once():
    registry = operator_registry.from_list([identity_machine()])
    search = certifier(univshift.golden_mean(), registry, _family())
    emitted = list(search.run(20))
    assert search.examined == 20
    assert search.records == emitted
    assert emitted[0].to_json() == {"i": 2, "n": 0, "b": 1, "j": 2, "status": "claimed"}


def test_verify_claim():
    registry = operator_registry.from_list([identity_machine()])
    X = univshift.golden_mean()
    assert verify_claim(claim_record(1, 0, 2, 3), X, registry, _family())
    assert not verify_claim(claim_record(1, 0, 2, 2), X, registry, _family())
    assert not verify_claim(claim_record(3, 0, 2, 5), X, registry, _family())
    assert not verify_claim(claim_record(1, 4, 2, 5), X, registry, _family())
    assert not verify_claim(claim_record(9, 0, 2, 5), X, registry, _family())


def test_exhausted_tuples_are_retried():
    registry = operator_registry.from_list([slow_identity()])
    search = certifier(
        univshift.golden_mean(), registry, [univshift.golden_mean()], step_budget=10
    )
    assert list(search.run(10)) == [claim_record(1, 0, 2, 3)]
    assert search._budget[(1, 0, 2, 3)] == 20


def test_no_targets():
    registry = operator_registry.from_list([identity_machine()])
    assert enumerate_simulated(univshift.golden_mean(), registry, []) == []


def test_bundle_claims_its_layer():
    bundle = build_layered(skeleton(4), {1: univshift.golden_mean()})
    search = certifier.from_bundle(bundle, [univshift.golden_mean()])
    assert search.modulus(1, 2) == 30
    assert list(search.run(40)) == [claim_record(1, 1, 2, 31)]


class empty_windows(window_source):
    """Partial source that never supplies a window."""

    def _build(self, radius, depth):
        return np.zeros((0, 2 * radius + 1), dtype=np.int64)


class exhaustive_empty_windows(empty_windows):
    exhaustive = True


@pytest.mark.slow
def test_bundle_claims_only_its_targets():
    bundle = build_layered(skeleton(4), {1: univshift.golden_mean()})
    search = certifier.from_bundle(bundle, _family())
    claims = list(search.run(120))
    assert claims == [claim_record(2, 1, 1, 19), claim_record(1, 1, 2, 31)]
    assert all(c.i != 3 for c in search.records)


def test_bundle_checks_other_operators_on_all_windows():
    bundle = build_layered(skeleton(4), {1: univshift.golden_mean()})
    registry = operator_registry.from_list([identity_machine(), L_n(skeleton(4), 1)])
    no_adjacent_c1 = forbid_words(["33"], 4)
    search = certifier.from_bundle(bundle, [no_adjacent_c1], registry=registry)
    assert isinstance(search.windows(0), local_windows)
    assert isinstance(search.windows(1), layered_windows)
    assert isinstance(bundle.operator_windows(L_n(skeleton(3), 1)), local_windows)
    # a layer 1 group "L 0 1 1 0 R" holds two adjacent C1 cells
    assert list(search.run(6)) == []
    assert search.examined == 6
    assert (0, 2, 3) in search._images


def test_empty_windows_claim_only_when_exhaustive():
    registry = operator_registry.from_list([identity_machine()])
    X = univshift.golden_mean()
    found = enumerate_simulated(
        X, registry, [X], max_tuples=6, windows=lambda n: empty_windows(X)
    )
    assert found == []
    found = enumerate_simulated(
        X, registry, [X], max_tuples=6, windows=lambda n: exhaustive_empty_windows(X)
    )
    assert found == [claim_record(1, 0, 2, 1)]


def test_empty_subshift_claims_vacuously():
    empty = forbid_words(["0", "1"], 2, "empty")
    registry = operator_registry.from_list([identity_machine()])
    found = enumerate_simulated(empty, registry, [univshift.no00no11()], max_tuples=5)
    assert found == [claim_record(1, 0, 2, 3)]
