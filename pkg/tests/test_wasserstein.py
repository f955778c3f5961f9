import json

import numpy as np
import pytest

from qwcompile import (
    StateVector,
    WassersteinHamiltonian,
    build_w1_lp,
    enumerate_k_local,
    expectation_differences,
    w1_distance,
)
from qwcompile.simulator import DimensionMismatchError

from _helpers import pure_state_trace_norm, random_state


def plus_state():
    return StateVector(1, np.array([1, 1]) / np.sqrt(2))


def test_expectation_differences_identical_states():
    rng = np.random.default_rng(0)
    obs = enumerate_k_local(2, 2)
    psi = random_state(rng, 2)
    assert np.allclose(expectation_differences(psi, psi, obs), 0.0, atol=1e-14)


def test_expectation_differences_zero_vs_one():
    obs = enumerate_k_local(1, 1)
    c = expectation_differences(StateVector.zero(1), StateVector.basis(1, 1), obs)
    assert np.allclose(c, [0.0, 0.0, 2.0], atol=1e-14)


def test_expectation_differences_bounds():
    rng = np.random.default_rng(1)
    obs = enumerate_k_local(3, 2)
    for _ in range(10):
        c = expectation_differences(random_state(rng, 3), random_state(rng, 3), obs)
        assert (np.abs(c) <= 2 + 1e-12).all()


def test_expectation_differences_uses_cache():
    rng = np.random.default_rng(2)
    obs = enumerate_k_local(2, 1)
    gen, tgt = random_state(rng, 2), random_state(rng, 2)
    cached = obs.expectations(tgt)
    direct = expectation_differences(gen, tgt, obs)
    via_cache = expectation_differences(gen, None, obs, target_expectations=cached)
    assert np.array_equal(direct, via_cache)


def test_build_w1_lp_shape():
    obs = enumerate_k_local(1, 1)
    lp = build_w1_lp(np.zeros(3), obs)
    assert lp.A.shape == (1, 6)
    assert lp.b[0] == pytest.approx(0.5)
    assert lp.c.shape == (6,)


def test_w1_zero_for_identical_states():
    rng = np.random.default_rng(3)
    psi = random_state(rng, 2)
    assert w1_distance(psi, psi, 2).value == pytest.approx(0.0, abs=1e-12)


def test_w1_spot_values():
    zero, one = StateVector.zero(1), StateVector.basis(1, 1)
    assert w1_distance(zero, one, 1).value == pytest.approx(1.0, abs=1e-9)
    assert w1_distance(zero, plus_state(), 1).value == pytest.approx(0.5, abs=1e-9)


def test_hamiltonian_invariants():
    rng = np.random.default_rng(4)
    for _ in range(25):
        n = int(rng.integers(2, 5))
        est = w1_distance(random_state(rng, n), random_state(rng, n), n)
        ham = est.hamiltonian
        assert len(ham.terms) <= n
        per_qubit = np.zeros(n)
        for p, w in ham.terms:
            assert abs(w) > 1e-9
            for i in p.support:
                per_qubit[i] += abs(w)
        assert (per_qubit <= 0.5 + 1e-9).all()
        # value equals sum of weights times expectation diffs
        obs = enumerate_k_local(n, n)
        index = {p.letters: i for i, p in enumerate(obs.strings)}
        recovered = sum(w * est.expectation_diffs[index[p.letters]] for p, w in ham.terms)
        assert est.value == pytest.approx(recovered, abs=1e-9)


def test_symmetry():
    rng = np.random.default_rng(5)
    for _ in range(15):
        n = int(rng.integers(2, 5))
        a, b = random_state(rng, n), random_state(rng, n)
        k = int(rng.integers(1, n + 1))
        assert w1_distance(a, b, k).value == pytest.approx(
            w1_distance(b, a, k).value, abs=1e-9
        )


def test_triangle_inequality():
    rng = np.random.default_rng(6)
    for _ in range(15):
        n = int(rng.integers(2, 4))
        a, b, c = (random_state(rng, n) for _ in range(3))
        k = int(rng.integers(1, n + 1))
        ab = w1_distance(a, b, k).value
        bc = w1_distance(b, c, k).value
        ac = w1_distance(a, c, k).value
        assert ac <= ab + bc + 1e-8


def test_monotone_in_k():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(2, 5))
        a, b = random_state(rng, n), random_state(rng, n)
        values = [w1_distance(a, b, k).value for k in range(1, n + 1)]
        for lo, hi in zip(values, values[1:]):
            assert lo <= hi + 1e-9


def test_trace_norm_containment():
    rng = np.random.default_rng(8)
    for _ in range(15):
        n = int(rng.integers(2, 5))
        a, b = random_state(rng, n), random_state(rng, n)
        bound = n / 2 * pure_state_trace_norm(a, b)
        assert w1_distance(a, b, n).value <= bound + 1e-8


def test_w1_can_vanish_for_distinct_states():
    # k-local blindness: GHZ vs its phase flip agree on all 1-local expectations
    ghz = StateVector(2, np.array([1, 0, 0, 1]) / np.sqrt(2))
    ghz_minus = StateVector(2, np.array([1, 0, 0, -1]) / np.sqrt(2))
    assert w1_distance(ghz, ghz_minus, 1).value == pytest.approx(0.0, abs=1e-9)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        w1_distance(StateVector.zero(1), StateVector.zero(2), 1)


def test_hamiltonian_json_roundtrip():
    est = w1_distance(StateVector.zero(1), StateVector.basis(1, 1), 1)
    text = est.hamiltonian.to_json()
    data = json.loads(text)
    assert all(set(entry) == {"pauli", "weight"} for entry in data)
    back = WassersteinHamiltonian.from_json(1, text)
    assert [(p.letters, w) for p, w in back.terms] == [
        (p.letters, w) for p, w in est.hamiltonian.terms
    ]
