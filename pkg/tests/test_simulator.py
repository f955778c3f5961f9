import numpy as np
import pytest

from qwcompile import Gate, ParamCircuit, StateVector, apply_circuit, circuit_unitary, fidelity_pure
from qwcompile.simulator import DimensionMismatchError, ResourceLimitError

from _helpers import random_circuit, random_state


def test_empty_circuit_is_identity():
    circ = ParamCircuit(2, (), 0)
    out = apply_circuit(circ, [], StateVector.zero(2))
    assert np.allclose(out.amplitudes, StateVector.zero(2).amplitudes)


def test_rz_zero_angle_preserves_state():
    rng = np.random.default_rng(1)
    circ = ParamCircuit(2, (Gate("RZ", (0,), param_index=0),), 1)
    psi = random_state(rng, 2)
    out = apply_circuit(circ, [0.0], psi)
    assert fidelity_pure(out, psi) == pytest.approx(1.0, abs=1e-12)


def test_ry_pi_flips_zero_to_one():
    # RY(pi) = [[0, -1], [1, 0]] by direct 2x2 evaluation
    circ = ParamCircuit(1, (Gate("RY", (0,), angle=np.pi),), 0)
    out = apply_circuit(circ, [], StateVector.zero(1))
    assert abs(out.amplitudes[1]) == pytest.approx(1.0, abs=1e-12)


def test_unitary_empty_circuit():
    U = circuit_unitary(ParamCircuit(1, (), 0), [])
    assert np.allclose(U, np.eye(2))


def test_unitary_cx_permutation():
    # control 0, target 1, little-endian: swaps basis indices 1 (=|01>) and 3
    U = circuit_unitary(ParamCircuit(2, (Gate("CX", (0, 1)),), 0), [])
    perm = np.eye(4)[:, [0, 3, 2, 1]]
    assert np.allclose(U, perm)


def test_unitary_rz_diagonal():
    theta = 0.7
    U = circuit_unitary(ParamCircuit(1, (Gate("RZ", (0,), angle=theta),), 0), [])
    expected = np.diag([np.exp(-1j * theta / 2), np.exp(1j * theta / 2)])
    assert np.allclose(U, expected, atol=1e-12)


def test_fidelity_examples():
    zero = StateVector.zero(1)
    one = StateVector.basis(1, 1)
    plus = StateVector(1, np.array([1, 1]) / np.sqrt(2))
    assert fidelity_pure(zero, zero) == pytest.approx(1.0)
    assert fidelity_pure(zero, one) == pytest.approx(0.0, abs=1e-15)
    assert fidelity_pure(zero, plus) == pytest.approx(0.5, abs=1e-12)


def test_norm_preserved_on_1000_random_circuits():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        circ, params = random_circuit(rng, n, int(rng.integers(1, 25)))
        out = apply_circuit(circ, params, random_state(rng, n))
        worst = max(worst, abs(out.norm() - 1.0))
    assert worst < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_unitarity_random_circuits(n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        circ, params = random_circuit(rng, n, 20)
        U = circuit_unitary(circ, params)
        assert np.max(np.abs(U.conj().T @ U - np.eye(1 << n))) < 1e-10


def test_composition_matches_sequential_application():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        c1, p1 = random_circuit(rng, n, 8)
        c2, p2 = random_circuit(rng, n, 8)
        psi = random_state(rng, n)
        combined = apply_circuit(c1 + c2, np.concatenate([p1, p2]), psi)
        sequential = apply_circuit(c2, p2, apply_circuit(c1, p1, psi))
        assert np.allclose(combined.amplitudes, sequential.amplitudes, atol=1e-12)


def test_input_state_not_modified():
    circ = ParamCircuit(1, (Gate("RY", (0,), angle=1.0),), 0)
    psi = StateVector.zero(1)
    before = psi.amplitudes.copy()
    apply_circuit(circ, [], psi)
    assert np.array_equal(psi.amplitudes, before)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("CX", (1, 1))
    with pytest.raises(ValueError):
        Gate("RY", (0,))  # needs angle or param_index
    with pytest.raises(ValueError):
        Gate("RY", (0,), angle=1.0, param_index=0)
    with pytest.raises(ValueError):
        Gate("H", (0,))


def test_circuit_validation():
    with pytest.raises(ValueError):
        ParamCircuit(1, (Gate("RY", (0,), param_index=1),), 1)  # index out of range
    with pytest.raises(ValueError):
        ParamCircuit(1, (Gate("RY", (0,), angle=0.5),), 1)  # param 0 unreferenced
    with pytest.raises(ValueError):
        ParamCircuit(1, (Gate("CX", (0, 1)),), 0)  # qubit 1 out of range


def test_dimension_errors():
    circ = ParamCircuit(2, (Gate("RY", (0,), param_index=0),), 1)
    with pytest.raises(DimensionMismatchError):
        apply_circuit(circ, [0.1, 0.2], StateVector.zero(2))
    with pytest.raises(DimensionMismatchError):
        apply_circuit(circ, [0.1], StateVector.zero(3))
    with pytest.raises(DimensionMismatchError):
        fidelity_pure(StateVector.zero(1), StateVector.zero(2))


def test_unitary_qubit_cap():
    circ = ParamCircuit(11, tuple(Gate("RY", (i,), param_index=0) for i in range(11)), 1)
    with pytest.raises(ResourceLimitError):
        circuit_unitary(circ, [0.1])
