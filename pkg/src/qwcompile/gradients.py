"""Analytic cost gradients via the parameter-shift rule.

Every parameter feeds RY/RZ gates (generators with eigenvalues +-1/2), so
each gate occurrence contributes [f(+pi/2) - f(-pi/2)] / 2 with only that
occurrence's angle shifted. The QWC gradient freezes the LP-optimal
Wasserstein Hamiltonian per probe state (envelope argument) and
differentiates only the evolved-state expectation; the LP is not re-solved
inside shift evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .costs import CompilationProblem, average_fidelity, w1_estimates
from .simulator import (
    ParamCircuit,
    ROTATION_KINDS,
    StateVector,
    apply_circuit,
    circuit_unitary,
)
from .wasserstein import WassersteinHamiltonian

SHIFT = np.pi / 2


class UnsupportedGeneratorError(ValueError):
    """A differentiated parameter is attached to a non-rotation gate."""


@dataclass
class GradientReport:
    grad: np.ndarray
    l1_norm: float
    l2_norm: float

    @classmethod
    def from_grad(cls, grad: np.ndarray) -> "GradientReport":
        grad = np.asarray(grad, dtype=float)
        return cls(grad, float(np.abs(grad).sum()), float(np.linalg.norm(grad)))


def _occurrences(circuit: ParamCircuit, index: int) -> list[int]:
    """Gate positions fed by parameter ``index``; validates the generators."""
    positions = []
    for pos, gate in enumerate(circuit.gates):
        if gate.param_index == index:
            if gate.kind not in ROTATION_KINDS:
                raise UnsupportedGeneratorError(
                    f"parameter {index} feeds a {gate.kind} gate; shift rule needs RY/RZ"
                )
            positions.append(pos)
    return positions


def shift_rule_expectation_grad(
    circuit: ParamCircuit,
    params,
    input_state: StateVector,
    observable: WassersteinHamiltonian,
    index: int,
) -> float:
    """d/d theta_index of <psi|U(theta)' H U(theta)|psi>, summed over occurrences."""
    total = 0.0
    for pos in _occurrences(circuit, index):
        plus = observable.expectation(
            apply_circuit(circuit, params, input_state, gate_shifts={pos: SHIFT})
        )
        minus = observable.expectation(
            apply_circuit(circuit, params, input_state, gate_shifts={pos: -SHIFT})
        )
        total += (plus - minus) / 2.0
    return total


def qwc_gradient(problem: CompilationProblem, params) -> GradientReport:
    """Gradient of the QWC cost: mean over states of 2 * W1 * dW1/dtheta.

    Per state, dW1/dtheta is the shift-rule derivative of the frozen
    Wasserstein-Hamiltonian expectation on the evolved probe state.
    """
    params = np.asarray(params, dtype=float)
    grad = np.zeros(problem.ansatz.param_count)
    size = len(problem.ensemble)
    for psi, est in zip(problem.ensemble, w1_estimates(problem, params)):
        if est.value == 0.0 or not est.hamiltonian.terms:
            continue
        for i in range(problem.ansatz.param_count):
            dw1 = shift_rule_expectation_grad(
                problem.ansatz, params, psi, est.hamiltonian, i
            )
            grad[i] += 2.0 * est.value * dw1 / size
    return GradientReport.from_grad(grad)


def _hst_overlap(problem: CompilationProblem, params, gate_shifts=None) -> float:
    """|Tr(V' U)|^2 / 4^n for the shifted ansatz."""
    U = circuit_unitary(problem.ansatz, params, gate_shifts=gate_shifts)
    dim = U.shape[0]
    return abs(np.trace(problem.target_unitary().conj().T @ U)) ** 2 / dim**2


def _let_survival(problem: CompilationProblem, params, gate_shifts=None) -> float:
    """Mean |<psi|V'U|psi>|^2 for the shifted ansatz."""
    total = 0.0
    for psi, tgt in zip(problem.ensemble, problem.target_states()):
        gen = apply_circuit(problem.ansatz, params, psi, gate_shifts=gate_shifts)
        total += abs(np.vdot(tgt.amplitudes, gen.amplitudes)) ** 2
    return total / len(problem.ensemble)


def cost_gradient(problem: CompilationProblem, params, cost_kind: str) -> GradientReport:
    """Shift-rule gradient of the HST or LET cost.

    Both costs are 1 minus an expectation of an involutive observable in the
    appropriate (doubled or probe-state) space, so per-occurrence shifts are
    exact.
    """
    if cost_kind not in ("hst", "let"):
        raise ValueError(f"cost_kind must be 'hst' or 'let', got {cost_kind!r}")
    fidelity_term = _hst_overlap if cost_kind == "hst" else _let_survival
    params = np.asarray(params, dtype=float)
    grad = np.zeros(problem.ansatz.param_count)
    for i in range(problem.ansatz.param_count):
        total = 0.0
        for pos in _occurrences(problem.ansatz, i):
            plus = fidelity_term(problem, params, gate_shifts={pos: SHIFT})
            minus = fidelity_term(problem, params, gate_shifts={pos: -SHIFT})
            total += (plus - minus) / 2.0
        grad[i] = -total  # cost = 1 - fidelity term
    return GradientReport.from_grad(grad)
