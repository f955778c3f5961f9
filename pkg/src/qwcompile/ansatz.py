"""Hardware-efficient ansatz construction and random product-state ensembles.

The single-layer HEA puts RY(theta_i) then RZ(theta_{n+i}) on every qubit,
a CX entangling block, then a final RY/RZ rotation layer (4n independent
parameters in total). Linear entanglement chains neighbours CX(i, i+1);
full entanglement applies CX(i, j) for every pair i < j.

Probe states are products of Haar-like single-qubit states
RZ(lambda) RY(phi) RZ(theta) |0> with all 3n angles i.i.d. uniform on
(-pi, pi].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .costs import CompilationProblem
from .simulator import Gate, ParamCircuit, StateVector

ENTANGLEMENTS = ("linear", "full")


@dataclass(frozen=True)
class EnsembleSpec:
    """How probe states are drawn: size, fixed vs. per-step resampling, seed."""

    n: int
    size: int
    mode: str = "fixed"  # "fixed" | "resampled"
    seed: int = 0

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("ensemble size must be >= 1")
        if self.mode not in ("fixed", "resampled"):
            raise ValueError(f"unknown ensemble mode {self.mode!r}")


def build_hea(n: int, entanglement: str) -> ParamCircuit:
    """Single-layer hardware-efficient ansatz with 4n parameters."""
    if n < 2:
        raise ValueError("HEA needs n >= 2")
    if entanglement not in ENTANGLEMENTS:
        raise ValueError(f"entanglement must be one of {ENTANGLEMENTS}")
    gates = [Gate("RY", (i,), param_index=i) for i in range(n)]
    gates += [Gate("RZ", (i,), param_index=n + i) for i in range(n)]
    if entanglement == "linear":
        gates += [Gate("CX", (i, i + 1)) for i in range(n - 1)]
    else:
        gates += [
            Gate("CX", (i, j)) for i in range(n) for j in range(i + 1, n)
        ]
    gates += [Gate("RY", (i,), param_index=2 * n + i) for i in range(n)]
    gates += [Gate("RZ", (i,), param_index=3 * n + i) for i in range(n)]
    return ParamCircuit(n, tuple(gates), 4 * n)


def _single_qubit_state(theta: float, phi: float, lam: float) -> np.ndarray:
    """RZ(lam) RY(phi) RZ(theta) |0> as two amplitudes."""
    # RZ(theta)|0> only adds a phase e^{-i theta/2}; kept for exactness.
    a = np.exp(-1j * theta / 2) * np.cos(phi / 2)
    b = np.exp(-1j * theta / 2) * np.sin(phi / 2)
    return np.array([a * np.exp(-1j * lam / 2), b * np.exp(1j * lam / 2)])


def uniform_angles(rng: np.random.Generator, count: int) -> np.ndarray:
    """i.i.d. uniform on (-pi, pi]."""
    return np.pi - rng.uniform(0.0, 2.0 * np.pi, size=count)


def random_product_ensemble(spec: EnsembleSpec, rng: np.random.Generator) -> list[StateVector]:
    """Draw ``spec.size`` random product states, deterministic under the rng."""
    states = []
    for _ in range(spec.size):
        angles = uniform_angles(rng, 3 * spec.n).reshape(spec.n, 3)
        amps = np.array([1.0 + 0.0j])
        for q in range(spec.n):
            theta, phi, lam = angles[q]
            # qubit q becomes bit q of the index: kron puts it on the fast axis
            amps = np.kron(_single_qubit_state(theta, phi, lam), amps)
        states.append(StateVector(spec.n, amps))
    return states


def make_problem(
    n: int,
    entanglement: str,
    k: int,
    ensemble_spec: EnsembleSpec,
    seed: int,
) -> CompilationProblem:
    """Target/ansatz pair sharing one HEA structure with independent params.

    Because the target is the same circuit at different parameters, a perfect
    compilation (average fidelity 1) is always attainable.
    """
    circuit = build_hea(n, entanglement)
    rng = np.random.default_rng([int(seed), 0x9E3779B9])
    target_params = uniform_angles(rng, circuit.param_count)
    initial_params = uniform_angles(rng, circuit.param_count)
    if ensemble_spec.n != n:
        raise ValueError(f"ensemble spec has n={ensemble_spec.n}, problem has n={n}")
    ensemble = random_product_ensemble(
        ensemble_spec, np.random.default_rng([int(ensemble_spec.seed), 0x517CC1B7])
    )
    return CompilationProblem(
        n=n,
        target=circuit,
        target_params=target_params,
        ansatz=circuit,
        initial_params=initial_params,
        ensemble=ensemble,
        k=k,
    )
