"""Compilation cost functions and fidelity measures.

Three costs over a (target, ansatz) pair:

* QWC: mean squared k-local W1 distance between ansatz and target outputs
  over the probe-state ensemble;
* HST: 1 - |Tr(V' U)|^2 / 4^n from the full unitary matrices;
* LET: 1 minus the ensemble-average survival probability |<psi|V'U|psi>|^2.

Reported "infidelity" is 1 minus the exact average fidelity
(2^n + |Tr(V'U)|^2) / (4^n + 2^n).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import ObservableSet, enumerate_k_local
from .simulator import (
    DimensionMismatchError,
    ParamCircuit,
    StateVector,
    apply_circuit,
    circuit_unitary,
)
from .wasserstein import W1Estimate, solve_w1

COST_KINDS = ("qwc", "hst", "let")


@dataclass
class CompilationProblem:
    """A target circuit (with fixed params), an ansatz, probe states and k.

    Target-side quantities that never change during training (output states,
    Pauli expectation table, full unitary) are cached lazily.
    """

    n: int
    target: ParamCircuit
    target_params: np.ndarray
    ansatz: ParamCircuit
    initial_params: np.ndarray
    ensemble: list[StateVector]
    k: int
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.target_params = np.asarray(self.target_params, dtype=float)
        self.initial_params = np.asarray(self.initial_params, dtype=float)
        if self.target.n != self.n or self.ansatz.n != self.n:
            raise DimensionMismatchError("target/ansatz qubit count differs from n")
        if not self.ensemble:
            raise ValueError("ensemble must contain at least one state")
        if any(s.n != self.n for s in self.ensemble):
            raise DimensionMismatchError("ensemble state dimension mismatch")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}")

    @property
    def observables(self) -> ObservableSet:
        return enumerate_k_local(self.n, self.k)

    def target_states(self) -> list[StateVector]:
        """V|psi> for every ensemble state (cached)."""
        if "target_states" not in self._cache:
            self._cache["target_states"] = [
                apply_circuit(self.target, self.target_params, s) for s in self.ensemble
            ]
        return self._cache["target_states"]

    def target_expectation_table(self) -> np.ndarray:
        """(|A| x M) exact target-side Pauli expectations (cached)."""
        if "target_exps" not in self._cache:
            obs = self.observables
            self._cache["target_exps"] = np.array(
                [obs.expectations(s) for s in self.target_states()]
            )
        return self._cache["target_exps"]

    def target_unitary(self) -> np.ndarray:
        if "target_unitary" not in self._cache:
            self._cache["target_unitary"] = circuit_unitary(self.target, self.target_params)
        return self._cache["target_unitary"]

    def replace_ensemble(self, ensemble: list[StateVector]) -> None:
        """Swap in fresh probe states (resampled mode); drops state caches."""
        if any(s.n != self.n for s in ensemble) or not ensemble:
            raise DimensionMismatchError("bad replacement ensemble")
        self.ensemble = ensemble
        self._cache.pop("target_states", None)
        self._cache.pop("target_exps", None)


def w1_estimates(problem: CompilationProblem, params) -> list[W1Estimate]:
    """Per-ensemble-state W1 estimates between ansatz and target outputs."""
    obs = problem.observables
    table = problem.target_expectation_table()
    out = []
    for idx, psi in enumerate(problem.ensemble):
        gen = apply_circuit(problem.ansatz, params, psi)
        c = obs.expectations(gen) - table[idx]
        out.append(solve_w1(c, obs))
    return out


def qwc_cost(problem: CompilationProblem, params) -> float:
    """Mean over the ensemble of squared k-local W1 distances."""
    ests = w1_estimates(problem, params)
    return float(np.mean([e.value**2 for e in ests]))


def hst_cost(U: np.ndarray, V: np.ndarray) -> float:
    """1 - |Tr(V' U)|^2 / 4^n; zero iff U = V up to global phase."""
    U = np.asarray(U)
    V = np.asarray(V)
    if U.shape != V.shape or U.shape[0] != U.shape[1]:
        raise DimensionMismatchError(f"unitary shapes differ: {U.shape} vs {V.shape}")
    dim = U.shape[0]
    overlap = abs(np.trace(V.conj().T @ U)) ** 2
    return float(1.0 - overlap / dim**2)


def average_fidelity(U: np.ndarray, V: np.ndarray) -> float:
    """Haar-average fidelity (2^n + |Tr(V' U)|^2) / (4^n + 2^n)."""
    U = np.asarray(U)
    V = np.asarray(V)
    if U.shape != V.shape or U.shape[0] != U.shape[1]:
        raise DimensionMismatchError(f"unitary shapes differ: {U.shape} vs {V.shape}")
    dim = U.shape[0]
    overlap = abs(np.trace(V.conj().T @ U)) ** 2
    return float((dim + overlap) / (dim**2 + dim))


def let_cost(problem: CompilationProblem, params) -> float:
    """1 - mean_psi |<psi|V'U|psi>|^2 over the ensemble."""
    total = 0.0
    for psi, tgt in zip(problem.ensemble, problem.target_states()):
        gen = apply_circuit(problem.ansatz, params, psi)
        total += abs(np.vdot(tgt.amplitudes, gen.amplitudes)) ** 2
    return float(1.0 - total / len(problem.ensemble))


def set_average_fidelity(problem: CompilationProblem, params) -> float:
    """Mean of |<psi|V'U|psi>|^2 over the probe-state set."""
    return 1.0 - let_cost(problem, params)


def problem_infidelity(problem: CompilationProblem, params) -> float:
    """1 minus the exact average fidelity of ansatz(params) vs target."""
    U = circuit_unitary(problem.ansatz, np.asarray(params, dtype=float))
    return 1.0 - average_fidelity(U, problem.target_unitary())
