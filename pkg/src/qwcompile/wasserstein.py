"""LP estimation of the k-local quantum W1 distance between pure states.

The dual form maximizes sum_m w_m c_m over signed weights w_m, where
c_m = <a|P_m|a> - <b|P_m|b> ranges over the k-local Pauli set and the
weights obey the per-qubit Lipschitz proxy constraint

    sum_{m : qubit i in support(P_m)} |w_m| <= 1/2   for every qubit i.

Each signed weight is split as w_m = u_m - v_m with u, v >= 0, giving a
standard-form LP with 2M variables and n constraints. The optimizer's
weighted Pauli sum is the Wasserstein Hamiltonian (the discriminator); at a
vertex it has at most n non-zero ("active") terms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .lp import LinearProgram, LpSolution, solve_simplex
from .pauli import ObservableSet, PauliString, enumerate_k_local, pauli_expectation
from .simulator import DimensionMismatchError, StateVector

#: weights below this magnitude are treated as zero when extracting terms
ACTIVE_WEIGHT_TOL = 1e-9


@dataclass
class WassersteinHamiltonian:
    """Sparse weighted Pauli sum H = sum_m w_m P_m."""

    n: int
    terms: tuple[tuple[PauliString, float], ...]

    def expectation(self, state: StateVector) -> float:
        """<state|H|state> as the weighted sum of Pauli expectations."""
        return sum(w * pauli_expectation(state, p) for p, w in self.terms)

    def to_json(self) -> str:
        return json.dumps(
            [{"pauli": p.letters, "weight": w} for p, w in self.terms]
        )

    @classmethod
    def from_json(cls, n: int, text: str) -> "WassersteinHamiltonian":
        data = json.loads(text)
        terms = tuple(
            (PauliString(n, entry["pauli"]), float(entry["weight"])) for entry in data
        )
        return cls(n, terms)


@dataclass
class W1Estimate:
    """LP optimum ``value`` with its maximizing Hamiltonian and the c_m vector."""

    value: float
    hamiltonian: WassersteinHamiltonian
    expectation_diffs: np.ndarray


def expectation_differences(
    gen_state: StateVector,
    tgt_state: StateVector | None,
    obs: ObservableSet,
    target_expectations: np.ndarray | None = None,
) -> np.ndarray:
    """c_m = <gen|P_m|gen> - <tgt|P_m|tgt> for every string in the set.

    If ``target_expectations`` is given, the target-side values are reused
    instead of recomputed (``tgt_state`` may then be None); the training loop
    caches them once per fixed ensemble state.
    """
    gen = obs.expectations(gen_state)
    if target_expectations is not None:
        tgt = np.asarray(target_expectations, dtype=float)
        if tgt.shape != gen.shape:
            raise DimensionMismatchError(
                f"cached target expectations have shape {tgt.shape}, expected {gen.shape}"
            )
    else:
        if tgt_state is None:
            raise ValueError("need a target state or cached target expectations")
        tgt = obs.expectations(tgt_state)
    return gen - tgt


def build_w1_lp(c: np.ndarray, obs: ObservableSet) -> LinearProgram:
    """The W1 dual as a standard-form LP via the split w_m = u_m - v_m.

    Variables are [u_1..u_M, v_1..v_M]; qubit i's constraint row sums
    u_m + v_m over strings supported on i with bound 1/2.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (len(obs.strings),):
        raise ValueError(f"c has shape {c.shape}, expected ({len(obs.strings)},)")
    incidence = obs.support_matrix()
    A = np.hstack([incidence, incidence])
    b = np.full(obs.n, 0.5)
    objective = np.concatenate([c, -c])
    return LinearProgram(objective, A, b)


def solve_w1(c: np.ndarray, obs: ObservableSet) -> W1Estimate:
    """Solve the W1 dual LP for a given expectation-difference vector."""
    lp = build_w1_lp(c, obs)
    sol = solve_simplex(lp)
    if sol.status != "optimal":
        raise RuntimeError(f"W1 LP ended with status {sol.status!r}; it must be bounded")
    m = len(obs.strings)
    weights = sol.x[:m] - sol.x[m:]
    terms = tuple(
        (obs.strings[i], float(weights[i]))
        for i in np.nonzero(np.abs(weights) > ACTIVE_WEIGHT_TOL)[0]
    )
    value = max(float(sol.objective_value), 0.0)
    return W1Estimate(value, WassersteinHamiltonian(obs.n, terms), np.asarray(c, dtype=float))


def w1_distance(state_a: StateVector, state_b: StateVector, k: int) -> W1Estimate:
    """k-local W1 estimate between two pure states (a is the rho side)."""
    if state_a.n != state_b.n:
        raise DimensionMismatchError(f"qubit counts differ: {state_a.n} vs {state_b.n}")
    obs = enumerate_k_local(state_a.n, k)
    c = expectation_differences(state_a, state_b, obs)
    return solve_w1(c, obs)
