"""Self-contained property checks, runnable from the CLI (`qwcompile verify`).

Each check prints one PASS/FAIL line; the runner returns the number of
failures. These mirror the repository test suite but ship with the package
so an installed copy can sanity-check itself.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .ansatz import EnsembleSpec, build_hea, make_problem, uniform_angles
from .costs import hst_cost, let_cost, qwc_cost
from .gradients import cost_gradient, qwc_gradient
from .lp import LinearProgram, solve_simplex
from .pauli import enumerate_k_local, k_local_count
from .simulator import (
    Gate,
    ParamCircuit,
    StateVector,
    apply_circuit,
    circuit_unitary,
)
from .wasserstein import w1_distance


def _random_circuit(rng: np.random.Generator, n: int, depth: int) -> tuple[ParamCircuit, np.ndarray]:
    gates = []
    params = []
    for _ in range(depth):
        kind = rng.choice(["RY", "RZ", "CX"])
        if kind == "CX" and n >= 2:
            q = rng.choice(n, size=2, replace=False)
            gates.append(Gate("CX", (int(q[0]), int(q[1]))))
        else:
            kind = rng.choice(["RY", "RZ"])
            gates.append(Gate(kind, (int(rng.integers(n)),), param_index=len(params)))
            params.append(float(uniform_angles(rng, 1)[0]))
    if not params:
        gates.append(Gate("RY", (0,), param_index=0))
        params.append(0.1)
    return ParamCircuit(n, tuple(gates), len(params)), np.array(params)


def _random_state(rng: np.random.Generator, n: int) -> StateVector:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


def check_simulator(rng: np.random.Generator, trials: int) -> bool:
    """Norm preservation and unitarity over random circuits."""
    for _ in range(trials):
        n = int(rng.integers(1, 6))
        circuit, params = _random_circuit(rng, n, int(rng.integers(1, 20)))
        out = apply_circuit(circuit, params, _random_state(rng, n))
        if abs(out.norm() - 1.0) > 1e-12:
            return False
    for _ in range(max(trials // 20, 3)):
        n = int(rng.integers(2, 7))
        circuit, params = _random_circuit(rng, n, 15)
        U = circuit_unitary(circuit, params)
        if np.max(np.abs(U.conj().T @ U - np.eye(1 << n))) > 1e-10:
            return False
    return True


def check_pauli_counts() -> bool:
    for n, k in [(1, 1), (4, 2), (8, 4)]:
        if len(enumerate_k_local(n, k)) != k_local_count(n, k):
            return False
    return len(enumerate_k_local(8, 4)) == 7458


def _vertex_enumeration_optimum(c, A, b) -> float:
    """Brute-force LP oracle: evaluate every basic feasible point."""
    rows, cols = A.shape
    G = np.vstack([A, -np.eye(cols)])
    h = np.concatenate([b, np.zeros(cols)])
    best = -np.inf
    for subset in itertools.combinations(range(rows + cols), cols):
        sub = G[list(subset)]
        if abs(np.linalg.det(sub)) < 1e-10:
            continue
        x = np.linalg.solve(sub, h[list(subset)])
        if (G @ x <= h + 1e-9).all():
            best = max(best, float(c @ x))
    return best


def check_lp(rng: np.random.Generator, trials: int) -> bool:
    for _ in range(trials):
        rows = int(rng.integers(1, 5))
        cols = int(rng.integers(1, 9))
        A = rng.normal(size=(rows, cols))
        b = rng.uniform(0.1, 2.0, size=rows)
        c = rng.normal(size=cols)
        if (A.max(axis=0) <= 0).any():
            c = -np.abs(c)  # keep the LP bounded when a variable is unconstrained
        lp = LinearProgram(c, A, b)
        sol = solve_simplex(lp)
        if sol.status != "optimal":
            continue
        if (A @ sol.x > b + 1e-9).any() or (sol.x < -1e-12).any():
            return False
        oracle = _vertex_enumeration_optimum(c, A, b)
        if abs(sol.objective_value - oracle) > 1e-8:
            return False
    return True


def check_w1_properties(rng: np.random.Generator, trials: int) -> bool:
    spot = w1_distance(StateVector.basis(1, 0), StateVector.basis(1, 1), 1)
    plus = StateVector(1, np.array([1, 1]) / np.sqrt(2))
    spot2 = w1_distance(StateVector.basis(1, 0), plus, 1)
    if abs(spot.value - 1.0) > 1e-9 or abs(spot2.value - 0.5) > 1e-9:
        return False
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        a, b, c = (_random_state(rng, n) for _ in range(3))
        values = {}
        for k in range(1, n + 1):
            values[k] = (
                w1_distance(a, b, k).value,
                w1_distance(b, c, k).value,
                w1_distance(a, c, k).value,
            )
            if w1_distance(b, a, k).value - values[k][0] > 1e-9:
                return False
            ab, bc, ac = values[k]
            if ac > ab + bc + 1e-8:
                return False
        for k in range(1, n):
            if values[k][0] > values[k + 1][0] + 1e-9:
                return False
        diff = np.outer(a.amplitudes, a.amplitudes.conj()) - np.outer(
            b.amplitudes, b.amplitudes.conj()
        )
        trace_norm = float(np.abs(np.linalg.eigvalsh(diff)).sum())
        if values[n][0] > n / 2 * trace_norm + 1e-8:
            return False
        # Wasserstein-Hamiltonian invariants at k = n
        est = w1_distance(a, b, n)
        if len(est.hamiltonian.terms) > n:
            return False
        per_qubit = np.zeros(n)
        for p, w in est.hamiltonian.terms:
            for i in p.support:
                per_qubit[i] += abs(w)
        if (per_qubit > 0.5 + 1e-9).any():
            return False
    return True


def check_gradients(rng: np.random.Generator, trials: int) -> bool:
    h = 1e-5
    for _ in range(trials):
        seed = int(rng.integers(0, 2**31 - 1))
        problem = make_problem(3, "full", 2, EnsembleSpec(3, 4, "fixed", seed), seed)
        params = problem.initial_params
        for kind in ("qwc", "hst", "let"):
            if kind == "qwc":
                grad = qwc_gradient(problem, params).grad
                cost_fn = lambda p: qwc_cost(problem, p)
            elif kind == "hst":
                grad = cost_gradient(problem, params, "hst").grad
                cost_fn = lambda p: hst_cost(
                    circuit_unitary(problem.ansatz, p), problem.target_unitary()
                )
            else:
                grad = cost_gradient(problem, params, "let").grad
                cost_fn = lambda p: let_cost(problem, p)
            for i in range(problem.ansatz.param_count):
                shifted = params.copy()
                shifted[i] += h
                up = cost_fn(shifted)
                shifted[i] -= 2 * h
                down = cost_fn(shifted)
                if abs(grad[i] - (up - down) / (2 * h)) > 1e-5:
                    return False
    return True


def check_hea_counts() -> bool:
    for n in range(2, 9):
        lin = build_hea(n, "linear")
        full = build_hea(n, "full")
        if lin.param_count != 4 * n or full.param_count != 4 * n:
            return False
        if sum(1 for g in lin.gates if g.kind != "CX") != 4 * n:
            return False
        if sum(1 for g in lin.gates if g.kind == "CX") != n - 1:
            return False
        if sum(1 for g in full.gates if g.kind == "CX") != math.comb(n, 2):
            return False
    return True


def run_verification(quick: bool = False, seed: int = 2024) -> int:
    """Run all checks; prints one line each, returns the failure count."""
    scale = 1 if quick else 5
    rng = np.random.default_rng(seed)
    checks = [
        ("simulator norm/unitarity", lambda: check_simulator(rng, 40 * scale)),
        ("k-local Pauli counts", check_pauli_counts),
        ("simplex vs vertex enumeration", lambda: check_lp(rng, 20 * scale)),
        ("W1 metric properties", lambda: check_w1_properties(rng, 4 * scale)),
        ("shift rule vs finite differences", lambda: check_gradients(rng, 2 * scale)),
        ("HEA gate counts", check_hea_counts),
    ]
    failures = 0
    for name, fn in checks:
        ok = fn()
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1
    return failures
