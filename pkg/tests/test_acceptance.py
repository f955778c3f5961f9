"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``. The training-based
criteria (5-8) take several minutes each on a single core.
"""

import numpy as np

from qwcompile import (
    EnsembleSpec,
    StateVector,
    TrainingConfig,
    circuit_unitary,
    compile_circuit,
    cost_gradient,
    make_problem,
    qwc_cost,
    qwc_gradient,
    solve_simplex,
    w1_distance,
)
from qwcompile.costs import average_fidelity, hst_cost, let_cost
from qwcompile.experiments import ExperimentConfig, run_compile, run_sweep_k
from qwcompile.lp import LinearProgram

from _helpers import lp_vertex_enumeration, pure_state_trace_norm, random_state


def _report(index: int, name: str, ok: bool) -> None:
    print(f"\nACCEPTANCE {index} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {index} ({name}) failed"


def test_criterion_1_gradient_oracle():
    """Shift-rule gradients match central finite differences on 100 instances."""
    h = 1e-5
    worst = 0.0
    rng = np.random.default_rng(11)
    for trial in range(100):
        seed = int(rng.integers(0, 2**31 - 1))
        problem = make_problem(3, "full", 2, EnsembleSpec(3, 4, "fixed", seed), seed)
        params = problem.initial_params
        grads = {
            "qwc": qwc_gradient(problem, params).grad,
            "hst": cost_gradient(problem, params, "hst").grad,
            "let": cost_gradient(problem, params, "let").grad,
        }
        fns = {
            "qwc": lambda p: qwc_cost(problem, p),
            "hst": lambda p: hst_cost(
                circuit_unitary(problem.ansatz, p), problem.target_unitary()
            ),
            "let": lambda p: let_cost(problem, p),
        }
        for kind in ("qwc", "hst", "let"):
            for i in range(problem.ansatz.param_count):
                shifted = params.copy()
                shifted[i] += h
                up = fns[kind](shifted)
                shifted[i] -= 2 * h
                down = fns[kind](shifted)
                worst = max(worst, abs(grads[kind][i] - (up - down) / (2 * h)))
    _report(1, f"gradient vs finite differences, max err {worst:.2e}", worst < 1e-5)


def test_criterion_2_lp_oracle_and_w1_invariants():
    """Simplex matches vertex enumeration on 200 LPs; W1 solutions obey invariants."""
    rng = np.random.default_rng(22)
    ok = True
    for _ in range(200):
        rows = int(rng.integers(1, 5))
        cols = int(rng.integers(1, 9))
        A = rng.normal(size=(rows, cols))
        b = rng.uniform(0.1, 2.0, size=rows)
        c = rng.normal(size=cols)
        if (A.max(axis=0) <= 0).any():
            c = -np.abs(c)  # keep bounded when some variable is unconstrained
        sol = solve_simplex(LinearProgram(c, A, b))
        if sol.status != "optimal":
            continue
        ok &= abs(sol.objective_value - lp_vertex_enumeration(c, A, b)) <= 1e-8
        ok &= bool((A @ sol.x <= b + 1e-9).all() and (sol.x >= -1e-12).all())
    # W1 constraint satisfaction and sparsity on random state pairs
    for _ in range(40):
        n = int(rng.integers(2, 5))
        est = w1_distance(random_state(rng, n), random_state(rng, n), n)
        ok &= len(est.hamiltonian.terms) <= n
        per_qubit = np.zeros(n)
        for p, w in est.hamiltonian.terms:
            for q in p.support:
                per_qubit[q] += abs(w)
        ok &= bool((per_qubit <= 0.5 + 1e-9).all())
    _report(2, "simplex vs vertex enumeration + W1 invariants", ok)


def test_criterion_3_w1_metric_properties():
    """Symmetry, triangle, k-monotonicity, trace-norm bound on 1000 pairs."""
    rng = np.random.default_rng(33)
    ok = True
    pairs_done = 0
    while pairs_done < 1000:
        for n in (2, 3, 4):
            a, b, c = (random_state(rng, n) for _ in range(3))
            prev = 0.0
            for k in range(1, n + 1):
                ab = w1_distance(a, b, k).value
                ok &= w1_distance(b, a, k).value <= ab + 1e-8  # symmetry
                ok &= ab >= prev - 1e-8  # monotone in k
                prev = ab
            bc = w1_distance(b, c, n).value
            ac = w1_distance(a, c, n).value
            ok &= ac <= ab + bc + 1e-8  # triangle at k = n
            ok &= ab <= n / 2 * pure_state_trace_norm(a, b) + 1e-8
            pairs_done += 1
    _report(3, "W1 metric properties on 1000 pairs", ok)


def test_criterion_4_spot_values():
    zero = StateVector.basis(1, 0)
    one = StateVector.basis(1, 1)
    plus = StateVector(1, np.array([1.0, 1.0]) / np.sqrt(2))
    ok = abs(w1_distance(zero, one, 1).value - 1.0) < 1e-9
    ok &= abs(w1_distance(zero, plus, 1).value - 0.5) < 1e-9
    identity = np.eye(2)
    for theta in np.linspace(-np.pi, np.pi, 41):
        rz = np.diag([np.exp(-1j * theta / 2), np.exp(1j * theta / 2)])
        ok &= abs(hst_cost(identity, rz) - (1 - np.cos(theta / 2) ** 2)) < 1e-12
    pauli_z = np.diag([1.0, -1.0])
    ok &= abs(average_fidelity(identity, pauli_z) - 1.0 / 3.0) < 1e-12
    _report(4, "closed-form spot values", ok)


def _training_records(n: int, cost_kind: str, seeds=range(10), early_stop=True):
    records = []
    for seed in seeds:
        problem = make_problem(
            n, "full", -(-n // 2), EnsembleSpec(n, 8, "fixed", 1000 + seed), 1000 + seed
        )
        config = TrainingConfig(
            cost_kind=cost_kind, max_steps=1000, early_stop=early_stop
        )
        records.append(compile_circuit(problem, config))
    return records


def test_criterion_5_qwc_training_success():
    """QWC success rate >= 60% at n=3,4 and successful runs reach 1-F <= 1e-6.

    Success is judged by the cost after 1000 steps. The infidelity clause is
    about where successful runs converge, so trajectories continue to their
    plateau (capped at 2500 steps; the tight variance threshold only stops a
    run once its cost history is essentially flat) before 1-F is read off.
    A successful run can still be mid-descent at exactly step 1000.
    """
    ok = True
    rates = {}
    for n in (3, 4):
        successes = []
        for seed in range(10):
            problem = make_problem(
                n, "full", -(-n // 2), EnsembleSpec(n, 8, "fixed", 1000 + seed), 1000 + seed
            )
            config = TrainingConfig(
                cost_kind="qwc",
                max_steps=2500,
                early_stop=True,
                early_stop_variance=1e-20,
            )
            record = compile_circuit(problem, config)
            cost_at_1000 = (
                record.costs[1000] if len(record.costs) > 1000 else record.final_cost
            )
            if cost_at_1000 < 1e-3:
                successes.append(record)
        rates[n] = len(successes) / 10
        ok &= rates[n] >= 0.6
        ok &= all(r.infidelity <= 1e-6 for r in successes)
    _report(5, f"QWC success rates {rates}", ok)


def test_criterion_6_hst_always_succeeds():
    ok = True
    rates = {}
    for n in (3, 4):
        records = _training_records(n, "hst")
        rates[n] = sum(r.success for r in records) / len(records)
        ok &= rates[n] == 1.0
    _report(6, f"HST success rates {rates}", ok)


def test_criterion_7_barren_plateau_trend():
    """Mean step-1 l2 grad norm: HST/LET shrink >= 5x from n=3 to n=6; QWC <= 3x."""
    runs = 50
    means = {kind: {} for kind in ("qwc", "hst", "let")}
    for n in (3, 6):
        k = -(-n // 2)
        for kind in means:
            norms = []
            for r in range(runs):
                seed = 5000 + 97 * n + 13 * r
                problem = make_problem(
                    n, "full", k, EnsembleSpec(n, 8, "fixed", seed), seed
                )
                if kind == "qwc":
                    report = qwc_gradient(problem, problem.initial_params)
                else:
                    report = cost_gradient(problem, problem.initial_params, kind)
                norms.append(report.l2_norm)
            means[kind][n] = float(np.mean(norms))
    ratios = {kind: means[kind][3] / means[kind][6] for kind in means}
    ok = ratios["hst"] >= 5.0 and ratios["let"] >= 5.0 and ratios["qwc"] <= 3.0
    _report(7, f"barren-plateau ratios n3/n6 {ratios}", ok)


def test_criterion_8_k_sweep_trend(tmp_path):
    config = ExperimentConfig.from_dict(
        {
            "experiment": "sweep_k",
            "seed": 8,
            "out": str(tmp_path),
            "n": 4,
            "entanglement": "full",
            "k_range": [1, 4],
            "runs": 10,
            "ensemble_size": 8,
            "max_steps": 1000,
            "early_stop": True,
        }
    )
    (path,) = run_sweep_k(config)
    rates = {}
    with open(path) as fh:
        next(fh)
        for line in fh:
            _, _, k, rate, _ = line.strip().split(",")
            rates[int(k)] = float(rate)
    ok = rates[4] >= rates[1]
    _report(8, f"k-sweep success rates {rates}", ok)


def test_criterion_9_determinism(tmp_path):
    manifest = {
        "experiment": "compile",
        "seed": 9,
        "n": 3,
        "k": 2,
        "runs": 2,
        "ensemble_size": 4,
        "max_steps": 40,
        "cost_kinds": ["qwc", "hst"],
    }
    outputs = []
    for rep in ("a", "b"):
        config = ExperimentConfig.from_dict({**manifest, "out": str(tmp_path / rep)})
        outputs.append(run_compile(config))
    ok = True
    for pa, pb in zip(*outputs):
        with open(pa, "rb") as fa, open(pb, "rb") as fb:
            ok &= fa.read() == fb.read()
    _report(9, "byte-identical rerun from one manifest", ok)
