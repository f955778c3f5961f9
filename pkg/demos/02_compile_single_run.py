"""Compile one random 3-qubit target with the QWC cost, then with HST.

The target and ansatz share one hardware-efficient circuit structure with
independent parameters, so a perfect compilation always exists. The QWC
cost is the ensemble average of squared W1 distances between generator and
target outputs on random product probe states; the Hilbert-Schmidt test
(HST) compares the full unitaries. Both are minimized with ADAM and
parameter-shift gradients.
"""

from qwcompile import EnsembleSpec, TrainingConfig, compile_circuit, make_problem

N = 3            # qubits
K = 2            # Pauli locality bound for the W1 dual
ENSEMBLE = 8     # number of random product probe states
SEED = 42

for cost_kind in ("qwc", "hst"):
    problem = make_problem(N, "full", K, EnsembleSpec(N, ENSEMBLE, "fixed", SEED), SEED)
    config = TrainingConfig(cost_kind=cost_kind, max_steps=400, early_stop=True)
    record = compile_circuit(problem, config)

    print(f"\n--- {cost_kind.upper()} run (n={N}, k={K}, |A|={ENSEMBLE}) ---")
    for step in range(0, len(record.costs), 50):
        print(f"step {step:4d}  cost {record.costs[step]:.3e}  "
              f"|grad|_2 {record.grad_l2[step]:.3e}")
    print(f"stopped after {record.steps_run} steps ({record.stop_reason})")
    print(f"final cost       {record.final_cost:.3e}")
    print(f"infidelity 1-F   {record.infidelity:.3e}")
    print(f"success (<1e-3)  {record.success}")
