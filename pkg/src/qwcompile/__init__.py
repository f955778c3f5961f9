"""Variational quantum circuit compilation with a Wasserstein-distance cost.

The package trains a parameterized ansatz circuit to reproduce a target
unitary by minimizing the empirical quantum earth mover's (W1) distance
between the circuits' outputs on an ensemble of random product states.
The W1 distance is estimated through its dual linear program over k-local
Pauli observables; classical baselines (Hilbert-Schmidt test, Loschmidt
echo test) are provided for comparison.
"""

from .simulator import (
    Gate,
    ParamCircuit,
    StateVector,
    apply_circuit,
    circuit_unitary,
    fidelity_pure,
)
from .pauli import (
    ObservableSet,
    PauliString,
    enumerate_k_local,
    pauli_expectation,
    pauli_expectation_shots,
)
from .lp import LinearProgram, LpSolution, solve_simplex
from .wasserstein import (
    W1Estimate,
    WassersteinHamiltonian,
    build_w1_lp,
    expectation_differences,
    w1_distance,
)
from .costs import (
    CompilationProblem,
    average_fidelity,
    hst_cost,
    let_cost,
    qwc_cost,
    set_average_fidelity,
)
from .gradients import (
    GradientReport,
    cost_gradient,
    qwc_gradient,
    shift_rule_expectation_grad,
)
from .ansatz import EnsembleSpec, build_hea, make_problem, random_product_ensemble
from .optimize import (
    AdamState,
    TrainingConfig,
    TrainingRecord,
    adam_step,
    compile_circuit,
    early_stop_check,
)

__all__ = [
    "Gate",
    "ParamCircuit",
    "StateVector",
    "apply_circuit",
    "circuit_unitary",
    "fidelity_pure",
    "ObservableSet",
    "PauliString",
    "enumerate_k_local",
    "pauli_expectation",
    "pauli_expectation_shots",
    "LinearProgram",
    "LpSolution",
    "solve_simplex",
    "W1Estimate",
    "WassersteinHamiltonian",
    "build_w1_lp",
    "expectation_differences",
    "w1_distance",
    "CompilationProblem",
    "average_fidelity",
    "hst_cost",
    "let_cost",
    "qwc_cost",
    "set_average_fidelity",
    "GradientReport",
    "cost_gradient",
    "qwc_gradient",
    "shift_rule_expectation_grad",
    "EnsembleSpec",
    "build_hea",
    "make_problem",
    "random_product_ensemble",
    "AdamState",
    "TrainingConfig",
    "TrainingRecord",
    "adam_step",
    "compile_circuit",
    "early_stop_check",
]

__version__ = "0.1.0"
