"""qWGAN-style training loop: LP discriminator solves + ADAM generator updates.

Each step evolves the probe ensemble through the generator, solves the W1
dual LP per state (QWC) or evaluates the baseline cost, takes a shift-rule
gradient and applies a bias-corrected ADAM update. Stops at ``max_steps`` or
when the cost variance over a trailing window falls below the early-stop
threshold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .costs import (
    COST_KINDS,
    CompilationProblem,
    hst_cost,
    let_cost,
    problem_infidelity,
    w1_estimates,
)
from .gradients import GradientReport, cost_gradient, shift_rule_expectation_grad
from .ansatz import EnsembleSpec, random_product_ensemble
from .simulator import circuit_unitary

DEFAULT_LR = {"qwc": 0.1, "hst": 0.04, "let": 0.04}


@dataclass(frozen=True)
class AdamState:
    """Bias-corrected ADAM moments; ``t`` counts completed updates."""

    t: int
    m: np.ndarray
    v: np.ndarray
    lr: float
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def fresh(cls, param_count: int, lr: float) -> "AdamState":
        return cls(0, np.zeros(param_count), np.zeros(param_count), lr)


def adam_step(state: AdamState, params, grad) -> tuple[AdamState, np.ndarray]:
    """One ADAM update; inputs are not modified."""
    params = np.asarray(params, dtype=float)
    grad = np.asarray(grad, dtype=float)
    if params.shape != grad.shape or params.shape != state.m.shape:
        raise ValueError("params/grad/moment shapes disagree")
    t = state.t + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grad
    v = state.beta2 * state.v + (1.0 - state.beta2) * grad**2
    m_hat = m / (1.0 - state.beta1**t)
    v_hat = v / (1.0 - state.beta2**t)
    new_params = params - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return replace(state, t=t, m=m, v=v), new_params


@dataclass
class TrainingConfig:
    cost_kind: str = "qwc"
    max_steps: int = 1000
    success_threshold: float = 1e-3
    early_stop: bool = False
    early_stop_window: int = 100
    early_stop_variance: float = 1e-8
    lr: float | None = None  # default 0.1 for qwc, 0.04 for hst/let
    resample_seed: int | None = None  # set to draw fresh probe states each step

    def __post_init__(self):
        if self.cost_kind not in COST_KINDS:
            raise ValueError(f"cost_kind must be one of {COST_KINDS}")
        if self.success_threshold <= 0 or self.early_stop_variance <= 0:
            raise ValueError("thresholds must be positive")
        if self.early_stop and self.early_stop_window > self.max_steps:
            raise ValueError("early-stop window cannot exceed max_steps")

    @property
    def learning_rate(self) -> float:
        return self.lr if self.lr is not None else DEFAULT_LR[self.cost_kind]


@dataclass
class TrainingRecord:
    """Per-step history plus the final outcome of one training run."""

    cost_kind: str
    costs: np.ndarray
    grad_l1: np.ndarray
    grad_l2: np.ndarray
    final_params: np.ndarray
    final_cost: float
    infidelity: float
    success: bool
    steps_run: int
    stop_reason: str  # "max_steps" | "early_stop"

    def summary_dict(self) -> dict:
        return {
            "cost_kind": self.cost_kind,
            "final_cost": self.final_cost,
            "infidelity": self.infidelity,
            "success": self.success,
            "steps_run": self.steps_run,
            "stop_reason": self.stop_reason,
            "inverse_training_error": (
                1.0 / self.final_cost if self.final_cost > 0 else float("inf")
            ),
        }

    def to_json(self) -> str:
        data = dict(self.summary_dict())
        data["final_params"] = self.final_params.tolist()
        data["history"] = {
            "cost": self.costs.tolist(),
            "grad_l1": self.grad_l1.tolist(),
            "grad_l2": self.grad_l2.tolist(),
        }
        return json.dumps(data)


def early_stop_check(cost_history, window: int, threshold: float) -> bool:
    """True iff the population variance of the last ``window`` costs < threshold."""
    history = np.asarray(cost_history, dtype=float)
    if history.shape[0] < window:
        return False
    return bool(np.var(history[-window:]) < threshold)


def _evaluate(problem: CompilationProblem, params, cost_kind: str) -> tuple[float, GradientReport]:
    if cost_kind == "qwc":
        ests = w1_estimates(problem, params)
        cost = float(np.mean([e.value**2 for e in ests]))
        grad = np.zeros(problem.ansatz.param_count)
        size = len(problem.ensemble)
        for psi, est in zip(problem.ensemble, ests):
            if est.value == 0.0 or not est.hamiltonian.terms:
                continue
            for i in range(problem.ansatz.param_count):
                dw1 = shift_rule_expectation_grad(
                    problem.ansatz, params, psi, est.hamiltonian, i
                )
                grad[i] += 2.0 * est.value * dw1 / size
        return cost, GradientReport.from_grad(grad)
    if cost_kind == "hst":
        U = circuit_unitary(problem.ansatz, params)
        cost = hst_cost(U, problem.target_unitary())
    else:
        cost = let_cost(problem, params)
    return cost, cost_gradient(problem, params, cost_kind)


def _final_cost(problem: CompilationProblem, params, cost_kind: str) -> float:
    if cost_kind == "qwc":
        return float(np.mean([e.value**2 for e in w1_estimates(problem, params)]))
    if cost_kind == "hst":
        return hst_cost(circuit_unitary(problem.ansatz, params), problem.target_unitary())
    return let_cost(problem, params)


def compile_circuit(problem: CompilationProblem, config: TrainingConfig) -> TrainingRecord:
    """Train the ansatz against the target; returns the full run record.

    ``success`` means the final cost (the run's own cost kind) is below the
    success threshold; ``infidelity`` is 1 minus the exact average fidelity.
    """
    params = problem.initial_params.copy()
    adam = AdamState.fresh(problem.ansatz.param_count, config.learning_rate)
    resampler = (
        np.random.default_rng([int(config.resample_seed), 0x2545F491])
        if config.resample_seed is not None
        else None
    )

    costs: list[float] = []
    l1: list[float] = []
    l2: list[float] = []
    stop_reason = "max_steps"
    steps_run = 0
    for _ in range(config.max_steps):
        if resampler is not None:
            spec = EnsembleSpec(problem.n, len(problem.ensemble), "resampled")
            problem.replace_ensemble(random_product_ensemble(spec, resampler))
        cost, report = _evaluate(problem, params, config.cost_kind)
        costs.append(cost)
        l1.append(report.l1_norm)
        l2.append(report.l2_norm)
        if config.early_stop and early_stop_check(
            costs, config.early_stop_window, config.early_stop_variance
        ):
            stop_reason = "early_stop"
            break
        adam, params = adam_step(adam, params, report.grad)
        steps_run += 1

    final_cost = _final_cost(problem, params, config.cost_kind)
    return TrainingRecord(
        cost_kind=config.cost_kind,
        costs=np.asarray(costs),
        grad_l1=np.asarray(l1),
        grad_l2=np.asarray(l2),
        final_params=params,
        final_cost=final_cost,
        infidelity=problem_infidelity(problem, params),
        success=final_cost < config.success_threshold,
        steps_run=steps_run,
        stop_reason=stop_reason,
    )
