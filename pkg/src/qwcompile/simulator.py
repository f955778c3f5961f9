"""Dense statevector simulation of parameterized circuits.

Conventions, fixed once for the whole package:

* little-endian qubit ordering: qubit 0 is the least-significant bit of a
  basis-state index;
* RY(t) = exp(-i t Y / 2), RZ(t) = exp(-i t Z / 2), CX is the standard
  controlled-NOT.

Gates are applied by stride iteration over amplitude pairs rather than by
building full 2^n x 2^n matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: Hard cap on the qubit count for dense simulation.
MAX_QUBITS = 10

ROTATION_KINDS = ("RY", "RZ")
GATE_KINDS = ROTATION_KINDS + ("CX",)


class DimensionMismatchError(ValueError):
    """Operands act on different qubit counts or wrong vector lengths."""


class ResourceLimitError(ValueError):
    """Requested simulation exceeds the configured qubit cap."""


@dataclass(frozen=True)
class Gate:
    """One circuit element: a rotation (RY/RZ) or a CX.

    Rotations carry either a fixed ``angle`` in radians or a ``param_index``
    into the circuit's parameter vector, never both.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    param_index: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        qs = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qs)
        if len(set(qs)) != len(qs):
            raise ValueError(f"gate qubits must be distinct, got {qs}")
        if self.kind == "CX":
            if len(qs) != 2:
                raise ValueError("CX needs (control, target)")
            if self.angle is not None or self.param_index is not None:
                raise ValueError("CX takes no angle or parameter")
        else:
            if len(qs) != 1:
                raise ValueError(f"{self.kind} acts on a single qubit")
            if (self.angle is None) == (self.param_index is None):
                raise ValueError("rotation needs exactly one of angle/param_index")


@dataclass(frozen=True)
class ParamCircuit:
    """An ordered gate list over ``n`` qubits with ``param_count`` free angles."""

    n: int
    gates: tuple[Gate, ...]
    param_count: int

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        referenced = set()
        for g in self.gates:
            if any(q >= self.n or q < 0 for q in g.qubits):
                raise ValueError(f"gate {g} addresses qubits outside range(0, {self.n})")
            if g.param_index is not None:
                if g.param_index >= self.param_count or g.param_index < 0:
                    raise ValueError(f"param index {g.param_index} out of range")
                referenced.add(g.param_index)
        if referenced != set(range(self.param_count)):
            missing = sorted(set(range(self.param_count)) - referenced)
            raise ValueError(f"unreferenced parameter indices: {missing}")

    def __add__(self, other: "ParamCircuit") -> "ParamCircuit":
        """Concatenate two circuits; the second circuit's params are re-indexed."""
        if other.n != self.n:
            raise DimensionMismatchError("cannot concatenate circuits of different n")
        shift = self.param_count
        shifted = tuple(
            g if g.param_index is None
            else Gate(g.kind, g.qubits, param_index=g.param_index + shift)
            for g in other.gates
        )
        return ParamCircuit(self.n, self.gates + shifted, shift + other.param_count)


@dataclass
class StateVector:
    """Pure state of ``n`` qubits as 2^n complex amplitudes (little-endian)."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n,):
            raise DimensionMismatchError(
                f"expected {1 << self.n} amplitudes, got shape {self.amplitudes.shape}"
            )

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        """The computational basis state |0...0>."""
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n, amps)

    @classmethod
    def basis(cls, n: int, index: int) -> "StateVector":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())


@lru_cache(maxsize=None)
def _low_indices(n: int, q: int) -> np.ndarray:
    """Basis indices with bit ``q`` clear; paired with ``idx | (1 << q)``."""
    idx = np.arange(1 << n)
    out = idx[(idx >> q) & 1 == 0]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _cx_indices(n: int, control: int, target: int) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs swapped by CX: control set, target clear vs. target set."""
    idx = np.arange(1 << n)
    src = idx[((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0)]
    src.setflags(write=False)
    dst = src | (1 << target)
    dst.setflags(write=False)
    return src, dst


def _apply_gate_inplace(amps: np.ndarray, gate: Gate, angle: float | None, n: int) -> None:
    """Apply one gate to amplitudes in place.

    ``amps`` may be 1-D (a state) or 2-D with basis index on the first axis
    (a batch of states / a unitary's columns).
    """
    if gate.kind == "CX":
        c, t = gate.qubits
        src, dst = _cx_indices(n, c, t)
        a = amps[src].copy()
        amps[src] = amps[dst]
        amps[dst] = a
        return
    (q,) = gate.qubits
    i0 = _low_indices(n, q)
    i1 = i0 | (1 << q)
    half = angle / 2.0
    if gate.kind == "RZ":
        amps[i0] *= complex(math.cos(half), -math.sin(half))
        amps[i1] *= complex(math.cos(half), math.sin(half))
    else:  # RY
        c, s = math.cos(half), math.sin(half)
        a0 = amps[i0].copy()
        a1 = amps[i1]
        amps[i0] = c * a0 - s * a1
        amps[i1] = s * a0 + c * a1


def _resolve_angle(gate: Gate, params: np.ndarray) -> float | None:
    if gate.kind == "CX":
        return None
    if gate.param_index is not None:
        return float(params[gate.param_index])
    return float(gate.angle)


def _check_params(circuit: ParamCircuit, params) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.param_count,):
        raise DimensionMismatchError(
            f"circuit expects {circuit.param_count} parameters, got shape {params.shape}"
        )
    return params


def _run_gates(
    amps: np.ndarray,
    circuit: ParamCircuit,
    params: np.ndarray,
    gate_shifts: dict[int, float] | None,
) -> None:
    for pos, gate in enumerate(circuit.gates):
        angle = _resolve_angle(gate, params)
        if gate_shifts and pos in gate_shifts:
            angle = angle + gate_shifts[pos]
        _apply_gate_inplace(amps, gate, angle, circuit.n)


def apply_circuit(
    circuit: ParamCircuit,
    params,
    input_state: StateVector,
    gate_shifts: dict[int, float] | None = None,
) -> StateVector:
    """Apply the circuit's gates in order; the input state is not modified.

    ``gate_shifts`` maps gate positions to additive angle offsets and exists
    for per-occurrence parameter-shift evaluations.
    """
    params = _check_params(circuit, params)
    if input_state.n != circuit.n:
        raise DimensionMismatchError(
            f"state has {input_state.n} qubits, circuit has {circuit.n}"
        )
    amps = input_state.amplitudes.copy()
    _run_gates(amps, circuit, params, gate_shifts)
    return StateVector(circuit.n, amps)


def circuit_unitary(
    circuit: ParamCircuit,
    params,
    gate_shifts: dict[int, float] | None = None,
    max_qubits: int = MAX_QUBITS,
) -> np.ndarray:
    """Full 2^n x 2^n unitary; column j is the circuit applied to |j>."""
    if circuit.n > max_qubits:
        raise ResourceLimitError(
            f"n={circuit.n} exceeds the dense-matrix cap of {max_qubits}"
        )
    params = _check_params(circuit, params)
    mat = np.eye(1 << circuit.n, dtype=np.complex128)
    _run_gates(mat, circuit, params, gate_shifts)
    return mat


def fidelity_pure(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2 for pure states."""
    if a.n != b.n:
        raise DimensionMismatchError(f"qubit counts differ: {a.n} vs {b.n}")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def circuit_to_dict(circuit: ParamCircuit) -> dict:
    """JSON-ready form: {n, gates: [{kind, qubits, param_index|angle}]}."""
    gates = []
    for g in circuit.gates:
        entry: dict = {"kind": g.kind, "qubits": list(g.qubits)}
        if g.param_index is not None:
            entry["param_index"] = g.param_index
        elif g.angle is not None:
            entry["angle"] = g.angle
        gates.append(entry)
    return {"n": circuit.n, "param_count": circuit.param_count, "gates": gates}


def circuit_from_dict(data: dict) -> ParamCircuit:
    gates = tuple(
        Gate(
            g["kind"],
            tuple(g["qubits"]),
            angle=g.get("angle"),
            param_index=g.get("param_index"),
        )
        for g in data["gates"]
    )
    return ParamCircuit(data["n"], gates, data["param_count"])
