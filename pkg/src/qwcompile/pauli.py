"""k-local Pauli observables and their expectation values on pure states.

A Pauli string is written as a word over {I, X, Y, Z} with qubit 0 leftmost,
e.g. "IXZI". Expectations are computed from the bit-flip/phase action on
basis states, never by building 2^n x 2^n matrices. For a whole observable
set a cached (num_strings x 2^n) flip/phase table evaluates all expectations
of one state in a single vectorized pass.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .simulator import DimensionMismatchError, StateVector

LETTERS = "IXYZ"


@dataclass(frozen=True)
class PauliString:
    """Length-n Pauli word; ``support`` holds the non-identity positions."""

    n: int
    letters: str

    def __post_init__(self):
        if len(self.letters) != self.n:
            raise ValueError(f"expected {self.n} letters, got {self.letters!r}")
        if any(ch not in LETTERS for ch in self.letters):
            raise ValueError(f"invalid Pauli letters in {self.letters!r}")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, ch in enumerate(self.letters) if ch != "I")

    @property
    def locality(self) -> int:
        return len(self.support)

    def masks(self) -> tuple[int, int, int]:
        """(x_mask, zy_mask, y_count): bit-flip mask, phase mask, # of Y's.

        P|b> = i^y_count * (-1)^popcount(b & zy_mask) |b ^ x_mask> where
        x_mask covers X and Y letters and zy_mask covers Z and Y letters.
        """
        x_mask = zy_mask = 0
        y_count = 0
        for i, ch in enumerate(self.letters):
            if ch in "XY":
                x_mask |= 1 << i
            if ch in "ZY":
                zy_mask |= 1 << i
            if ch == "Y":
                y_count += 1
        return x_mask, zy_mask, y_count

    def __str__(self) -> str:
        return self.letters


def _phase_signs(dim: int, zy_mask: int) -> np.ndarray:
    """(-1)^popcount(b & zy_mask) for every basis index b."""
    idx = np.arange(dim, dtype=np.uint64)
    par = np.bitwise_count(idx & np.uint64(zy_mask)) & 1
    return 1.0 - 2.0 * par.astype(np.float64)


def pauli_expectation(state: StateVector, p: PauliString) -> float:
    """Exact <state|P|state>, a real number in [-1, 1]."""
    if state.n != p.n:
        raise DimensionMismatchError(f"state n={state.n} vs Pauli n={p.n}")
    x_mask, zy_mask, y_count = p.masks()
    amps = state.amplitudes
    dim = amps.shape[0]
    signs = _phase_signs(dim, zy_mask)
    flipped = np.conj(amps[np.arange(dim) ^ x_mask])
    val = (1j**y_count) * np.sum(flipped * signs * amps)
    return float(val.real)


def pauli_expectation_shots(
    state: StateVector, p: PauliString, shots: int, rng: np.random.Generator
) -> float:
    """Finite-shot estimate (n+ - n-)/shots with P(+1) = (1 + <P>)/2."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    exact = pauli_expectation(state, p)
    p_plus = min(max((1.0 + exact) / 2.0, 0.0), 1.0)
    n_plus = int(rng.binomial(shots, p_plus))
    return (2 * n_plus - shots) / shots


@dataclass
class ObservableSet:
    """All Pauli strings of locality 1..k on n qubits, in canonical order.

    Order: ascending locality, then lexicographic support, then letters with
    X < Y < Z per position. The all-identity string is excluded (it never
    contributes to an expectation difference).
    """

    n: int
    k: int
    strings: tuple[PauliString, ...]
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.strings)

    def _flip_phase_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Cached (M x 2^n) flip-index and phase tables for batch evaluation."""
        key = "tables"
        if key not in self._tables:
            dim = 1 << self.n
            idx = np.arange(dim)
            flips = np.empty((len(self.strings), dim), dtype=np.int64)
            phases = np.empty((len(self.strings), dim), dtype=np.complex128)
            for m, p in enumerate(self.strings):
                x_mask, zy_mask, y_count = p.masks()
                flips[m] = idx ^ x_mask
                phases[m] = (1j**y_count) * _phase_signs(dim, zy_mask)
            self._tables[key] = (flips, phases)
        return self._tables[key]

    def support_matrix(self) -> np.ndarray:
        """(n x M) 0/1 incidence: row i marks strings whose support contains qubit i."""
        key = "support"
        if key not in self._tables:
            mat = np.zeros((self.n, len(self.strings)))
            for m, p in enumerate(self.strings):
                for i in p.support:
                    mat[i, m] = 1.0
            self._tables[key] = mat
        return self._tables[key]

    def expectations(self, state: StateVector) -> np.ndarray:
        """<state|P|state> for every string in the set, as one real vector."""
        if state.n != self.n:
            raise DimensionMismatchError(f"state n={state.n} vs set n={self.n}")
        flips, phases = self._flip_phase_tables()
        amps = state.amplitudes
        vals = (np.conj(amps)[flips] * phases) @ amps
        return vals.real


@lru_cache(maxsize=None)
def enumerate_k_local(n: int, k: int) -> ObservableSet:
    """All Pauli strings with 1 <= |support| <= k; count = sum_j C(n,j) 3^j."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    strings = []
    for j in range(1, k + 1):
        for support in itertools.combinations(range(n), j):
            for letters in itertools.product("XYZ", repeat=j):
                word = ["I"] * n
                for pos, ch in zip(support, letters):
                    word[pos] = ch
                strings.append(PauliString(n, "".join(word)))
    return ObservableSet(n, k, tuple(strings))


def k_local_count(n: int, k: int) -> int:
    """Closed-form size of the k-local set: sum_{j=1..k} C(n,j) 3^j."""
    return sum(math.comb(n, j) * 3**j for j in range(1, k + 1))
