"""Coefficient matrices of a pure state for an ordered qubit partition.

The coefficient matrix C_{q1..ql} puts the bits of the chosen row qubits
q_1..q_l (in the given order, most significant first) on the row index and
the bits of the remaining qubits, in ascending label order, on the column
index. Entry (r, c) is the amplitude whose index combines those bits.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .states import PureState


@dataclass(frozen=True)
class QubitPartition:
    """Ordered choice of row qubits q_1..q_l out of n, labels in 1..n."""

    rows: tuple[int, ...]
    n: int

    def __post_init__(self):
        rows = tuple(int(q) for q in self.rows)
        object.__setattr__(self, "rows", rows)
        if not 1 <= len(rows) <= self.n - 1:
            raise ValidationError(
                f"partition must pick between 1 and n-1 qubits, got {len(rows)} of {self.n}"
            )
        if len(set(rows)) != len(rows):
            raise ValidationError(f"row qubits must be distinct, got {rows}")
        for q in rows:
            if not 1 <= q <= self.n:
                raise ValidationError(f"qubit label {q} out of range 1..{self.n}")

    @property
    def size(self) -> int:
        """Number of row qubits (the partition size i)."""
        return len(self.rows)

    def columns(self) -> tuple[int, ...]:
        """Column qubits in ascending label order."""
        return tuple(q for q in range(1, self.n + 1) if q not in self.rows)


@dataclass(frozen=True)
class CoeffMatrix:
    partition: QubitPartition
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        ell = self.partition.size
        expected = (2**ell, 2 ** (self.partition.n - ell))
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != expected:
            raise ValidationError(f"entries must have shape {expected}, got {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)


def coeff_matrix(state: PureState, partition: QubitPartition) -> CoeffMatrix:
    """Reshape the amplitude vector into the partition's coefficient matrix.

    Axis k of the reshaped tensor is qubit k+1 (most significant bit first),
    so moving the row-qubit axes to the front and flattening gives the
    matrix directly.
    """
    if partition.n != state.n:
        raise ValidationError(
            f"partition is for n={partition.n} but state has n={state.n}"
        )
    n, ell = state.n, partition.size
    tensor = state.amplitudes.reshape([2] * n)
    order = [q - 1 for q in partition.rows] + [q - 1 for q in partition.columns()]
    entries = tensor.transpose(order).reshape(2**ell, 2 ** (n - ell))
    return CoeffMatrix(partition, entries)


def local_rank(state: PureState, qubit: int, tol: float = 1e-10) -> int:
    """Numerical rank of the single-qubit coefficient matrix C_qubit.

    Rank 1 certifies the qubit factors out of the rest of the state; rank 0
    happens only for the zero vector.
    """
    # deferred import: invariants depends on this module
    from .invariants import numerical_rank

    if state.n < 2:
        raise ValidationError("local_rank needs at least 2 qubits")
    if not 1 <= qubit <= state.n:
        raise ValidationError(f"qubit label {qubit} out of range 1..{state.n}")
    mat = coeff_matrix(state, QubitPartition((qubit,), state.n)).entries
    if not np.any(mat):
        warnings.warn(
            "local_rank of the zero state is 0", RuntimeWarning, stacklevel=2
        )
        return 0
    return numerical_rank(mat, tol)
