"""Spin-flipping matrices, their powers, and the local-congruence check.

The power-1 matrix of a state for a partition with row qubits q_1..q_i is

    Omega = C v^{(x)(n-i)} C^T,     v = [[0, 1], [-1, 0]]

with C the coefficient matrix. Higher powers follow the recursion
Omega^(.l) = Omega^(.(l-1)) v^{(x)i} Omega. Applying a local operator
A_1 (x) ... (x) A_n to the state maps Omega^(.l) to
alpha^(l-1) beta^l P Omega^(.l) P^T with P = A_{q_1} (x) ... (x) A_{q_i},
alpha the product of row-qubit determinants and beta the product of
column-qubit determinants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .coeffmat import QubitPartition, coeff_matrix
from .errors import ValidationError
from .states import LocalOperator, PureState, apply_local, parity

MAX_KERNEL_ORDER = 14

SYMMETRY_ATOL = 1e-12

_KERNEL_2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class AntisymmetricKernel:
    """Tensor power v^{(x)k} of the 2x2 antisymmetric unit v = i sigma_y."""

    order: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if mat.shape != (2**self.order, 2**self.order):
            raise ValidationError(
                f"kernel of order {self.order} must be {2**self.order}x{2**self.order}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


@dataclass(frozen=True)
class OmegaMatrix:
    partition: QubitPartition
    power: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.power < 1:
            raise ValidationError(f"power must be >= 1, got {self.power}")
        dim = 2**self.partition.size
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != (dim, dim):
            raise ValidationError(f"entries must be {dim}x{dim}, got {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)
        if self.power == 1:
            # power 1 is symmetric for even n-i, skew-symmetric for odd n-i
            sign = -1.0 if (self.partition.n - self.partition.size) % 2 else 1.0
            defect = np.max(np.abs(mat.T - sign * mat))
            scale = max(float(np.max(np.abs(mat))), 1.0)
            if defect > SYMMETRY_ATOL * scale:
                kind = "skew-symmetric" if sign < 0 else "symmetric"
                raise ValidationError(
                    f"power-1 matrix fails its {kind} invariant: defect {defect:.3e}"
                )


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of checking the local-transformation congruence identity."""

    alpha: complex
    beta: complex
    residual: float

    def __post_init__(self):
        if not self.residual >= 0:
            raise ValidationError(f"residual must be >= 0, got {self.residual}")


@lru_cache(maxsize=None)
def _kernel_matrix(k: int) -> np.ndarray:
    mat = reduce(np.kron, [_KERNEL_2] * k, np.eye(1))
    mat.setflags(write=False)
    return mat


def kernel_power(k: int) -> AntisymmetricKernel:
    """The 2^k x 2^k matrix v^{(x)k}; k = 0 gives the 1x1 identity."""
    if not 0 <= k <= MAX_KERNEL_ORDER:
        raise ValidationError(f"kernel order must be in 0..{MAX_KERNEL_ORDER}, got {k}")
    return AntisymmetricKernel(k, _kernel_matrix(k))


@lru_cache(maxsize=None)
def _kernel_signs(k: int) -> np.ndarray:
    """Column signs for fast right-multiplication by v^{(x)k}.

    v^{(x)k} has a single nonzero per row: entry (j, 2^k-1-j) with sign
    (-1)^{parity(j)}, so M v^{(x)k} = M[:, ::-1] * signs with
    signs[c] = (-1)^{parity(2^k-1-c)}.
    """
    pm = np.array([1.0 - 2.0 * parity(j) for j in range(2**k)])
    signs = pm[::-1].copy()
    signs.setflags(write=False)
    return signs


def _times_kernel(mat: np.ndarray, k: int) -> np.ndarray:
    """mat @ v^{(x)k} without materializing the kernel."""
    return mat[:, ::-1] * _kernel_signs(k)[None, :]


def omega(state: PureState, partition: QubitPartition) -> OmegaMatrix:
    """Power-1 spin-flipping matrix C v^{(x)(n-i)} C^T."""
    cmat = coeff_matrix(state, partition).entries
    entries = _times_kernel(cmat, state.n - partition.size) @ cmat.T
    return OmegaMatrix(partition, 1, entries)


def omega_power(state: PureState, partition: QubitPartition, ell: int = 1) -> OmegaMatrix:
    """l-spin-flipping matrix via the recursion from the cached power-1 matrix."""
    if ell < 1:
        raise ValidationError(f"ell must be >= 1, got {ell}")
    base = omega(state, partition)
    return _omega_power_from_base(base, ell)


def _omega_power_from_base(base: OmegaMatrix, ell: int) -> OmegaMatrix:
    current = base.entries
    for _ in range(ell - 1):
        current = _times_kernel(current, base.partition.size) @ base.entries
    return OmegaMatrix(base.partition, ell, current) if ell > 1 else base


def omega_power_sequence(
    state: PureState, partition: QubitPartition, max_power: int
) -> list[OmegaMatrix]:
    """Powers 1..max_power, sharing one pass of the recursion."""
    if max_power < 1:
        raise ValidationError(f"max_power must be >= 1, got {max_power}")
    base = omega(state, partition)
    out = [base]
    current = base.entries
    for ell in range(2, max_power + 1):
        current = _times_kernel(current, partition.size) @ base.entries
        out.append(OmegaMatrix(partition, ell, current))
    return out


# Relative residuals fall back to absolute when the reference side is
# essentially zero.
ZERO_LHS_FLOOR = 1e-14


def verify_congruence(
    state: PureState,
    op: LocalOperator,
    partition: QubitPartition,
    ell: int = 1,
) -> CongruenceReport:
    """Check the congruence identity for one state, operator, and power.

    LHS is the power-l matrix of the transformed state; RHS is
    alpha^(l-1) beta^l P Omega^(.l) P^T built from the original state. The
    residual is max |LHS - RHS| over max |LHS|, absolute when LHS vanishes.
    """
    if partition.n != state.n or op.n != state.n:
        raise ValidationError("state, operator, and partition sizes must agree")
    lhs = omega_power(apply_local(state, op), partition, ell).entries

    dets = op.determinants()
    alpha = complex(np.prod([dets[q - 1] for q in partition.rows]))
    beta = complex(np.prod([dets[q - 1] for q in partition.columns()]))
    p_mat = reduce(np.kron, [op.factors[q - 1] for q in partition.rows])
    core = omega_power(state, partition, ell).entries
    rhs = alpha ** (ell - 1) * beta**ell * (p_mat @ core @ p_mat.T)

    denom = float(np.max(np.abs(lhs)))
    diff = float(np.max(np.abs(lhs - rhs)))
    residual = diff if denom < ZERO_LHS_FLOOR else diff / denom
    return CongruenceReport(alpha=alpha, beta=beta, residual=residual)
