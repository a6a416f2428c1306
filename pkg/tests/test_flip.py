"""Tests for kernels, spin-flipping matrices, powers, and the congruence."""

import math

import numpy as np
import pytest

from spinflip import (
    LocalOperator,
    OmegaMatrix,
    PureState,
    QubitPartition,
    ValidationError,
    apply_local,
    kernel_power,
    omega,
    omega_power,
    omega_power_sequence,
    random_local,
    random_state,
    rank_profile,
    standard_state,
    verify_congruence,
)

import helpers
import oracles

RT2 = math.sqrt(2.0)
RT3 = math.sqrt(3.0)


def test_kernel_order_zero_is_identity():
    assert np.array_equal(kernel_power(0).matrix, [[1.0]])


def test_kernel_order_one():
    assert np.array_equal(kernel_power(1).matrix, [[0, 1], [-1, 0]])


def test_kernel_order_two_frozen():
    # one nonzero per row on the anti-diagonal, sign (-1)^{parity(row)};
    # cross-checked against the Kronecker-product oracle
    expected = np.array(
        [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]
    )
    assert np.array_equal(kernel_power(2).matrix, expected)
    assert np.array_equal(kernel_power(2).matrix, oracles.oracle_kron_kernel(2))


def test_kernel_closed_form_matches_kron():
    for k in range(7):
        mat = kernel_power(k).matrix
        assert np.array_equal(mat, oracles.oracle_kernel(k))
        assert np.array_equal(mat, oracles.oracle_kron_kernel(k))


def test_kernel_is_orthogonal_with_unit_entries():
    for k in range(7):
        mat = kernel_power(k).matrix
        assert set(np.unique(mat)) <= {-1.0, 0.0, 1.0}
        assert np.array_equal(mat.T @ mat, np.eye(2**k))


def test_kernel_order_validation():
    with pytest.raises(ValidationError):
        kernel_power(-1)
    with pytest.raises(ValidationError):
        kernel_power(15)


def test_kernel_matrix_immutable():
    with pytest.raises(ValueError):
        kernel_power(2).matrix[0, 0] = 5.0


def test_two_qubit_omega_formula():
    # power-1 matrix of any 2-qubit state is (a0 a3 - a1 a2) v
    for seed in range(5):
        state = random_state(2, 7100 + seed)
        a = state.amplitudes
        got = omega(state, QubitPartition((1,), 2)).entries
        factor = a[0] * a[3] - a[1] * a[2]
        assert np.allclose(got, factor * np.array([[0, 1], [-1, 0]]), atol=1e-15)


def test_ghz3_omega_frozen():
    got = omega(standard_state("ghz", 3), QubitPartition((1, 2), 3)).entries
    expected = np.zeros((4, 4))
    expected[0, 3] = 0.5
    expected[3, 0] = -0.5
    assert np.allclose(got, expected, atol=1e-15)


def test_zeros_omega_is_zero():
    got = omega(standard_state("zeros", 3), QubitPartition((1, 2), 3)).entries
    assert np.array_equal(got, np.zeros((4, 4)))


def test_w_omega_frozen():
    # hand-multiplied from C = (1/sqrt3) [[0,1],[1,0],[1,0],[0,0]]
    got = omega(standard_state("w", 3), QubitPartition((1, 2), 3)).entries
    expected = np.array(
        [[0, -1, -1, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]]
    ) / 3.0
    assert np.allclose(got, expected, atol=1e-15)


def test_vartheta_omega_frozen():
    got = omega(standard_state("vartheta"), QubitPartition((1, 2), 3)).entries
    expected = np.array(
        [[0, 0, 1, 0], [0, 0, 0, 0], [-1, 0, 0, -1], [0, 0, 1, 0]]
    ) / 3.0
    assert np.allclose(got, expected, atol=1e-15)


def test_xi_omega_frozen():
    got = omega(standard_state("xi"), QubitPartition((1, 2), 3)).entries
    expected = np.array(
        [[0, 0, 0, -1], [0, 0, 0, -1], [0, 0, 0, -1], [1, 1, 1, 0]]
    ) / 4.0
    assert np.allclose(got, expected, atol=1e-15)


def test_omega_matches_dense_oracle():
    for i, (state, part) in enumerate(helpers.state_partition_cases(30)):
        got = omega(state, part).entries
        want = oracles.oracle_omega(state.amplitudes, state.n, part.rows)
        assert np.allclose(got, want, atol=1e-13), f"case {i}"


def test_omega_power_one_equals_omega():
    state = random_state(3, 71)
    part = QubitPartition((1, 2), 3)
    assert np.array_equal(
        omega_power(state, part, 1).entries, omega(state, part).entries
    )


def test_ghz3_power_sequence_frozen():
    # power 2 = (1/4)(E03 + E30), power 3 = (1/8)(E03 - E30)
    seq = omega_power_sequence(
        standard_state("ghz", 3), QubitPartition((1, 2), 3), 3
    )
    p2 = np.zeros((4, 4))
    p2[0, 3] = p2[3, 0] = 0.25
    p3 = np.zeros((4, 4))
    p3[0, 3], p3[3, 0] = 0.125, -0.125
    assert np.allclose(seq[1].entries, p2, atol=1e-15)
    assert np.allclose(seq[2].entries, p3, atol=1e-15)
    assert [m.power for m in seq] == [1, 2, 3]


def test_w_power_two_rank_one_and_power_three_zero():
    w = standard_state("w", 3)
    part = QubitPartition((1, 2), 3)
    p2 = omega_power(w, part, 2).entries
    expected = np.zeros((4, 4))
    expected[0, 0] = 2.0 / 9.0
    assert np.allclose(p2, expected, atol=1e-15)
    assert np.linalg.matrix_rank(p2) == 1
    # the recursion hits an exact zero at power 3
    assert np.array_equal(omega_power(w, part, 3).entries, np.zeros((4, 4)))


def test_ghz3_power_three_rank_two():
    p3 = omega_power(standard_state("ghz", 3), QubitPartition((1, 2), 3), 3)
    assert np.linalg.matrix_rank(p3.entries) == 2


def test_w1_power_two_frozen():
    # the recursion collapses W1's power-2 matrix to a single entry -1/8
    p2 = omega_power(standard_state("w1"), QubitPartition((1, 2), 3), 2).entries
    expected = np.zeros((4, 4))
    expected[2, 2] = -0.125
    assert np.allclose(p2, expected, atol=1e-15)


def test_w2_power_two_frozen():
    # single entry -2 l0 l2^2 l3 = -sqrt(3)/16
    p2 = omega_power(standard_state("w2"), QubitPartition((1, 2), 3), 2).entries
    expected = np.zeros((4, 4))
    expected[2, 2] = -math.sqrt(3.0) / 16.0
    assert np.allclose(p2, expected, atol=1e-15)


def test_power_two_variant_sweep():
    """Regression freezing what the power-2 recursion actually yields for W1
    and W2, and that no rescaled or kernel-free variant produces two equal
    nonzero singular values that still distinguish the pair.

    The recursion gives squared singular values (1/64, 0, 0, 0) for W1 and
    (3/256, 0, 0, 0) for W2: single nonzero values whose 1/64 multiples are
    1/4096 and 3/16384. Squaring without the kernel does produce a doubled
    pair, but its value is the fourth power of S and W1, W2 share S, so that
    variant cannot tell them apart.
    """
    part = QubitPartition((1, 2), 3)
    w1 = standard_state("w1")
    w2 = standard_state("w2")
    om1 = omega(w1, part).entries
    om2 = omega(w2, part).entries

    sq1 = np.linalg.svd(omega_power(w1, part, 2).entries, compute_uv=False) ** 2
    sq2 = np.linalg.svd(omega_power(w2, part, 2).entries, compute_uv=False) ** 2
    assert np.allclose(sq1, [1 / 64, 0, 0, 0], atol=1e-15)
    assert np.allclose(sq2, [3 / 256, 0, 0, 0], atol=1e-15)
    # the printed doubled values are exactly 1/64 of these
    assert np.isclose(sq1[0] / 64, 1 / 4096)
    assert np.isclose(sq2[0] / 64, 3 / 16384)

    plain1 = np.linalg.svd(om1 @ om1, compute_uv=False) ** 2
    plain2 = np.linalg.svd(om2 @ om2, compute_uv=False) ** 2
    assert np.allclose(plain1, [1 / 64, 1 / 64, 0, 0], atol=1e-15)
    assert np.allclose(plain1, plain2, atol=1e-15)  # indistinguishable


def test_omega_power_matches_dense_oracle():
    for i, (state, part) in enumerate(helpers.state_partition_cases(20)):
        for ell in (2, 3):
            got = omega_power(state, part, ell).entries
            want = oracles.oracle_omega_power(
                state.amplitudes, state.n, part.rows, ell
            )
            assert np.allclose(got, want, atol=1e-12), f"case {i} power {ell}"


def test_omega_power_sequence_consistent():
    state = random_state(4, 77)
    part = QubitPartition((2, 3), 4)
    seq = omega_power_sequence(state, part, 3)
    for ell, item in enumerate(seq, start=1):
        assert np.array_equal(item.entries, omega_power(state, part, ell).entries)


def test_power_validation():
    state = random_state(2, 3)
    part = QubitPartition((1,), 2)
    with pytest.raises(ValidationError):
        omega_power(state, part, 0)
    with pytest.raises(ValidationError):
        omega_power_sequence(state, part, 0)


def test_parity_symmetry_property():
    # omega is symmetric when n-i is even, skew-symmetric when odd
    for state, part in helpers.state_partition_cases(200, seed=7300):
        mat = omega(state, part).entries
        sign = -1.0 if (state.n - part.size) % 2 else 1.0
        scale = max(float(np.max(np.abs(mat))), 1.0)
        assert np.max(np.abs(mat.T - sign * mat)) <= 1e-12 * scale


def test_omega_matrix_symmetry_enforced():
    part = QubitPartition((1,), 3)  # n - i = 2, so power 1 must be symmetric
    bad = np.array([[0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(ValidationError):
        OmegaMatrix(part, 1, bad)
    OmegaMatrix(part, 2, bad)  # higher powers carry no symmetry contract


def test_congruence_identity_operator():
    state = random_state(3, 500)
    op = LocalOperator((np.eye(2),) * 3)
    report = verify_congruence(state, op, QubitPartition((1, 2), 3), 2)
    assert report.alpha == pytest.approx(1.0)
    assert report.beta == pytest.approx(1.0)
    assert report.residual < 1e-12


def test_congruence_property_suite():
    # residual < 1e-8 over 100 seeded trials, n in {2,3,4}, powers 1..3,
    # both operator kinds
    for state, op, part, ell in helpers.congruence_cases(100):
        report = verify_congruence(state, op, part, ell)
        assert report.residual < 1e-8


def test_congruence_alpha_beta_are_det_products():
    state = random_state(4, 41)
    op = random_local(4, "invertible", 42)
    part = QubitPartition((2, 4), 4)
    report = verify_congruence(state, op, part, 1)
    dets = [np.linalg.det(f) for f in op.factors]
    assert report.alpha == pytest.approx(dets[1] * dets[3])
    assert report.beta == pytest.approx(dets[0] * dets[2])


def test_scale_covariance():
    # a -> s a multiplies the power-l matrix by s^(2l)
    s = 1.7 - 0.3j
    for i, (state, part) in enumerate(helpers.state_partition_cases(20, seed=7500)):
        scaled = PureState(state.n, s * state.amplitudes, normalized=False)
        for ell in (1, 2, 3):
            base = omega_power(state, part, ell).entries
            got = omega_power(scaled, part, ell).entries
            assert np.allclose(got, s ** (2 * ell) * base, rtol=1e-12, atol=1e-12)


def test_rank_equality_under_invertible_transform():
    # congruence by invertible factors preserves rank; same trial set
    for state, op, part, _ in helpers.congruence_cases(100):
        before = rank_profile(state, part, 3).ranks
        after = rank_profile(apply_local(state, op), part, 3).ranks
        assert before == after


def test_size_mismatch_errors():
    state = random_state(3, 1)
    with pytest.raises(ValidationError):
        verify_congruence(
            state, random_local(2, "unitary", 2), QubitPartition((1,), 3), 1
        )
    with pytest.raises(ValidationError):
        verify_congruence(
            state, random_local(3, "unitary", 2), QubitPartition((1,), 2), 1
        )
