import numpy as np
import numpy.testing as npt
import pytest

import ctqm as ct
from ctqm import sampling as smp
from ctqm.errors import DomainError

SPINS = (0.5, 1.0, 1.5, 2.0, 2.5)
SIGMA = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def levi_civita(i, j, k):
    return (i - j) * (j - k) * (k - i) / 2.0


class TestAngularMomentum:
    def test_spin_zero(self):
        J = ct.angular_momentum_matrices(0.0).J
        npt.assert_array_equal(J, np.zeros((3, 1, 1)))

    def test_spin_half_is_pauli(self):
        J = ct.angular_momentum_matrices(0.5).J
        for k in range(3):
            npt.assert_allclose(J[k], SIGMA[k] / 2.0, atol=1e-15)

    def test_spin_one(self):
        J = ct.angular_momentum_matrices(1.0).J
        npt.assert_allclose(np.diag(J[2]), [1.0, 0.0, -1.0], atol=1e-15)
        casimir = sum(J[i] @ J[i] for i in range(3))
        npt.assert_allclose(casimir, 2.0 * np.eye(3), atol=1e-14)

    def test_commutators_and_casimir(self):
        for s in SPINS:
            J = ct.angular_momentum_matrices(s).J
            d = J.shape[1]
            for i in range(3):
                npt.assert_allclose(J[i], J[i].conj().T, atol=1e-14)
                for j in range(3):
                    expect = 1j * sum(levi_civita(i, j, k) * J[k] for k in range(3))
                    npt.assert_allclose(J[i] @ J[j] - J[j] @ J[i], expect, atol=1e-13)
            npt.assert_allclose(
                sum(J[i] @ J[i] for i in range(3)), s * (s + 1) * np.eye(d), atol=1e-12
            )

    def test_invalid_spin(self):
        with pytest.raises(DomainError):
            ct.angular_momentum_matrices(0.3)
        with pytest.raises(DomainError):
            ct.angular_momentum_matrices(-1.0)


class TestRestSpinTensor:
    def test_spin_zero(self):
        npt.assert_array_equal(ct.rest_spin_tensor(0.0).S, np.zeros((3, 3, 1, 1)))

    def test_s12_is_jz(self):
        S = ct.rest_spin_tensor(0.5).S
        npt.assert_allclose(S[0, 1], SIGMA[2] / 2.0, atol=1e-15)

    def test_algebra_all_pairs(self):
        # [S~_ij, S~_kl] = -i (d_il S~_jk + d_jk S~_il - d_ik S~_jl - d_jl S~_ik)
        for s in SPINS:
            S = ct.rest_spin_tensor(s).S
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        for l in range(3):
                            comm = S[i, j] @ S[k, l] - S[k, l] @ S[i, j]
                            expect = -1j * (
                                (i == l) * S[j, k]
                                + (j == k) * S[i, l]
                                - (i == k) * S[j, l]
                                - (j == l) * S[i, k]
                            )
                            npt.assert_allclose(comm, expect, atol=1e-13)

    def test_specific_commutator(self):
        S = ct.rest_spin_tensor(0.5).S
        npt.assert_allclose(S[0, 1] @ S[1, 2] - S[1, 2] @ S[0, 1], -1j * S[0, 2], atol=1e-15)


class TestSpinTensor:
    def test_reduces_at_preferred(self):
        for s in (0.5, 1.0):
            npt.assert_array_equal(
                ct.spin_tensor(ct.PREFERRED, s).S, ct.rest_spin_tensor(s).S
            )

    def test_worked_case(self):
        u = ct.four_velocity_from_space([0.75, 0, 0])
        S = ct.spin_tensor(u, 0.5).S
        St = ct.rest_spin_tensor(0.5).S
        npt.assert_allclose(S[0, 1], 0.8 * St[0, 1], atol=1e-15)
        npt.assert_allclose(S[1, 2], St[1, 2], atol=1e-15)

    def test_hermitean_antisymmetric(self, rng):
        for _ in range(20):
            u = smp.random_four_velocity(rng)
            for s in SPINS:
                S = ct.spin_tensor(u, s).S
                for i in range(3):
                    for j in range(3):
                        npt.assert_allclose(S[i, j], S[i, j].conj().T, atol=1e-13)
                        npt.assert_allclose(S[i, j], -S[j, i], atol=1e-13)

    def test_metric_algebra(self, rng):
        # [S_ij(u), S_kl(u)] closes on the spatial covariant metric
        for _ in range(10):
            u = smp.random_four_velocity(rng)
            g = ct.metric(u).covariant[1:, 1:]
            for s in SPINS:
                S = ct.spin_tensor(u, s).S
                for i in range(3):
                    for j in range(3):
                        for k in range(3):
                            for l in range(3):
                                comm = S[i, j] @ S[k, l] - S[k, l] @ S[i, j]
                                expect = 1j * (
                                    g[i, l] * S[j, k]
                                    + g[j, k] * S[i, l]
                                    - g[i, k] * S[j, l]
                                    - g[j, l] * S[i, k]
                                )
                                npt.assert_allclose(comm, expect, atol=1e-11)

    def test_wigner_consistency(self, rng):
        # D^s(R) S_ij(u) D^s(R)^-1 = Omega_ki S_kl(u') Omega_lj
        for _ in range(20):
            u = smp.random_four_velocity(rng)
            L = smp.random_lorentz(rng)
            D = ct.transform_from_lorentz(L, u)
            Om = D.matrix[1:, 1:]
            R = ct.wigner_rotation(L, u)
            for s in (0.5, 1.0):
                Ds = ct.rotation_rep(R, s)
                S_u = ct.spin_tensor(u, s).S
                S_up = ct.spin_tensor(D.target_u, s).S
                lhs = np.einsum("ab,ijbc,cd->ijad", Ds, S_u, Ds.conj().T)
                rhs = np.einsum("ki,klab,lj->ijab", Om, S_up, Om)
                npt.assert_allclose(lhs, rhs, atol=1e-10)


class TestGammaSpatial:
    def test_inverse_of_spatial_metric(self, rng):
        for _ in range(100):
            u = smp.random_four_velocity(rng)
            npt.assert_allclose(
                ct.gamma_spatial(u) @ ct.metric(u).covariant[1:, 1:], np.eye(3), atol=1e-13
            )


class TestSpinSquare:
    def test_spin_zero(self):
        npt.assert_array_equal(ct.spin_square(ct.PREFERRED, 0.0), np.zeros((1, 1)))

    def test_preferred_half(self):
        npt.assert_allclose(ct.spin_square(ct.PREFERRED, 0.5), 0.75 * np.eye(2), atol=1e-14)

    def test_worked_case(self):
        u = ct.four_velocity_from_space([0.75, 0, 0])
        npt.assert_allclose(ct.spin_square(u, 1.0), 2.0 * np.eye(3), atol=1e-12)

    def test_casimir_everywhere(self, rng):
        for _ in range(50):
            u = smp.random_four_velocity(rng)
            for s in (0.0,) + SPINS:
                d = ct.spin_dimension(s)
                npt.assert_allclose(ct.spin_square(u, s), s * (s + 1) * np.eye(d), atol=1e-11)

    def test_two_contraction_forms_agree(self, rng):
        # (1/2) gamma gamma S S = (1/2) S_ij S_ij + u^i u^j S_ik S_jk
        for _ in range(20):
            u = smp.random_four_velocity(rng)
            S = ct.spin_tensor(u, 1.5).S
            direct = ct.spin_square(u, 1.5)
            second = 0.5 * np.einsum("ijab,ijbc->ac", S, S) + np.einsum(
                "i,j,ikab,jkbc->ac", u.uvec, u.uvec, S, S
            )
            npt.assert_allclose(direct, second, atol=1e-12)


class TestRotationRep:
    def test_identity(self):
        npt.assert_array_equal(ct.rotation_rep(np.eye(3), 1.5), np.eye(4))

    def test_worked_z_rotation(self):
        D = ct.rotation_rep(ct.rotation_from_axis_angle([0, 0, 1], np.pi / 2), 0.5)
        npt.assert_allclose(
            D, np.diag([np.exp(-1j * np.pi / 4), np.exp(1j * np.pi / 4)]), atol=1e-14
        )

    def test_unitary(self, rng):
        for _ in range(50):
            R = smp.random_rotation(rng)
            for s in (0.5, 1.0, 2.5):
                D = ct.rotation_rep(R, s)
                npt.assert_allclose(D @ D.conj().T, np.eye(D.shape[0]), atol=1e-12)

    def test_integer_composition(self, rng):
        for _ in range(50):
            R1, R2 = smp.random_rotation(rng), smp.random_rotation(rng)
            for s in (1.0, 2.0):
                lhs = ct.rotation_rep(R2, s) @ ct.rotation_rep(R1, s)
                npt.assert_allclose(lhs, ct.rotation_rep(R2 @ R1, s), atol=1e-11)

    def test_half_integer_projective(self, rng):
        for _ in range(50):
            R1, R2 = smp.random_rotation(rng), smp.random_rotation(rng)
            for s in (0.5, 1.5):
                lhs = ct.rotation_rep(R2, s) @ ct.rotation_rep(R1, s)
                rhs = ct.rotation_rep(R2 @ R1, s)
                diff = min(np.max(np.abs(lhs - rhs)), np.max(np.abs(lhs + rhs)))
                assert diff < 1e-9

    def test_adjoint_action_vector_rep(self, rng):
        J = ct.angular_momentum_matrices(1.0).J
        for _ in range(50):
            R = smp.random_rotation(rng)
            D = ct.rotation_rep(R, 1.0)
            for i in range(3):
                lhs = D @ J[i] @ D.conj().T
                rhs = sum(R[j, i] * J[j] for j in range(3))
                npt.assert_allclose(lhs, rhs, atol=1e-11)

    def test_rejects_non_rotation(self):
        with pytest.raises(DomainError):
            ct.rotation_rep(2.0 * np.eye(3), 0.5)


class TestAxisAngle:
    def test_roundtrip(self, rng):
        for _ in range(200):
            axis = smp.random_unit_vector(rng)
            theta = rng.uniform(1e-4, np.pi - 1e-4)
            n, t = ct.axis_angle(ct.rotation_from_axis_angle(axis, theta))
            assert t == pytest.approx(theta, abs=1e-9)
            npt.assert_allclose(n, axis, atol=1e-8)

    def test_half_turn(self, rng):
        for _ in range(50):
            axis = smp.random_unit_vector(rng)
            n, t = ct.axis_angle(ct.rotation_from_axis_angle(axis, np.pi))
            assert t == pytest.approx(np.pi, abs=1e-7)
            # axis sign is ambiguous at a half turn
            assert min(np.max(np.abs(n - axis)), np.max(np.abs(n + axis))) < 1e-7

    def test_identity(self):
        n, t = ct.axis_angle(np.eye(3))
        assert t == 0.0


class TestStructuralCommutation:
    def test_spin_commutes_with_position_on_packets(self, rng):
        # product states: a spin multiplet of packets; the tensor acts on the
        # multiplet index, the position operator on each component
        u = smp.random_four_velocity(rng, vmax=0.7)
        grid = ct.MomentumGrid.line(-8, 8, 257)
        S = ct.spin_tensor(u, 0.5).S[0, 1]
        comps = [
            ct.gaussian_packet(grid, u, 2.0, center=(0.3, 0, 0), sigma=1.0, xshift=(0.5, 0, 0)),
            ct.gaussian_packet(grid, u, 2.0, center=(-0.4, 0, 0), sigma=1.1, xshift=(0.1, 0, 0)),
        ]
        spin_then_pos = [
            ct.position_apply(
                comps[0].with_values(-(S[0, 0] * comps[0].values + S[1, 0] * comps[1].values),
                                     grad=-(S[0, 0] * comps[0].grad + S[1, 0] * comps[1].grad)),
                0,
            ).values,
            ct.position_apply(
                comps[0].with_values(-(S[0, 1] * comps[0].values + S[1, 1] * comps[1].values),
                                     grad=-(S[0, 1] * comps[0].grad + S[1, 1] * comps[1].grad)),
                0,
            ).values,
        ]
        moved = [ct.position_apply(c, 0).values for c in comps]
        pos_then_spin = [
            -(S[0, 0] * moved[0] + S[1, 0] * moved[1]),
            -(S[0, 1] * moved[0] + S[1, 1] * moved[1]),
        ]
        for a, b in zip(spin_then_pos, pos_then_spin):
            npt.assert_allclose(a, b, atol=1e-12)
