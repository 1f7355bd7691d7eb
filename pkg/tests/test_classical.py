import numpy as np
import numpy.testing as npt
import pytest

import ctqm as ct
from ctqm import sampling as smp
from ctqm.classical import Observable, PhaseSpacePoint, observable_product
from ctqm.errors import DomainError


def random_onshell(rng):
    u = smp.random_four_velocity(rng)
    m = smp.random_mass(rng)
    p = PhaseSpacePoint.on_shell(rng.normal(size=4), smp.random_kbreve(rng), u, m)
    return p, m


def admissible_velocity(rng, u):
    while True:
        v = rng.uniform(-0.9, 0.9, size=3)
        if (1.0 + u.u0 * (u.uvec @ v)) ** 2 - v @ v > 1e-2:
            return v


class TestLagrangian:
    def test_rest(self):
        assert ct.lagrangian(ct.PREFERRED, [0, 0, 0], 2.5) == pytest.approx(-2.5)

    def test_standard_limit(self):
        assert ct.lagrangian(ct.PREFERRED, [0.6, 0, 0], 1.0) == pytest.approx(-0.8)

    def test_matches_inverse_gamma(self):
        # L = -m / W0 with W the four-velocity of the frame comoving with the
        # particle; here W0 = 0.8 (same numbers as the boost-parameter case)
        u = ct.four_velocity_from_space([0.75, 0, 0])
        v = [0.9375, 0.0, 0.0]
        W = ct.boost_from_velocity(v, u)
        assert W[0] == pytest.approx(0.8, abs=1e-14)
        assert ct.lagrangian(u, v, 1.0) == pytest.approx(-1.0 / W[0], abs=1e-14)

    def test_superluminal_rejected(self):
        u = ct.four_velocity_from_space([0.75, 0, 0])
        with pytest.raises(DomainError):
            ct.lagrangian(u, [-0.999, 0, 0], 1.0)


class TestCanonicalMomenta:
    def test_rest(self):
        npt.assert_array_equal(ct.canonical_momenta(ct.PREFERRED, [0, 0, 0], 3.0), np.zeros(3))

    def test_standard_limit(self):
        pi = ct.canonical_momenta(ct.PREFERRED, [0.6, 0, 0], 1.0)
        npt.assert_allclose(pi, [0.75, 0, 0], atol=1e-15)

    def test_matches_finite_difference(self, rng):
        for _ in range(100):
            u = smp.random_four_velocity(rng)
            m = smp.random_mass(rng)
            v = admissible_velocity(rng, u)
            pi = ct.canonical_momenta(u, v, m)
            h = 1e-6
            for i in range(3):
                vp, vm = v.copy(), v.copy()
                vp[i] += h
                vm[i] -= h
                fd = (ct.lagrangian(u, vp, m) - ct.lagrangian(u, vm, m)) / (2 * h)
                assert pi[i] == pytest.approx(fd, abs=1e-7 * max(1, abs(pi[i])))


class TestHamiltonian:
    def test_rest_energy(self):
        assert ct.hamiltonian(ct.PREFERRED, [0, 0, 0], 1.5) == pytest.approx(1.5)

    def test_moving_frame_rest(self):
        u = ct.four_velocity_from_space([0.75, 0, 0])
        assert ct.hamiltonian(u, [0, 0, 0], 1.0) == pytest.approx(1.25)

    def test_pythagorean(self):
        assert ct.hamiltonian(ct.PREFERRED, [3, 0, 0], 4.0) == pytest.approx(5.0)

    def test_legendre_consistency(self, rng):
        for _ in range(200):
            u = smp.random_four_velocity(rng)
            m = smp.random_mass(rng)
            v = admissible_velocity(rng, u)
            pi = ct.canonical_momenta(u, v, m)
            assert ct.hamiltonian(u, pi, m) + ct.lagrangian(u, v, m) == pytest.approx(
                pi @ v, abs=1e-10 * max(1.0, m)
            )

    def test_equals_dispersion_energy(self, rng):
        # H(pi) is the on-shell energy k_0 at kbreve = -pi (k_mu = m omega_mu
        # while pi_i = -m omega_i)
        for _ in range(1000):
            u = smp.random_four_velocity(rng)
            m = smp.random_mass(rng)
            pi = smp.random_kbreve(rng)
            k0, _ = ct.dispersion_energy(-pi, u, m)
            assert ct.hamiltonian(u, pi, m) == pytest.approx(k0, rel=1e-12)


class TestPoissonBracket:
    def test_table(self, rng):
        for _ in range(100):
            p, _ = random_onshell(rng)
            kup = p.k_upper()
            for i in range(1, 4):
                for j in range(1, 4):
                    got = ct.poisson_bracket(
                        Observable.x_coordinate(i), Observable.k_coordinate(j), p
                    )
                    assert got == pytest.approx(-1.0 if i == j else 0.0, abs=1e-12)
                got = ct.poisson_bracket(
                    Observable.x_coordinate(i), Observable.k_coordinate(0), p
                )
                assert got == pytest.approx(kup[i] / kup[0], abs=1e-10)
            for mu in range(4):
                assert ct.poisson_bracket(
                    Observable.x_coordinate(0), Observable.k_coordinate(mu), p
                ) == pytest.approx(0.0, abs=1e-12)
                for nu in range(4):
                    assert ct.poisson_bracket(
                        Observable.k_coordinate(mu), Observable.k_coordinate(nu), p
                    ) == pytest.approx(0.0, abs=1e-12)
                    assert ct.poisson_bracket(
                        Observable.x_coordinate(mu), Observable.x_coordinate(nu), p
                    ) == pytest.approx(0.0, abs=1e-12)

    def test_table_with_finite_differences(self, rng):
        for _ in range(20):
            p, _ = random_onshell(rng)
            xi = Observable.x_coordinate(1).without_gradients()
            kj = Observable.k_coordinate(1).without_gradients()
            k0 = Observable.k_coordinate(0).without_gradients()
            assert ct.poisson_bracket(xi, kj, p) == pytest.approx(-1.0, abs=1e-9)
            kup = p.k_upper()
            assert ct.poisson_bracket(xi, k0, p) == pytest.approx(kup[1] / kup[0], abs=1e-9)

    def test_antisymmetry_exact(self, rng):
        for _ in range(50):
            p, _ = random_onshell(rng)
            A = Observable.quadratic(rng.normal(), rng.normal(size=8), 0.1 * rng.normal(size=(8, 8)))
            B = Observable.quadratic(rng.normal(), rng.normal(size=8), 0.1 * rng.normal(size=(8, 8)))
            assert ct.poisson_bracket(A, B, p) + ct.poisson_bracket(B, A, p) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_leibniz(self, rng):
        for _ in range(50):
            p, _ = random_onshell(rng)
            obs = [
                Observable.quadratic(
                    rng.normal(), 0.3 * rng.normal(size=8), 0.1 * rng.normal(size=(8, 8))
                )
                for _ in range(3)
            ]
            A, B, C = obs
            lhs = ct.poisson_bracket(A, observable_product(B, C), p)
            rhs = ct.poisson_bracket(A, B, p) * C(p) + B(p) * ct.poisson_bracket(A, C, p)
            assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_jacobi(self, rng):
        for _ in range(20):
            p, _ = random_onshell(rng)
            obs = [
                Observable.quadratic(
                    rng.normal(), 0.3 * rng.normal(size=8), 0.1 * rng.normal(size=(8, 8))
                )
                for _ in range(3)
            ]
            A, B, C = obs

            def nested(X, Y):
                return Observable(
                    fn=lambda x, k: ct.poisson_bracket(X, Y, PhaseSpacePoint(x, k, p.u))
                )

            total = (
                ct.poisson_bracket(A, nested(B, C), p)
                + ct.poisson_bracket(B, nested(C, A), p)
                + ct.poisson_bracket(C, nested(A, B), p)
            )
            assert total == pytest.approx(0.0, abs=1e-8)

    def test_constraint_compatibility(self, rng):
        for _ in range(100):
            p, _ = random_onshell(rng)
            ksq = Observable.mass_squared(p.u)
            for mu in range(4):
                assert ct.poisson_bracket(
                    ksq, Observable.k_coordinate(mu), p
                ) == pytest.approx(0.0, abs=1e-10)
                assert ct.poisson_bracket(
                    ksq, Observable.x_coordinate(mu), p
                ) == pytest.approx(0.0, abs=1e-10)


class TestEvolution:
    def test_momenta_conserved(self, rng):
        p, _ = random_onshell(rng)
        for i in range(1, 4):
            assert ct.evolve_observable(Observable.k_coordinate(i), p) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_velocity(self, rng):
        for _ in range(50):
            p, _ = random_onshell(rng)
            kup = p.k_upper()
            for i in range(1, 4):
                assert ct.evolve_observable(Observable.x_coordinate(i), p) == pytest.approx(
                    kup[i] / kup[0], abs=1e-10
                )

    def test_mass_shell_conserved(self, rng):
        for _ in range(100):
            p, _ = random_onshell(rng)
            assert ct.evolve_observable(Observable.mass_squared(p.u), p) == pytest.approx(
                0.0, abs=1e-10
            )

    def test_explicit_time_dependence(self, rng):
        p, _ = random_onshell(rng)
        A = Observable(fn=lambda x, k: 0.0, grad_x=lambda x, k: np.zeros(4),
                       grad_k=lambda x, k: np.zeros(4), partial_t=lambda x, k: 2.5)
        assert ct.evolve_observable(A, p) == pytest.approx(2.5)


class TestTrajectory:
    def test_rest_particle(self):
        p0 = PhaseSpacePoint.on_shell(np.zeros(4), np.zeros(3), ct.PREFERRED, 2.0)
        traj = ct.integrate_trajectory(p0, 10.0, 0.5)
        for q in traj:
            npt.assert_array_equal(q.x[1:], np.zeros(3))
        assert traj[-1].t == pytest.approx(10.0)

    def test_worked_case(self):
        # covariant kbreve = (3,0,0), m = 4: v = -k_1/k_0 = -0.6 at utilde
        p0 = PhaseSpacePoint.on_shell(np.zeros(4), [3.0, 0, 0], ct.PREFERRED, 4.0)
        traj = ct.integrate_trajectory(p0, 10.0, 1.0)
        npt.assert_allclose(traj[-1].x[1:], [-6.0, 0, 0], atol=1e-12)
        assert all(abs(q.shell_residual(4.0)) < 1e-12 for q in traj)

    def test_on_shell_everywhere(self, rng):
        for _ in range(20):
            p0, m = random_onshell(rng)
            for q in ct.integrate_trajectory(p0, 3.0, 0.1):
                assert abs(q.shell_residual(m)) < 1e-12

    def test_velocity_momentum_roundtrip(self, rng):
        for _ in range(100):
            p0, m = random_onshell(rng)
            v = ct.velocity_from_momentum(p0.u, p0.k[1:], m)
            npt.assert_allclose(ct.covariant_momentum(p0.u, v, m), p0.k, atol=1e-10)

    def test_velocity_sign_convention(self, rng):
        # feeding the trajectory velocity through the Lagrangian momenta
        # returns -kbreve (pi_i = -m omega_i = -k_i)
        p0, m = random_onshell(rng)
        v = ct.velocity_from_momentum(p0.u, p0.k[1:], m)
        pi = ct.canonical_momenta(p0.u, v, m)
        npt.assert_allclose(pi, -p0.k[1:], atol=1e-10)


class TestObservableGradients:
    def test_supplied_gradient_matches_fd(self, rng):
        for _ in range(20):
            p, _ = random_onshell(rng)
            A = Observable.quadratic(rng.normal(), rng.normal(size=8), 0.2 * rng.normal(size=(8, 8)))
            fd = A.without_gradients()
            npt.assert_allclose(A.dx(p), fd.dx(p), atol=1e-7)
            npt.assert_allclose(A.dk(p), fd.dk(p), atol=1e-7)
