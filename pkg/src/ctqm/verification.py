"""Numerical verification suites behind the `verify` command.

Every closed-form identity of the library has a seeded randomized check
here; each check reports the worst residual over its cases together with
the tolerance it is held to.  Reports are deterministic for a given seed
and entries are ordered by test id.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import classical as cl
from . import kinematics as kin
from . import representation as rep
from . import sampling as smp
from . import spin as sp
from . import wavepacket as wp

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckResult:
    test_id: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    seed: int
    n_cases: int
    entries: tuple
    duration_s: float

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json_dict(self) -> dict:
        # duration stays out of the JSON body so identical flags + seed
        # produce byte-identical reports
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "n": self.n_cases,
            "pass": self.passed,
            "entries": [
                {
                    "id": e.test_id,
                    "residual": float(e.residual),
                    "tolerance": float(e.tolerance),
                    "pass": e.passed,
                }
                for e in self.entries
            ],
        }


def _rng(seed: int, tag: int) -> np.random.Generator:
    return np.random.default_rng([seed, tag])


# ---------------------------------------------------------------- kinematics


def check_group_law(seed, n):
    rng = _rng(seed, 1)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        L1 = smp.random_lorentz(rng)
        L2 = smp.random_lorentz(rng)
        D1 = kin.transform_from_lorentz(L1, u)
        D2 = kin.transform_from_lorentz(L2, D1.target_u)
        D21 = kin.transform_from_lorentz(L2 @ L1, u)
        worst = max(worst, float(np.linalg.norm(D2.matrix @ D1.matrix - D21.matrix)))
    return CheckResult("group-law", worst, 1e-10)


def check_inverse_law(seed, n):
    rng = _rng(seed, 2)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        L = smp.random_lorentz(rng)
        D = kin.transform_from_lorentz(L, u)
        Dinv = kin.transform_from_lorentz(np.linalg.inv(L), D.target_u)
        worst = max(worst, float(np.linalg.norm(np.linalg.inv(D.matrix) - Dinv.matrix)))
    return CheckResult("inverse-law", worst, 1e-10)


def check_triangularity(seed, n):
    rng = _rng(seed, 3)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        D = kin.transform_from_lorentz(smp.random_lorentz(rng), u)
        worst = max(worst, float(np.max(np.abs(D.matrix[0, 1:]))))
    return CheckResult("triangularity", worst, 1e-13)


def check_metric_closed_form(seed, n):
    rng = _rng(seed, 4)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        g = kin.metric(u)
        T, _ = kin.intertwiner(u)
        eta = np.diag([1.0, -1.0, -1.0, -1.0])
        worst = max(
            worst,
            float(np.max(np.abs(g.covariant - np.linalg.inv(T @ eta @ T.T)))),
            float(np.max(np.abs(g.covariant @ g.contravariant - np.eye(4)))),
        )
    return CheckResult("metric-closed-form", worst, 1e-12)


def check_metric_congruence(seed, n):
    rng = _rng(seed, 5)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        D = kin.transform_from_lorentz(smp.random_lorentz(rng), u)
        g = kin.metric(u).covariant
        gp = kin.metric(D.target_u).covariant
        Dinv = np.linalg.inv(D.matrix)
        worst = max(worst, float(np.max(np.abs(Dinv.T @ g @ Dinv - gp))))
    return CheckResult("metric-congruence", worst, 1e-12)


def check_velocity_identities(seed, n):
    rng = _rng(seed, 6)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        worst = max(
            worst,
            abs(1.0 / u.u0**2 - u.uvec @ u.uvec - 1.0),
            float(np.max(np.abs((kin.metric(u).lower(u.components))[1:]))),
            abs(kin.metric(u).lower(u.components) @ u.components - 1.0),
        )
    return CheckResult("velocity-identities", worst, 1e-13)


def check_ep_roundtrip(seed, n):
    rng = _rng(seed, 7)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        x = kin.FourVector(rng.normal(size=4), kin.CONTRAVARIANT, u)
        back = kin.ep_from_ct(kin.ct_from_ep(x, u), u)
        worst = max(worst, float(np.max(np.abs(back.components - x.components))))
        # time lapse at a fixed space point agrees in both synchronizations
        dt = rng.normal()
        y = kin.FourVector(x.components + np.array([dt, 0, 0, 0]), kin.CONTRAVARIANT, u)
        lapse = (
            kin.ep_from_ct(y, u).components[0] - kin.ep_from_ct(x, u).components[0]
        )
        worst = max(worst, abs(lapse - dt))
    return CheckResult("ep-roundtrip", worst, 1e-13)


def check_lightspeed_roundtrip(seed, n):
    rng = _rng(seed, 8)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        _, avg = kin.light_speed(u, smp.random_unit_vector(rng))
        worst = max(worst, abs(avg - 1.0))
        verts = [rng.normal(size=3) for _ in range(rng.integers(3, 6))]
        worst = max(worst, abs(kin.closed_path_average_speed(u, verts) - 1.0))
    return CheckResult("lightspeed-roundtrip", worst, 1e-13)


def check_lightspeed_null_root(seed, n):
    rng = _rng(seed, 9)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        d = smp.random_unit_vector(rng)
        one_way, _ = kin.light_speed(u, d)
        worst = max(worst, abs(one_way - kin.light_speed_from_null_roots(u, d)))
    return CheckResult("lightspeed-null-root", worst, 1e-10)


# ----------------------------------------------------------------- classical


def _random_onshell_point(rng):
    u = smp.random_four_velocity(rng)
    m = smp.random_mass(rng)
    kb = smp.random_kbreve(rng)
    x = rng.normal(size=4)
    return cl.PhaseSpacePoint.on_shell(x, kb, u, m), m


def check_bracket_table(seed, n, analytic=True):
    rng = _rng(seed, 10 if analytic else 11)
    worst = 0.0
    for _ in range(n):
        p, _ = _random_onshell_point(rng)
        kup = p.k_upper()
        obs_x = [cl.Observable.x_coordinate(mu) for mu in range(4)]
        obs_k = [cl.Observable.k_coordinate(mu) for mu in range(4)]
        if not analytic:
            obs_x = [o.without_gradients() for o in obs_x]
            obs_k = [o.without_gradients() for o in obs_k]
        for i in range(1, 4):
            for j in range(1, 4):
                got = cl.poisson_bracket(obs_x[i], obs_k[j], p)
                worst = max(worst, abs(got - (-1.0 if i == j else 0.0)))
            worst = max(worst, abs(cl.poisson_bracket(obs_x[i], obs_k[0], p)
                                   - kup[i] / kup[0]))
        for mu in range(4):
            worst = max(worst, abs(cl.poisson_bracket(obs_x[0], obs_k[mu], p)))
            for nu in range(4):
                worst = max(worst, abs(cl.poisson_bracket(obs_k[mu], obs_k[nu], p)))
        for mu in range(4):
            for nu in range(4):
                worst = max(worst, abs(cl.poisson_bracket(obs_x[mu], obs_x[nu], p)))
    tol = 1e-12 if analytic else 1e-9
    tag = "bracket-table-analytic" if analytic else "bracket-table-fd"
    return CheckResult(tag, worst, tol)


def check_bracket_axioms(seed, n):
    rng = _rng(seed, 12)
    worst_leib = 0.0
    worst_anti = 0.0
    for _ in range(n):
        p, _ = _random_onshell_point(rng)
        obs = [
            cl.Observable.quadratic(
                rng.normal(), 0.3 * rng.normal(size=8), 0.1 * rng.normal(size=(8, 8))
            )
            for _ in range(3)
        ]
        A, B, C = obs
        worst_anti = max(
            worst_anti, abs(cl.poisson_bracket(A, B, p) + cl.poisson_bracket(B, A, p))
        )
        lhs = cl.poisson_bracket(A, cl.observable_product(B, C), p)
        rhs = cl.poisson_bracket(A, B, p) * C(p) + B(p) * cl.poisson_bracket(A, C, p)
        worst_leib = max(worst_leib, abs(lhs - rhs))
    return (
        CheckResult("bracket-antisymmetry", worst_anti, 1e-12),
        CheckResult("bracket-leibniz", worst_leib, 1e-9),
    )


def check_jacobi(seed, n):
    rng = _rng(seed, 13)
    worst = 0.0
    for _ in range(max(1, n // 10)):
        p, _ = _random_onshell_point(rng)
        obs = [
            cl.Observable.quadratic(
                rng.normal(), 0.3 * rng.normal(size=8), 0.1 * rng.normal(size=(8, 8))
            )
            for _ in range(3)
        ]
        A, B, C = obs

        def nested(X, Y):
            return cl.Observable(
                fn=lambda x, k: cl.poisson_bracket(X, Y, cl.PhaseSpacePoint(x, k, p.u))
            )

        total = (
            cl.poisson_bracket(A, nested(B, C), p)
            + cl.poisson_bracket(B, nested(C, A), p)
            + cl.poisson_bracket(C, nested(A, B), p)
        )
        worst = max(worst, abs(total))
    return CheckResult("bracket-jacobi", worst, 1e-8)


def check_constraint_compatibility(seed, n):
    rng = _rng(seed, 14)
    worst = 0.0
    for _ in range(n):
        p, _ = _random_onshell_point(rng)
        ksq = cl.Observable.mass_squared(p.u)
        for mu in range(4):
            worst = max(
                worst,
                abs(cl.poisson_bracket(ksq, cl.Observable.k_coordinate(mu), p)),
                abs(cl.poisson_bracket(ksq, cl.Observable.x_coordinate(mu), p)),
            )
    return CheckResult("bracket-constraint", worst, 1e-10)


def check_legendre(seed, n):
    rng = _rng(seed, 15)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        while True:
            v = rng.uniform(-0.9, 0.9, size=3)
            if (1.0 + u.u0 * (u.uvec @ v)) ** 2 - v @ v > 1e-3:
                break
        pi = cl.canonical_momenta(u, v, m)
        worst = max(
            worst,
            abs(cl.hamiltonian(u, pi, m) + cl.lagrangian(u, v, m) - pi @ v),
        )
    return CheckResult("legendre", worst, 1e-10)


def check_momenta_fd(seed, n):
    rng = _rng(seed, 16)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        while True:
            v = rng.uniform(-0.8, 0.8, size=3)
            if (1.0 + u.u0 * (u.uvec @ v)) ** 2 - v @ v > 0.05:
                break
        pi = cl.canonical_momenta(u, v, m)
        for i in range(3):
            h = 1e-6
            vp, vm = v.copy(), v.copy()
            vp[i] += h
            vm[i] -= h
            fd = (cl.lagrangian(u, vp, m) - cl.lagrangian(u, vm, m)) / (2 * h)
            worst = max(worst, abs(pi[i] - fd) / max(1.0, abs(pi[i])))
    return CheckResult("momenta-fd", worst, 1e-7)


def check_hamiltonian_dispersion(seed, n):
    rng = _rng(seed, 17)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        pi = smp.random_kbreve(rng)
        H = cl.hamiltonian(u, pi, m)
        k0, _ = rep.dispersion_energy(-pi, u, m)
        worst = max(worst, abs(H - k0) / max(1.0, abs(k0)))
    return CheckResult("hamiltonian-dispersion", worst, 1e-12)


def check_trajectory(seed, n):
    rng = _rng(seed, 18)
    worst_shell = 0.0
    worst_round = 0.0
    for _ in range(max(1, n // 10)):
        p0, m = _random_onshell_point(rng)
        traj = cl.integrate_trajectory(p0, 5.0, 0.05)
        worst_shell = max(worst_shell, max(abs(q.shell_residual(m)) for q in traj))
        v = cl.velocity_from_momentum(p0.u, p0.k[1:], m)
        k_back = cl.covariant_momentum(p0.u, v, m)
        worst_round = max(worst_round, float(np.max(np.abs(k_back - p0.k))))
    return (
        CheckResult("trajectory-shell", worst_shell, 1e-12),
        CheckResult("trajectory-velocity-roundtrip", worst_round, 1e-10),
    )


# ------------------------------------------------------------ representation


def check_dispersion_shell(seed, n):
    rng = _rng(seed, 20)
    worst_shell = 0.0
    worst_energy = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        kb = smp.random_kbreve(rng)
        k0, om = rep.dispersion_energy(kb, u, m)
        k = np.concatenate(([k0], kb))
        ginv = kin.metric(u).contravariant
        worst_shell = max(worst_shell, abs(k @ ginv @ k - m**2) / max(1.0, m**2))
        uk = u.components @ k
        worst_energy = max(worst_energy, abs(om - u.u0 * uk) / max(1.0, om))
    return (
        CheckResult("dispersion-shell", worst_shell, 1e-11),
        CheckResult("energy-identity", worst_energy, 1e-13),
    )


def check_q0_additivity(seed, n):
    rng = _rng(seed, 21)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        kb, qb = smp.random_kbreve(rng), smp.random_kbreve(rng)
        k0, _ = rep.dispersion_energy(kb, u, m)
        k0q, _ = rep.dispersion_energy(kb + qb, u, m)
        worst = max(worst, abs(k0 + rep.q0_shift(kb, qb, u, m) - k0q) / max(1.0, abs(k0q)))
    return CheckResult("q0-additivity", worst, 1e-12)


def _random_state(rng, u, m, s, normalization=rep.STANDARD, nterms=2):
    lams = [s - i for i in range(int(round(2 * s)) + 1)]
    terms = []
    for _ in range(nterms):
        amp = rng.normal() + 1j * rng.normal()
        st = rep.MomentumBasisState(
            smp.random_kbreve(rng), u, m, s, float(rng.choice(lams)), normalization
        )
        terms.append((amp, st))
    return rep.StateVector(rep._coalesce(terms))


def check_translation(seed, n):
    rng = _rng(seed, 22)
    worst_norm = 0.0
    worst_comp = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        psi = _random_state(rng, u, m, s=0.0)
        q1, q2 = smp.random_kbreve(rng), smp.random_kbreve(rng)
        t = rng.normal()
        moved = rep.translate_state(psi, q1, t)
        worst_norm = max(worst_norm, abs(moved.norm() - psi.norm()) / psi.norm())
        twice = rep.translate_state(moved, q2, t)
        once = rep.translate_state(psi, q1 + q2, t)
        for (a, sa), (b, sb) in zip(twice.terms, once.terms):
            worst_comp = max(
                worst_comp,
                float(np.max(np.abs(sa.kbreve - sb.kbreve))),
                abs(abs(a) - abs(b)),
            )
    return (
        CheckResult("translation-unitarity", worst_norm, 1e-12),
        CheckResult("translation-composition", worst_comp, 1e-12),
    )


def check_wigner(seed, n):
    rng = _rng(seed, 23)
    worst_orth = 0.0
    worst_id = 0.0
    worst_comp = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        L1 = smp.random_lorentz(rng)
        R1 = rep.wigner_rotation(L1, u)
        worst_orth = max(
            worst_orth,
            float(np.max(np.abs(R1.T @ R1 - np.eye(3)))),
            abs(np.linalg.det(R1) - 1.0),
        )
        uprime = kin.transform_from_lorentz(L1, u).target_u
        L2 = smp.random_lorentz(rng)
        R2 = rep.wigner_rotation(L2, uprime)
        R21 = rep.wigner_rotation(L2 @ L1, u)
        worst_comp = max(worst_comp, float(np.max(np.abs(R2 @ R1 - R21))))
        worst_id = max(
            worst_id,
            float(
                np.max(
                    np.abs(
                        rep.wigner_rotation(kin.preferred_boost_matrix(u), kin.PREFERRED)
                        - np.eye(3)
                    )
                )
            ),
        )
    return (
        CheckResult("wigner-orthogonality", worst_orth, 1e-11),
        CheckResult("wigner-identity-boost", worst_id, 1e-12),
        CheckResult("wigner-composition", worst_comp, 1e-10),
    )


def check_lorentz_action(seed, n):
    rng = _rng(seed, 24)
    worst_shell = 0.0
    worst_unit = 0.0
    worst_comp = 0.0
    for _ in range(max(1, n // 4)):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        for s in (0.5, 1.0):
            psi = _random_state(rng, u, m, s=s)
            L1 = smp.random_lorentz(rng)
            L2 = smp.random_lorentz(rng)
            out1 = rep.lorentz_action(L1, psi)
            for _, st in out1.terms:
                k = st.k
                ginv = kin.metric(st.u).contravariant
                worst_shell = max(worst_shell, abs(k @ ginv @ k - m**2) / max(1.0, m**2))
                worst_shell = max(worst_shell, 0.0 if st.k_upper0 > 0 else np.inf)
            worst_unit = max(worst_unit, abs(out1.norm() - psi.norm()) / psi.norm())
            chained = rep.lorentz_action(L2, out1)
            direct = rep.lorentz_action(L2 @ L1, psi)
            worst_comp = max(worst_comp, _state_distance(chained, direct, psi.s))
    return (
        CheckResult("lorentz-action-onshell", worst_shell, 1e-11),
        CheckResult("lorentz-action-unitarity", worst_unit, 1e-10),
        CheckResult("lorentz-action-composition", worst_comp, 1e-9),
    )


def _state_distance(a: rep.StateVector, b: rep.StateVector, s: float) -> float:
    """Distance up to a global sign for half-integer spin (double cover)."""

    def key(st):
        return (tuple(np.round(st.kbreve, 6)), st.lam)

    da = {key(st): amp for amp, st in a.terms}
    db = {key(st): amp for amp, st in b.terms}
    if set(da) != set(db):
        return np.inf
    va = np.array([da[k] for k in sorted(da)])
    vb = np.array([db[k] for k in sorted(db)])
    plain = float(np.max(np.abs(va - vb)))
    if s % 1.0 == 0.0:
        return plain
    return min(plain, float(np.max(np.abs(va + vb))))


def check_basis_from_rest(seed, n):
    rng = _rng(seed, 25)
    worst = 0.0
    for _ in range(max(1, n // 4)):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        kb = smp.random_kbreve(rng)
        recipe = rep.basis_from_rest(kb, u, m, s=0.0, lam=0.0)
        built = recipe.build(t=rng.normal())
        assert len(built.terms) == 1
        amp, st = built.terms[0]
        worst = max(
            worst,
            abs(amp - 1.0),
            float(np.max(np.abs(st.kbreve - kb))),
        )
    return CheckResult("basis-from-rest", worst, 1e-10)


def check_measure_ratio(seed, n):
    rng = _rng(seed, 26)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        kb = smp.random_kbreve(rng)
        std = rep.measure_weight(kb, u, m, rep.STANDARD)
        inv = rep.measure_weight(kb, u, m, rep.INVARIANT)
        uk = rep.uk_scalar(kb, u, m)
        worst = max(worst, abs(uk * std - inv))
    return CheckResult("measure-ratio", worst, 1e-13)


def check_rescale_roundtrip(seed, n):
    rng = _rng(seed, 27)
    worst = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        m = smp.random_mass(rng)
        psi = _random_state(rng, u, m, s=0.0)
        back = rep.rescale_normalization(
            rep.rescale_normalization(psi, rep.INVARIANT), rep.STANDARD
        )
        for (a, _), (b, _) in zip(psi.terms, back.terms):
            worst = max(worst, abs(a - b))
    return CheckResult("rescale-roundtrip", worst, 1e-14)


# ------------------------------------------------------------------- spin


def check_spin_rep(seed, n):
    worst_comm = 0.0
    worst_cas = 0.0
    eps = sp._EPS
    for s in (0.0, 0.5, 1.0, 1.5, 2.0, 2.5):
        J = sp.angular_momentum_matrices(s).J
        d = J.shape[1]
        for i in range(3):
            for j in range(3):
                comm = J[i] @ J[j] - J[j] @ J[i]
                expect = 1j * np.einsum("k,kab->ab", eps[i, j], J)
                worst_comm = max(worst_comm, float(np.max(np.abs(comm - expect))))
        casimir = sum(J[i] @ J[i] for i in range(3))
        worst_cas = max(
            worst_cas, float(np.max(np.abs(casimir - s * (s + 1) * np.eye(d))))
        )
    return (
        CheckResult("spin-rep-commutators", worst_comm, 1e-13),
        CheckResult("spin-rep-casimir", worst_cas, 1e-12),
    )


def check_rest_tensor_algebra(seed, n):
    worst = 0.0
    for s in (0.5, 1.0, 1.5, 2.0, 2.5):
        St = sp.rest_spin_tensor(s).S
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    for l in range(3):
                        comm = St[i, j] @ St[k, l] - St[k, l] @ St[i, j]
                        expect = -1j * (
                            (i == l) * St[j, k]
                            + (j == k) * St[i, l]
                            - (i == k) * St[j, l]
                            - (j == l) * St[i, k]
                        )
                        worst = max(worst, float(np.max(np.abs(comm - expect))))
    return CheckResult("spin-rest-algebra", worst, 1e-13)


def check_spin_tensor_algebra(seed, n):
    rng = _rng(seed, 30)
    worst_alg = 0.0
    worst_herm = 0.0
    for _ in range(max(1, n // 4)):
        u = smp.random_four_velocity(rng)
        g = kin.metric(u).covariant[1:, 1:]
        for s in (0.5, 1.0, 1.5, 2.0, 2.5):
            S = sp.spin_tensor(u, s).S
            for i in range(3):
                for j in range(3):
                    worst_herm = max(
                        worst_herm,
                        float(np.max(np.abs(S[i, j] - S[i, j].conj().T))),
                        float(np.max(np.abs(S[i, j] + S[j, i]))),
                    )
                    for k in range(3):
                        for l in range(3):
                            comm = S[i, j] @ S[k, l] - S[k, l] @ S[i, j]
                            expect = 1j * (
                                g[i, l] * S[j, k]
                                + g[j, k] * S[i, l]
                                - g[i, k] * S[j, l]
                                - g[j, l] * S[i, k]
                            )
                            worst_alg = max(
                                worst_alg, float(np.max(np.abs(comm - expect)))
                            )
    return (
        CheckResult("spin-tensor-algebra", worst_alg, 1e-11),
        CheckResult("spin-tensor-hermiticity", worst_herm, 1e-13),
    )


def check_spin_consistency(seed, n):
    rng = _rng(seed, 31)
    worst = 0.0
    for _ in range(max(1, n // 4)):
        u = smp.random_four_velocity(rng)
        L = smp.random_lorentz(rng)
        D = kin.transform_from_lorentz(L, u)
        Omega = D.matrix[1:, 1:]
        R = rep.wigner_rotation(L, u)
        for s in (0.5, 1.0):
            S_u = sp.spin_tensor(u, s).S
            S_up = sp.spin_tensor(D.target_u, s).S
            Ds = sp.rotation_rep(R, s)
            lhs = np.einsum("ab,ijbc,cd->ijad", Ds, S_u, Ds.conj().T)
            rhs = np.einsum("ki,klab,lj->ijab", Omega, S_up, Omega)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return CheckResult("spin-consistency", worst, 1e-10)


def check_gamma_and_congruence(seed, n):
    rng = _rng(seed, 32)
    worst_gamma = 0.0
    worst_cong = 0.0
    worst_bilinear = 0.0
    for _ in range(n):
        u = smp.random_four_velocity(rng)
        gam = sp.gamma_spatial(u)
        gsp = kin.metric(u).covariant[1:, 1:]
        worst_gamma = max(worst_gamma, float(np.max(np.abs(gam @ gsp - np.eye(3)))))
        L = smp.random_lorentz(rng)
        D = kin.transform_from_lorentz(L, u)
        Om = D.matrix[1:, 1:]
        Om_inv = np.linalg.inv(Om)
        gsp_p = kin.metric(D.target_u).covariant[1:, 1:]
        worst_cong = max(
            worst_cong, float(np.max(np.abs(Om_inv.T @ gsp @ Om_inv - gsp_p)))
        )
        # invariance of the gamma-contracted bilinear for numeric tensors
        M = rng.normal(size=(3, 3))
        M_p = Om_inv.T @ M @ Om_inv  # the spatial tensor seen at the target frame
        gam_p = sp.gamma_spatial(D.target_u)
        inv_here = np.einsum("ik,jl,ij,kl->", gam, gam, M, M)
        inv_there = np.einsum("ik,jl,ij,kl->", gam_p, gam_p, M_p, M_p)
        worst_bilinear = max(worst_bilinear, abs(inv_here - inv_there) / max(1.0, abs(inv_here)))
    return (
        CheckResult("spin-gamma-inverse", worst_gamma, 1e-13),
        CheckResult("spin-spatial-congruence", worst_cong, 1e-11),
        CheckResult("spin-bilinear-invariance", worst_bilinear, 1e-11),
    )


def check_spin_square(seed, n):
    rng = _rng(seed, 33)
    worst = 0.0
    for _ in range(max(1, n // 4)):
        u = smp.random_four_velocity(rng)
        for s in (0.0, 0.5, 1.0, 1.5, 2.0, 2.5):
            d = sp.spin_dimension(s)
            sq = sp.spin_square(u, s)
            worst = max(worst, float(np.max(np.abs(sq - s * (s + 1) * np.eye(d)))))
    return CheckResult("spin-square", worst, 1e-11)


def check_rotation_rep(seed, n):
    rng = _rng(seed, 34)
    worst_unit = 0.0
    worst_comp_int = 0.0
    worst_comp_half = 0.0
    worst_adj = 0.0
    J1 = sp.angular_momentum_matrices(1.0).J
    for _ in range(max(1, n // 2)):
        R1 = smp.random_rotation(rng)
        R2 = smp.random_rotation(rng)
        for s in (0.5, 1.0, 1.5):
            D1 = sp.rotation_rep(R1, s)
            d = D1.shape[0]
            worst_unit = max(
                worst_unit, float(np.max(np.abs(D1 @ D1.conj().T - np.eye(d))))
            )
            D2 = sp.rotation_rep(R2, s)
            D21 = sp.rotation_rep(R2 @ R1, s)
            diff = float(np.max(np.abs(D2 @ D1 - D21)))
            if s % 1.0 == 0.0:
                worst_comp_int = max(worst_comp_int, diff)
            else:
                worst_comp_half = max(
                    worst_comp_half,
                    min(diff, float(np.max(np.abs(D2 @ D1 + D21)))),
                )
        # adjoint action for s = 1: D J_i D^dagger = R_{ji} J_j
        D1v = sp.rotation_rep(R1, 1.0)
        for i in range(3):
            lhs = D1v @ J1[i] @ D1v.conj().T
            rhs = sum(R1[j, i] * J1[j] for j in range(3))
            worst_adj = max(worst_adj, float(np.max(np.abs(lhs - rhs))))
    return (
        CheckResult("rotation-rep-unitarity", worst_unit, 1e-11),
        CheckResult("rotation-rep-composition", worst_comp_int, 1e-11),
        CheckResult("rotation-rep-projective", worst_comp_half, 1e-9),
        CheckResult("rotation-rep-adjoint", worst_adj, 1e-11),
    )


# --------------------------------------------------------------- wave packets


def _test_grid(periodic=False):
    return wp.MomentumGrid.line(-8.0, 8.0, 257, periodic=periodic)


def _random_packet(rng, u, m, grid=None, analytic=True, measure=rep.STANDARD):
    grid = grid or _test_grid()
    if analytic:
        center, sigma, shift = rng.uniform(-1, 1), rng.uniform(0.8, 1.1), 1.5
    else:
        # finite differences need smoother, better-contained packets
        center, sigma, shift = rng.uniform(-0.3, 0.3), rng.uniform(1.8, 2.2), 0.1
    pkt = wp.gaussian_packet(
        grid,
        u,
        m,
        center=(center, 0.0, 0.0),
        sigma=sigma,
        xshift=rng.uniform(-shift, shift, size=3),
        measure=measure,
    )
    if not analytic:
        pkt = pkt.with_values(pkt.values)
    return pkt


def check_position_commutators(seed, n, analytic=True):
    rng = _rng(seed, 40 if analytic else 41)
    worst = 0.0
    grid2d = wp.MomentumGrid([(-8.0, 8.0, 257), (-8.0, 8.0, 257), 0.0])
    for _ in range(max(1, n // 40)):
        # slowly varying dispersion fields keep the FD truncation error in
        # spec: moderate frames and masses well above the momentum spacing
        vmax, mlo = (0.7, 0.8) if analytic else (0.5, 2.0)
        u = smp.random_four_velocity(rng, vmax=vmax)
        m = smp.random_mass(rng, mlo, 4.0)
        psi = _random_packet(rng, u, m, analytic=analytic)
        worst = max(
            worst,
            wp.commutator_residual(psi, ("x", 0), ("p", 1)),
            wp.commutator_residual(psi, ("x", 0), ("p", 2)),
            wp.commutator_residual(psi, ("x", 0), ("p", 0)),
            wp.commutator_residual(psi, ("x0",), ("p", 0), x0_value=1.3),
        )
        # the x-x pair differentiates along two axes, so the FD path needs
        # both of them active
        psi2 = _random_packet(rng, u, m, grid=grid2d, analytic=analytic)
        worst = max(
            worst,
            wp.commutator_residual(psi2, ("x", 0), ("x", 1)),
            wp.commutator_residual(psi2, ("x", 0), ("x", 2))
            if analytic
            else wp.commutator_residual(psi2, ("x", 1), ("x", 0)),
        )
    tol = 1e-8 if analytic else 1e-6
    tag = "position-commutators" + ("" if analytic else "-fd")
    return CheckResult(tag, worst, tol)


def check_hermiticity(seed, n):
    rng = _rng(seed, 42)
    worst = 0.0
    for _ in range(max(1, n // 20)):
        u = smp.random_four_velocity(rng, vmax=0.7)
        m = smp.random_mass(rng, 0.8, 3.0)
        phi = _random_packet(rng, u, m)
        psi = _random_packet(rng, u, m)
        lhs = wp.scalar_product(phi, wp.position_apply(psi, 0))
        rhs = wp.scalar_product(wp.position_apply(phi, 0), psi)
        scale = phi.norm() * psi.norm()
        worst = max(worst, abs(lhs - rhs) / scale)
    return CheckResult("position-hermiticity", worst, 1e-8)


def check_nw_coincidence(seed, n):
    rng = _rng(seed, 43)
    worst = 0.0
    for _ in range(20):
        m = smp.random_mass(rng, 0.8, 3.0)
        psi = _random_packet(rng, kin.PREFERRED, m)
        a = wp.position_apply(psi, 0)
        b = wp.newton_wigner_apply(psi, 0)
        worst = max(worst, psi.with_values(a.values - b.values).norm() / a.norm())
    return CheckResult("newton-wigner-coincidence", worst, 1e-9)


def check_localized_eigen(seed, n):
    rng = _rng(seed, 44)
    worst_fd = 0.0
    worst_analytic = 0.0
    worst_mass = 0.0
    grid = _test_grid(periodic=True)
    span = 16.0
    dual = 2.0 * np.pi / span
    # the periodic continuation of sqrt(u.k) has a kink at the wrap point, so
    # the FD eigen-residual is an interior-point statement
    interior = slice(4, -4)
    for _ in range(10):
        u = smp.random_four_velocity(rng, vmax=0.5)
        m = smp.random_mass(rng, 1.5, 3.0)
        xi = np.array([rng.integers(-1, 2) * dual, 0.0, 0.0])
        chi = wp.localized_wavefunction(xi, 0.0, 0.0, grid, u, m)
        scale = float(np.max(np.abs(chi.values)))
        out = wp.position_apply(chi, 0)
        resid = np.abs(out.values - xi[0] * chi.values)
        worst_analytic = max(worst_analytic, float(np.max(resid)) / scale)
        chi_fd = chi.with_values(chi.values)  # drop the closed-form gradient
        out_fd = wp.position_apply(chi_fd, 0)
        resid_fd = np.abs(out_fd.values - xi[0] * chi.values)
        worst_fd = max(worst_fd, float(np.max(resid_fd[interior])) / scale)
        back = wp.mass_squared_apply(chi)
        worst_mass = max(
            worst_mass,
            float(np.max(np.abs(back.values - m**2 * chi.values))) / (m**2 * scale),
        )
    return (
        CheckResult("localized-eigenvalue", worst_fd, 1e-6),
        CheckResult("localized-eigenvalue-analytic", worst_analytic, 1e-10),
        CheckResult("localized-definite-mass", worst_mass, 1e-12),
    )


def check_localized_orthogonality(seed, n):
    rng = _rng(seed, 45)
    worst_zero = 0.0
    worst_coeff = 0.0
    grid = _test_grid(periodic=True)
    npts = grid.shape[0]
    dk = grid.spacing[0]
    dual = 2.0 * np.pi / (npts * dk)
    for _ in range(10):
        u = smp.random_four_velocity(rng, vmax=0.7)
        m = smp.random_mass(rng, 0.8, 3.0)
        chi0 = wp.localized_wavefunction(np.zeros(3), 0.0, 0.0, grid, u, m)
        same = wp.scalar_product(chi0, chi0)
        # discrete delta normalization: peak value is (2pi)^-3 N dk / (2 u0)
        coeff = same.real * (2.0 * np.pi) ** 3 / (npts * dk)
        worst_coeff = max(worst_coeff, abs(coeff - 1.0 / (2.0 * u.u0)))
        for mstep in (1, 3):
            chi1 = wp.localized_wavefunction(
                np.array([mstep * dual, 0.0, 0.0]), 0.0, 0.0, grid, u, m
            )
            overlap = wp.scalar_product(chi1, chi0)
            worst_zero = max(worst_zero, abs(overlap) / abs(same))
    return (
        CheckResult("localized-orthogonality", worst_zero, 1e-12),
        CheckResult("localized-delta-coefficient", worst_coeff, 1e-12),
    )


def check_measure_equivalence(seed, n):
    rng = _rng(seed, 46)
    worst_conj = 0.0
    worst_eigen = 0.0
    for _ in range(50):
        u = smp.random_four_velocity(rng, vmax=0.7)
        m = smp.random_mass(rng, 0.8, 3.0)
        psi_inv = _random_packet(rng, u, m, measure=rep.INVARIANT)
        direct = wp.position_apply_invariant(psi_inv, 0)
        conjugated = wp.rescale_measure(
            wp.position_apply(wp.rescale_measure(psi_inv, rep.STANDARD), 0),
            rep.INVARIANT,
        )
        worst_conj = max(
            worst_conj,
            psi_inv.with_values(direct.values - conjugated.values).norm()
            / max(direct.norm(), 1e-30),
        )
    grid = _test_grid(periodic=True)
    dual = 2.0 * np.pi / 16.0
    for _ in range(10):
        u = smp.random_four_velocity(rng, vmax=0.7)
        m = smp.random_mass(rng, 0.8, 3.0)
        xi = np.array([rng.integers(-3, 4) * dual, 0.0, 0.0])
        chi = wp.localized_wavefunction(xi, 0.0, 0.0, grid, u, m, measure=rep.INVARIANT)
        out = wp.position_apply_invariant(chi, 0)
        worst_eigen = max(
            worst_eigen,
            float(np.max(np.abs(out.values - xi[0] * chi.values)))
            / float(np.max(np.abs(chi.values))),
        )
    return (
        CheckResult("measure-conjugation", worst_conj, 1e-8),
        CheckResult("invariant-position-eigen", worst_eigen, 1e-10),
    )


def check_packet_translation(seed, n):
    rng = _rng(seed, 47)
    worst = 0.0
    grid = _test_grid(periodic=True)
    for _ in range(10):
        u = smp.random_four_velocity(rng, vmax=0.7)
        m = smp.random_mass(rng, 0.8, 3.0)
        psi = wp.gaussian_packet(grid, u, m, sigma=1.0)
        moved = wp.translate_packet(psi, [rng.integers(-20, 20)], t=rng.normal())
        worst = max(worst, abs(moved.norm() - psi.norm()) / psi.norm())
    return CheckResult("translation-phase-norm", worst, 1e-12)


# -------------------------------------------------------------------- suites


def _suite_group(seed, n):
    return [check_group_law(seed, n), check_inverse_law(seed, n), check_triangularity(seed, n)]


def _suite_metric(seed, n):
    return [
        check_metric_closed_form(seed, n),
        check_metric_congruence(seed, n),
        check_velocity_identities(seed, max(n, 1000)),
        check_ep_roundtrip(seed, n),
        check_lightspeed_roundtrip(seed, n),
        check_lightspeed_null_root(seed, n),
    ]


def _suite_classical(seed, n):
    out = [
        check_bracket_table(seed, max(1, n // 2), analytic=True),
        check_bracket_table(seed, max(1, n // 4), analytic=False),
        *check_bracket_axioms(seed, max(1, n // 4)),
        check_jacobi(seed, n),
        check_constraint_compatibility(seed, max(1, n // 2)),
        check_legendre(seed, n),
        check_momenta_fd(seed, max(1, n // 2)),
        check_hamiltonian_dispersion(seed, max(n, 1000)),
        *check_trajectory(seed, n),
    ]
    return out


def _suite_representation(seed, n):
    return [
        *check_dispersion_shell(seed, max(n, 1000)),
        check_q0_additivity(seed, n),
        *check_translation(seed, n),
        *check_wigner(seed, n),
        *check_lorentz_action(seed, n),
        check_basis_from_rest(seed, n),
        check_measure_ratio(seed, n),
        check_rescale_roundtrip(seed, n),
    ]


def _suite_spin(seed, n):
    return [
        *check_spin_rep(seed, n),
        check_rest_tensor_algebra(seed, n),
        *check_spin_tensor_algebra(seed, min(n, 200)),
        check_spin_consistency(seed, n),
        *check_gamma_and_congruence(seed, n),
        check_spin_square(seed, min(n, 200)),
        *check_rotation_rep(seed, n),
    ]


def _suite_position(seed, n):
    return [
        check_position_commutators(seed, n, analytic=True),
        check_position_commutators(seed, n, analytic=False),
        check_hermiticity(seed, n),
        check_nw_coincidence(seed, n),
        *check_localized_eigen(seed, n),
        *check_localized_orthogonality(seed, n),
        *check_measure_equivalence(seed, n),
        check_packet_translation(seed, n),
    ]


SUITES = {
    "group": _suite_group,
    "metric": _suite_metric,
    "classical": _suite_classical,
    "representation": _suite_representation,
    "spin": _suite_spin,
    "position": _suite_position,
}


def run_suite(name: str, seed: int = 0, n_cases: int = 200) -> VerificationReport:
    """Run one named suite (or 'all') and return its report."""
    if name == "all":
        runners = [SUITES[k] for k in sorted(SUITES)]
    elif name in SUITES:
        runners = [SUITES[name]]
    else:
        raise KeyError(f"unknown suite {name!r}")
    start = time.perf_counter()
    entries = []
    for run in runners:
        entries.extend(run(seed, n_cases))
    entries.sort(key=lambda e: e.test_id)
    duration = time.perf_counter() - start
    return VerificationReport(name, seed, n_cases, tuple(entries), duration)
