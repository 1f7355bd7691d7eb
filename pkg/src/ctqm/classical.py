"""Free-particle canonical mechanics in CT synchronization.

The Lagrangian L = -m sqrt((1 + u0 uvec.v)^2 - v^2) yields canonical momenta
pi_i = -m omega_i; the covariant four-momentum is k_mu = m omega_mu, so its
space part is kbreve = -pi.  The Hamiltonian equals m omega_0, i.e. the
dispersion energy k_0 evaluated at kbreve = -pi.  The covariant Poisson
bracket treats all four k_mu as independent and projects with
delta^mu_nu - k^mu u_nu / (u.k); free motion integrates exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, SingularBracketError
from .kinematics import FourVelocity, metric
from .representation import dispersion_energy, four_momentum

_FD_REL_STEP = 1e-5


def _vec3(x, what="vector"):
    a = np.array(x, dtype=float)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise DomainError(f"{what} must be a finite 3-vector")
    return a


def _radicand(u: FourVelocity, v: np.ndarray) -> float:
    return float((1.0 + u.u0 * (u.uvec @ v)) ** 2 - v @ v)


def lagrangian(u: FourVelocity, v, m: float) -> float:
    """L = -m sqrt((1 + u0 uvec.v)^2 - v^2); domain error for superluminal v."""
    v = _vec3(v, "velocity")
    rad = _radicand(u, v)
    if rad <= 0.0:
        raise DomainError("velocity is superluminal in frame u")
    return float(-m * np.sqrt(rad))


def canonical_momenta(u: FourVelocity, v, m: float) -> np.ndarray:
    """pi_i = dL/dv^i = m (v^i - u^i u0 (1 + u0 uvec.v)) / sqrt(...) = -m omega_i."""
    v = _vec3(v, "velocity")
    rad = _radicand(u, v)
    if rad <= 0.0:
        raise DomainError("velocity is superluminal in frame u")
    return m * (v - u.uvec * u.u0 * (1.0 + u.u0 * (u.uvec @ v))) / np.sqrt(rad)


def hamiltonian(u: FourVelocity, pi, m: float) -> float:
    """H = (uvec.pi + sqrt((uvec.pi)^2 + pi^2 + m^2)) / u0 = m omega_0.

    Equals the dispersion energy k_0 at kbreve = -pi.
    """
    pi = _vec3(pi, "momenta")
    if m <= 0.0:
        raise DomainError("mass must be positive")
    up = u.uvec @ pi
    return float((up + np.sqrt(up**2 + pi @ pi + m**2)) / u.u0)


def covariant_momentum(u: FourVelocity, v, m: float) -> np.ndarray:
    """Covariant four-momentum k_mu = m omega_mu of a particle with velocity v."""
    pi = canonical_momenta(u, v, m)
    return np.concatenate(([hamiltonian(u, pi, m)], -pi))


def velocity_from_momentum(u: FourVelocity, kbreve, m: float) -> np.ndarray:
    """Coordinate velocity v^i = k^i / k^0 of an on-shell momentum."""
    k = four_momentum(kbreve, u, m)
    kup = metric(u).raise_(k)
    return kup[1:] / kup[0]


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Contravariant coordinates x, covariant momentum k (k_0 independent
    unless projected on shell) and the frame four-velocity."""

    x: np.ndarray
    k: np.ndarray
    u: FourVelocity

    def __post_init__(self):
        for name in ("x", "k"):
            a = np.array(getattr(self, name), dtype=float)
            if a.shape != (4,) or not np.all(np.isfinite(a)):
                raise DomainError(f"{name} must be a finite 4-vector")
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @classmethod
    def on_shell(cls, x, kbreve, u: FourVelocity, m: float) -> "PhaseSpacePoint":
        """Project k_0 to the positive-energy mass shell."""
        return cls(np.array(x, dtype=float), four_momentum(kbreve, u, m), u)

    @property
    def t(self) -> float:
        return float(self.x[0])

    def k_upper(self) -> np.ndarray:
        return metric(self.u).raise_(self.k)

    def shell_residual(self, m: float) -> float:
        """g^{mu nu} k_mu k_nu - m^2."""
        return float(self.k @ metric(self.u).contravariant @ self.k - m**2)


def _fd_gradient(f: Callable[[np.ndarray], float], z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    for i in range(z.size):
        h = _FD_REL_STEP * max(1.0, abs(z[i]))
        zp, zm = z.copy(), z.copy()
        zp[i] += h
        zm[i] -= h
        out[i] = (f(zp) - f(zm)) / (2.0 * h)
    return out


@dataclass(frozen=True)
class Observable:
    """Phase-space function A(x, k) with optional closed-form gradients.

    Missing gradients fall back to central finite differences with relative
    step 1e-5; an optional explicit time derivative feeds the equation of
    motion.
    """

    fn: Callable[[np.ndarray, np.ndarray], float]
    grad_x: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    grad_k: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    partial_t: Optional[Callable[[np.ndarray, np.ndarray], float]] = None
    name: str = ""

    def __call__(self, p: PhaseSpacePoint) -> float:
        return float(self.fn(p.x, p.k))

    def dx(self, p: PhaseSpacePoint) -> np.ndarray:
        if self.grad_x is not None:
            return np.asarray(self.grad_x(p.x, p.k), dtype=float)
        return _fd_gradient(lambda xx: self.fn(xx, p.k), np.array(p.x))

    def dk(self, p: PhaseSpacePoint) -> np.ndarray:
        if self.grad_k is not None:
            return np.asarray(self.grad_k(p.x, p.k), dtype=float)
        return _fd_gradient(lambda kk: self.fn(p.x, kk), np.array(p.k))

    def without_gradients(self) -> "Observable":
        return Observable(self.fn, None, None, self.partial_t, self.name + "(fd)")

    @classmethod
    def x_coordinate(cls, mu: int) -> "Observable":
        e = np.eye(4)[mu]
        return cls(
            fn=lambda x, k, mu=mu: x[mu],
            grad_x=lambda x, k, e=e: e,
            grad_k=lambda x, k: np.zeros(4),
            name=f"x^{mu}",
        )

    @classmethod
    def k_coordinate(cls, mu: int) -> "Observable":
        e = np.eye(4)[mu]
        return cls(
            fn=lambda x, k, mu=mu: k[mu],
            grad_x=lambda x, k: np.zeros(4),
            grad_k=lambda x, k, e=e: e,
            name=f"k_{mu}",
        )

    @classmethod
    def mass_squared(cls, u: FourVelocity) -> "Observable":
        ginv = metric(u).contravariant
        return cls(
            fn=lambda x, k: k @ ginv @ k,
            grad_x=lambda x, k: np.zeros(4),
            grad_k=lambda x, k: 2.0 * (ginv @ k),
            name="k^2",
        )

    @classmethod
    def quadratic(cls, const: float, linear: np.ndarray, quad: np.ndarray) -> "Observable":
        """c + b.z + z.Q z on the stacked coordinates z = (x, k)."""
        b = np.asarray(linear, dtype=float).reshape(8)
        Q = np.asarray(quad, dtype=float).reshape(8, 8)
        Q = 0.5 * (Q + Q.T)

        def fn(x, k):
            z = np.concatenate([x, k])
            return const + b @ z + z @ Q @ z

        def grad(x, k):
            z = np.concatenate([x, k])
            return b + 2.0 * (Q @ z)

        return cls(
            fn=fn,
            grad_x=lambda x, k: grad(x, k)[:4],
            grad_k=lambda x, k: grad(x, k)[4:],
            name="quadratic",
        )


def observable_product(A: Observable, B: Observable) -> Observable:
    """Pointwise product with product-rule gradients (for the Leibniz check)."""

    def fn(x, k):
        return A.fn(x, k) * B.fn(x, k)

    grad_x = None
    grad_k = None
    if A.grad_x is not None and B.grad_x is not None:
        def grad_x(x, k):
            return np.asarray(A.grad_x(x, k)) * B.fn(x, k) + A.fn(x, k) * np.asarray(
                B.grad_x(x, k)
            )

    if A.grad_k is not None and B.grad_k is not None:
        def grad_k(x, k):
            return np.asarray(A.grad_k(x, k)) * B.fn(x, k) + A.fn(x, k) * np.asarray(
                B.grad_k(x, k)
            )

    return Observable(fn, grad_x, grad_k, name=f"{A.name}*{B.name}")


def poisson_bracket(A: Observable, B: Observable, p: PhaseSpacePoint) -> float:
    """Covariant bracket with projector delta^mu_nu - k^mu u_nu / (u.k).

    All four k_nu are independent variables; k^mu is raised with the
    contravariant metric of the frame.
    """
    g = metric(p.u)
    kup = g.raise_(p.k)
    u_cov = p.u.covariant
    uk = float(p.u.components @ p.k)
    if abs(uk) < 1e-300:
        raise SingularBracketError("u.k vanishes at this phase-space point")
    P = np.eye(4) - np.outer(kup, u_cov) / uk
    dAx, dAk = A.dx(p), A.dk(p)
    dBx, dBk = B.dx(p), B.dk(p)
    return float(-(dAx @ P @ dBk - dBx @ P @ dAk))


def evolve_observable(A: Observable, p: PhaseSpacePoint) -> float:
    """dA/dt = partial_t A + {A, k_0}, evaluated at p (usually on shell)."""
    rate = poisson_bracket(A, Observable.k_coordinate(0), p)
    if A.partial_t is not None:
        rate += float(A.partial_t(p.x, p.k))
    return rate


def integrate_trajectory(
    p0: PhaseSpacePoint, t_final: float, dt: float
) -> list[PhaseSpacePoint]:
    """Exact free motion: x^i advances by (k^i/k^0) dt per step, k_mu constant.

    Free dynamics is linear, so the explicit update is exact up to roundoff
    and every returned point stays on the initial mass shell.
    """
    if dt <= 0.0:
        raise DomainError("dt must be positive")
    kup = p0.k_upper()
    v = kup[1:] / kup[0]
    steps = int(round(t_final / dt))
    points = [p0]
    x0 = np.array(p0.x)
    for n in range(1, steps + 1):
        x = x0.copy()
        x[0] += n * dt
        x[1:] += n * dt * v
        points.append(PhaseSpacePoint(x, p0.k, p0.u))
    return points


def trajectory_rows(points: list[PhaseSpacePoint], m: float):
    """CSV rows (t, x1, x2, x3, k1, k2, k3, k0, shell_residual)."""
    for p in points:
        yield (
            p.t,
            p.x[1],
            p.x[2],
            p.x[3],
            p.k[1],
            p.k[2],
            p.k[3],
            p.k[0],
            p.shell_residual(m),
        )
