"""Kinematics of inertial frames under Chang-Tangherlini (CT) clock synchronization.

Units c = 1.  Each inertial frame is labelled by the contravariant
four-velocity u = (u0, uvec) of the preferred frame as seen from it.  In CT
coordinates every boost is lower block triangular: the time coordinate is
only rescaled by a positive factor and the instant hyperplanes x0 = const
are frame invariant.  The price is that transforms and the metric depend
on u.  Einstein-Poincare (EP) coordinates differ from CT ones by the
intertwiner T(u), which reshuffles the time coordinate only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError, FrameMismatchError, VarianceError

CONTRAVARIANT = "contravariant"
COVARIANT = "covariant"

_MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])


def _vector(x, n, what="vector"):
    a = np.array(x, dtype=float)
    if a.shape != (n,):
        raise DomainError(f"{what} must have shape ({n},), got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{what} has non-finite components")
    return a


def _matrix(x, shape, what="matrix"):
    a = np.array(x, dtype=float)
    if a.shape != shape:
        raise DomainError(f"{what} must have shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{what} has non-finite entries")
    return a


@dataclass(frozen=True)
class FourVelocity:
    """Contravariant four-velocity (u0, uvec) of the preferred frame.

    Valid instances satisfy 1/u0**2 - |uvec|**2 = 1, which is the same as
    saying that the covariant space part vanishes and that the g(u)-norm
    equals one.  u0 lies in (0, 1]; u0 = 1 is the preferred frame itself.
    """

    u0: float
    uvec: np.ndarray

    def __post_init__(self):
        uvec = _vector(self.uvec, 3, "uvec")
        uvec.setflags(write=False)
        object.__setattr__(self, "uvec", uvec)
        u0 = float(self.u0)
        object.__setattr__(self, "u0", u0)
        if not np.isfinite(u0) or u0 <= 0.0:
            raise DomainError(f"u0 must be positive and finite, got {u0!r}")
        residual = abs(1.0 / u0**2 - uvec @ uvec - 1.0)
        if residual > 1e-8:
            raise DomainError(
                f"not a preferred-frame four-velocity: 1/u0^2 - |uvec|^2 - 1 = {residual:.3e}"
            )

    @classmethod
    def from_space(cls, uvec) -> "FourVelocity":
        uvec = _vector(uvec, 3, "uvec")
        return cls(1.0 / np.sqrt(1.0 + uvec @ uvec), uvec)

    @property
    def components(self) -> np.ndarray:
        """Contravariant components (u0, u1, u2, u3)."""
        return np.concatenate(([self.u0], self.uvec))

    @property
    def covariant(self) -> np.ndarray:
        """Covariant components; the space part vanishes identically."""
        return np.array([1.0 / self.u0, 0.0, 0.0, 0.0])

    @property
    def ep(self) -> np.ndarray:
        """The same four-velocity in EP coordinates: (1/u0, uvec)."""
        return np.concatenate(([1.0 / self.u0], self.uvec))

    def isclose(self, other: "FourVelocity", atol: float = 1e-9) -> bool:
        return abs(self.u0 - other.u0) <= atol and bool(
            np.all(np.abs(self.uvec - other.uvec) <= atol)
        )


PREFERRED = FourVelocity(1.0, np.zeros(3))


def four_velocity_from_space(uvec) -> FourVelocity:
    """Complete a spatial velocity to a four-velocity, u0 = 1/sqrt(1 + |uvec|^2)."""
    return FourVelocity.from_space(uvec)


@dataclass(frozen=True)
class FourVector:
    """Four real components with an explicit variance tag and frame handle.

    Mixing variances or frames is a checked error everywhere in this module;
    covariant and contravariant space parts differ in CT coordinates and the
    distinction is the main source of sign bugs.
    """

    components: np.ndarray
    variance: str
    frame: FourVelocity

    def __post_init__(self):
        comp = _vector(self.components, 4, "components")
        comp.setflags(write=False)
        object.__setattr__(self, "components", comp)
        if self.variance not in (CONTRAVARIANT, COVARIANT):
            raise VarianceError(f"unknown variance tag {self.variance!r}")

    def to_json_dict(self) -> dict:
        return {"components": self.components.tolist(), "variance": self.variance}


def pairing(a: FourVector, b: FourVector) -> float:
    """Scalar pairing <covariant, contravariant>; frames must agree."""
    if {a.variance, b.variance} != {COVARIANT, CONTRAVARIANT}:
        raise VarianceError("pairing needs one covariant and one contravariant vector")
    if not a.frame.isclose(b.frame):
        raise FrameMismatchError("pairing of vectors from different frames")
    return float(a.components @ b.components)


@dataclass(frozen=True)
class MetricTensor:
    """Covariant and contravariant metric of the frame u."""

    u: FourVelocity
    covariant: np.ndarray
    contravariant: np.ndarray

    def lower(self, v: np.ndarray) -> np.ndarray:
        return self.covariant @ np.asarray(v, dtype=float)

    def raise_(self, v: np.ndarray) -> np.ndarray:
        return self.contravariant @ np.asarray(v, dtype=float)


def metric(u: FourVelocity) -> MetricTensor:
    """Metric pair of the frame u.

    g_00 = 1, g_0i = u0 u^i, g_ij = -delta_ij + (u0)^2 u^i u^j; the inverse
    has (u0)^2, u0 u^i and -delta_ij in the corresponding blocks, so the
    spatial line element is Euclidean.  Equals (T(u) eta T(u)^T)^(-1) built
    from the intertwiner.
    """
    u0, uv = u.u0, u.uvec
    g = np.empty((4, 4))
    g[0, 0] = 1.0
    g[0, 1:] = u0 * uv
    g[1:, 0] = u0 * uv
    g[1:, 1:] = -np.eye(3) + u0**2 * np.outer(uv, uv)
    ginv = np.empty((4, 4))
    ginv[0, 0] = u0**2
    ginv[0, 1:] = u0 * uv
    ginv[1:, 0] = u0 * uv
    ginv[1:, 1:] = -np.eye(3)
    g.setflags(write=False)
    ginv.setflags(write=False)
    return MetricTensor(u, g, ginv)


def intertwiner(u: FourVelocity) -> tuple[np.ndarray, np.ndarray]:
    """Matrix T(u) mapping EP contravariant coordinates to CT ones, and its inverse.

    T(u) has unit diagonal and first row (1, -u0 u^1, -u0 u^2, -u0 u^3); the
    inverse flips the sign of the off-diagonal row.
    """
    T = np.eye(4)
    T[0, 1:] = -u.u0 * u.uvec
    Tinv = np.eye(4)
    Tinv[0, 1:] = u.u0 * u.uvec
    T.setflags(write=False)
    Tinv.setflags(write=False)
    return T, Tinv


@dataclass(frozen=True)
class FrameTransform:
    """A CT coordinate transform: 4x4 matrix acting on contravariant coordinates.

    Carries the four-velocities of the source and target frames; covariant
    vectors transform with the inverse transpose.
    """

    matrix: np.ndarray
    source_u: FourVelocity
    target_u: FourVelocity

    def __post_init__(self):
        m = _matrix(self.matrix, (4, 4))
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        mapped = m @ self.source_u.components
        if not np.allclose(mapped, self.target_u.components, atol=1e-8):
            raise ConsistencyError("matrix does not map source_u to target_u")

    def inverse(self) -> "FrameTransform":
        return FrameTransform(np.linalg.inv(self.matrix), self.target_u, self.source_u)

    def compose(self, first: "FrameTransform") -> "FrameTransform":
        """The transform 'self after first'."""
        if not first.target_u.isclose(self.source_u):
            raise FrameMismatchError("composition frames do not chain")
        return FrameTransform(self.matrix @ first.matrix, first.source_u, self.target_u)

    def covariant_matrix(self) -> np.ndarray:
        """Matrix acting on covariant components (inverse transpose)."""
        return np.linalg.inv(self.matrix).T

    def to_json_dict(self) -> dict:
        return {
            "matrix": [float(x) for x in self.matrix.reshape(-1)],
            "source_u": self.source_u.components.tolist(),
            "target_u": self.target_u.components.tolist(),
        }


def _velocity_from_components(vec4: np.ndarray) -> FourVelocity:
    return FourVelocity(vec4[0], vec4[1:])


def rotation_transform(R, u: FourVelocity) -> FrameTransform:
    """Spatial rotation, block diagonal (1, R); the time row is untouched."""
    R = _matrix(R, (3, 3), "rotation")
    if not np.allclose(R.T @ R, np.eye(3), atol=1e-9) or np.linalg.det(R) < 0.0:
        raise DomainError("not a proper rotation matrix")
    D = np.eye(4)
    D[1:, 1:] = R
    return FrameTransform(D, u, FourVelocity(u.u0, R @ u.uvec))


def velocity_shell_residual(W, u: FourVelocity) -> float:
    """Deviation of W from the g(u)-norm condition g_{mu nu}(u) W^mu W^nu = 1."""
    W = _vector(W, 4, "W")
    g = metric(u).covariant
    return float(W @ g @ W - 1.0)


def boost_transform(W, u: FourVelocity) -> FrameTransform:
    """Boost to the frame moving with four-velocity W relative to the frame u.

    W must satisfy g_{mu nu}(u) W^mu W^nu = 1.  The matrix has first row
    (1/W0, 0, 0, 0), first column (1/W0, -Wvec) and spatial block
    I + Wvec Wvec^T / (1 + sqrt(1 + Wvec^2)) - u0 Wvec uvec^T.
    """
    W = _vector(W, 4, "W")
    if W[0] <= 0.0:
        raise DomainError("boost parameter must be future directed (W0 > 0)")
    if abs(velocity_shell_residual(W, u)) > 1e-8:
        raise DomainError("boost parameter W is not on the g(u) velocity shell")
    W0, Wv = W[0], W[1:]
    D = np.zeros((4, 4))
    D[0, 0] = 1.0 / W0
    D[1:, 0] = -Wv
    D[1:, 1:] = (
        np.eye(3)
        + np.outer(Wv, Wv) / (1.0 + np.sqrt(1.0 + Wv @ Wv))
        - u.u0 * np.outer(Wv, u.uvec)
    )
    return FrameTransform(D, u, _velocity_from_components(D @ u.components))


def boost_from_velocity(V, u: FourVelocity) -> np.ndarray:
    """Boost parameter W for a frame moving with coordinate velocity V relative to u.

    W0 = 1/sqrt((1 + u0 uvec.V)^2 - V^2), Wvec = W0 V.  Raises DomainError
    when the radicand is not positive (superluminal V).
    """
    V = _vector(V, 3, "V")
    radicand = (1.0 + u.u0 * (u.uvec @ V)) ** 2 - V @ V
    if radicand <= 0.0:
        raise DomainError("velocity V is superluminal in frame u")
    W0 = 1.0 / np.sqrt(radicand)
    return np.concatenate(([W0], W0 * V))


def relative_four_velocity(u: FourVelocity, uprime: FourVelocity) -> np.ndarray:
    """Four-velocity W of the frame uprime relative to the frame u.

    W0 = u0/u'0 and Wvec = (u0 + u'0)(uvec - uvec') / (1 + u0 u'0 (1 + uvec.uvec')).
    boost_transform(W, u) maps u onto uprime.
    """
    denom = 1.0 + u.u0 * uprime.u0 * (1.0 + u.uvec @ uprime.uvec)
    Wv = (u.u0 + uprime.u0) * (u.uvec - uprime.uvec) / denom
    return np.concatenate(([u.u0 / uprime.u0], Wv))


def boost_to_frame(u: FourVelocity) -> FrameTransform:
    """The boost carrying the preferred frame onto the frame u.

    Matrix [[u0, 0], [uvec, I + u0/(1+u0) uvec uvec^T]]; its Wigner rotation
    relative to the preferred frame is the identity.
    """
    D = np.zeros((4, 4))
    D[0, 0] = u.u0
    D[1:, 0] = u.uvec
    D[1:, 1:] = np.eye(3) + (u.u0 / (1.0 + u.u0)) * np.outer(u.uvec, u.uvec)
    return FrameTransform(D, PREFERRED, u)


def lorentz_rotation(R) -> np.ndarray:
    """Standard-synchronization rotation matrix diag(1, R)."""
    R = _matrix(R, (3, 3), "rotation")
    L = np.eye(4)
    L[1:, 1:] = R
    return L


def lorentz_boost(beta) -> np.ndarray:
    """Standard-synchronization boost with velocity beta (maps rest to gamma(1, beta))."""
    beta = _vector(beta, 3, "beta")
    b2 = beta @ beta
    if b2 >= 1.0:
        raise DomainError("boost speed must be < 1")
    gamma = 1.0 / np.sqrt(1.0 - b2)
    L = np.eye(4)
    L[0, 0] = gamma
    L[0, 1:] = gamma * beta
    L[1:, 0] = gamma * beta
    if b2 > 0.0:
        L[1:, 1:] = np.eye(3) + (gamma - 1.0) * np.outer(beta, beta) / b2
    return L


def preferred_boost_matrix(u: FourVelocity) -> np.ndarray:
    """The standard Lorentz boost L_u taking the preferred frame's rest axes to u."""
    return lorentz_boost(u.u0 * u.uvec)


def is_lorentz(L, atol: float = 1e-8) -> bool:
    L = np.asarray(L, dtype=float)
    return (
        L.shape == (4, 4)
        and bool(np.allclose(L.T @ _MINKOWSKI @ L, _MINKOWSKI, atol=atol))
        and L[0, 0] > 0.0
        and np.linalg.det(L) > 0.0
    )


def transform_from_lorentz(Lam, u: FourVelocity) -> FrameTransform:
    """CT realization D(Lam, u) = T(u') Lam T(u)^(-1) of a standard Lorentz matrix.

    The target frame follows from the EP image of u: u_E = (1/u0, uvec) is a
    unit Minkowski vector, u'_E = Lam u_E, and u' = (1/u'_E0, u'_E vec).
    """
    Lam = _matrix(Lam, (4, 4), "Lorentz matrix")
    if not is_lorentz(Lam):
        raise DomainError("matrix is not proper orthochronous Lorentz")
    up_ep = Lam @ u.ep
    if up_ep[0] <= 0.0:
        raise DomainError("transformed frame velocity is past directed")
    uprime = FourVelocity(1.0 / up_ep[0], up_ep[1:])
    _, Tinv_u = intertwiner(u)
    T_up, _ = intertwiner(uprime)
    return FrameTransform(T_up @ Lam @ Tinv_u, u, uprime)


def ct_from_ep(x: FourVector, u: FourVelocity) -> FourVector:
    """Convert contravariant EP coordinates to CT ones: x0 = x_E0 - u0 uvec.x_E."""
    if x.variance != CONTRAVARIANT:
        raise VarianceError("EP/CT conversion is defined for contravariant coordinates")
    if not x.frame.isclose(u):
        raise FrameMismatchError("vector does not live in frame u")
    T, _ = intertwiner(u)
    return FourVector(T @ x.components, CONTRAVARIANT, u)


def ep_from_ct(x: FourVector, u: FourVelocity) -> FourVector:
    """Inverse of ct_from_ep: x_E0 = x0 + u0 uvec.x, space part unchanged."""
    if x.variance != CONTRAVARIANT:
        raise VarianceError("EP/CT conversion is defined for contravariant coordinates")
    if not x.frame.isclose(u):
        raise FrameMismatchError("vector does not live in frame u")
    _, Tinv = intertwiner(u)
    return FourVector(Tinv @ x.components, CONTRAVARIANT, u)


def transform_vector(D: FrameTransform, v: FourVector) -> FourVector:
    """Apply a frame transform: D v for contravariant, D^(T-1) v for covariant."""
    if not v.frame.isclose(D.source_u):
        raise FrameMismatchError("vector frame does not match the transform source")
    if v.variance == CONTRAVARIANT:
        out = D.matrix @ v.components
    else:
        out = D.covariant_matrix() @ v.components
    return FourVector(out, v.variance, D.target_u)


def light_speed(u: FourVelocity, n) -> tuple[float, float]:
    """One-way coordinate light speed along the unit direction n, and the
    round-trip average over n and -n.

    Solving the null condition g_{mu nu}(u) dx^mu dx^nu = 0 for the positive
    root gives 1/(1 - u0 uvec.n); the harmonic mean over both directions is
    exactly 1 for every physical u since u0 |uvec| < 1.
    """
    n = _vector(n, 3, "n")
    if abs(n @ n - 1.0) > 1e-9:
        raise DomainError("direction must be a unit vector")
    a = u.u0 * (u.uvec @ n)
    forward = 1.0 / (1.0 - a)
    backward = 1.0 / (1.0 + a)
    round_trip = 2.0 / (1.0 / forward + 1.0 / backward)
    return float(forward), float(round_trip)


def light_speed_from_null_roots(u: FourVelocity, n) -> float:
    """One-way light speed from the numeric roots of the null quadratic.

    Independent cross-check of the closed form used by light_speed.
    """
    n = _vector(n, 3, "n")
    g = metric(u).covariant
    # ds^2 = g00 + 2 g0i c n^i + g_ij c^2 n^i n^j = 0
    c2 = n @ g[1:, 1:] @ n
    c1 = 2.0 * (g[0, 1:] @ n)
    c0 = g[0, 0]
    roots = np.roots([c2, c1, c0])
    roots = roots[np.isreal(roots)].real
    positive = roots[roots > 0.0]
    if positive.size != 1:
        raise ConsistencyError("null condition did not yield a unique positive speed")
    return float(positive[0])


def closed_path_average_speed(u: FourVelocity, vertices) -> float:
    """Average light speed around a closed polygonal path (last leg closes it)."""
    pts = [np.asarray(p, dtype=float) for p in vertices]
    if len(pts) < 2:
        raise DomainError("path needs at least two vertices")
    total_length = 0.0
    total_time = 0.0
    for a, b in zip(pts, pts[1:] + pts[:1]):
        seg = b - a
        length = float(np.linalg.norm(seg))
        if length == 0.0:
            raise DomainError("zero-length path segment")
        one_way, _ = light_speed(u, seg / length)
        total_length += length
        total_time += length / one_way
    return total_length / total_time
