"""Spin-s matrices, rotation representations and frame-dependent spin tensors.

The rest-frame tensor is built from the standard ladder construction as
S~_ij = eps_ijk J_k; in a moving frame it picks up a velocity-dependent
correction and closes on the spatial metric instead of the Euclidean one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kinematics import PREFERRED, FourVelocity

_EPS = np.zeros((3, 3, 3))
_EPS[0, 1, 2] = _EPS[1, 2, 0] = _EPS[2, 0, 1] = 1.0
_EPS[0, 2, 1] = _EPS[2, 1, 0] = _EPS[1, 0, 2] = -1.0


def spin_dimension(s) -> int:
    """2s + 1 for a non-negative integer or half-integer s."""
    two_s = 2.0 * float(s)
    if not np.isfinite(two_s) or two_s < 0 or abs(two_s - round(two_s)) > 1e-9:
        raise DomainError(f"spin must be a non-negative half-integer, got {s!r}")
    return int(round(two_s)) + 1


@dataclass(frozen=True)
class SpinRepresentation:
    """Angular momentum matrices (Jx, Jy, Jz) in the J3-diagonal basis."""

    s: float
    J: np.ndarray  # (3, d, d) complex, Hermitean

    @property
    def dim(self) -> int:
        return self.J.shape[1]


def angular_momentum_matrices(s) -> SpinRepresentation:
    """Ladder construction; J3 = diag(s, s-1, ..., -s)."""
    d = spin_dimension(s)
    s = float(s)
    m = np.arange(s, -s - 0.5, -1.0)  # s, s-1, ..., -s
    jz = np.diag(m).astype(complex)
    jp = np.zeros((d, d), dtype=complex)
    for i in range(d - 1):
        jp[i, i + 1] = np.sqrt(s * (s + 1.0) - m[i + 1] * (m[i + 1] + 1.0))
    jm = jp.conj().T
    J = np.stack([(jp + jm) / 2.0, (jp - jm) / 2.0j, jz])
    J.setflags(write=False)
    return SpinRepresentation(s, J)


@dataclass(frozen=True)
class SpinTensor:
    """Antisymmetric family S_ij(u) of Hermitean (2s+1)x(2s+1) matrices."""

    u: FourVelocity
    s: float
    S: np.ndarray  # (3, 3, d, d) complex

    @property
    def dim(self) -> int:
        return self.S.shape[2]

    def to_json_dict(self) -> dict:
        return {
            "s": self.s,
            "u": self.u.components.tolist(),
            "S": [
                [[[float(z.real), float(z.imag)] for z in row] for row in self.S[i, j]]
                for i in range(3)
                for j in range(3)
            ],
        }


def rest_spin_tensor(s) -> SpinTensor:
    """Preferred-frame tensor S~_ij = eps_ijk J_k."""
    rep = angular_momentum_matrices(s)
    S = np.einsum("ijk,kab->ijab", _EPS, rep.J)
    S.setflags(write=False)
    return SpinTensor(PREFERRED, float(s), S)


def spin_tensor(u: FourVelocity, s) -> SpinTensor:
    """Frame-u spin tensor.

    S_ij(u) = S~_ij + (u0)^2/(1+u0) * (u^j S~_ki u^k - u^i S~_kj u^k);
    reduces to the rest tensor at the preferred frame.
    """
    St = rest_spin_tensor(s).S
    uv = u.uvec
    c = u.u0**2 / (1.0 + u.u0)
    contraction = np.einsum("k,kiab->iab", uv, St)  # u^k S~_ki
    S = St + c * (
        np.einsum("j,iab->ijab", uv, contraction)
        - np.einsum("i,jab->ijab", uv, contraction)
    )
    S.setflags(write=False)
    return SpinTensor(u, float(s), S)


def gamma_spatial(u: FourVelocity) -> np.ndarray:
    """Inverse of the spatial block of the covariant metric: -(delta_ij + u^i u^j)."""
    return -(np.eye(3) + np.outer(u.uvec, u.uvec))


def spin_square(u: FourVelocity, s) -> np.ndarray:
    """Invariant spin square (1/2) gamma_ik gamma_jl S_ij S_kl = s(s+1) I."""
    S = spin_tensor(u, s).S
    gam = gamma_spatial(u)
    return 0.5 * np.einsum("ik,jl,ijab,klbc->ac", gam, gam, S, S)


def rotation_from_axis_angle(axis, theta: float) -> np.ndarray:
    """Rodrigues rotation about the unit axis by angle theta."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    K = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + np.sin(theta) * K + (1.0 - np.cos(theta)) * (K @ K)


def axis_angle(R) -> tuple[np.ndarray, float]:
    """Axis and angle of a rotation matrix, theta in [0, pi].

    Near theta = 0 the antisymmetric part is used; at theta = pi the axis is
    recovered from (R + I)/2 = n n^T with a deterministic sign choice (the
    half-turn axis sign is genuinely ambiguous).
    """
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3) or not np.allclose(R.T @ R, np.eye(3), atol=1e-8):
        raise DomainError("not an orthogonal 3x3 matrix")
    if np.linalg.det(R) < 0.0:
        raise DomainError("improper rotation (det = -1)")
    cos_t = np.clip((np.trace(R) - 1.0) / 2.0, -1.0, 1.0)
    theta = float(np.arccos(cos_t))
    v = 0.5 * np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
    sin_t = np.linalg.norm(v)
    if theta < 1e-12:
        return np.array([0.0, 0.0, 1.0]), 0.0
    if np.pi - theta > 1e-6:
        return v / sin_t, theta
    # theta ~ pi: (R + I)/2 projects onto the axis
    B = (R + np.eye(3)) / 2.0
    i = int(np.argmax(np.diag(B)))
    n = B[:, i] / np.sqrt(B[i, i])
    n = n / np.linalg.norm(n)
    j = int(np.argmax(np.abs(n)))
    if n[j] < 0.0:
        n = -n
    return n, theta


def rotation_rep(R, s) -> np.ndarray:
    """Spin-s representation matrix of a rotation, exp(-i theta n.J).

    The lift is fixed by continuity from the identity along the axis-angle
    path with theta in [0, pi]; for half-integer s the value at theta = pi
    is defined up to the overall sign inherent to the double cover.
    """
    n, theta = axis_angle(R)
    rep = angular_momentum_matrices(s)
    if theta == 0.0:
        return np.eye(rep.dim, dtype=complex)
    H = np.einsum("i,iab->ab", n, rep.J)
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * theta * w)) @ V.conj().T
