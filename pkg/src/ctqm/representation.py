"""Momentum eigenbasis, translations, Wigner rotations and the Lorentz orbit.

Basis kets are labelled by the covariant spatial momentum kbreve, the frame
four-velocity u, the mass, the spin s and a spin index; the energy k_0 is
always derived from the dispersion relation.  Continuum delta-normalized
kets are modelled by finite labelled sums: the three-dimensional delta
becomes a label-match rule, and each state carries the (frame-dependent)
weight delta_scale that a coincident-label match contributes, so brackets
computed before and after a passive Lorentz transform compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    ConsistencyError,
    DomainError,
    FrameMismatchError,
    NormalizationMismatchError,
)
from .kinematics import (
    PREFERRED,
    FourVelocity,
    boost_to_frame,
    preferred_boost_matrix,
    transform_from_lorentz,
)
from .spin import rotation_rep, spin_dimension, spin_tensor

STANDARD = "standard"
INVARIANT = "invariant"
_NORMALIZATIONS = (STANDARD, INVARIANT)


def _kbreve(x) -> np.ndarray:
    a = np.array(x, dtype=float)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise DomainError("kbreve must be a finite 3-vector")
    return a


def uk_scalar(kbreve, u: FourVelocity, m: float) -> float:
    """Invariant u.k of an on-shell momentum: sqrt((uvec.kbreve)^2 + kbreve^2 + m^2)."""
    kb = _kbreve(kbreve)
    ud = u.uvec @ kb
    return float(np.sqrt(ud**2 + kb @ kb + m**2))


def dispersion_energy(kbreve, u: FourVelocity, m: float) -> tuple[float, float]:
    """Energy k_0 and contravariant k^0 of the positive-energy mass shell.

    k_0 = (-uvec.kbreve + sqrt((uvec.kbreve)^2 + kbreve^2 + m^2)) / u0 and
    k^0 = u0 * sqrt(...); the identity k^0 = u0 * (u.k) holds by construction.
    """
    if m <= 0.0:
        raise DomainError("mass must be positive")
    kb = _kbreve(kbreve)
    uk = uk_scalar(kb, u, m)
    k0 = (-(u.uvec @ kb) + uk) / u.u0
    return float(k0), float(u.u0 * uk)


def four_momentum(kbreve, u: FourVelocity, m: float) -> np.ndarray:
    """Covariant on-shell four-momentum (k_0, kbreve)."""
    k0, _ = dispersion_energy(kbreve, u, m)
    return np.concatenate(([k0], _kbreve(kbreve)))


def q0_shift(kbreve, qbreve, u: FourVelocity, m: float) -> float:
    """Energy transferred by a spatial momentum shift qbreve at base point kbreve.

    q_0 = (-uvec.qbreve - sqrt((uvec.kbreve)^2 + kbreve^2 + m^2)
           + sqrt((uvec.(kbreve+qbreve))^2 + (kbreve+qbreve)^2 + m^2)) / u0,
    so that k_0(kbreve) + q_0 = k_0(kbreve + qbreve) identically.
    """
    kb, qb = _kbreve(kbreve), _kbreve(qbreve)
    return float(
        (-(u.uvec @ qb) - uk_scalar(kb, u, m) + uk_scalar(kb + qb, u, m)) / u.u0
    )


def measure_weight(kbreve, u: FourVelocity, m: float, convention: str) -> float:
    """Momentum-integration weight: 1/(2 omega(kbreve)) or the constant 1/(2 u0)."""
    if convention == STANDARD:
        _, om = dispersion_energy(kbreve, u, m)
        return 1.0 / (2.0 * om)
    if convention == INVARIANT:
        return 1.0 / (2.0 * u.u0)
    raise DomainError(f"unknown measure convention {convention!r}")


@dataclass(frozen=True, eq=False)
class MomentumBasisState:
    """Label of a momentum eigenket |k, u, m; s, lambda>."""

    kbreve: np.ndarray
    u: FourVelocity
    m: float
    s: float
    lam: float
    normalization: str = STANDARD

    def __post_init__(self):
        kb = _kbreve(self.kbreve)
        kb.setflags(write=False)
        object.__setattr__(self, "kbreve", kb)
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "lam", float(self.lam))
        if self.m <= 0.0:
            raise DomainError("mass must be positive")
        d = spin_dimension(self.s)
        idx = self.s - self.lam
        if abs(idx - round(idx)) > 1e-9 or not (0 <= round(idx) < d):
            raise DomainError(f"lambda {self.lam} invalid for spin {self.s}")
        if self.normalization not in _NORMALIZATIONS:
            raise NormalizationMismatchError(
                f"unknown normalization tag {self.normalization!r}"
            )

    @property
    def lam_index(self) -> int:
        """Row index in the J3-diagonal basis (lambda = s maps to 0)."""
        return int(round(self.s - self.lam))

    @property
    def uk(self) -> float:
        return uk_scalar(self.kbreve, self.u, self.m)

    @property
    def k0(self) -> float:
        return dispersion_energy(self.kbreve, self.u, self.m)[0]

    @property
    def k_upper0(self) -> float:
        return dispersion_energy(self.kbreve, self.u, self.m)[1]

    @property
    def k(self) -> np.ndarray:
        """Covariant four-momentum (k_0, kbreve)."""
        return four_momentum(self.kbreve, self.u, self.m)


@dataclass(frozen=True)
class StateVector:
    """Finite superposition of momentum basis kets sharing (u, m, s, normalization).

    delta_scale is the weight a coincident-label pair contributes to the
    inner product (the discrete surrogate of delta^3(0)).  It starts at 1
    and is rescaled by u0/u'0 under a passive Lorentz transform, which is
    exactly the Jacobian of the momentum-label change; with it, norms are
    preserved on the nose across frames.
    """

    terms: tuple
    delta_scale: float = 1.0

    def __post_init__(self):
        terms = tuple((complex(a), st) for a, st in self.terms)
        if not terms:
            raise DomainError("state vector needs at least one term")
        ref = terms[0][1]
        for _, st in terms[1:]:
            if not isinstance(st, MomentumBasisState):
                raise DomainError("terms must be (amplitude, MomentumBasisState)")
            if st.normalization != ref.normalization:
                raise NormalizationMismatchError("terms mix normalization tags")
            if not st.u.isclose(ref.u):
                raise FrameMismatchError("terms mix frames")
            if abs(st.m - ref.m) > 1e-12 * max(1.0, ref.m) or st.s != ref.s:
                raise DomainError("terms mix masses or spins")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "delta_scale", float(self.delta_scale))

    @classmethod
    def single(cls, amplitude, state: MomentumBasisState) -> "StateVector":
        return cls(((complex(amplitude), state),))

    @property
    def u(self) -> FourVelocity:
        return self.terms[0][1].u

    @property
    def m(self) -> float:
        return self.terms[0][1].m

    @property
    def s(self) -> float:
        return self.terms[0][1].s

    @property
    def normalization(self) -> str:
        return self.terms[0][1].normalization

    def scaled(self, factor) -> "StateVector":
        return StateVector(
            tuple((a * complex(factor), st) for a, st in self.terms), self.delta_scale
        )

    def norm(self) -> float:
        return float(np.sqrt(inner_product(self, self).real))

    def to_json_dict(self) -> dict:
        return {
            "u": self.u.components.tolist(),
            "m": self.m,
            "s": self.s,
            "normalization": self.normalization,
            "delta_scale": self.delta_scale,
            "terms": [
                {
                    "amplitude_re": a.real,
                    "amplitude_im": a.imag,
                    "kbreve": st.kbreve.tolist(),
                    "lambda": st.lam,
                }
                for a, st in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "StateVector":
        u = FourVelocity(d["u"][0], d["u"][1:])
        terms = tuple(
            (
                complex(t["amplitude_re"], t["amplitude_im"]),
                MomentumBasisState(
                    t["kbreve"], u, d["m"], d["s"], t["lambda"], d["normalization"]
                ),
            )
            for t in d["terms"]
        )
        return cls(terms, d.get("delta_scale", 1.0))


def _coalesce(terms) -> tuple:
    """Merge terms with identical labels; drop exactly-cancelled amplitudes."""
    merged: dict = {}
    order: list = []
    for a, st in terms:
        key = (st.kbreve.tobytes(), st.lam)
        if key in merged:
            prev_a, prev_st = merged[key]
            merged[key] = (prev_a + a, prev_st)
        else:
            merged[key] = (a, st)
            order.append(key)
    out = tuple(merged[k] for k in order if merged[k][0] != 0.0)
    return out if out else (merged[order[0]],)


def translate_state(psi: StateVector, qbreve, t: float = 0.0) -> StateVector:
    """Finite spatial translation acting on the momentum labels.

    In standard normalization each ket picks up exp(i q_0 t) sqrt(uk/u(k+q))
    and moves to kbreve + qbreve; in invariant normalization the square-root
    factor is absent and only the phase remains.
    """
    qb = _kbreve(qbreve)
    u, m = psi.u, psi.m
    out = []
    for a, st in psi.terms:
        q0 = q0_shift(st.kbreve, qb, u, m)
        factor = np.exp(1j * q0 * t)
        if st.normalization == STANDARD:
            factor *= np.sqrt(st.uk / uk_scalar(st.kbreve + qb, u, m))
        out.append((a * factor, replace(st, kbreve=st.kbreve + qb)))
    return StateVector(_coalesce(out), psi.delta_scale)


def wigner_rotation(Lam, u: FourVelocity) -> np.ndarray:
    """Rotation of the preferred-frame little group induced by Lam at frame u.

    R is the spatial block of D(L_u', utilde)^(-1) D(Lam, u) D(L_u, utilde);
    the full product must come out block diagonal (1, R) with R in SO(3).
    """
    D = transform_from_lorentz(Lam, u)
    Lu = boost_to_frame(u).matrix
    Lup = boost_to_frame(D.target_u).matrix
    M = np.linalg.solve(Lup, D.matrix @ Lu)
    off = max(
        abs(M[0, 0] - 1.0), float(np.max(np.abs(M[0, 1:]))), float(np.max(np.abs(M[1:, 0])))
    )
    if off > 1e-9:
        raise ConsistencyError(f"little-group product not block diagonal (off = {off:.2e})")
    R = M[1:, 1:]
    if not np.allclose(R.T @ R, np.eye(3), atol=1e-9):
        raise ConsistencyError("little-group block is not orthogonal")
    return R


def lorentz_action(Lam, psi: StateVector) -> StateVector:
    """Passive Lorentz transform of a state: labels move along the orbit,
    spin indices mix with the inverse Wigner rotation matrix.

    k' = D^(T-1)(Lam, u) k stays on the positive-energy mass shell of the
    target frame; the form is the same in both normalizations.
    """
    u = psi.u
    D = transform_from_lorentz(Lam, u)
    uprime = D.target_u
    R = wigner_rotation(Lam, u)
    Ds_inv = rotation_rep(R, psi.s).conj().T
    cov = D.covariant_matrix()
    out = []
    for a, st in psi.terms:
        kprime = cov @ st.k
        kb_new = kprime[1:]
        k0_expected, _ = dispersion_energy(kb_new, uprime, psi.m)
        if abs(kprime[0] - k0_expected) > 1e-8 * max(1.0, abs(k0_expected)):
            raise ConsistencyError("transformed momentum left the mass shell")
        i = st.lam_index
        for j in range(Ds_inv.shape[1]):
            amp = a * Ds_inv[i, j]
            if amp == 0.0:
                continue
            lam_new = psi.s - j
            out.append(
                (
                    amp,
                    MomentumBasisState(
                        kb_new, uprime, psi.m, psi.s, lam_new, st.normalization
                    ),
                )
            )
    scale = psi.delta_scale * u.u0 / uprime.u0
    return StateVector(_coalesce(out), scale)


def apply_spin(psi: StateVector, i: int, j: int) -> StateVector:
    """Spin tensor component acting on the spin indices only.

    S_ij |k, lambda> = -S_ij(u)[lambda, sigma] |k, sigma>; momentum labels
    are untouched, so this commutes with translations and position operators.
    """
    S = spin_tensor(psi.u, psi.s).S[i, j]
    out = []
    for a, st in psi.terms:
        li = st.lam_index
        for sj in range(S.shape[1]):
            amp = -a * S[li, sj]
            if amp == 0.0:
                continue
            out.append((amp, replace(st, lam=psi.s - sj)))
    return StateVector(_coalesce(out), psi.delta_scale)


def inner_product(phi: StateVector, psi: StateVector, label_atol: float = 0.0) -> complex:
    """Finite-sum bracket: matching (kbreve, lambda) labels contribute
    2 k^0 conj(a) b (standard) or 2 u0 conj(a) b (invariant), times delta_scale.

    Labels match exactly by default; pass label_atol (e.g. 1e-9) to compare
    states produced by a Lorentz transform, where labels carry roundoff.
    """
    if phi.normalization != psi.normalization:
        raise NormalizationMismatchError("mixed normalizations in inner product")
    if not phi.u.isclose(psi.u):
        raise FrameMismatchError("inner product across different frames")
    if abs(phi.m - psi.m) > 1e-12 * max(1.0, psi.m) or phi.s != psi.s:
        raise DomainError("inner product across different mass or spin")
    if abs(phi.delta_scale - psi.delta_scale) > 1e-9 * abs(psi.delta_scale):
        raise DomainError("inner product across different delta normalizations")
    total = 0.0 + 0.0j
    for a, sa in phi.terms:
        for b, sb in psi.terms:
            if sa.lam != sb.lam:
                continue
            if label_atol == 0.0:
                if not np.array_equal(sa.kbreve, sb.kbreve):
                    continue
            elif np.max(np.abs(sa.kbreve - sb.kbreve)) > label_atol:
                continue
            if psi.normalization == STANDARD:
                weight = 2.0 * sb.k_upper0
            else:
                weight = 2.0 * psi.u.u0
            total += weight * np.conj(a) * b
    return complex(total * psi.delta_scale)


def rescale_normalization(psi: StateVector, to: str) -> StateVector:
    """Switch between standard and invariant basis normalization.

    |k>_inv = |k>/sqrt(u.k), so amplitudes gain (standard -> invariant) or
    lose a sqrt(u.k) per term; the physical state is unchanged.
    """
    if to not in _NORMALIZATIONS:
        raise NormalizationMismatchError(f"unknown normalization tag {to!r}")
    if psi.normalization == to:
        return psi
    out = []
    for a, st in psi.terms:
        root = np.sqrt(st.uk)
        factor = root if to == INVARIANT else 1.0 / root
        out.append((a * factor, replace(st, normalization=to)))
    return StateVector(tuple(out), psi.delta_scale)


@dataclass(frozen=True)
class RestFrameConstruction:
    """Recipe building |k, u, m; s, lambda> from the preferred-frame rest ket.

    amplitude_factor sqrt(u.k/m), the boost L_u and the translation
    parameters (k_mu - m u_mu); build() executes the recipe.
    """

    kbreve: np.ndarray
    u: FourVelocity
    m: float
    s: float
    lam: float
    amplitude_factor: float
    boost_lorentz: np.ndarray  # standard Lorentz matrix L_u
    translation: np.ndarray  # covariant (k - m u)_mu

    def build(self, t: float = 0.0) -> StateVector:
        rest = MomentumBasisState(np.zeros(3), PREFERRED, self.m, self.s, self.lam)
        psi = StateVector.single(1.0, rest)
        psi = lorentz_action(self.boost_lorentz, psi)
        psi = translate_state(psi, self.translation[1:], t)
        phase = np.exp(-1j * self.translation[0] * t)
        return psi.scaled(self.amplitude_factor * phase)


def basis_from_rest(kbreve, u: FourVelocity, m: float, s, lam) -> RestFrameConstruction:
    """Construction record for a basis ket generated from rest in the preferred frame."""
    kb = _kbreve(kbreve)
    k = four_momentum(kb, u, m)
    return RestFrameConstruction(
        kbreve=kb,
        u=u,
        m=float(m),
        s=float(s),
        lam=float(lam),
        amplitude_factor=float(np.sqrt(uk_scalar(kb, u, m) / m)),
        boost_lorentz=preferred_boost_matrix(u),
        translation=k - m * u.covariant,
    )
