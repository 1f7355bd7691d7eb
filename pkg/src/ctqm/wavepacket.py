"""Momentum-space wave functions and the covariant position operator.

Packets are complex samples over a Cartesian grid of the covariant spatial
momentum; k_0 is always the on-shell dispersion value.  The standard-measure
position operator is

    x^i = -i d/dk_i + (i/2) (u^i/(u.k) - k^i/(u.k)^2),

Hermitean under the weight d^3k/(2 omega); with the invariant measure
d^3k/(2 u0) it collapses to the bare derivative.  Derivatives use supplied
closed forms when available and 4th-order central differences otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import DomainError, FrameMismatchError, MeasureMismatchError
from .kinematics import PREFERRED, FourVelocity
from .representation import INVARIANT, STANDARD

_TWO_PI_32 = (2.0 * np.pi) ** 1.5


class MomentumGrid:
    """Uniform grid over covariant spatial momentum components.

    Each of the three axes is either active, given as a (lo, hi, n) triple,
    or frozen at a number.  Periodic grids sample [lo, hi) so that n times
    the spacing is exactly the period and discrete Fourier orthogonality is
    exact; non-periodic grids are inclusive.  Active axes need at least 9
    points for the 4th-order stencils.
    """

    def __init__(self, axes, periodic: bool = False):
        if len(axes) != 3:
            raise DomainError("grid needs exactly 3 axis specs")
        self.periodic = bool(periodic)
        self.active_axes: tuple[int, ...] = ()
        self._axis_points: list[np.ndarray | float] = []
        spacing = {}
        for ax, spec in enumerate(axes):
            if np.isscalar(spec):
                self._axis_points.append(float(spec))
                continue
            lo, hi, n = spec
            n = int(n)
            if n < 9:
                raise DomainError("active axes need at least 9 points")
            if not hi > lo:
                raise DomainError("axis range must have hi > lo")
            if self.periodic:
                dk = (hi - lo) / n
                pts = lo + dk * np.arange(n)
            else:
                pts = np.linspace(lo, hi, n)
                dk = pts[1] - pts[0]
            self.active_axes += (ax,)
            spacing[ax] = float(dk)
            self._axis_points.append(pts)
        if not self.active_axes:
            raise DomainError("grid needs at least one active axis")
        self.spacing = spacing
        self.shape = tuple(len(self._axis_points[a]) for a in self.active_axes)
        mesh = np.meshgrid(
            *(self._axis_points[a] for a in self.active_axes), indexing="ij"
        )
        k = []
        for ax in range(3):
            if ax in self.active_axes:
                k.append(mesh[self.active_axes.index(ax)])
            else:
                k.append(np.full(self.shape, self._axis_points[ax]))
        self.k = np.stack(k)  # (3, *shape)
        self.k.setflags(write=False)
        self.cell = float(np.prod([spacing[a] for a in self.active_axes]))

    @classmethod
    def line(cls, lo, hi, n, axis: int = 0, frozen=(0.0, 0.0), periodic=False):
        specs = list(frozen[:axis]) + [(lo, hi, n)] + list(frozen[axis:])
        return cls(specs, periodic=periodic)

    @classmethod
    def cube(cls, lo, hi, n, periodic=False):
        return cls([(lo, hi, n)] * 3, periodic=periodic)

    def axis_index(self, axis: int) -> int:
        """Position of a momentum axis among the array dimensions."""
        if axis not in self.active_axes:
            raise DomainError(f"momentum axis {axis} is frozen on this grid")
        return self.active_axes.index(axis)

    def compatible(self, other: "MomentumGrid") -> bool:
        if self is other:
            return True
        if self.periodic != other.periodic or self.active_axes != other.active_axes:
            return False
        return all(
            np.array_equal(np.atleast_1d(a), np.atleast_1d(b))
            for a, b in zip(self._axis_points, other._axis_points)
        )


@dataclass(frozen=True)
class Fields:
    """Pointwise on-shell kinematics over a grid."""

    udotk: np.ndarray
    uk: np.ndarray
    k0: np.ndarray
    omega: np.ndarray  # contravariant k^0 = u0 * uk
    kup: np.ndarray  # (3, *shape) contravariant spatial momentum


def kinematic_fields(grid: MomentumGrid, u: FourVelocity, m: float) -> Fields:
    kb = grid.k
    udotk = np.einsum("i,i...->...", u.uvec, kb)
    uk = np.sqrt(udotk**2 + np.einsum("i...,i...->...", kb, kb) + m**2)
    k0 = (-udotk + uk) / u.u0
    omega = u.u0 * uk
    kup = u.u0 * u.uvec[(...,) + (None,) * udotk.ndim] * k0 - kb
    return Fields(udotk, uk, k0, omega, kup)


def _duk(grid: MomentumGrid, u: FourVelocity, f: Fields, j: int) -> np.ndarray:
    """d(u.k)/dk_j."""
    return (f.udotk * u.uvec[j] + grid.k[j]) / f.uk


@dataclass(frozen=True)
class WavePacket:
    """Complex momentum-space samples plus optional closed-form derivatives.

    grad[i] holds d(values)/dk_i on the grid; hess[i, j] the second
    derivatives.  Operators consume them when present and produce what they
    can for their output (one order less), falling back to finite
    differences otherwise.
    """

    grid: MomentumGrid
    u: FourVelocity
    m: float
    values: np.ndarray
    measure: str = STANDARD
    s: float = 0.0
    lam: float = 0.0
    grad: Optional[np.ndarray] = None
    hess: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.measure not in (STANDARD, INVARIANT):
            raise MeasureMismatchError(f"unknown measure tag {self.measure!r}")
        if self.values.shape != self.grid.shape:
            raise DomainError("values do not match the grid shape")
        if self.m <= 0.0:
            raise DomainError("mass must be positive")

    def fields(self) -> Fields:
        return kinematic_fields(self.grid, self.u, self.m)

    def with_values(self, values, grad=None, hess=None) -> "WavePacket":
        return replace(self, values=values, grad=grad, hess=hess)

    def norm(self) -> float:
        return float(np.sqrt(scalar_product(self, self).real))


# one-sided 4th-order first-derivative stencils for the two boundary layers
_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


def _fd4(values: np.ndarray, dk: float, dim: int, periodic: bool) -> np.ndarray:
    """4th-order first derivative along array dimension dim."""
    if periodic:
        f1 = np.roll(values, -1, dim)
        f_1 = np.roll(values, 1, dim)
        f2 = np.roll(values, -2, dim)
        f_2 = np.roll(values, 2, dim)
        return (f_2 - 8 * f_1 + 8 * f1 - f2) / (12.0 * dk)

    def sl(s):
        idx = [slice(None)] * values.ndim
        idx[dim] = s
        return tuple(idx)

    out = np.empty_like(values)
    out[sl(slice(2, -2))] = (
        values[sl(slice(0, -4))]
        - 8 * values[sl(slice(1, -3))]
        + 8 * values[sl(slice(3, -1))]
        - values[sl(slice(4, None))]
    ) / (12.0 * dk)
    n = values.shape[dim]
    head = [values[sl(slice(j, j + 1))] for j in range(5)]
    tail = [values[sl(slice(n - 1 - j, n - j))] for j in range(5)]
    out[sl(slice(0, 1))] = sum(c * f for c, f in zip(_EDGE0, head)) / dk
    out[sl(slice(1, 2))] = sum(c * f for c, f in zip(_EDGE1, head)) / dk
    out[sl(slice(n - 1, n))] = -sum(c * f for c, f in zip(_EDGE0, tail)) / dk
    out[sl(slice(n - 2, n - 1))] = -sum(c * f for c, f in zip(_EDGE1, tail)) / dk
    return out


def derivative(psi: WavePacket, axis: int) -> np.ndarray:
    """d(values)/dk_axis: the supplied closed form if present, else FD."""
    if psi.grad is not None:
        return psi.grad[axis]
    dim = psi.grid.axis_index(axis)
    return _fd4(psi.values, psi.grid.spacing[axis], dim, psi.grid.periodic)


def gaussian_packet(
    grid: MomentumGrid,
    u: FourVelocity,
    m: float,
    center=(0.0, 0.0, 0.0),
    sigma=1.0,
    xshift=(0.0, 0.0, 0.0),
    measure: str = STANDARD,
) -> WavePacket:
    """Gaussian test packet exp(-(k-c)^2/(4 sigma^2) + i k.a), derivatives closed form."""
    c = np.asarray(center, dtype=float)
    a = np.asarray(xshift, dtype=float)
    sig = np.broadcast_to(np.asarray(sigma, dtype=float), (3,)).copy()
    kb = grid.k
    expo = np.zeros(grid.shape, dtype=complex)
    for i in range(3):
        expo += -((kb[i] - c[i]) ** 2) / (4.0 * sig[i] ** 2) + 1j * kb[i] * a[i]
    values = np.exp(expo)
    phi = np.stack(
        [-(kb[i] - c[i]) / (2.0 * sig[i] ** 2) + 1j * a[i] * np.ones(grid.shape)
         for i in range(3)]
    )
    grad = phi * values
    hess = np.empty((3, 3) + grid.shape, dtype=complex)
    for i in range(3):
        for j in range(3):
            hess[i, j] = phi[i] * phi[j] * values
            if i == j:
                hess[i, j] -= values / (2.0 * sig[i] ** 2)
    return WavePacket(grid, u, m, values, measure, grad=grad, hess=hess)


def localized_wavefunction(
    xi,
    tau: float,
    t: float,
    grid: MomentumGrid,
    u: FourVelocity,
    m: float,
    measure: str = STANDARD,
) -> WavePacket:
    """State localized at the point xi at time tau, sampled at time t.

    Standard measure: (2 pi)^(-3/2) sqrt(u.k) exp(i k_mu xi^mu) with
    xi^0 = tau - t; the invariant-measure variant drops the sqrt(u.k) and is
    a pure phase.  Not square integrable; meant for overlap integrals and
    eigenvalue checks on periodic grids.
    """
    xi = np.asarray(xi, dtype=float)
    xi0 = tau - t
    f = kinematic_fields(grid, u, m)
    phase = f.k0 * xi0 + np.einsum("i...,i->...", grid.k, xi)
    values = np.exp(1j * phase) / _TWO_PI_32
    if measure == STANDARD:
        values = values * np.sqrt(f.uk)
    grad = np.empty((3,) + grid.shape, dtype=complex)
    for j in range(3):
        duk = _duk(grid, u, f, j)
        dk0 = (-u.uvec[j] + duk) / u.u0
        g = 1j * (dk0 * xi0 + xi[j])
        if measure == STANDARD:
            g = g + 0.5 * duk / f.uk
        grad[j] = g * values
    return WavePacket(grid, u, m, values, measure, grad=grad)


def _position_correction(psi: WavePacket, axis: int, f: Fields) -> np.ndarray:
    return 0.5j * (psi.u.uvec[axis] / f.uk - f.kup[axis] / f.uk**2)


def position_apply(psi: WavePacket, axis: int) -> WavePacket:
    """Standard-measure position operator component x^axis."""
    if psi.measure != STANDARD:
        raise MeasureMismatchError("position_apply expects the standard measure")
    f = psi.fields()
    corr = _position_correction(psi, axis, f)
    values = -1j * derivative(psi, axis) + corr * psi.values
    grad = None
    if psi.hess is not None and psi.grad is not None:
        u = psi.u
        grad = np.empty((3,) + psi.grid.shape, dtype=complex)
        for j in range(3):
            duk = _duk(psi.grid, u, f, j)
            dk0 = (-u.uvec[j] + duk) / u.u0
            dkup = u.u0 * u.uvec[axis] * dk0 - (1.0 if j == axis else 0.0)
            dcorr = 0.5j * (
                -u.uvec[axis] * duk / f.uk**2
                - dkup / f.uk**2
                + 2.0 * f.kup[axis] * duk / f.uk**3
            )
            grad[j] = -1j * psi.hess[axis, j] + dcorr * psi.values + corr * psi.grad[j]
    return psi.with_values(values, grad=grad)


def position_apply_invariant(psi: WavePacket, axis: int) -> WavePacket:
    """Invariant-measure position operator: the bare derivative -i d/dk_axis."""
    if psi.measure != INVARIANT:
        raise MeasureMismatchError("position_apply_invariant expects the invariant measure")
    values = -1j * derivative(psi, axis)
    grad = None
    if psi.hess is not None:
        grad = -1j * psi.hess[axis]
    return psi.with_values(values, grad=grad)


def newton_wigner_apply(psi: WavePacket, axis: int) -> WavePacket:
    """Newton-Wigner position operator; defined in the preferred frame only.

    q^i = -i (d/dk_i + (1/2) k^i / (kvec^2 + m^2)) with the index raised by
    the Minkowski metric (k^i = -k_i); used as the comparison oracle for
    position_apply at u = utilde.
    """
    if not psi.u.isclose(PREFERRED):
        raise FrameMismatchError("Newton-Wigner operator lives in the preferred frame")
    if psi.measure != STANDARD:
        raise MeasureMismatchError("newton_wigner_apply expects the standard measure")
    kb = psi.grid.k
    denom = np.einsum("i...,i...->...", kb, kb) + psi.m**2
    values = -1j * (derivative(psi, axis) + 0.5 * (-kb[axis]) / denom * psi.values)
    return psi.with_values(values)


def momentum_apply(psi: WavePacket, mu: int) -> WavePacket:
    """Multiplication by the covariant momentum component k_mu (k_0 on shell)."""
    f = psi.fields()
    kmu = f.k0 if mu == 0 else psi.grid.k[mu - 1]
    values = kmu * psi.values
    grad = None
    if psi.grad is not None:
        u = psi.u
        grad = np.empty((3,) + psi.grid.shape, dtype=complex)
        for j in range(3):
            if mu == 0:
                dkmu = (-u.uvec[j] + _duk(psi.grid, u, f, j)) / u.u0
            else:
                dkmu = 1.0 if j == mu - 1 else 0.0
            grad[j] = dkmu * psi.values + kmu * psi.grad[j]
    return psi.with_values(values, grad=grad)


def mass_squared_apply(psi: WavePacket) -> WavePacket:
    """g^{mu nu} p_mu p_nu acting pointwise; equals m^2 on shell."""
    f = psi.fields()
    ksq = f.k0 * f.omega + np.einsum("i...,i...->...", psi.grid.k, f.kup)
    return psi.with_values(ksq * psi.values)


def scalar_product(phi: WavePacket, psi: WavePacket) -> complex:
    """Riemann sum of conj(phi) psi under the measure in force."""
    if not phi.grid.compatible(psi.grid):
        raise DomainError("scalar product needs a shared grid")
    if not phi.u.isclose(psi.u):
        raise FrameMismatchError("scalar product across frames")
    if phi.measure != psi.measure:
        raise MeasureMismatchError("scalar product across measure conventions")
    if abs(phi.m - psi.m) > 1e-12 * max(1.0, psi.m):
        raise DomainError("scalar product across masses")
    if psi.measure == STANDARD:
        weight = 1.0 / (2.0 * psi.fields().omega)
    else:
        weight = 1.0 / (2.0 * psi.u.u0)
    total = np.sum(np.conj(phi.values) * psi.values * weight) * psi.grid.cell
    return complex(total)


def rescale_measure(psi: WavePacket, to: str) -> WavePacket:
    """Map between measure conventions: psi_inv = psi_std / sqrt(u.k)."""
    if to not in (STANDARD, INVARIANT):
        raise MeasureMismatchError(f"unknown measure tag {to!r}")
    if psi.measure == to:
        return psi
    f = psi.fields()
    root = np.sqrt(f.uk)
    factor = root if to == STANDARD else 1.0 / root
    values = psi.values * factor
    grad = None
    if psi.grad is not None:
        grad = np.empty((3,) + psi.grid.shape, dtype=complex)
        sign = 1.0 if to == STANDARD else -1.0
        for j in range(3):
            dlog = sign * 0.5 * _duk(psi.grid, psi.u, f, j) / f.uk
            grad[j] = factor * (psi.grad[j] + dlog * psi.values)
    return replace(psi, values=values, measure=to, grad=grad, hess=None)


def translate_packet(psi: WavePacket, steps, t: float = 0.0) -> WavePacket:
    """Finite translation by a whole number of grid cells per active axis.

    Requires a periodic grid; the samples are rolled and, in the standard
    measure, compensated by sqrt(u.k / u.k_shifted) so the map is exactly
    unitary on the discrete inner product.  The phase exp(i q_0 t) rides on
    top with q_0 = k_0 - k_0_shifted pointwise.
    """
    if not psi.grid.periodic:
        raise DomainError("packet translation needs a periodic grid")
    steps = np.asarray(steps, dtype=int)
    if steps.shape != (len(psi.grid.active_axes),):
        raise DomainError("one integer step per active axis required")
    f = psi.fields()
    dims = tuple(range(len(psi.grid.shape)))
    shifted = np.roll(psi.values, steps, axis=dims)
    uk_s = np.roll(f.uk, steps, axis=dims)
    k0_s = np.roll(f.k0, steps, axis=dims)
    phase = np.exp(1j * (f.k0 - k0_s) * t)
    if psi.measure == STANDARD:
        values = np.sqrt(f.uk / uk_s) * phase * shifted
    else:
        values = phase * shifted
    return psi.with_values(values)


def _apply_op(op, psi: WavePacket, x0_value: float) -> WavePacket:
    kind = op[0]
    if kind == "x":
        return position_apply(psi, op[1])
    if kind == "p":
        return momentum_apply(psi, op[1])
    if kind == "x0":
        return psi.with_values(x0_value * psi.values, grad=None)
    raise DomainError(f"unknown operator kind {kind!r}")


def commutator_residual(psi: WavePacket, op_a, op_b, x0_value: float = 0.0) -> float:
    """Relative residual of [A, B] psi against its closed-form right-hand side.

    Supported operators: ("x", i) spatial position, ("p", mu) momentum,
    ("x0",) the c-number time coordinate.  Expected values: [x^i, p_j] =
    -i delta^i_j, [x^i, p_0] = i p^i/p^0, all other pairs commute.
    """
    ab = _apply_op(op_a, _apply_op(op_b, psi, x0_value), x0_value)
    ba = _apply_op(op_b, _apply_op(op_a, psi, x0_value), x0_value)
    comm = ab.values - ba.values
    expected = np.zeros_like(psi.values)
    if op_a[0] == "x" and op_b[0] == "p":
        i, mu = op_a[1], op_b[1]
        if mu == 0:
            f = psi.fields()
            expected = 1j * f.kup[i] / f.omega * psi.values
        elif mu - 1 == i:
            expected = -1j * psi.values
    elif op_a[0] == "p" and op_b[0] == "x":
        raise DomainError("order the pair as (position, momentum)")
    resid = psi.with_values(comm - expected)
    return resid.norm() / psi.norm()
