"""Deterministic random inputs for the property checks.

Rotations come from uniformly random unit quaternions; boost speeds are
uniform in [0, vmax] with vmax = 0.95 by default, which keeps the
conditioning of composed-transform identities under control.
"""

from __future__ import annotations

import numpy as np

from .kinematics import FourVelocity, lorentz_boost, lorentz_rotation


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return v / norm


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform rotation from a random unit quaternion."""
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def random_boost_matrix(rng: np.random.Generator, vmax: float = 0.95) -> np.ndarray:
    return lorentz_boost(rng.uniform(0.0, vmax) * random_unit_vector(rng))


def random_lorentz(rng: np.random.Generator, vmax: float = 0.95) -> np.ndarray:
    """Generic proper orthochronous Lorentz matrix: rotation times boost."""
    return lorentz_rotation(random_rotation(rng)) @ random_boost_matrix(rng, vmax)


def random_four_velocity(rng: np.random.Generator, vmax: float = 0.95) -> FourVelocity:
    speed = rng.uniform(0.0, vmax)
    v = speed * random_unit_vector(rng)
    gamma = 1.0 / np.sqrt(1.0 - speed**2)
    return FourVelocity.from_space(gamma * v)


def random_kbreve(rng: np.random.Generator, scale: float = 3.0) -> np.ndarray:
    return rng.normal(0.0, scale, size=3)


def random_mass(rng: np.random.Generator, low: float = 0.3, high: float = 5.0) -> float:
    return float(rng.uniform(low, high))
