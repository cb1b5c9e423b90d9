"""Polar sampling grids for the unit disk."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# interior rings below the geometric boundary schedule
INNER_RADII = (0.0, 0.125, 0.25, 0.375)


@dataclass(frozen=True)
class DiskGrid:
    """Rings of equally spaced points; the ring at radius 0 is the single point 0.

    ``refinement_rounds`` is consumed by the supremum engine, not by the grid.
    """

    radii: tuple = field(default=None)
    angles_per_ring: int = 512
    refinement_rounds: int = 3

    def __post_init__(self):
        radii = self.radii
        if radii is None:
            radii = default_radii()
        radii = tuple(float(r) for r in radii)
        if not radii:
            raise ValueError("grid needs at least one radius")
        if any(not 0.0 <= r < 1.0 for r in radii):
            raise ValueError("grid radii must lie in [0, 1)")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("grid radii must be strictly increasing")
        if self.angles_per_ring < 1:
            raise ValueError("angles_per_ring must be positive")
        if self.refinement_rounds < 0:
            raise ValueError("refinement_rounds must be nonnegative")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def default(cls, rings: int = 20, angles: int = 512, refine: int = 3) -> "DiskGrid":
        return cls(default_radii(rings), angles, refine)

    @property
    def max_radius(self) -> float:
        return self.radii[-1]

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angles_per_ring) / self.angles_per_ring

    def ring_array(self) -> np.ndarray:
        """Points as a (rings, angles) array; the origin ring repeats 0."""
        r = np.asarray(self.radii)[:, None]
        return r * np.exp(1j * self.angles)[None, :]

    def points(self) -> np.ndarray:
        pts = self.ring_array()
        if self.radii[0] == 0.0:
            return np.concatenate([[0j], pts[1:].ravel()])
        return pts.ravel()

    def ring(self, r: float) -> np.ndarray:
        return r * np.exp(1j * self.angles)

    def config(self) -> dict:
        return {
            "radii": list(self.radii),
            "angles_per_ring": self.angles_per_ring,
            "refinement_rounds": self.refinement_rounds,
        }


def default_radii(rings: int = 20) -> tuple:
    if rings < 1:
        raise ValueError("rings must be positive")
    return INNER_RADII + tuple(1.0 - 2.0 ** -k for k in range(1, rings + 1))
