"""Independent Green-function reference via an explicit conformal map.

The Mobius map (z - c+)/(z - c-) pins the two corners at 0 and infinity,
turning both boundary arcs into rays from the origin and the lens into an
infinite sector of opening pi/n.  Rotating so the unit-circle arc lands on
the positive real axis and raising to the n-th power opens the sector into
a half plane, where the Green function is elementary.  Conformal
invariance of the Green function then provides ground-truth values that
are entirely independent of the reflection-product construction.
"""

from __future__ import annotations

import math

import numpy as np

from .domain import arcs, classify_point, corner_distance

_CORNER_TOL = 1e-7


class SectorMap:
    """Map from the lens to the upper half plane, calibrated at build time."""

    def __init__(self, params):
        self.params = params
        self._cp, self._cm = params.corners
        # sends the Mobius image of the arc midpoint z = 1 to +1, so the
        # unit-circle arc maps onto the positive real ray
        self.rotation = -np.exp(-1j * params.alpha)
        self.conjugated = False
        probe = self._interior_probe()
        if (self._sector(probe) ** params.n).imag < 0.0:
            self.conjugated = True
        if self.to_halfplane(probe).imag <= 0.0:
            raise RuntimeError("sector map calibration failed")

    def _interior_probe(self):
        arcmap = arcs(self.params)
        mid1 = complex(arcmap["C1"].point(0.0))
        if arcmap["C0"].kind == "empty":
            mid0 = -mid1
        else:
            mid0 = complex(arcmap["C0"].point(0.0))
        for lam in (0.5, 0.75, 0.9, 0.25):
            z = lam * mid1 + (1.0 - lam) * mid0
            if classify_point(self.params, z) == "interior":
                return z
        raise RuntimeError("no interior probe point found")

    def _sector(self, z):
        return self.rotation * (z - self._cp) / (z - self._cm)

    def to_halfplane(self, z):
        """Image in the closed upper half plane; corners are excluded."""
        z = np.asarray(z, dtype=complex)
        if np.any(corner_distance(self.params, z) <= _CORNER_TOL):
            raise ValueError("the corner points map to 0 and infinity")
        w = self._sector(z) ** self.params.n
        if self.conjugated:
            w = np.conj(w)
        if np.ndim(z) == 0:
            return complex(w)
        return w

    def green(self, z, zeta):
        """Half-plane Green function pulled back through the map."""
        if np.any(np.asarray(z) == np.asarray(zeta)):
            raise ValueError("Green function has a singularity at zeta == z")
        wz = self.to_halfplane(z)
        wzeta = self.to_halfplane(zeta)
        val = 2.0 * (np.log(np.abs(wz - np.conj(wzeta)))
                     - np.log(np.abs(wz - wzeta)))
        if np.ndim(z) == 0 and np.ndim(zeta) == 0:
            return float(val)
        return val
