"""Harmonic kernels of the lens domain in closed product form.

All kernels are built from 2n factor polynomials indexed by k < n,

    num_k = conj(z)*zeta*sin(a+k*t) - (conj(z)+zeta)*sin(k*t) - sin(a-k*t)
    den_k = z*zeta*sin(k*t) + z*sin(a-k*t) - zeta*sin(a+k*t) + sin(k*t)

with a the corner half-angle and t = pi/n.  The Green function is the log
of the squared modulus of prod(num_k/den_k); the Neumann function is minus
the log of the squared modulus of prod(num_k)*prod(den_k).  Products are
accumulated as sums of log-moduli so large n and near-corner points do not
overflow.  The k = 0 denominator equals (z - zeta)*sin(a) and carries the
only diagonal zero; the *_regular variants divide it out analytically and
stay finite across zeta == z, which is what the singular-area quadrature
evaluates.
"""

from __future__ import annotations

import math

import numpy as np

from .domain import (EPS_CORNER, BoundaryPoint, arcs, classify_point,
                     corner_distance, reflection_orbit)


class KernelField:
    """Evaluators for one lens domain; immutable and cheap to construct."""

    def __init__(self, params):
        self.params = params
        n, alpha, theta = params.n, params.alpha, params.theta
        k = np.arange(n)
        self._sk = np.sin(k * theta)
        self._sp = np.sin(alpha + k * theta)
        self._sm = np.sin(alpha - k * theta)
        self._skp = np.sin((k + 1) * theta)
        self._smp = np.sin(alpha - (k + 1) * theta)
        self._log_sin_alpha = math.log(math.sin(alpha))
        self._density_c0 = 2.0 * n * math.sin(alpha - theta) / math.sin(alpha)

    # ------------------------------------------------------------------
    # factor polynomials

    def _num(self, k, z, zeta):
        return (np.conj(z) * zeta * self._sp[k]
                - (np.conj(z) + zeta) * self._sk[k] - self._sm[k])

    def _den(self, k, z, zeta):
        return (z * zeta * self._sk[k] + z * self._sm[k]
                - zeta * self._sp[k] + self._sk[k])

    # ------------------------------------------------------------------
    # guards

    def _no_corners(self, *values):
        for v in values:
            if np.any(corner_distance(self.params, v) <= EPS_CORNER):
                raise ValueError("kernel undefined at the corner points")

    @staticmethod
    def _distinct(z, zeta):
        if np.any(np.asarray(z) == np.asarray(zeta)):
            raise ValueError("kernel has a singularity at zeta == z")

    @staticmethod
    def _out(value, *inputs):
        if all(np.ndim(v) == 0 for v in inputs):
            return float(value)
        return value

    # ------------------------------------------------------------------
    # Green side

    def green(self, z, zeta):
        """Green function: positive inside, zero on the boundary, log pole
        at zeta == z."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._no_corners(z, zeta)
        self._distinct(z, zeta)
        total = 0.0
        for k in range(self.params.n):
            total = total + (np.log(np.abs(self._num(k, z, zeta)))
                             - np.log(np.abs(self._den(k, z, zeta))))
        return self._out(2.0 * total, z, zeta)

    def green_regular(self, z, zeta):
        """green + log|zeta - z|^2, finite and harmonic across the diagonal."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._no_corners(z, zeta)
        total = np.log(np.abs(self._num(0, z, zeta))) - self._log_sin_alpha
        for k in range(1, self.params.n):
            total = total + (np.log(np.abs(self._num(k, z, zeta)))
                             - np.log(np.abs(self._den(k, z, zeta))))
        return self._out(2.0 * total, z, zeta)

    def d_green_dzeta(self, z, zeta):
        """Holomorphic zeta-derivative of the Green function."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._no_corners(z, zeta)
        self._distinct(z, zeta)
        total = 0.0
        for k in range(self.params.n):
            total = total + ((np.conj(z) * self._sp[k] - self._sk[k])
                             / self._num(k, z, zeta)
                             - (z * self._sk[k] - self._sp[k])
                             / self._den(k, z, zeta))
        if np.ndim(z) == 0 and np.ndim(zeta) == 0:
            return complex(total)
        return total

    def poisson_kernel(self, z, bp: BoundaryPoint):
        """Poisson kernel against a non-corner boundary point batch."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(bp.point, dtype=complex)
        self._no_corners(z, zeta)
        self._distinct(z, zeta)
        n = self.params.n
        if bp.arc_id == "C1":
            total = 0.0
            for k in range(n):
                total = total + np.real((z * self._sm[k] + self._sk[k])
                                        / self._den(k, z, zeta))
            value = n - 2.0 * total
        elif bp.arc_id == "C0":
            if n == 1:
                raise ValueError("the C0 arc is empty for n = 1")
            total = 0.0
            for k in range(n):
                total = total + np.real((z * self._smp[k] + self._skp[k])
                                        / self._den(k, z, zeta))
            value = -0.5 * self._density_c0 + 2.0 * total
        else:
            raise ValueError(f"unknown arc id {bp.arc_id!r}")
        return self._out(value, z, zeta)

    # ------------------------------------------------------------------
    # Neumann side

    def neumann(self, z, zeta):
        """Neumann function, defined up to an additive constant; has the
        same log pole as the Green function and piecewise-constant outward
        normal derivative on the boundary."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._distinct(z, zeta)
        total = 0.0
        for k in range(self.params.n):
            total = total + (np.log(np.abs(self._num(k, z, zeta)))
                             + np.log(np.abs(self._den(k, z, zeta))))
        return self._out(-2.0 * total, z, zeta)

    def neumann_regular(self, z, zeta):
        """neumann + log|zeta - z|^2, finite across the diagonal."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        total = np.log(np.abs(self._num(0, z, zeta))) + self._log_sin_alpha
        for k in range(1, self.params.n):
            total = total + (np.log(np.abs(self._num(k, z, zeta)))
                             + np.log(np.abs(self._den(k, z, zeta))))
        return self._out(-2.0 * total, z, zeta)

    def d_neumann_dz(self, z, zeta):
        """Holomorphic z-derivative of the Neumann function."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._distinct(z, zeta)
        total = 0.0
        for k in range(self.params.n):
            total = total + ((zeta * self._sk[k] + self._sm[k])
                             / self._den(k, z, zeta)
                             + (np.conj(zeta) * self._sp[k] - self._sk[k])
                             / np.conj(self._num(k, z, zeta)))
        total = -total
        if np.ndim(z) == 0 and np.ndim(zeta) == 0:
            return complex(total)
        return total

    def normal_density(self, bp: BoundaryPoint):
        """Outward normal derivative of the Neumann function on the
        boundary: a piecewise constant (-2n on the unit-circle arc)."""
        pt = np.asarray(bp.point, dtype=complex)
        self._no_corners(pt)
        if bp.arc_id == "C1":
            value = -2.0 * self.params.n
        elif bp.arc_id == "C0":
            if self.params.n == 1:
                raise ValueError("the C0 arc is empty for n = 1")
            value = self._density_c0
        else:
            raise ValueError(f"unknown arc id {bp.arc_id!r}")
        if np.ndim(bp.point) == 0:
            return value
        return np.full(pt.shape, value)

    # ------------------------------------------------------------------
    # reference kernels of the two carrier regions

    def disc_green(self, z, zeta):
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._distinct(z, zeta)
        val = 2.0 * (np.log(np.abs(np.conj(z) * zeta - 1.0))
                     - np.log(np.abs(z - zeta)))
        return self._out(val, z, zeta)

    def disc_poisson(self, z, zeta):
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._distinct(z, zeta)
        return self._out(1.0 - 2.0 * np.real(z / (z - zeta)), z, zeta)

    def carrier_green(self, z, zeta):
        """Green function of the region cut out by the C0 carrier circle."""
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._distinct(z, zeta)
        alpha, theta = self.params.alpha, self.params.theta
        num = (np.conj(z) * zeta * math.sin(alpha - theta)
               + (np.conj(z) + zeta) * math.sin(theta) - math.sin(alpha + theta))
        val = 2.0 * (np.log(np.abs(num)) - np.log(np.abs(z - zeta))
                     - self._log_sin_alpha)
        return self._out(val, z, zeta)

    def carrier_poisson(self, z, zeta):
        z = np.asarray(z, dtype=complex)
        zeta = np.asarray(zeta, dtype=complex)
        self._distinct(z, zeta)
        alpha, theta = self.params.alpha, self.params.theta
        val = (-math.sin(alpha - theta) / math.sin(alpha)
               + 2.0 * np.real((z * math.sin(alpha - theta) + math.sin(theta))
                               / ((z - zeta) * math.sin(alpha))))
        return self._out(val, z, zeta)

    def reference_kernels(self):
        """The four comparison kernels keyed g0/p0 (carrier region) and
        g1/p1 (unit disc), used by the boundary-limit tests."""
        return {"g0": self.carrier_green, "p0": self.carrier_poisson,
                "g1": self.disc_green, "p1": self.disc_poisson}

    # ------------------------------------------------------------------
    # diagnostics

    def prefactor_abs(self, z):
        """Modulus of prod_k (z sin(kt) - sin(a+kt))/(conj(z) sin(a+kt) - sin(kt));
        identically 1 on the boundary."""
        z = np.asarray(z, dtype=complex)
        total = 0.0
        for k in range(self.params.n):
            total = total + (np.log(np.abs(z * self._sk[k] - self._sp[k]))
                             - np.log(np.abs(np.conj(z) * self._sp[k] - self._sk[k])))
        return self._out(np.exp(total), z)

    def blaschke_product(self, z, zeta):
        """prod_k (zeta - z_{2k+1})/(zeta - z_{2k}) over the orbit of z,
        evaluated projectively so orbit points at infinity are fine."""
        zeta = complex(zeta)
        orbit = reflection_orbit(self.params, complex(z))
        num = complex(1.0)
        den = complex(1.0)
        for k in range(self.params.n):
            even = orbit.homogeneous[2 * k]
            odd = orbit.homogeneous[2 * k + 1]
            hit_odd = zeta * odd.w - odd.z
            hit_even = zeta * even.w - even.z
            if abs(hit_odd) == 0.0 or abs(hit_even) == 0.0:
                raise ValueError("zeta coincides with a reflection orbit point")
            # orbit points at infinity (w == 0) contribute a clean 0 or pole
            num *= hit_odd * even.w
            den *= hit_even * odd.w
        if den == 0.0:
            return complex(math.inf, 0.0)
        return num / den


def evaluate_on_grid(field, kind, zeta, nx, ny):
    """Kernel values over the domain's bounding box.

    Returns (xs, ys, values) with values shaped (ny, nx); cells outside the
    closed domain, at the corners, or on the pole are NaN.  kind selects
    "green" or "neumann"; zeta is the pole.
    """
    if kind not in ("green", "neumann"):
        raise ValueError("kind must be 'green' or 'neumann'")
    zeta = complex(zeta)
    pts = np.concatenate([arc.point(np.linspace(*arc.t_range, 257))
                          for arc in arcs(field.params).values()
                          if arc.kind != "empty"])
    xs = np.linspace(pts.real.min(), pts.real.max(), nx)
    ys = np.linspace(pts.imag.min(), pts.imag.max(), ny)
    values = np.full((ny, nx), np.nan)
    evaluate = field.green if kind == "green" else field.neumann
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            z = complex(x, y)
            state = classify_point(field.params, z)
            if state in ("interior", "boundary_C0", "boundary_C1"):
                try:
                    values[j, i] = evaluate(z, zeta)
                except ValueError:
                    pass
    return xs, ys, values
