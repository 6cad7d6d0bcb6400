"""Lens domains bounded by a unit-circle arc and a second circular arc.

The domain is the set

    |z| <= 1  and  |z|^2 sin(alpha-theta) + 2 Re(z) sin(theta) - sin(alpha+theta) >= 0

with corners e^{+i alpha}, e^{-i alpha} and interior angle theta = pi/n.
Reflecting the domain across its arcs 2n-1 times tiles the plane; the
generated arcs C_k and the reflection orbit of a seed point have closed
forms, which this module provides together with boundary parametrization,
outward normals, membership classification and arc lengths.

Degenerate cases: alpha == theta makes the second arc a straight chord;
n == 1 collapses the second arc entirely and the domain is the whole unit
disc, whose boundary is carried by the unit-circle arc alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circles import CircleMatrix, HomogeneousPoint

EPS_CORNER = 1e-7
_CHORD_TOL = 1e-12  # |alpha - theta| below this is treated as the chord case


@dataclass(frozen=True)
class LensParams:
    """Opening half-angle alpha of the corners and tiling order n."""

    alpha: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise ValueError("n must be a positive integer")
        object.__setattr__(self, "n", int(self.n))
        if not 0.0 < self.alpha < math.pi:
            raise ValueError("alpha must lie strictly between 0 and pi")
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def theta(self):
        return math.pi / self.n

    @property
    def corners(self):
        return (complex(math.cos(self.alpha), math.sin(self.alpha)),
                complex(math.cos(self.alpha), -math.sin(self.alpha)))

    @property
    def is_chord(self):
        return abs(self.alpha - self.theta) <= _CHORD_TOL

    def to_json(self):
        return {"alpha": self.alpha, "n": self.n}

    @classmethod
    def from_json(cls, data):
        return cls(float(data["alpha"]), int(data["n"]))


def corner_distance(params, z):
    cp, cm = params.corners
    z = np.asarray(z, dtype=complex)
    return np.minimum(np.abs(z - cp), np.abs(z - cm))


def arc_matrix(params, k):
    """Matrix of the k-th parqueting arc; any integer k, period 2n exact."""
    kk = k % (2 * params.n)
    ang = (kk - 1) * params.theta
    a = -math.sin(params.alpha + ang)
    b = math.sin(ang)
    c = math.sin(params.alpha - ang)
    return CircleMatrix(a, b, c)


@dataclass(frozen=True)
class ReflectionOrbit:
    """The 2n reflection images of a seed point, kept in homogeneous form."""

    base: complex
    homogeneous: tuple

    @property
    def points(self):
        """Orbit as complex values; (inf+0j) marks a point at infinity."""
        return [p.value() for p in self.homogeneous]


def reflection_orbit(params, z):
    """Closed-form orbit z_0 .. z_{2n-1} of a non-corner point of the domain.

    Index 2k is the image of 1/conj(z) under reflection through arc k+1,
    index 2k+1 the image of z itself; z_0 == z and z_1 == 1/conj(z).
    """
    z = complex(z)
    if corner_distance(params, z) <= EPS_CORNER:
        raise ValueError("orbit degenerates at the corner points")
    if classify_point(params, z) == "exterior":
        raise ValueError("seed point must lie in the closed domain")
    alpha, theta = params.alpha, params.theta
    pairs = []
    for k in range(params.n):
        sk = math.sin(k * theta)
        sp = math.sin(alpha + k * theta)
        sm = math.sin(alpha - k * theta)
        zc = z.conjugate()
        even = HomogeneousPoint(-z * sm - sk, z * sk - sp).canonical()
        odd = HomogeneousPoint(zc * sk + sm, zc * sp - sk).canonical()
        pairs.extend((even, odd))
    return ReflectionOrbit(base=z, homogeneous=tuple(pairs))


def boundary_forms(params, z):
    """The two defining form values (f0 >= 0 and f1 <= 0 inside)."""
    z = np.asarray(z, dtype=complex)
    zz = np.abs(z) ** 2
    f1 = zz - 1.0
    alpha, theta = params.alpha, params.theta
    f0 = (zz * math.sin(alpha - theta) + 2.0 * z.real * math.sin(theta)
          - math.sin(alpha + theta))
    return f0, f1


def classify_point(params, z, tol=1e-10):
    """One of interior, boundary_C0, boundary_C1, corner, exterior."""
    z = complex(z)
    f0, f1 = boundary_forms(params, z)
    f0, f1 = float(f0), float(f1)
    if params.n == 1:
        # the whole disc; the two marked corner points still exist
        if abs(f1) <= tol:
            if corner_distance(params, z) <= EPS_CORNER:
                return "corner"
            return "boundary_C1"
        return "interior" if f1 < 0 else "exterior"
    if f1 > tol or f0 < -tol:
        return "exterior"
    on1 = abs(f1) <= tol
    on0 = abs(f0) <= tol
    if on0 and on1:
        return "corner"
    if on1:
        return "boundary_C1"
    if on0:
        return "boundary_C0"
    return "interior"


@dataclass(frozen=True)
class Arc:
    """One boundary arc with its native parametrization.

    kind "unit" and "circle" trace center + radius*exp(i(phi_mid+t)); kind
    "segment" is the vertical chord center + i*t; kind "empty" is the
    collapsed arc of the n == 1 disc.  t runs over [-half_width, half_width]
    and arc length is measured from t = -half_width.  Circle arcs evaluate
    anchored at their apex point: near the chord case the carrier radius
    blows up like 1/(alpha - theta) and the naive center + radius*e^{i phi}
    form loses all precision to cancellation.
    """

    arc_id: str
    kind: str
    center: complex
    radius: float
    phi_mid: float
    half_width: float
    apex: float = 0.0  # x of the arc midpoint, computed in a stable form

    @property
    def speed(self):
        return self.radius if self.kind in ("unit", "circle") else 1.0

    @property
    def length(self):
        return 2.0 * self.half_width * self.speed

    @property
    def t_range(self):
        return (-self.half_width, self.half_width)

    def point(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "unit":
            return self.center + self.radius * np.exp(1j * (self.phi_mid + t))
        if self.kind == "circle":
            sign = 1.0 if self.phi_mid == 0.0 else -1.0
            sag = 2.0 * self.radius * np.sin(0.5 * t) ** 2
            return (self.apex - sign * sag) + 1j * (sign * self.radius * np.sin(t))
        if self.kind == "segment":
            return self.center + 1j * t
        raise ValueError("empty arc has no points")

    def arclen(self, t):
        return self.speed * (np.asarray(t, dtype=float) + self.half_width)

    def carrier(self):
        """CircleMatrix of the full circle or line carrying this arc."""
        if self.kind == "empty":
            raise ValueError("empty arc has no carrier")
        if self.kind == "segment":
            # Re z = Re(center), written as z + conj(z) - 2 Re(center) = 0
            return CircleMatrix(0.0, 1.0, -2.0 * self.center.real)
        return CircleMatrix(1.0, -self.center,
                            abs(self.center) ** 2 - self.radius ** 2)

    def to_json(self):
        data = {"arc": self.arc_id, "kind": self.kind,
                "t_range": [-self.half_width, self.half_width]}
        if self.kind == "segment":
            lo = self.point(-self.half_width)
            hi = self.point(self.half_width)
            data["endpoints"] = [[lo.real, lo.imag], [hi.real, hi.imag]]
        elif self.kind != "empty":
            data["center"] = [self.center.real, self.center.imag]
            data["radius"] = self.radius
        return data


def arcs(params):
    """The two boundary arcs keyed by arc id."""
    alpha, theta, n = params.alpha, params.theta, params.n
    c1_half = math.pi if n == 1 else alpha
    c1 = Arc("C1", "unit", 0.0, 1.0, 0.0, c1_half)
    if n == 1:
        c0 = Arc("C0", "empty", 0.0, 0.0, 0.0, 0.0)
    elif params.is_chord:
        c0 = Arc("C0", "segment", complex(math.cos(alpha), 0.0), 0.0, 0.0,
                 math.sin(alpha))
    else:
        m = -math.sin(theta) / math.sin(alpha - theta)
        r = math.sin(alpha) / abs(math.sin(alpha - theta))
        phi_mid = 0.0 if alpha > theta else math.pi
        # cancellation-free arc midpoint: equals m +/- r
        apex = math.cos(0.5 * (alpha + theta)) / math.cos(0.5 * (alpha - theta))
        c0 = Arc("C0", "circle", complex(m, 0.0), r, phi_mid,
                 abs(alpha - theta), apex)
    return {"C0": c0, "C1": c1}


@dataclass(frozen=True)
class BoundaryPoint:
    """Point on a named arc: native parameter, location and arc length.

    Fields hold scalars or numpy arrays of matching shape, so one instance
    can describe a whole batch of quadrature nodes on the same arc.
    """

    arc_id: str
    t: object
    point: object
    arclen: object


def boundary_point(params, arc_id, t):
    arc = arcs(params)[arc_id]
    if arc.kind == "empty":
        raise ValueError("the C0 arc is empty for n = 1")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > arc.half_width + 1e-12):
        raise ValueError(f"parameter outside [{-arc.half_width:g}, {arc.half_width:g}]")
    if t.ndim == 0:
        t = float(t)
        return BoundaryPoint(arc_id, t, complex(arc.point(t)), float(arc.arclen(t)))
    return BoundaryPoint(arc_id, t, arc.point(t), arc.arclen(t))


def arc_lengths(params):
    a = arcs(params)
    return (a["C0"].length, a["C1"].length)


def normal_coeffs(params, bp):
    """Coefficients (q, conj(q)) of d/dzeta and d/dconj(zeta) in the outward
    normal derivative at a non-corner boundary point; |q| == 1."""
    pt = np.asarray(bp.point, dtype=complex)
    if np.any(corner_distance(params, pt) <= EPS_CORNER):
        raise ValueError("normal derivative undefined at the corner points")
    if bp.arc_id == "C1":
        q = pt
    elif params.n == 1:
        raise ValueError("the C0 arc is empty for n = 1")
    else:
        alpha, theta = params.alpha, params.theta
        # reduces to q = -1 in the chord case, where sin(alpha-theta) = 0
        q = -(pt * math.sin(alpha - theta) + math.sin(theta)) / math.sin(alpha)
    if np.ndim(bp.point) == 0:
        q = complex(q)
        return (q, q.conjugate())
    return (q, np.conj(q))


def boundary_distance(params, z):
    """Distance from z to the boundary, with the nearest arc and parameter.

    Returns (distance, arc_id, t) for the closest point over both arcs.
    """
    z = complex(z)
    best = None
    for arc in arcs(params).values():
        if arc.kind == "empty":
            continue
        if arc.kind in ("unit", "circle"):
            phi = math.atan2((z - arc.center).imag, (z - arc.center).real)
            t = _wrap(phi - arc.phi_mid)
        else:
            t = (z - arc.center).imag
        t = min(max(t, -arc.half_width), arc.half_width)
        d = abs(z - complex(arc.point(t)))
        if best is None or d < best[0]:
            best = (d, arc.arc_id, t)
    return best


def _wrap(x):
    return (x + math.pi) % (2.0 * math.pi) - math.pi


def sample_interior(params, rng, count, margin=1e-3):
    """Random interior points at least `margin` away from the boundary."""
    xs, ys = _bounding_box(params)
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 100000 * (count + 1):
            raise RuntimeError("interior sampling did not converge")
        z = complex(rng.uniform(*xs), rng.uniform(*ys))
        if classify_point(params, z) != "interior":
            continue
        if boundary_distance(params, z)[0] < margin:
            continue
        if corner_distance(params, z) < margin:
            continue
        out.append(z)
    return np.array(out)


def boundary_samples(params, arc_id, count, exclusion=EPS_CORNER):
    """Evenly spread non-corner sample points along one arc."""
    arc = arcs(params)[arc_id]
    if arc.kind == "empty":
        raise ValueError("the C0 arc is empty for n = 1")
    spacing = 2.0 * arc.half_width / count
    ts = -arc.half_width + spacing * (np.arange(count) + 0.5)
    # the n = 1 circle passes through the marked corners mid-range
    bad = corner_distance(params, arc.point(ts)) <= 1.5 * max(exclusion, EPS_CORNER)
    ts[bad] += 0.25 * spacing
    if np.any(corner_distance(params, arc.point(ts)) <= max(exclusion, EPS_CORNER)):
        raise RuntimeError("could not place samples clear of the corners")
    return boundary_point(params, arc_id, ts)


def _bounding_box(params):
    pts = []
    for arc in arcs(params).values():
        if arc.kind == "empty":
            continue
        ts = np.linspace(-arc.half_width, arc.half_width, 257)
        pts.append(arc.point(ts))
    pts = np.concatenate(pts)
    return ((pts.real.min(), pts.real.max()), (pts.imag.min(), pts.imag.max()))
