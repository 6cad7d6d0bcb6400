"""Executable invariant suite covering every module's stated properties.

Each check returns the measured value (usually a max error, sometimes the
quantity itself) with its tolerance; `run_checks` collects the whole table
for one parameter choice.  The CLI validate subcommand renders this and
sets the exit code.  All randomness is seeded, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circles import (CircleMatrix, HomogeneousPoint, circle_contains,
                      equivalent, from_center_radius, reflect_circle,
                      reflect_point, unit_circle)
from .conformal import SectorMap
from .domain import (LensParams, arc_lengths, arc_matrix, arcs,
                     boundary_point, boundary_samples, normal_coeffs,
                     reflection_orbit, sample_interior)
from .kernels import KernelField
from .quadrature import (QuadratureSpec, convergence_report, integrate_area,
                         integrate_boundary)
from .solvers import (BoundaryData, SourceTerm, check_neumann_solvability,
                      normal_derivative_data, probe_normalization_constant,
                      solve_dirichlet, solve_neumann)

_SEED = 20260809


@dataclass
class CheckResult:
    name: str
    value: float
    tol: float
    ok: bool
    fmt: str = field(default="{:.3e}", compare=False)

    def render(self):
        status = "PASS" if self.ok else "FAIL"
        value = self.fmt.format(self.value)
        tol = "report-only" if math.isinf(self.tol) else f"tol={self.tol:g}"
        return f"{self.name}: {value}  [{tol}]  {status}"


def _err_check(name, value, tol):
    value = float(value)
    return CheckResult(name, value, tol, ok=value <= tol)


def _random_circles(rng, count):
    out = []
    for _ in range(count):
        if rng.uniform() < 0.25:
            phi = rng.uniform(0, 2 * math.pi)
            b = np.exp(1j * phi)
            out.append(CircleMatrix(0.0, b, rng.uniform(-2, 2)))
        else:
            center = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            out.append(from_center_radius(center, rng.uniform(0.2, 2.5)))
    return out


def _points_on_circle(circle, rng, count):
    if circle.is_line:
        direction = 1j * circle.b / abs(circle.b)
        base = -0.5 * circle.c * circle.b / abs(circle.b) ** 2
        return [base + direction * rng.uniform(-3, 3) for _ in range(count)]
    phis = rng.uniform(0, 2 * math.pi, count)
    return [circle.center + circle.radius * np.exp(1j * p) for p in phis]


def _circle_geometry_checks(rng, size):
    mirrors = _random_circles(rng, size)
    others = _random_circles(rng, size)
    worst_inv = 0.0
    worst_image = 0.0
    worst_self = 0.0
    worst_circ_inv = 0.0
    for mirror, other in zip(mirrors, others):
        for z in _points_on_circle(other, rng, 4):
            p = HomogeneousPoint.of(z)
            back = reflect_point(mirror, reflect_point(mirror, p))
            q = p.canonical()
            worst_inv = max(worst_inv, abs(back.z - q.z) + abs(back.w - q.w))
            image = reflect_circle(mirror, other)
            refl = reflect_point(mirror, p)
            m = max(abs(image.a), abs(image.b), abs(image.c))
            worst_image = max(worst_image, abs(image.form(refl.canonical()) / m))
        worst_self = max(worst_self, _equiv_gap(reflect_circle(mirror, mirror), mirror))
        twice = reflect_circle(mirror, reflect_circle(mirror, other))
        worst_circ_inv = max(worst_circ_inv, _equiv_gap(twice, other))
    return [
        _err_check("point reflection involutive", worst_inv, 1e-10),
        _err_check("reflected points lie on reflected circle", worst_image, 1e-10),
        _err_check("self-reflection fixes the mirror", worst_self, 1e-10),
        _err_check("circle reflection involutive", worst_circ_inv, 1e-9),
    ]


def _equiv_gap(first, second):
    fa = np.array([first.a, first.b.real, first.b.imag, first.c])
    sa = np.array([second.a, second.b.real, second.b.imag, second.c])
    fa = fa / np.abs(fa).max()
    sa = sa / np.abs(sa).max()
    return min(np.abs(fa - sa).max(), np.abs(fa + sa).max())


def _domain_checks(params, rng, size):
    out = []
    n = params.n
    worst = 0.0
    for k in range(-2, 2 * n + 3):
        a1 = arc_matrix(params, k)
        a2 = arc_matrix(params, k + 2 * n)
        worst = max(worst, abs(a1.a - a2.a), abs(a1.b - a2.b), abs(a1.c - a2.c))
    out.append(_err_check("parqueting closure (period 2n, exact)", worst, 0.0))

    zs = sample_interior(params, rng, size)
    worst = 0.0
    for z in zs:
        orbit = reflection_orbit(params, z)
        for k in range(n):
            even = reflect_point(arc_matrix(params, k + 1),
                                 HomogeneousPoint(1.0, np.conj(z)))
            odd = reflect_point(arc_matrix(params, k + 1), z)
            for mine, ref in ((orbit.homogeneous[2 * k], even),
                              (orbit.homogeneous[2 * k + 1], odd)):
                worst = max(worst, mine.chordal_distance(ref))
    out.append(_err_check("orbit matches matrix reflections", worst, 1e-10))

    worst = 0.0

    def gap(p, q):
        return p.chordal_distance(q)

    if n > 1:
        # on C0 each odd point coincides with the next even one (cyclically);
        # for n = 2 this is the same set of pairs as (k, 2n-k-1)
        for bp in _iter_points(boundary_samples(params, "C0", 7)):
            hom = reflection_orbit(params, bp.point).homogeneous
            for k in range(n):
                worst = max(worst, gap(hom[2 * k + 1], hom[(2 * k + 2) % (2 * n)]))
    for bp in _iter_points(boundary_samples(params, "C1", 7)):
        hom = reflection_orbit(params, bp.point).homogeneous
        for k in range(n):
            worst = max(worst, gap(hom[2 * k], hom[2 * k + 1]))
    out.append(_err_check("orbit coincidences on the boundary", worst, 1e-9))

    worst = 0.0
    for k in range(2 * n):
        mat = arc_matrix(params, k)
        for c in params.corners:
            if not circle_contains(mat, c):
                m = max(abs(mat.a), abs(mat.b), abs(mat.c))
                worst = max(worst, abs(mat.form(HomogeneousPoint.of(c)) / m))
    out.append(_err_check("both corners lie on every arc", worst, 1e-10))
    return out


def _iter_points(bp):
    from .domain import BoundaryPoint
    ts = np.atleast_1d(bp.t)
    pts = np.atleast_1d(bp.point)
    ss = np.atleast_1d(bp.arclen)
    return [BoundaryPoint(bp.arc_id, float(t), complex(pt), float(s))
            for t, pt, s in zip(ts, pts, ss)]


def _boundary_batches(params, count):
    out = []
    for arc_id, arc in arcs(params).items():
        if arc.kind != "empty":
            out.append(boundary_samples(params, arc_id, count))
    return out


def _kernel_checks(params, spec, rng, size):
    out = []
    fld = KernelField(params)
    zs = sample_interior(params, rng, size)
    ws = sample_interior(params, rng, size)
    mask = zs != ws
    zs, ws = zs[mask], ws[mask]

    g_zw = fld.green(zs, ws)
    out.append(_err_check("green symmetry",
                          np.abs(g_zw - fld.green(ws, zs)).max(), 1e-12))
    out.append(CheckResult("green positivity (min over samples)",
                           float(g_zw.min()), 0.0, ok=bool(g_zw.min() > 0.0),
                           fmt="{:.6f}"))

    worst = 0.0
    for batch in _boundary_batches(params, size):
        worst = max(worst, np.abs(fld.green(batch.point, ws[0])).max())
    out.append(_err_check("green vanishes on the boundary", worst, 1e-8))

    worst = 0.0
    for batch in _boundary_batches(params, size):
        worst = max(worst, np.abs(fld.prefactor_abs(batch.point) - 1.0).max())
    out.append(_err_check("orbit prefactor unimodular on boundary", worst, 1e-10))

    out.append(_err_check("neumann symmetry",
                          np.abs(fld.neumann(zs, ws) - fld.neumann(ws, zs)).max(),
                          1e-11))

    h = 1e-4
    worst_g = 0.0
    worst_n = 0.0
    zeta0 = ws[0]
    for z in zs[:max(4, size // 4)]:
        if abs(z - zeta0) > 0.1:
            worst_g = max(worst_g, abs(_fd_laplacian(
                lambda v: fld.green(v, zeta0), z, h)))
        worst_n = max(worst_n, abs(_fd_laplacian(
            lambda v: fld.neumann_regular(v, zeta0), z, h)))
    out.append(_err_check("green harmonic away from the pole", worst_g, 1e-3))
    out.append(_err_check("regularized neumann harmonic", worst_n, 1e-3))

    worst = 0.0
    for batch in _boundary_batches(params, 5):
        for bp in _iter_points(batch):
            for z in zs[:3]:
                if abs(z - bp.point) < 1e-3:
                    continue
                F = fld.blaschke_product(z, bp.point)  # noqa: N806 - product value
                pref = fld.prefactor_abs(z)
                gval = fld.green(z, bp.point)
                worst = max(worst, abs(abs(F) - pref * math.exp(0.5 * gval)))
    out.append(_err_check("orbit product = kernel product * prefactor", worst, 1e-9))

    worst = 0.0
    for z in zs[:3]:
        for batch in _boundary_batches(params, 4):
            for bp in _iter_points(batch):
                q, _ = normal_coeffs(params, bp)
                hh = 1e-5
                fd = -0.5 * (fld.green(z, bp.point + hh * q)
                             - fld.green(z, bp.point - hh * q)) / (2 * hh)
                worst = max(worst, abs(fld.poisson_kernel(z, bp) - fd))
    out.append(_err_check("poisson kernel = -1/2 normal derivative", worst, 1e-6))

    worst = 0.0
    for z in sample_interior(params, rng, 3, margin=0.08):
        mass = integrate_boundary(
            spec, params, lambda bp: fld.poisson_kernel(complex(z), bp))
        worst = max(worst, abs(mass / (2 * math.pi) - 1.0))
    out.append(_err_check("poisson kernel mass is 1", worst, 1e-6))

    batches = _boundary_batches(params, 4)
    worst = 0.0
    for outer in batches:
        for bp in _iter_points(outer):
            for other in batches:
                zb = other.point[::2]
                zb = zb[np.abs(zb - bp.point) > 1e-2]
                if len(zb):
                    worst = max(worst, np.abs(fld.poisson_kernel(zb, bp)).max())
    out.append(_err_check("poisson kernel vanishes boundary-to-boundary",
                          worst, 1e-8))

    worst = 0.0
    for zeta in ws[:3]:
        for batch in _boundary_batches(params, 4):
            for bp in _iter_points(batch):
                q, _ = normal_coeffs(params, bp)
                hh = 1e-5
                fd = (fld.neumann(bp.point + hh * q, zeta)
                      - fld.neumann(bp.point - hh * q, zeta)) / (2 * hh)
                worst = max(worst, abs(fd - fld.normal_density(bp)))
    out.append(_err_check("neumann density matches normal derivative",
                          worst, 1e-5))

    mass = -integrate_boundary(spec, params,
                               lambda bp: fld.normal_density(bp)) / (4 * math.pi)
    out.append(CheckResult("mass identity", float(mass), 1e-12,
                           ok=abs(mass - 1.0) <= 1e-12, fmt="{:.12f}"))

    out.extend(_limit_checks(params, fld))

    if params.n == 1:
        g1 = fld.disc_green(zs, ws)
        out.append(_err_check("n=1 reduction to the disc kernel",
                              np.abs(g_zw - g1).max(), 1e-12))
    return out


def _fd_laplacian(f, z, h):
    return (f(z + h) + f(z - h) + f(z + 1j * h) + f(z - 1j * h) - 4 * f(z)) / h ** 2


def _limit_checks(params, fld):
    """Two-distance convergence of the boundary limits of p and of the
    Neumann derivative combination against the reference kernels."""
    out = []
    alpha, theta, n = params.alpha, params.theta, params.n
    sin_a = math.sin(alpha)
    cases = [("C1", 0.55, -0.4)]
    if params.n > 1:
        cases.append(("C0", 0.3, -0.45))
    worst4 = {1e-4: 0.0, 1e-6: 0.0}
    worst6 = {1e-4: 0.0, 1e-6: 0.0}
    for arc_id, u, v in cases:
        half = arcs(params)[arc_id].half_width
        bpz = boundary_point(params, arc_id, u * half)
        bpzeta = boundary_point(params, arc_id, v * half)
        q, _ = normal_coeffs(params, bpz)
        for d in (1e-4, 1e-6):
            z = bpz.point - d * q
            if arc_id == "C0":
                ref = fld.carrier_poisson(z, bpzeta.point)
                coeff = -(z * math.sin(alpha - theta) + math.sin(theta)) / sin_a
                target = n * math.sin(alpha - theta) / sin_a
            else:
                ref = fld.disc_poisson(z, bpzeta.point)
                coeff = z
                target = -n
            worst4[d] = max(worst4[d],
                            abs(fld.poisson_kernel(z, bpzeta) - ref))
            combo = np.real(coeff * fld.d_neumann_dz(z, bpzeta.point))
            worst6[d] = max(worst6[d], abs(combo - ref - target))
    out.append(_err_check("poisson boundary limit (dist 1e-4)", worst4[1e-4], 1e-2))
    out.append(_err_check("poisson boundary limit (dist 1e-6)", worst4[1e-6], 1e-4))
    out.append(_err_check("neumann boundary limit (dist 1e-4)", worst6[1e-4], 1e-2))
    out.append(_err_check("neumann boundary limit (dist 1e-6)", worst6[1e-6], 1e-4))
    return out


def _conformal_checks(params, rng, size):
    out = []
    fld = KernelField(params)
    smap = SectorMap(params)
    zs = sample_interior(params, rng, size)
    ws = sample_interior(params, rng, size)
    mask = zs != ws
    zs, ws = zs[mask], ws[mask]
    out.append(_err_check("oracle agrees with the product kernel",
                          np.abs(fld.green(zs, ws) - smap.green(zs, ws)).max(),
                          1e-9))
    out.append(_err_check("oracle symmetric",
                          np.abs(smap.green(zs, ws) - smap.green(ws, zs)).max(),
                          1e-12))
    worst = 0.0
    worst_im = 0.0
    for batch in _boundary_batches(params, size):
        worst = max(worst, np.abs(smap.green(batch.point, ws[0])).max())
        img = smap.to_halfplane(batch.point)
        # relative: |image| grows without bound toward one corner
        worst_im = max(worst_im, (np.abs(img.imag) / (1.0 + np.abs(img))).max())
    out.append(_err_check("oracle vanishes on the boundary", worst, 1e-9))
    out.append(_err_check("boundary maps to the real axis (relative)",
                          worst_im, 1e-9))
    return out


def _segment_area(half_angle, radius):
    return radius * radius * (half_angle
                              - math.sin(half_angle) * math.cos(half_angle))


def analytic_area(params):
    """Area of the domain from circular-segment sums."""
    alpha, theta = params.alpha, params.theta
    disc_part = _segment_area(alpha, 1.0)
    if params.n == 1:
        return math.pi
    if params.is_chord:
        return disc_part
    r = math.sin(alpha) / abs(math.sin(alpha - theta))
    bulge = _segment_area(abs(alpha - theta), r)
    return disc_part - bulge if alpha > theta else disc_part + bulge


def _quadrature_checks(params, spec, rng):
    out = []
    length = integrate_boundary(spec, params, lambda bp: 1.0)
    out.append(_err_check("boundary length matches closed form",
                          abs(length - sum(arc_lengths(params))), 1e-10))
    area = integrate_area(spec, params, lambda z: 1.0)
    out.append(_err_check("area matches segment sums",
                          abs(area - analytic_area(params)), 1e-8))

    weight = lambda bp: np.exp(2.0 * np.real(bp.point))  # noqa: E731
    coarse = QuadratureSpec(gauss_order=3, boundary_panels=4,
                            corner_grading=spec.corner_grading)
    fine = QuadratureSpec(gauss_order=6, boundary_panels=4,
                          corner_grading=spec.corner_grading)
    exact = integrate_boundary(spec, params, weight)
    e1 = abs(integrate_boundary(coarse, params, weight) - exact)
    e2 = abs(integrate_boundary(fine, params, weight) - exact)
    ratio = e1 / max(e2, 1e-15 * abs(exact))
    out.append(CheckResult("doubled gauss order error drop (>= 1e4)",
                           float(ratio), 1e4, ok=ratio >= 1e4, fmt="{:.3e}"))

    z0 = complex(sample_interior(params, rng, 1, margin=0.05)[0])
    fld = KernelField(params)
    v1 = integrate_area(spec, params, lambda w: fld.green(z0, w), singular_at=z0)
    v2 = integrate_area(spec.refined(), params, lambda w: fld.green(z0, w),
                        singular_at=z0)
    out.append(_err_check("singular area integral self-converges",
                          abs(v1 - v2), 1e-6))

    base = QuadratureSpec(gauss_order=3, boundary_panels=1,
                          area_radial=spec.area_radial,
                          area_angular=spec.area_angular)
    rows = convergence_report(base, params, weight, refinements=3)
    orders = [r["est_order"] for r in rows if r["est_order"] is not None]
    order = max(orders)
    out.append(CheckResult("self-convergence order (>= 4)", float(order),
                           4.0, ok=order >= 4.0, fmt="{:.2f}"))
    return out


def _solver_checks(params, spec, rng, quick):
    out = []
    pts = sample_interior(params, rng, 4 if quick else 8, margin=0.03)

    w = solve_dirichlet(params, spec, BoundaryData.constant(1.0),
                        SourceTerm.zero(), pts)
    out.append(_err_check("dirichlet reproduces w = 1",
                          np.abs(w - 1.0).max(), 1e-6))

    w = solve_dirichlet(params, spec, BoundaryData.from_expression("re_zk", 3),
                        SourceTerm.zero(), pts)
    out.append(_err_check("dirichlet reproduces Re z^3",
                          np.abs(w - np.real(pts ** 3)).max(), 1e-5))

    w = solve_dirichlet(params, spec, BoundaryData.from_expression("abs2"),
                        SourceTerm.constant(1.0), pts)
    out.append(_err_check("dirichlet reproduces |z|^2 with unit source",
                          np.abs(w - np.abs(pts) ** 2).max(), 1e-4))

    coarse = solve_dirichlet(params, spec,
                             BoundaryData.from_expression("re_z2"),
                             SourceTerm.zero(), pts[:3])
    fine = solve_dirichlet(params, spec.refined(),
                           BoundaryData.from_expression("re_z2"),
                           SourceTerm.zero(), pts[:3])
    out.append(_err_check("dirichlet stable under refinement",
                          np.abs(coarse - fine).max(), 1e-6))

    worst = {1e-2: 0.0, 1e-3: 0.0}
    for arc_id, arc in arcs(params).items():
        if arc.kind == "empty":
            continue
        bp = boundary_point(params, arc_id, 0.35 * arc.half_width)
        q, _ = normal_coeffs(params, bp)
        for d in (1e-2, 1e-3):
            z = bp.point - d * q
            w = solve_dirichlet(params, spec, BoundaryData.from_expression("re"),
                                SourceTerm.zero(), [z])[0]
            worst[d] = max(worst[d], abs(w - bp.point.real))
    decreasing = worst[1e-3] < worst[1e-2]
    out.append(CheckResult("dirichlet boundary attainment (final error)",
                           worst[1e-3], 5e-3,
                           ok=decreasing and worst[1e-3] < 5e-3))

    gamma = normal_derivative_data(params, lambda z: z)  # w* = Re z^2
    w = solve_neumann(params, spec, gamma, SourceTerm.zero(), pts)
    diff = np.real(w - np.real(pts ** 2))
    out.append(_err_check("neumann reproduces Re z^2 up to a constant",
                          diff.max() - diff.min(), 1e-4))

    gamma = normal_derivative_data(params, np.conj)  # w* = |z|^2
    verdict = check_neumann_solvability(params, spec, gamma,
                                        SourceTerm.constant(1.0))
    out.append(_err_check("divergence-theorem pair is solvable",
                          verdict["defect"] / (1.0 + abs(verdict["lhs"])
                                               + abs(verdict["rhs"])), 1e-8))
    w = solve_neumann(params, spec, gamma, SourceTerm.constant(1.0), pts)
    diff = np.real(w - np.abs(pts) ** 2)
    out.append(_err_check("neumann reproduces |z|^2 up to a constant",
                          diff.max() - diff.min(), 1e-4))

    w2 = solve_neumann(params, spec.refined(), gamma, SourceTerm.constant(1.0),
                       pts)
    gauge = np.real(w2 - w)
    out.append(_err_check("neumann gauge: refinement shifts by a constant",
                          gauge.max() - gauge.min(), 1e-5))

    bad = check_neumann_solvability(params, spec, BoundaryData.constant(1.0),
                                    SourceTerm.zero())
    out.append(CheckResult("constant flux correctly rejected",
                           bad["defect"], 1e-8, ok=not bad["satisfied"]))

    arc = arcs(params)["C1"]
    bp = boundary_point(params, "C1", 0.25 * arc.half_width)
    q, _ = normal_coeffs(params, bp)
    d, hh = 1e-2, 1e-3
    gamma = normal_derivative_data(params, lambda z: z)
    stencil = [bp.point - (d + s * hh) * q for s in (-1.0, 1.0)]
    wv = solve_neumann(params, spec, gamma, SourceTerm.zero(), stencil)
    # first stencil point is the outward one, so this is d/d(nu)
    fd = np.real(wv[0] - wv[1]) / (2 * hh)
    exact = 2.0 * np.real(q * (bp.point - d * q))
    out.append(_err_check("neumann derivative attainment", abs(fd - exact), 1e-3))

    probe = probe_normalization_constant(params, spec,
                                         pts[:3 if quick else 5])
    out.append(CheckResult("normalization-constant probe spread",
                           probe["spread"], math.inf, ok=True))
    return out


def run_checks(params, spec=None, quick=False):
    """Full invariant table for one parameter choice."""
    if spec is None:
        spec = QuadratureSpec()
    rng = np.random.default_rng(_SEED)
    size = 30 if quick else 120
    results = []
    results += _circle_geometry_checks(rng, 12 if quick else 40)
    results += _domain_checks(params, rng, 10 if quick else 40)
    results += _kernel_checks(params, spec, rng, size)
    results += _conformal_checks(params, rng, size)
    results += _quadrature_checks(params, spec, rng)
    results += _solver_checks(params, spec, rng, quick)
    return results
