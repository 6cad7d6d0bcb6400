"""Acceptance gate: one test per stated criterion, tolerances pinned.

Each test prints a single summary line so the run log shows every
criterion with its measured value next to its tolerance.
"""

import math

import numpy as np
import pytest

from lenspot import (BoundaryData, KernelField, LensParams, QuadratureSpec,
                     SectorMap, SourceTerm, arc_lengths, boundary_point,
                     boundary_samples, check_neumann_solvability,
                     convergence_report, integrate_area, integrate_boundary,
                     normal_coeffs, normal_derivative_data,
                     probe_normalization_constant, sample_interior,
                     solve_dirichlet, solve_neumann)
from lenspot.cli import main as cli_main
from lenspot.validation import analytic_area

SPEC = QuadratureSpec()
KERNEL_CASES = [LensParams(math.pi / 2, 2), LensParams(2 * math.pi / 3, 2),
                LensParams(math.pi / 4, 4)]


def report(number, label, value, tol, ok=None):
    ok = (value < tol) if ok is None else ok
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number:02d} [{status}] {label}: "
          f"{value:.3e} (tol {tol:g})")
    return ok


def pairs(params, count, seed, margin=1e-3):
    rng = np.random.default_rng(seed)
    z = sample_interior(params, rng, count, margin=margin)
    w = sample_interior(params, rng, count, margin=margin)
    keep = z != w
    return z[keep], w[keep]


def both_arcs(params, count):
    out = [boundary_samples(params, "C1", count)]
    if params.n > 1:
        out.append(boundary_samples(params, "C0", count))
    return out


def test_c01_disc_reduction():
    worst = 0.0
    for alpha in (0.9 * math.pi, math.pi / 2):
        params = LensParams(alpha, 1)
        fld = KernelField(params)
        z, w = pairs(params, 200, seed=101)
        worst = max(worst, np.abs(fld.green(z, w) - fld.disc_green(z, w)).max())
    assert report(1, "n=1 kernel equals the disc kernel", worst, 1e-12)


def test_c02_conformal_oracle_equivalence():
    worst = 0.0
    for params in [LensParams(math.pi / 2, 2), LensParams(math.pi / 3, 3),
                   LensParams(2 * math.pi / 3, 2), LensParams(math.pi / 4, 4)]:
        fld = KernelField(params)
        smap = SectorMap(params)
        z, w = pairs(params, 200, seed=102)
        worst = max(worst, np.abs(fld.green(z, w) - smap.green(z, w)).max())
    assert report(2, "kernel matches the conformal-map reference", worst, 1e-9)


def test_c03_boundary_vanishing_and_symmetry():
    worst_b = 0.0
    worst_s = 0.0
    for params in KERNEL_CASES:
        fld = KernelField(params)
        z, w = pairs(params, 200, seed=103)
        worst_s = max(worst_s, np.abs(fld.green(z, w) - fld.green(w, z)).max())
        for batch in both_arcs(params, 100):
            worst_b = max(worst_b, np.abs(fld.green(batch.point, w[0])).max())
    ok = report(3, "boundary vanishing", worst_b, 1e-8)
    ok &= report(3, "symmetry", worst_s, 1e-12)
    assert ok


def test_c04_prefactor_unimodular():
    worst = 0.0
    for params in KERNEL_CASES:
        fld = KernelField(params)
        for batch in both_arcs(params, 100):
            worst = max(worst, np.abs(fld.prefactor_abs(batch.point) - 1.0).max())
    assert report(4, "orbit prefactor unimodular on the boundary", worst, 1e-10)


def test_c05_poisson_kernel():
    worst_fd = 0.0
    worst_mass = 0.0
    worst_zero = 0.0
    h = 1e-5
    for params in KERNEL_CASES:
        fld = KernelField(params)
        rng = np.random.default_rng(105)
        zs = sample_interior(params, rng, 50, margin=0.05)
        batches = both_arcs(params, 25)
        flat = [boundary_point(params, b.arc_id, float(t))
                for b in batches for t in np.atleast_1d(b.t)]
        for i, z in enumerate(zs):
            bp = flat[i % len(flat)]
            q, _ = normal_coeffs(params, bp)
            fd = -0.5 * (fld.green(z, bp.point + h * q)
                         - fld.green(z, bp.point - h * q)) / (2 * h)
            worst_fd = max(worst_fd, abs(fld.poisson_kernel(z, bp) - fd))
        for z in sample_interior(params, rng, 10, margin=0.08):
            mass = integrate_boundary(SPEC, params,
                                      lambda bp: fld.poisson_kernel(complex(z), bp))
            worst_mass = max(worst_mass, abs(mass / (2 * math.pi) - 1.0))
        for bp in flat[::5]:
            for other in batches:
                zb = np.atleast_1d(other.point)
                zb = zb[np.abs(zb - bp.point) > 1e-2]
                worst_zero = max(worst_zero,
                                 np.abs(fld.poisson_kernel(zb, bp)).max())
    ok = report(5, "closed form vs -1/2 FD normal derivative", worst_fd, 1e-6)
    ok &= report(5, "kernel mass (1/2pi) contour = 1", worst_mass, 1e-6)
    ok &= report(5, "boundary-to-boundary values vanish", worst_zero, 1e-8)
    assert ok


def test_c06_neumann_density_and_mass():
    worst_fd = 0.0
    worst_mass = 0.0
    h = 1e-5
    for params in KERNEL_CASES:
        fld = KernelField(params)
        rng = np.random.default_rng(106)
        zetas = sample_interior(params, rng, 4, margin=0.1)
        for batch in both_arcs(params, 8):
            for t in np.atleast_1d(batch.t):
                bp = boundary_point(params, batch.arc_id, float(t))
                q, _ = normal_coeffs(params, bp)
                for zeta in zetas:
                    fd = (fld.neumann(bp.point + h * q, zeta)
                          - fld.neumann(bp.point - h * q, zeta)) / (2 * h)
                    worst_fd = max(worst_fd, abs(fd - fld.normal_density(bp)))
        mass = -integrate_boundary(SPEC, params,
                                   lambda bp: fld.normal_density(bp)) / (4 * math.pi)
        worst_mass = max(worst_mass, abs(mass - 1.0))
    ok = report(6, "FD normal derivative equals the density", worst_fd, 1e-5)
    ok &= report(6, "density mass identity", worst_mass, 1e-12)
    assert ok


def test_c07_neumann_boundary_limits():
    worst = 0.0
    for params in KERNEL_CASES:
        fld = KernelField(params)
        a, t, n = params.alpha, params.theta, params.n
        cases = [("C1", 0.5, -0.35, -float(n))]
        if params.n > 1:
            cases.append(("C0", 0.3, -0.5, n * math.sin(a - t) / math.sin(a)))
        for arc_id, u, v, target in cases:
            from lenspot import arcs
            half = arcs(params)[arc_id].half_width
            bpz = boundary_point(params, arc_id, u * half)
            bpzeta = boundary_point(params, arc_id, v * half)
            q, _ = normal_coeffs(params, bpz)
            z = bpz.point - 1e-6 * q
            if arc_id == "C0":
                coeff = -(z * math.sin(a - t) + math.sin(t)) / math.sin(a)
                ref = fld.carrier_poisson(z, bpzeta.point)
            else:
                coeff = z
                ref = fld.disc_poisson(z, bpzeta.point)
            combo = np.real(coeff * fld.d_neumann_dz(z, bpzeta.point))
            worst = max(worst, abs(combo - ref - target))
    assert report(7, "derivative limits at distance 1e-6", worst, 1e-4)


def test_c08_dirichlet_manufactured():
    worst = {"const": 0.0, "cubic": 0.0, "abs2": 0.0}
    for params in [LensParams(math.pi / 2, 2), LensParams(math.pi / 3, 3)]:
        pts = sample_interior(params, np.random.default_rng(108), 20,
                              margin=0.02)
        w = solve_dirichlet(params, SPEC, BoundaryData.constant(1.0),
                            SourceTerm.zero(), pts)
        worst["const"] = max(worst["const"], np.abs(w - 1.0).max())
        w = solve_dirichlet(params, SPEC, BoundaryData.from_expression("re_zk", 3),
                            SourceTerm.zero(), pts)
        worst["cubic"] = max(worst["cubic"], np.abs(w - np.real(pts ** 3)).max())
        w = solve_dirichlet(params, SPEC, BoundaryData.from_expression("abs2"),
                            SourceTerm.constant(1.0), pts)
        worst["abs2"] = max(worst["abs2"], np.abs(w - np.abs(pts) ** 2).max())
    ok = report(8, "gamma = 1 reproduced", worst["const"], 1e-6)
    ok &= report(8, "harmonic Re z^3 reproduced", worst["cubic"], 1e-5)
    ok &= report(8, "|z|^2 with unit source reproduced", worst["abs2"], 1e-4)
    assert ok


def test_c09_neumann_solver(tmp_path):
    worst_defect = 0.0
    worst_spread = 0.0
    for params in [LensParams(math.pi / 2, 2), LensParams(math.pi / 3, 3)]:
        pts = sample_interior(params, np.random.default_rng(109), 20,
                              margin=0.03)
        gamma = normal_derivative_data(params, np.conj)
        verdict = check_neumann_solvability(params, SPEC, gamma,
                                            SourceTerm.constant(1.0))
        rel = verdict["defect"] / (1 + abs(verdict["lhs"]) + abs(verdict["rhs"]))
        worst_defect = max(worst_defect, rel)
        w = solve_neumann(params, SPEC, gamma, SourceTerm.constant(1.0), pts)
        diff = np.real(w) - np.abs(pts) ** 2
        worst_spread = max(worst_spread, diff.max() - diff.min())
        gamma = normal_derivative_data(params, lambda z: z)
        w = solve_neumann(params, SPEC, gamma, SourceTerm.zero(), pts)
        diff = np.real(w) - np.real(pts ** 2)
        worst_spread = max(worst_spread, diff.max() - diff.min())
    ok = report(9, "divergence-theorem solvability defect", worst_defect, 1e-8)
    ok &= report(9, "manufactured spread up to a constant", worst_spread, 1e-4)
    # violating data must be rejected with a nonzero exit through the CLI
    bad = tmp_path / "bad.json"
    bad.write_text('{"alpha": 1.5707963267948966, "n": 2,'
                   ' "gamma": {"kind": "const", "payload": 1.0},'
                   ' "f": {"kind": "zero"}, "points": [[0.4, 0.1]]}')
    code = cli_main(["solve-neumann", "--problem", str(bad)])
    ok &= report(9, "violating data exits nonzero (exit code)", float(code),
                 2.0, ok=code == 1)
    assert ok


def test_c10_quadrature_ground_truths():
    worst_len = 0.0
    worst_area = 0.0
    for params in KERNEL_CASES + [LensParams(0.9 * math.pi, 1)]:
        length = integrate_boundary(SPEC, params, lambda bp: 1.0)
        worst_len = max(worst_len, abs(length - sum(arc_lengths(params))))
        area = integrate_area(SPEC, params, lambda z: 1.0)
        worst_area = max(worst_area, abs(area - analytic_area(params)))
    rows = convergence_report(QuadratureSpec(gauss_order=3, area_radial=3,
                                             area_angular=2),
                              LensParams(2 * math.pi / 3, 2),
                              lambda z: np.exp(np.real(z)),
                              refinements=3, kind="area")
    order = max(r["est_order"] for r in rows if r["est_order"] is not None)
    ok = report(10, "boundary length vs closed form", worst_len, 1e-8)
    ok &= report(10, "area vs segment sums", worst_area, 1e-8)
    ok &= report(10, "self-convergence order", order, 4.0, ok=order >= 4.0)
    assert ok


def test_c11_normalization_probe_reports():
    for params in [LensParams(2 * math.pi / 3, 2), LensParams(0.9 * math.pi, 1)]:
        zetas = sample_interior(params, np.random.default_rng(111), 5,
                                margin=0.1)
        probe = probe_normalization_constant(params, SPEC, zetas)
        ok = math.isfinite(probe["spread"]) and len(probe["values"]) == 5
        label = f"probe spread (alpha={params.alpha:.3f}, n={params.n})"
        assert report(11, label, probe["spread"], math.inf, ok=ok)
