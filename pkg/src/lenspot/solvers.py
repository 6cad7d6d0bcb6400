"""Dirichlet and Neumann solvers for the Poisson equation on lens domains.

Solutions are assembled pointwise from the representation formulas:

    dirichlet:  w(z) = 1/(2 pi) * int_boundary gamma * poisson_kernel
                     - 1/pi * int_area source * green
    neumann:    w(z) = 1/(4 pi) * int_boundary gamma * neumann
                     - 1/pi * int_area source * neumann      (+ any constant)

The Neumann problem is solvable iff int_boundary gamma = 4 * int_area f;
the solver enforces this and returns the zero-constant representative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .domain import (LensParams, arcs, boundary_distance, classify_point,
                     normal_coeffs)
from .kernels import KernelField
from .quadrature import QuadratureSpec, integrate_area, integrate_boundary

TOL_SOLVABILITY = 1e-8
_NEAR_BOUNDARY = 0.35  # kernel peak width ~ distance; refine panels below this


class SolvabilityError(ValueError):
    """Neumann data violating the compatibility condition."""

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs
        self.defect = abs(lhs - rhs)
        super().__init__(
            f"Neumann problem unsolvable: boundary integral {lhs:g} != "
            f"4 * area integral {rhs:g} (defect {self.defect:.3e})")


# ----------------------------------------------------------------------
# data descriptions

def _expression(kind, payload):
    if kind == "const":
        c = complex(payload if payload is not None else 0.0)
        return lambda z: np.broadcast_to(c, np.shape(z)).copy() if np.ndim(z) else c
    if kind == "re":
        return lambda z: np.asarray(z, complex).real
    if kind == "im":
        return lambda z: np.asarray(z, complex).imag
    if kind == "abs2":
        return lambda z: np.abs(np.asarray(z, complex)) ** 2
    if kind in ("re_z2", "im_z2"):
        k = 2
    elif kind in ("re_zk", "im_zk"):
        k = int(payload)
        if k < 0:
            raise ValueError("power must be nonnegative")
    else:
        raise ValueError(f"unknown expression kind {kind!r}")
    if kind.startswith("re"):
        return lambda z: (np.asarray(z, complex) ** k).real
    return lambda z: (np.asarray(z, complex) ** k).imag


_CATALOG = ("const", "re", "im", "re_z2", "im_z2", "abs2", "re_zk", "im_zk")


@dataclass(frozen=True)
class BoundaryData:
    """Boundary values, one function per arc, evaluated on point batches.

    Functions receive a BoundaryPoint batch.  Built either from the fixed
    expression catalog, from (arclen, value) sample tables interpolated
    piecewise-linearly along each arc, or from arbitrary callables.
    """

    funcs: dict
    descriptor: dict = field(default_factory=dict, compare=False)

    def __call__(self, bp):
        return self.funcs[bp.arc_id](bp)

    @classmethod
    def constant(cls, value):
        return cls.from_expression("const", value)

    @classmethod
    def from_expression(cls, kind, payload=None):
        if kind not in _CATALOG:
            raise ValueError(f"unknown boundary data kind {kind!r}; "
                             f"expected one of {_CATALOG} or 'samples'")
        fn = _expression(kind, payload)
        point_fn = lambda bp: fn(bp.point)
        return cls(funcs={"C0": point_fn, "C1": point_fn},
                   descriptor={"kind": kind, "payload": payload})

    @classmethod
    def from_callable(cls, fn):
        """fn(BoundaryPoint batch) -> values, used for both arcs."""
        return cls(funcs={"C0": fn, "C1": fn}, descriptor={"kind": "callable"})

    @classmethod
    def from_samples(cls, tables):
        """tables: arc_id -> (arclen array, complex value array)."""
        funcs = {}
        for arc_id, (s, vals) in tables.items():
            s = np.asarray(s, dtype=float)
            vals = np.asarray(vals, dtype=complex)
            if s.ndim != 1 or s.shape != vals.shape:
                raise ValueError("sample tables need matching 1-d arrays")
            if np.any(np.diff(s) <= 0):
                raise ValueError("sample arc lengths must increase strictly")
            funcs[arc_id] = _interp(s, vals)
        return cls(funcs=funcs, descriptor={"kind": "samples"})

    @classmethod
    def from_json(cls, data):
        kind = data["kind"]
        if kind == "samples":
            tables = {}
            for arc_id, tab in data["payload"].items():
                vals = np.array([complex(re, im) for re, im in tab["values"]])
                tables[arc_id] = (np.asarray(tab["arclen"], float), vals)
            return cls.from_samples(tables)
        return cls.from_expression(kind, data.get("payload"))


def _interp(s, vals):
    def fn(bp):
        x = np.asarray(bp.arclen, dtype=float)
        return np.interp(x, s, vals.real) + 1j * np.interp(x, s, vals.imag)
    return fn


@dataclass(frozen=True)
class SourceTerm:
    """Right-hand side of the Poisson equation, bounded on the closure."""

    func: object = None  # None means identically zero
    descriptor: dict = field(default_factory=dict, compare=False)

    @property
    def is_zero(self):
        return self.func is None

    def __call__(self, z):
        if self.is_zero:
            return np.zeros(np.shape(z))
        return self.func(z)

    @classmethod
    def zero(cls):
        return cls(None, {"kind": "zero"})

    @classmethod
    def constant(cls, value):
        if value == 0:
            return cls.zero()
        return cls.from_expression("const", value)

    @classmethod
    def from_expression(cls, kind, payload=None):
        if kind == "zero":
            return cls.zero()
        if kind not in _CATALOG:
            raise ValueError(f"unknown source kind {kind!r}")
        return cls(_expression(kind, payload), {"kind": kind, "payload": payload})

    @classmethod
    def from_callable(cls, fn):
        return cls(fn, {"kind": "callable"})

    @classmethod
    def from_json(cls, data):
        kind = data["kind"]
        if kind == "samples":
            raise ValueError("sampled area sources are not supported; "
                             "use the expression catalog")
        return cls.from_expression(kind, data.get("payload"))


def normal_derivative_data(params, dw_dz):
    """Boundary data equal to the outward normal derivative of a real field
    whose holomorphic derivative is dw_dz(point)."""
    def gamma(bp):
        q, _ = normal_coeffs(params, bp)
        return 2.0 * np.real(q * dw_dz(np.asarray(bp.point, complex)))
    return BoundaryData.from_callable(gamma)


# ----------------------------------------------------------------------
# solvers

def _check_points(params, points):
    points = [complex(p) for p in points]
    for i, z in enumerate(points):
        state = classify_point(params, z)
        if state != "interior":
            raise ValueError(f"evaluation point {i} ({z:g}) is {state}, "
                             "expected interior")
    return points


def _near_refinement(params, z):
    d, arc_id, t = boundary_distance(params, z)
    if d < _NEAR_BOUNDARY:
        return ((arc_id, t, max(0.5 * d, 1e-8)),)
    return ()


def solve_dirichlet(params, spec, gamma, f, points):
    """Solution values of w_{z conj(z)} = f, w = gamma on the boundary.

    Parameters
    ----------
    params : LensParams
    spec : QuadratureSpec
    gamma : BoundaryData
    f : SourceTerm
    points : iterable of interior complex evaluation points

    Returns a complex array, one value per point.
    """
    points = _check_points(params, points)
    fld = KernelField(params)
    out = []
    for z in points:
        here = integrate_boundary(
            spec, params,
            lambda bp: np.asarray(gamma(bp)) * fld.poisson_kernel(z, bp),
            refine_near=_near_refinement(params, z))
        w = here / (2.0 * math.pi)
        if not f.is_zero:
            area = integrate_area(
                spec, params,
                lambda zeta: np.asarray(f(zeta)) * fld.green(z, zeta),
                singular_at=z)
            w = w - area / math.pi
        out.append(complex(w))
    return np.array(out)


def check_neumann_solvability(params, spec, gamma, f):
    """Both sides of the compatibility condition and the verdict."""
    lhs = integrate_boundary(spec, params, gamma)
    rhs = 0.0 if f.is_zero else 4.0 * integrate_area(spec, params, f)
    defect = abs(lhs - rhs)
    satisfied = defect <= TOL_SOLVABILITY * (1.0 + abs(lhs) + abs(rhs))
    return {"satisfied": satisfied, "lhs": lhs, "rhs": rhs, "defect": defect}


def solve_neumann(params, spec, gamma, f, points):
    """Zero-constant representative of the Neumann solutions.

    Raises SolvabilityError when the data violates the compatibility
    condition; add any constant (or use a pin) to select another solution.
    """
    verdict = check_neumann_solvability(params, spec, gamma, f)
    if not verdict["satisfied"]:
        raise SolvabilityError(verdict["lhs"], verdict["rhs"])
    points = _check_points(params, points)
    fld = KernelField(params)
    out = []
    for z in points:
        here = integrate_boundary(
            spec, params,
            lambda bp: np.asarray(gamma(bp)) * fld.neumann(bp.point, z),
            refine_near=_near_refinement(params, z))
        w = here / (4.0 * math.pi)
        if not f.is_zero:
            area = integrate_area(
                spec, params,
                lambda zeta: np.asarray(f(zeta)) * fld.neumann(z, zeta),
                singular_at=z)
            w = w - area / math.pi
        out.append(complex(w))
    return np.array(out)


def probe_normalization_constant(params, spec, zetas):
    """Boundary integral of density * neumann at each zeta, with spread.

    If the integral is independent of zeta, subtracting its (scaled) value
    would normalize the Neumann function; constancy is only conjectured,
    so this reports {values, spread} and passes no judgement.
    """
    fld = KernelField(params)
    values = []
    for zeta in zetas:
        zeta = complex(zeta)
        if classify_point(params, zeta) != "interior":
            raise ValueError("probe points must be interior")
        val = integrate_boundary(
            spec, params,
            lambda bp: fld.normal_density(bp) * fld.neumann(bp.point, zeta))
        values.append(float(np.real(val)))
    values = np.array(values)
    return {"values": values, "spread": float(values.max() - values.min())}


# ----------------------------------------------------------------------
# problem files

@dataclass(frozen=True)
class Problem:
    params: LensParams
    spec: QuadratureSpec
    gamma: BoundaryData
    source: SourceTerm
    points: tuple


def load_problem(data):
    """Problem from a JSON dict or a path to a JSON file."""
    if not isinstance(data, dict):
        with open(data, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    params = LensParams(float(data["alpha"]), int(data["n"]))
    spec = QuadratureSpec.from_json(data.get("quadrature", {}))
    gamma = BoundaryData.from_json(data["gamma"])
    source = SourceTerm.from_json(data.get("f", {"kind": "zero"}))
    points = tuple(complex(re, im) for re, im in data["points"])
    return Problem(params, spec, gamma, source, points)


def solution_rows(points, values):
    """CSV rows (point_re, point_im, w_re, w_im) with round-trip floats."""
    rows = ["point_re,point_im,w_re,w_im"]
    for z, w in zip(points, values):
        rows.append(",".join(repr(float(v))
                             for v in (z.real, z.imag, w.real, w.imag)))
    return rows
