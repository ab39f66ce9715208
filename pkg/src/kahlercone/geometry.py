"""Kahler geometry of the complexified index cone and the curvature identity.

The tube domain over the index cone carries the Hessian metric

    g[i,j](y) = -1/4 * d^2(log f)/dy_i dy_j,

the Kahler metric of the potential -log N with norm function N = 8 f(y).
Because the potential does not depend on the real parts, every holomorphic
derivative d/dt_k reduces to -(i/2) d/dy_k, so metric, Christoffel symbols
and curvature are computed entirely over the reals - exactly, when the point
is rational.

Curvature sign convention (normative here, documented because the two
conventions in circulation differ by an overall sign):

    R[i,j,k,l] = d_{t_k} d_{tbar_l} g[i,j]
                 - sum_{p,q} ginv[p,q] (d_{t_k} g[i,q]) (d_{tbar_l} g[p,j])

which reduces to R = 1/4 (d2g - ginv-contraction of dg with dg). With this
choice the verified identity reads, with no extra signs,

    R[i,j,k,l] = g[i,j] g[k,l] + g[i,l] g[k,j]
                 - 1/(64 f^2) sum_{p,q} ginv[p,q] f3[i,k,p] f3[j,l,q]

(n = 1, f = y^3 gives +3/8 on both sides). The opposite convention is
available by passing convention="negated", which negates the left side.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cubic import CubicForm, Membership, cone_contains
from .errors import (DimensionMismatch, NotInCone, SingularMatrix,
                     SingularMetric, ZeroVector)
from .linalg import CurvTensor, Sym3Tensor, SymMatrix, contract, invert
from .report import PointResult, VerificationSummary
from .scalars import Complex, is_exact_scalar

__all__ = [
    "MetricJet",
    "CurvatureReport",
    "kahler_metric",
    "curvature_lhs",
    "curvature_rhs",
    "curvature_report",
    "christoffels",
    "sectional",
    "verify_identity",
    "norm_function",
]

QUARTER = Fraction(1, 4)
CONVENTIONS = ("standard", "negated")


@dataclass(frozen=True)
class MetricJet:
    """Metric with its first and second y-derivatives and inverse at a point."""
    g: SymMatrix
    dg: Sym3Tensor        # dg[i,j,k] = d g[i,j] / d y_k, fully symmetric
    d2g: CurvTensor       # d2g[i,j,k,l] = d^2 g[i,j] / d y_k d y_l
    ginv: SymMatrix


def _is_exact_point(y) -> bool:
    return all(is_exact_scalar(v) for v in y)


def _require_interior(form: CubicForm, y):
    if _is_exact_point(y):
        if cone_contains(form, y) is not Membership.INTERIOR:
            raise NotInCone(f"point {tuple(y)} is not interior")
    else:
        if not form.evaluate(y) > 0:
            raise NotInCone(f"f is not positive at {tuple(y)}")


def norm_function(form: CubicForm, y):
    """The norm function N = 8 f(y), the argument of the Kahler potential."""
    return 8 * form.evaluate(y)


def kahler_metric(form: CubicForm, y) -> MetricJet:
    """Metric jet of the cone metric at an interior point.

    All derivatives are closed-form rational expressions in f, grad f,
    Hess f and the constant third-derivative tensor; derivatives of f above
    order three vanish, so the jet is exact at rational points.
    """
    _require_interior(form, y)
    n = form.n
    fval = form.evaluate(y)
    grad = form.gradient(y)
    hess = form.hessian(y)
    f3 = form.third_tensor
    p1 = 1 / fval if not is_exact_scalar(fval) else Fraction(1) / fval
    p2 = p1 * p1
    p3 = p2 * p1
    p4 = p2 * p2

    g = SymMatrix.build(
        n, lambda i, j: -QUARTER * (hess[i, j] * p1 - grad[i] * grad[j] * p2))

    def dg_entry(i, j, k):
        return -QUARTER * (
            f3[i, j, k] * p1
            - (hess[i, j] * grad[k] + hess[i, k] * grad[j]
               + hess[j, k] * grad[i]) * p2
            + 2 * grad[i] * grad[j] * grad[k] * p3)

    dg = Sym3Tensor.build(n, dg_entry)

    def d2g_entry(i, j, k, l):
        return -QUARTER * (
            -(f3[i, j, k] * grad[l] + f3[i, j, l] * grad[k]
              + f3[i, k, l] * grad[j] + f3[j, k, l] * grad[i]) * p2
            - (hess[i, j] * hess[k, l] + hess[i, k] * hess[j, l]
               + hess[i, l] * hess[j, k]) * p2
            + 2 * (hess[i, j] * grad[k] * grad[l]
                   + hess[i, k] * grad[j] * grad[l]
                   + hess[i, l] * grad[j] * grad[k]
                   + hess[j, k] * grad[i] * grad[l]
                   + hess[j, l] * grad[i] * grad[k]
                   + hess[k, l] * grad[i] * grad[j]) * p3
            - 6 * grad[i] * grad[j] * grad[k] * grad[l] * p4)

    d2g = CurvTensor(n, zero=g[0, 0] - g[0, 0])
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    d2g[i, j, k, l] = d2g_entry(i, j, k, l)

    try:
        ginv = invert(g)
    except SingularMatrix as exc:
        raise SingularMetric(str(exc)) from exc
    return MetricJet(g=g, dg=dg, d2g=d2g, ginv=ginv)


def _lhs_from_parts(d2g: CurvTensor, dg: Sym3Tensor, ginv: SymMatrix) -> CurvTensor:
    return (d2g - contract(dg, dg, ginv)).scale(QUARTER)


def curvature_lhs(form: CubicForm, y, method: str = "closed",
                  step: float = 1e-4) -> CurvTensor:
    """Curvature tensor from the metric side of the identity.

    method="closed" uses the exact closed-form jet. method="fd" rebuilds the
    jet from central differences of the metric in the y-variables (float
    backend) as an independent oracle for the derivative expressions.
    """
    if method == "closed":
        jet = kahler_metric(form, y)
        return _lhs_from_parts(jet.d2g, jet.dg, jet.ginv)
    if method != "fd":
        raise ValueError(f"unknown method {method!r}")
    return _curvature_fd(form, [float(v) for v in y], step)


def _metric_values(form: CubicForm, y) -> SymMatrix:
    n = form.n
    fval = form.evaluate(y)
    grad = form.gradient(y)
    hess = form.hessian(y)
    return SymMatrix.build(
        n, lambda i, j: -0.25 * (hess[i, j] / fval
                                 - grad[i] * grad[j] / (fval * fval)))


def _curvature_fd(form: CubicForm, y, h: float) -> CurvTensor:
    # fourth-order central stencils: first derivative (-1, 8, 0, -8, 1)/12h
    # at shifts (2, 1, 0, -1, -2); pure second (-1, 16, -30, 16, -1)/12h^2;
    # mixed second = tensor product of two first-derivative stencils
    _require_interior(form, y)
    n = form.n
    cache = {}

    def g_at(shift):
        key = tuple(shift)
        if key not in cache:
            cache[key] = _metric_values(form, [a + s * h
                                               for a, s in zip(y, shift)])
        return cache[key]

    first = ((2, -1.0), (1, 8.0), (-1, -8.0), (-2, 1.0))
    second = ((2, -1.0), (1, 16.0), (0, -30.0), (-1, 16.0), (-2, -1.0))
    zero = (0,) * n

    def shifted(k, s, base=zero):
        out = list(base)
        out[k] += s
        return out

    def dg_entry(i, j, k):
        acc = 0.0
        for s, w in first:
            acc += w * g_at(shifted(k, s))[i, j]
        return acc / (12 * h)

    dg = Sym3Tensor.build(n, dg_entry)

    def d2g_entry(i, j, k, l):
        if k == l:
            acc = 0.0
            for s, w in second:
                acc += w * g_at(shifted(k, s))[i, j]
            return acc / (12 * h * h)
        acc = 0.0
        for s1, w1 in first:
            for s2, w2 in first:
                acc += w1 * w2 * g_at(shifted(l, s2, shifted(k, s1)))[i, j]
        return acc / (144 * h * h)

    d2g = CurvTensor(n, zero=0.0)
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                for l in range(k, n):
                    v = d2g_entry(i, j, k, l)
                    for (a, b) in ((i, j), (j, i)):
                        for (c, d) in ((k, l), (l, k)):
                            d2g[a, b, c, d] = v
    ginv = invert(g_at(zero))
    return _lhs_from_parts(d2g, dg, ginv)


def curvature_rhs(form: CubicForm, y) -> CurvTensor:
    """Curvature tensor from the metric products and the third-derivative side."""
    jet = kahler_metric(form, y)
    return _rhs_from_parts(form, y, jet)


def _rhs_from_parts(form: CubicForm, y, jet: MetricJet) -> CurvTensor:
    n = form.n
    fval = form.evaluate(y)
    scale = 1 / (64 * fval * fval) if not is_exact_scalar(fval) \
        else Fraction(1, 64) / (fval * fval)
    g = jet.g
    yukawa_part = contract(form.third_tensor, form.third_tensor, jet.ginv)
    out = CurvTensor(n, zero=g[0, 0] - g[0, 0])
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    out[i, j, k, l] = (g[i, j] * g[k, l] + g[i, l] * g[k, j]
                                       - scale * yukawa_part[i, j, k, l])
    return out


def christoffels(form: CubicForm, y):
    """Christoffel symbols of the cone metric: purely imaginary, symmetric
    in the lower pair; gamma[i][j][k] = -(i/2) sum_l ginv[i,l] dg[l,k,j]."""
    jet = kahler_metric(form, y)
    n = form.n
    half = Fraction(1, 2)
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = sum(jet.ginv[i, l] * jet.dg[l, k, j] for l in range(n))
                out[i][j][k] = Complex(s - s, -half * s)
    return out


def sectional(form: CubicForm, y, v):
    """Holomorphic sectional curvature 2 R(v, vbar, v, vbar) / g(v, vbar)^2."""
    vv = [Complex.of(x) for x in v]
    if len(vv) != form.n:
        raise DimensionMismatch("direction length does not match the form")
    if all(z.is_zero() for z in vv):
        raise ZeroVector("sectional curvature needs a nonzero direction")
    jet = kahler_metric(form, y)
    r = _lhs_from_parts(jet.d2g, jet.dg, jet.ginv)
    n = form.n
    num = Complex(Fraction(0))
    den = Complex(Fraction(0))
    for i in range(n):
        for j in range(n):
            den = den + jet.g[i, j] * vv[i] * vv[j].conj()
            for k in range(n):
                for l in range(n):
                    num = num + (r[i, j, k, l]
                                 * vv[i] * vv[j].conj() * vv[k] * vv[l].conj())
    # real tensor with the pair symmetries: the imaginary parts cancel
    return 2 * num.re / (den.re * den.re)


@dataclass(frozen=True)
class CurvatureReport:
    """Everything the identity involves at one point, plus the residual."""
    y: tuple
    potential_arg: object              # N = 8 f(y)
    yukawa: Sym3Tensor                 # (1/2) f3, the special-geometry cubic
    christoffel: list
    lhs: CurvTensor
    rhs: CurvTensor
    residual: CurvTensor
    max_abs_residual: object
    convention: str = "standard"


def curvature_report(form: CubicForm, y,
                     convention: str = "standard") -> CurvatureReport:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    jet = kahler_metric(form, y)
    lhs = _lhs_from_parts(jet.d2g, jet.dg, jet.ginv)
    if convention == "negated":
        lhs = lhs.scale(-1)
    rhs = _rhs_from_parts(form, y, jet)
    residual = lhs - rhs
    return CurvatureReport(
        y=tuple(y),
        potential_arg=norm_function(form, y),
        yukawa=form.third_tensor.scale(Fraction(1, 2)),
        christoffel=christoffels(form, y),
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        max_abs_residual=residual.max_abs(),
        convention=convention,
    )


def verify_identity(form: CubicForm, points: Sequence, mode: str = "exact",
                    convention: str = "standard", seed: Optional[int] = None,
                    rel_tol: float = 1e-9,
                    threads: Optional[int] = None) -> VerificationSummary:
    """Check the curvature identity at each point and summarize.

    Exact mode demands a bit-exact zero residual; float mode compares the
    maximum entrywise residual against `rel_tol` relative to the larger of
    the two sides. Results are assembled in input order, so the summary is
    deterministic regardless of how points are scheduled.
    """
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    start = time.perf_counter()

    def check(y):
        yy = tuple(Fraction(v) for v in y) if mode == "exact" \
            else tuple(float(v) for v in y)
        report = curvature_report(form, yy, convention=convention)
        max_abs = report.max_abs_residual
        if mode == "exact":
            ok = max_abs == 0
            rel = None
        else:
            scale = max(report.lhs.max_abs(), report.rhs.max_abs(), 1e-300)
            rel = max_abs / scale
            ok = rel < rel_tol
        return PointResult(y=yy, verdict="PASS" if ok else "FAIL",
                           max_abs_residual=max_abs, max_rel_residual=rel)

    if threads and threads > 1 and len(points) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check, points))
    else:
        results = [check(y) for y in points]

    elapsed_ms = int((time.perf_counter() - start) * 1000)
    overall = "PASS" if all(r.verdict == "PASS" for r in results) else "FAIL"
    note = "no points" if not results else None
    return VerificationSummary(
        form_text=form.to_text(), n=form.n, mode=mode, convention=convention,
        seed=seed, points=results, overall=overall, timing_ms=elapsed_ms,
        note=note)
