"""Jacobian criterion, conic ranks and point-wise identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .field import FieldSpec
from .poly import MultiPoly
from .scheme import PointSet, SchemeSpec, enumerate_points


def batch_rank(mats: np.ndarray, fld: FieldSpec) -> np.ndarray:
    """Ranks over ``fld`` of a stack of matrices with shape ``(n, m, k)``."""
    a = np.array(mats, dtype=np.int64, copy=True)
    if a.ndim != 3:
        raise ValueError("expected a 3-d stack of matrices")
    n, m, k = a.shape
    rank = np.zeros(n, dtype=np.int64)
    if n == 0 or m == 0 or k == 0:
        return rank
    batch = np.arange(n)
    rows = np.arange(m)
    for c in range(k):
        col = a[:, :, c]
        # candidate pivot rows are those at or below the current rank
        cand = (col != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = batch[has]
        piv = np.argmax(cand[has], axis=1)
        r = rank[has]
        # swap pivot row into position r
        tmp = a[b, r, :].copy()
        a[b, r, :] = a[b, piv, :]
        a[b, piv, :] = tmp
        prow = a[b, r, :]
        prow = fld.mul_t[prow, fld.inv_t[prow[:, c]][:, None]]
        a[b, r, :] = prow
        factors = a[b, :, c].copy()
        factors[np.arange(len(b)), r] = 0
        a[b] = fld.sub_t[a[b], fld.mul_t[factors[:, :, None], prow[:, None, :]]]
        rank[has] += 1
        if (rank >= m).all():
            break
    return rank


def matrix_rank(mat: Sequence[Sequence[int]], fld: FieldSpec) -> int:
    arr = np.asarray(mat, dtype=np.int64)
    if arr.size == 0:
        return 0
    return int(batch_rank(arr[None], fld)[0])


def jacobian_matrices(scheme: SchemeSpec, points: PointSet) -> np.ndarray:
    """Full Jacobians ``(n_points, n_equations, n_vars)`` at the points."""
    fld = points.field
    env = points.env()
    n = len(points)
    jac = np.zeros((n, len(scheme.equations), len(scheme.variables)), dtype=np.int64)
    for i, f in enumerate(scheme.equations):
        for j, v in enumerate(scheme.variables):
            d = f.partial(v).reduce_mod(fld.p)
            if d.terms:
                jac[:, i, j] = np.broadcast_to(np.asarray(d.evaluate(fld, env)), (n,))
    return jac


def _chart_mask(scheme: SchemeSpec, arr: np.ndarray) -> np.ndarray:
    """Boolean ``(n, n_vars)``: True for the chart coordinates of each point."""
    amb = scheme.ambient
    mask = np.ones(arr.shape, dtype=bool)
    for b in amb.blocks:
        if not b.homogeneous:
            continue
        idx = [amb.index(v) for v in b.names]
        first = np.argmax(arr[:, idx] != 0, axis=1)
        mask[np.arange(len(arr)), np.asarray(idx)[first]] = False
    return mask


def jacobian_ranks(scheme: SchemeSpec, points: PointSet) -> np.ndarray:
    """Rank of the chart Jacobian at each (normalized) point.

    The chart is the one where each block's first nonzero coordinate is 1;
    differentiating and then setting that coordinate to 1 is the same as
    dropping its column.
    """
    if not len(points):
        return np.zeros(0, dtype=np.int64)
    jac = jacobian_matrices(scheme, points)
    mask = _chart_mask(scheme, points.array)
    jac = jac * mask[:, None, :]
    # rank is invariant under transpose; eliminate along the shorter side
    if jac.shape[1] < jac.shape[2]:
        jac = np.transpose(jac, (0, 2, 1))
    return batch_rank(jac, points.field)


def jacobian_rank(scheme: SchemeSpec, pt, fld: FieldSpec,
                  chart: Mapping[str, str] | None = None) -> int:
    """Jacobian rank at one point in the chart ``chart`` (block -> coordinate).

    Without ``chart`` the normalization chart is used.
    """
    values = tuple(pt.values) if hasattr(pt, "values") else tuple(int(x) for x in pt)
    if not scheme.contains(values, fld):
        raise ValueError("point does not lie on the scheme")
    amb = scheme.ambient
    if chart:
        for bname, var in chart.items():
            b = amb.block(bname)
            if var not in b.names:
                raise ValueError(f"{var!r} is not a coordinate of block {bname}")
        # rescale parents before children so each chart coordinate becomes 1
        vals = values
        for b in amb.blocks:
            if b.name in chart:
                x = vals[amb.index(chart[b.name])]
                if x == 0:
                    raise ValueError(f"chart coordinate {chart[b.name]!r} vanishes at the point")
                vals = amb.rescale(vals, fld, {b.name: int(fld.inv_t[x])})
        pivots = {b.name: chart.get(b.name) for b in amb.blocks if b.homogeneous}
        for bname, var in pivots.items():
            if var is None:
                pivots[bname] = amb.pivots(vals)[bname]
    else:
        vals = amb.normalize(values, fld)
        pivots = amb.pivots(vals)
    jac = jacobian_matrices(scheme, PointSet(scheme.variables, fld, np.asarray([vals])))[0]
    for var in pivots.values():
        jac[:, amb.index(var)] = 0
    return matrix_rank(jac, fld)


def singular_points(scheme: SchemeSpec, fld: FieldSpec, points: PointSet | None = None,
                    fixed: Mapping[str, int] | None = None) -> PointSet:
    """Points where the Jacobian rank drops below the codimension."""
    if points is None:
        points = enumerate_points(scheme, fld, fixed)
    ranks = jacobian_ranks(scheme, points)
    return points.select(ranks < scheme.codim)


def conic_rank(q: MultiPoly, fiber_vars: Sequence[str], base_pt: Mapping[str, int],
               fld: FieldSpec) -> int:
    """Rank of the symmetric Gram matrix of a ternary quadratic form.

    Coefficients may depend on base coordinates, which are evaluated at
    ``base_pt``.  Needs ``p`` odd so that off-diagonal halves exist.
    """
    fiber_vars = tuple(fiber_vars)
    if len(fiber_vars) != 3:
        raise ValueError("a conic needs exactly three fiber variables")
    if fld.p == 2:
        raise ValueError("characteristic 2 is not supported")
    qq = q.over(q.variables + tuple(v for v in fiber_vars if v not in q.variables))
    idx = [qq.variables.index(v) for v in fiber_vars]
    gram_polys: dict[tuple[int, int], MultiPoly] = {}
    for e, c in qq.terms.items():
        fe = [e[i] for i in idx]
        if sum(fe) != 2:
            raise ValueError(f"{q} is not quadratic in {fiber_vars}")
        rest = list(e)
        for i in idx:
            rest[i] = 0
        pos = [k for k, x in enumerate(fe) for _ in range(x)]
        key = (pos[0], pos[1])
        mono = MultiPoly(qq.variables, {tuple(rest): c})
        gram_polys[key] = gram_polys.get(key, MultiPoly.const(0, qq.variables)) + mono
    half = int(fld.inv_t[fld.from_int(2)])
    env = {v: int(x) for v, x in base_pt.items()}
    g = [[0] * 3 for _ in range(3)]
    for (i, j), poly in gram_polys.items():
        val = int(poly.reduce_mod(fld.p).evaluate(fld, env)) if poly.terms else 0
        if i == j:
            g[i][i] = val
        else:
            h = int(fld.mul_t[val, half])
            g[i][j] = g[j][i] = h
    return matrix_rank(g, fld)


@dataclass
class IdentityResult:
    passed: bool
    admissible: int
    counterexamples: list = field(default_factory=list)


def identity_on_points(scheme: SchemeSpec, fld: FieldSpec, lhs: MultiPoly, rhs: MultiPoly,
                       units: Sequence[MultiPoly] = (), points: PointSet | None = None,
                       max_witnesses: int = 5) -> IdentityResult:
    """Check ``lhs == rhs`` at every point where all ``units`` are nonzero."""
    if points is None:
        points = enumerate_points(scheme, fld)
    env = points.env()
    n = len(points)
    ok = np.ones(n, dtype=bool)
    for u in units:
        ok &= np.broadcast_to(np.asarray(u.reduce_mod(fld.p).evaluate(fld, env)), (n,)) != 0
    a = np.broadcast_to(np.asarray(lhs.reduce_mod(fld.p).evaluate(fld, env)), (n,))
    b = np.broadcast_to(np.asarray(rhs.reduce_mod(fld.p).evaluate(fld, env)), (n,))
    bad = ok & (a != b)
    witnesses = [rec for rec in points.select(bad)][:max_witnesses]
    return IdentityResult(passed=not bad.any(), admissible=int(ok.sum()), counterexamples=witnesses)
