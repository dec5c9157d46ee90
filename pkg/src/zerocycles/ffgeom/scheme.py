"""Ambient spaces, polynomial systems and exhaustive point enumeration.

An ambient space is an ordered product of coordinate blocks:

* ``affine``: coordinates taking any value;
* ``projective``: homogeneous coordinates of a projective space;
* ``bundle``: fiber coordinates of a weighted projective bundle over earlier
  blocks.  Rescaling a parent block by ``lam`` and the fiber by ``mu``
  multiplies fiber coordinate ``i`` by ``mu * lam ** w_i``.

Points are normalized block by block: in each projective or bundle block the
first nonzero coordinate is 1, after the parents have been normalized (which
uses up their scaling freedom, so a fiber with fixed base is an honest
projective space).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from .field import FieldSpec
from .poly import MultiPoly, parse_poly

AFFINE, PROJECTIVE, BUNDLE = "affine", "projective", "bundle"

# Upper bound on rows materialized at once during enumeration.
CHUNK_ROWS = 400_000


@dataclass(frozen=True)
class Block:
    name: str
    names: tuple[str, ...]
    kind: str = PROJECTIVE
    # parent block name -> one weight per fiber coordinate
    weights: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if isinstance(self.weights, Mapping):
            object.__setattr__(self, "weights", tuple((k, tuple(v)) for k, v in self.weights.items()))
        if self.kind not in (AFFINE, PROJECTIVE, BUNDLE):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind == PROJECTIVE and len(self.names) < 2:
            raise ValueError("a projective block needs at least two coordinates")
        if self.kind == BUNDLE:
            if not self.weights:
                raise ValueError("a bundle block needs a parent")
            for parent, w in self.weights:
                if len(w) != len(self.names):
                    raise ValueError(
                        f"bundle {self.name}: {len(w)} weights for {len(self.names)} coordinates"
                    )
        elif self.weights:
            raise ValueError("only bundle blocks carry weights")

    @property
    def homogeneous(self) -> bool:
        return self.kind != AFFINE

    @property
    def weight_map(self) -> dict[str, tuple[int, ...]]:
        return dict(self.weights)

    @property
    def chart_dim(self) -> int:
        return len(self.names) - (1 if self.homogeneous else 0)


class AmbientSpace:
    def __init__(self, blocks: Sequence[Block]):
        self.blocks = tuple(blocks)
        seen, names = set(), []
        for b in self.blocks:
            if b.name in seen:
                raise ValueError(f"duplicate block name {b.name!r}")
            for parent, _ in b.weights:
                if parent not in seen:
                    raise ValueError(f"bundle {b.name} must come after its parent {parent}")
                if self.block(parent).kind == AFFINE:
                    raise ValueError("bundle parents must be homogeneous blocks")
            seen.add(b.name)
            names.extend(b.names)
        if len(set(names)) != len(names):
            raise ValueError("coordinate names must be unique across blocks")
        self.variables = tuple(names)

    def __repr__(self):
        return "AmbientSpace(" + " x ".join(f"{b.kind}{b.names}" for b in self.blocks) + ")"

    def block(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(name)

    def block_of(self, var: str) -> Block:
        for b in self.blocks:
            if var in b.names:
                return b
        raise ValueError(f"unknown coordinate {var!r}")

    def extend(self, *blocks: Block) -> "AmbientSpace":
        return AmbientSpace(self.blocks + tuple(blocks))

    @property
    def chart_dim(self) -> int:
        return sum(b.chart_dim for b in self.blocks)

    def index(self, var: str) -> int:
        return self.variables.index(var)

    # -- scaling -------------------------------------------------------

    def scaling_degrees(self, f: MultiPoly) -> dict[str, set[int]]:
        """For each homogeneous block, the set of monomial weights of ``f``."""
        f = f.over(self.variables) if f.variables != self.variables else f
        out: dict[str, set[int]] = {}
        for b in self.blocks:
            if not b.homogeneous:
                continue
            contrib = {self.index(v): 1 for v in b.names}
            for c in self.blocks:
                w = c.weight_map.get(b.name)
                if w:
                    for v, wi in zip(c.names, w):
                        contrib[self.index(v)] = contrib.get(self.index(v), 0) + wi
            out[b.name] = {sum(e[i] * k for i, k in contrib.items()) for e in f.terms}
        return out

    def is_consistent(self, f: MultiPoly) -> bool:
        return all(len(s) <= 1 for s in self.scaling_degrees(f).values())

    # -- point normalization --------------------------------------------

    def rescale(self, values: Sequence[int], fld: FieldSpec, factors: Mapping[str, int]) -> tuple[int, ...]:
        """Apply the block scalings ``factors`` (block name -> nonzero scalar)."""
        vals = [int(x) for x in values]
        for bname, lam in factors.items():
            lam = int(lam)
            if lam == 0:
                raise ValueError("scaling factors must be nonzero")
            b = self.block(bname)
            for v in b.names:
                i = self.index(v)
                vals[i] = int(fld.mul_t[vals[i], lam])
            for c in self.blocks:
                w = c.weight_map.get(bname)
                if w:
                    for v, wi in zip(c.names, w):
                        i = self.index(v)
                        vals[i] = int(fld.mul_t[vals[i], fld.power(lam, wi)])
        return tuple(vals)

    def normalize(self, values: Sequence[int], fld: FieldSpec) -> tuple[int, ...]:
        vals = tuple(int(x) for x in values)
        if len(vals) != len(self.variables):
            raise ValueError("wrong number of coordinates")
        for b in self.blocks:
            if not b.homogeneous:
                continue
            block_vals = [vals[self.index(v)] for v in b.names]
            nz = next((x for x in block_vals if x), None)
            if nz is None:
                raise ValueError(f"all coordinates of block {b.name} vanish")
            vals = self.rescale(vals, fld, {b.name: int(fld.inv_t[nz])})
        return vals

    def pivots(self, values: Sequence[int]) -> dict[str, str]:
        """Chart coordinate (first nonzero) of each homogeneous block."""
        out = {}
        for b in self.blocks:
            if b.homogeneous:
                out[b.name] = next(v for v in b.names if values[self.index(v)])
        return out

    def to_json_obj(self) -> dict:
        out = []
        for b in self.blocks:
            d = {"name": b.name, "kind": b.kind, "names": list(b.names)}
            if b.weights:
                d["weights"] = {k: list(v) for k, v in b.weights}
            out.append(d)
        return {"blocks": out}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "AmbientSpace":
        blocks = []
        try:
            for i, d in enumerate(obj["blocks"]):
                w = d.get("weights") or {}
                if d.get("parent") is not None:
                    w = {d["parent"]: d["weights"]}
                blocks.append(Block(
                    name=d.get("name", f"B{i}"),
                    names=tuple(d["names"]),
                    kind=d.get("kind", PROJECTIVE),
                    weights=tuple((k, tuple(int(x) for x in v)) for k, v in w.items()),
                ))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed ambient JSON: {exc}") from None
        return cls(blocks)


class SchemeSpec:
    """A closed subscheme of an ambient space cut out by ``equations``."""

    def __init__(self, ambient: AmbientSpace, equations: Sequence[MultiPoly],
                 expected_dim: int | None = None, name: str = "", check: bool = True):
        self.ambient = ambient
        self.equations = tuple(f.over(ambient.variables) for f in equations)
        self.expected_dim = expected_dim
        self.name = name
        if check:
            bad = [str(f) for f in self.equations if not ambient.is_consistent(f)]
            if bad:
                raise ValueError(
                    f"equations not scaling-consistent on the ambient: {bad}"
                )

    def __repr__(self):
        return f"SchemeSpec({self.name or '?'}, {len(self.equations)} equations)"

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ambient.variables

    @property
    def codim(self) -> int:
        if self.expected_dim is None:
            raise ValueError(f"scheme {self.name!r} has no expected dimension")
        return self.ambient.chart_dim - self.expected_dim

    def with_equations(self, extra: Sequence[MultiPoly], expected_dim: int | None = None,
                       name: str | None = None) -> "SchemeSpec":
        return SchemeSpec(
            self.ambient,
            self.equations + tuple(extra),
            self.expected_dim if expected_dim is None else expected_dim,
            name if name is not None else self.name,
        )

    def contains(self, values: Sequence[int], fld: FieldSpec) -> bool:
        env = dict(zip(self.variables, (int(x) for x in values)))
        return all(f.evaluate(fld, env) == 0 for f in self.equations)

    @classmethod
    def from_json_obj(cls, obj: Mapping, constants: Mapping[str, int] | None = None) -> "SchemeSpec":
        ambient = AmbientSpace.from_json_obj(obj["ambient"] if "ambient" in obj else obj)
        try:
            eqs = [parse_poly(s, ambient.variables, constants) for s in obj.get("equations", [])]
        except AttributeError as exc:
            raise ValueError(f"malformed scheme JSON: {exc}") from None
        return cls(ambient, eqs, obj.get("expected_dim"), obj.get("name", ""))

    @classmethod
    def from_json(cls, text: str, constants: Mapping[str, int] | None = None) -> "SchemeSpec":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed scheme JSON: {exc}") from None
        return cls.from_json_obj(obj, constants)


@dataclass(frozen=True)
class PointRec:
    variables: tuple[str, ...]
    values: tuple[int, ...]

    def __getitem__(self, var: str) -> int:
        return self.values[self.variables.index(var)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.variables, self.values))


@dataclass
class PointSet:
    """Normalized points, one row per point, columns in ambient order."""

    variables: tuple[str, ...]
    field: FieldSpec
    array: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.array, dtype=np.int64).reshape(-1, len(self.variables))
        if len(arr):
            order = np.lexsort(arr.T[::-1])
            arr = arr[order]
        self.array = arr

    def __len__(self):
        return self.array.shape[0]

    def __iter__(self) -> Iterator[PointRec]:
        for row in self.array:
            yield PointRec(self.variables, tuple(int(x) for x in row))

    def records(self) -> list[PointRec]:
        return list(self)

    def col(self, var: str) -> np.ndarray:
        return self.array[:, self.variables.index(var)]

    def env(self) -> dict[str, np.ndarray]:
        return {v: self.array[:, i] for i, v in enumerate(self.variables)}

    def to_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in r) for r in self.array}

    def select(self, mask) -> "PointSet":
        return PointSet(self.variables, self.field, self.array[np.asarray(mask, dtype=bool)])

    def project(self, names: Sequence[str]) -> np.ndarray:
        idx = [self.variables.index(v) for v in names]
        sub = self.array[:, idx]
        return np.unique(sub, axis=0) if len(sub) else sub

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.variables == other.variables and self.field == other.field
                and self.array.shape == other.array.shape and np.array_equal(self.array, other.array))


# -- enumeration -----------------------------------------------------------

class _Plan:
    """Precomputed per-variable equation data for one scheme."""

    def __init__(self, scheme: SchemeSpec, fld: FieldSpec):
        self.variables = scheme.variables
        self.fld = fld
        pos = {v: i for i, v in enumerate(self.variables)}
        self.constant_bad = False
        self.ready: dict[str, list[tuple[MultiPoly, dict[int, MultiPoly]]]] = {v: [] for v in self.variables}
        for f in scheme.equations:
            f = f.reduce_mod(fld.p)
            used = f.used_variables()
            if not used:
                if f.terms:
                    self.constant_bad = True
                continue
            last = max(used, key=pos.__getitem__)
            self.ready[last].append((f, f.coefficients_in(last)))


def _env(rows: np.ndarray, assigned: Sequence[str]) -> dict[str, np.ndarray]:
    return {v: rows[:, i] for i, v in enumerate(assigned)}


def _prune(rows, assigned, eqs, fld):
    if not len(rows) or not eqs:
        return rows
    env = _env(rows, assigned)
    keep = np.ones(len(rows), dtype=bool)
    for f, _ in eqs:
        keep &= np.asarray(f.evaluate(fld, env)) == 0
        if not keep.any():
            break
    return rows[keep]


def _assign_fixed(rows, assigned, var, value, plan):
    col = np.full((len(rows), 1), value, dtype=np.int64)
    rows = np.hstack([rows, col])
    return _prune(rows, assigned + [var], plan.ready[var], plan.fld)


def _assign_free(rows, assigned, var, plan):
    """Extend rows by every admissible value of ``var``.

    An equation whose last variable is ``var`` and that is linear in ``var``
    at a given row determines the value directly; otherwise all ``q`` values
    are tried and filtered.
    """
    fld, q = plan.fld, plan.fld.q
    eqs = plan.ready[var]
    n = len(rows)
    if n == 0:
        return np.empty((0, len(assigned) + 1), dtype=np.int64)
    sol = np.full(n, -1, dtype=np.int64)
    if eqs:
        env = _env(rows, assigned)
        for _, coeffs in eqs:
            c = {k: np.broadcast_to(np.asarray(p.evaluate(fld, env)), (n,)) for k, p in coeffs.items()}
            if 1 not in c:
                continue
            lin = (c[1] != 0) & (sol < 0)
            for k, arr in c.items():
                if k >= 2:
                    lin &= arr == 0
            if lin.any():
                c0 = c.get(0, np.zeros(n, dtype=np.int64))
                val = fld.mul_t[fld.neg_t[c0[lin]], fld.inv_t[c[1][lin]]]
                sol[lin] = val
    solved = sol >= 0
    parts = []
    if solved.any():
        parts.append(np.hstack([rows[solved], sol[solved, None]]))
    rest = rows[~solved]
    if len(rest):
        rep = np.repeat(rest, q, axis=0)
        vals = np.tile(np.arange(q, dtype=np.int64), len(rest))[:, None]
        parts.append(np.hstack([rep, vals]))
    out = np.vstack(parts) if len(parts) > 1 else parts[0]
    return _prune(out, assigned + [var], eqs, fld)


def _block_steps(block: Block, fixed: Mapping[str, int]) -> list[list[tuple[str, int | None]]]:
    """Branches of (var, value-or-None) assignments covering a block."""
    if block.kind == AFFINE:
        return [[(v, fixed.get(v)) for v in block.names]]
    for v in block.names:
        if v in fixed:
            raise ValueError(f"cannot fix homogeneous coordinate {v!r}")
    branches = []
    for i in range(len(block.names)):
        steps = [(v, 0) for v in block.names[:i]] + [(block.names[i], 1)]
        steps += [(v, None) for v in block.names[i + 1:]]
        branches.append(steps)
    return branches


def _run(rows, assigned, steps, plan):
    """Apply a sequence of assignments depth-first, bounding memory."""
    if not steps or not len(rows):
        if not len(rows):
            return np.empty((0, len(assigned) + len(steps)), dtype=np.int64)
        return rows
    var, value = steps[0]
    limit = max(1, CHUNK_ROWS // (plan.fld.q if value is None else 1))
    outs = []
    for start in range(0, len(rows), limit):
        chunk = rows[start:start + limit]
        if value is None:
            nxt = _assign_free(chunk, assigned, var, plan)
        else:
            nxt = _assign_fixed(chunk, assigned, var, value, plan)
        res = _run(nxt, assigned + [var], steps[1:], plan)
        if len(res):
            outs.append(res)
    if not outs:
        return np.empty((0, len(assigned) + len(steps)), dtype=np.int64)
    return np.vstack(outs)


def enumerate_points(scheme: SchemeSpec, fld: FieldSpec,
                     fixed: Mapping[str, int] | None = None) -> PointSet:
    """All normalized F_q-points of ``scheme``.

    ``fixed`` pins affine coordinates (e.g. ``{"pi": 0}`` for the special
    fiber).  Bundle fibers are only explored above base points that satisfy
    every equation in the base coordinates.
    """
    fixed = dict(fixed or {})
    for v in fixed:
        if v not in scheme.variables:
            raise ValueError(f"unknown coordinate {v!r}")
    plan = _Plan(scheme, fld)
    nvars = len(scheme.variables)
    if plan.constant_bad:
        return PointSet(scheme.variables, fld, np.empty((0, nvars), dtype=np.int64))
    rows = np.empty((1, 0), dtype=np.int64)
    assigned: list[str] = []
    for block in scheme.ambient.blocks:
        outs = []
        for steps in _block_steps(block, fixed):
            res = _run(rows, assigned, steps, plan)
            if len(res):
                outs.append(res)
        assigned = assigned + list(block.names)
        rows = np.vstack(outs) if outs else np.empty((0, len(assigned)), dtype=np.int64)
        if not len(rows):
            break
    if rows.shape[1] != nvars:
        rows = np.empty((0, nvars), dtype=np.int64)
    return PointSet(scheme.variables, fld, rows)


def projective_space(names: Sequence[str], name: str = "P") -> AmbientSpace:
    return AmbientSpace([Block(name, tuple(names), PROJECTIVE)])
