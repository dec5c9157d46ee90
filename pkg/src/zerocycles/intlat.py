"""Exact integer matrices: Smith and Hermite normal forms, cokernels.

All arithmetic uses Python integers, so intermediate entries never overflow.
Transforms are returned alongside the normal forms; only their
unimodularity and the product identities are guaranteed, not a canonical
choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        ents = tuple(int(x) for x in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count required for a matrix with no columns")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ValueError("ragged columns")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.to_rows(), rows=self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, cols=other.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(x) for x in r) for r in self.to_rows()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("matrix text must start with 'rows cols'")
        try:
            nums = [int(t) for t in tokens]
        except ValueError as exc:
            raise ValueError(f"non-integer token in matrix text: {exc}") from None
        r, c = nums[0], nums[1]
        if len(nums) - 2 != r * c:
            raise ValueError(f"expected {r * c} entries after header, got {len(nums) - 2}")
        return cls(r, c, tuple(nums[2:]))

    def to_json_obj(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.to_rows()}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IntMatrix":
        try:
            r, c, ents = int(obj["rows"]), int(obj["cols"]), obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix JSON: {exc}") from None
        if len(ents) != r or any(len(row) != c for row in ents):
            raise ValueError("matrix JSON entries do not match rows/cols")
        return cls(r, c, tuple(int(x) for row in ents for x in row))

    @classmethod
    def parse(cls, text: str) -> "IntMatrix":
        """Read either the plain text format or the JSON object format."""
        stripped = text.lstrip()
        if stripped.startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ValueError(f"malformed matrix JSON: {exc}") from None
            return cls.from_json_obj(obj)
        return cls.from_text(text)


@dataclass(frozen=True)
class SnfResult:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class CokernelStructure:
    free_rank: int
    invariant_factors: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


# -- elementary operations on mutable row lists ---------------------------

def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a, src, dst, k):
    """row[dst] += k * row[src]"""
    if k:
        rs, rd = a[src], a[dst]
        for j in range(len(rd)):
            rd[j] += k * rs[j]


def _add_col(a, src, dst, k):
    """col[dst] += k * col[src]"""
    if k:
        for row in a:
            row[dst] += k * row[src]


def _negate_row(a, i):
    a[i] = [-x for x in a[i]]


def _negate_col(a, j):
    for row in a:
        row[j] = -row[j]


def _identity_rows(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(M: IntMatrix) -> SnfResult:
    """Smith normal form ``U @ M @ V == S`` with unimodular ``U``, ``V``.

    Pivoting picks the smallest nonzero absolute value in the remaining
    block, which keeps entries small on random inputs.
    """
    m, n = M.rows, M.cols
    a = M.to_rows()
    u = _identity_rows(m)  # accumulated row ops
    v = _identity_rows(n)  # accumulated column ops

    def row_op(i, j, k):
        _add_row(a, i, j, k)
        _add_row(u, i, j, k)

    def col_op(i, j, k):
        _add_col(a, i, j, k)
        _add_col(v, i, j, k)

    t = 0
    while t < min(m, n):
        # smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            _swap_rows(a, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(a, t, pj)
            _swap_cols(v, t, pj)

        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    row_op(t, i, -(a[i][t] // piv))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    col_op(t, j, -(a[t][j] // piv))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t to the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, bi, bj = min(cand)
                if bi != t:
                    _swap_rows(a, t, bi)
                    _swap_rows(u, t, bi)
                if bj != t:
                    _swap_cols(a, t, bj)
                    _swap_cols(v, t, bj)
                continue
            # row and column cleared; enforce divisibility of the rest
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            row_op(bad, t, 1)
        if a[t][t] < 0:
            _negate_row(a, t)
            _negate_row(u, t)
        t += 1

    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SnfResult(
        S=IntMatrix.from_rows(a, cols=n),
        U=IntMatrix.from_rows(u, cols=m),
        V=IntMatrix.from_rows(v, cols=n),
        diagonal=diag,
    )


def cokernel(M: IntMatrix) -> CokernelStructure:
    """Structure of ``Z^rows / (column span of M)``."""
    res = snf(M)
    return CokernelStructure(
        free_rank=M.rows - res.rank,
        invariant_factors=tuple(d for d in res.diagonal if d > 1),
    )


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form: returns ``(H, U)`` with ``M @ U == H``.

    ``H`` is in column echelon form: the pivot rows of its nonzero columns
    strictly increase, pivots are positive, entries left of a pivot in its
    row lie in ``[0, pivot)``, and zero columns come last.  The columns of
    ``H`` form a basis of the lattice spanned by the columns of ``M``.
    """
    m, n = M.rows, M.cols
    # work on the transpose so column operations become row operations
    a = M.transpose().to_rows()
    u = _identity_rows(n)

    r = 0  # next pivot slot
    for col in range(m):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if a[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(a[i][col]))
            if k != r:
                _swap_rows(a, r, k)
                _swap_rows(u, r, k)
            done = True
            for i in range(r + 1, n):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    _add_row(a, r, i, -q)
                    _add_row(u, r, i, -q)
                    if a[i][col]:
                        done = False
            if done:
                break
        if r < n and a[r][col]:
            if a[r][col] < 0:
                _negate_row(a, r)
                _negate_row(u, r)
            piv = a[r][col]
            for i in range(r):
                q = a[i][col] // piv
                _add_row(a, r, i, -q)
                _add_row(u, r, i, -q)
            r += 1

    H = IntMatrix.from_rows(a, cols=m).transpose() if n else IntMatrix.zeros(m, 0)
    U = IntMatrix.from_rows(u, cols=n).transpose() if n else IntMatrix.zeros(0, 0)
    return H, U


def matrix_rank(M: IntMatrix) -> int:
    return snf(M).rank


def from_columns(columns: Iterable[Sequence[int]], rows: int) -> IntMatrix:
    return IntMatrix.from_columns(list(columns), rows=rows)
