"""Exact sparse linear algebra over a `Field`.

Vectors are dicts ``index -> nonzero scalar``; dense lists are accepted at the
public entry points.  Elimination keeps the row space in reduced row echelon
form, so every result is independent of insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

from .fields import QQ, Field


def as_sparse(v) -> dict:
    if isinstance(v, dict):
        return {k: c for k, c in v.items() if c}
    return {i: c for i, c in enumerate(v) if c}


def as_dense(v: dict, dim: int, F: Field) -> list:
    out = [F.zero] * dim
    for i, c in v.items():
        out[i] = c
    return out


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place, dropping zeros."""
    for k, c in x.items():
        t = y.get(k)
        t = a * c if t is None else t + a * c
        if t:
            y[k] = t
        else:
            y.pop(k, None)


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: dict = dc_field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
            c = self.field(c)
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_columns(cls, columns: list, rows: int, F: Field = QQ):
        ent = {}
        for j, col in enumerate(columns):
            for i, c in as_sparse(col).items():
                ent[(i, j)] = c
        return cls(rows, len(columns), ent, F)

    @classmethod
    def from_dense(cls, mat: list, F: Field = QQ):
        rows = len(mat)
        cols = len(mat[0]) if rows else 0
        ent = {(i, j): c for i, r in enumerate(mat) for j, c in enumerate(r) if c}
        return cls(rows, cols, ent, F)

    @classmethod
    def identity(cls, n: int, F: Field = QQ):
        return cls(n, n, {(i, i): 1 for i in range(n)}, F)

    def row_dicts(self) -> list:
        out = [dict() for _ in range(self.rows)]
        for (i, j), c in self.entries.items():
            out[i][j] = c
        return out

    def column_dicts(self) -> list:
        out = [dict() for _ in range(self.cols)]
        for (i, j), c in self.entries.items():
            out[j][i] = c
        return out

    def apply(self, x) -> dict:
        x = as_sparse(x)
        y: dict = {}
        for (i, j), c in self.entries.items():
            xj = x.get(j)
            if xj:
                axpy(y, c * xj, {i: self.field.one})
        return y

    def to_dense(self) -> list:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (i, j), c in self.entries.items():
            out[i][j] = c
        return out


class Echelon:
    """Incremental reduced row echelon basis of a subspace.

    Each stored row may carry a *tag*: a sparse vector recording which linear
    combination of tagged inputs it equals.  ``reduce`` returns the remainder
    of a vector together with the combined tag of the rows subtracted.
    """

    def __init__(self):
        self.pivots: dict = {}  # pivot column -> (row, tag)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict):
        v = dict(v)
        tag: dict = {}
        for c in [c for c in v if c in self.pivots]:
            a = v.get(c)
            if not a:
                continue
            row, rtag = self.pivots[c]
            axpy(v, -a, row)
            if rtag:
                axpy(tag, a, rtag)
        return v, tag

    def add(self, v, tag: dict | None = None) -> bool:
        """Insert v; return False when v is already in the span."""
        rem, t = self.reduce(as_sparse(v))
        if not rem:
            return False
        new_tag = dict(tag) if tag else {}
        if t:
            axpy(new_tag, -1, t)
        c = min(rem)
        inv = 1 / rem[c]
        rem = {k: x * inv for k, x in rem.items()}
        new_tag = {k: x * inv for k, x in new_tag.items()}
        for pc, (row, rtag) in self.pivots.items():
            a = row.get(c)
            if a:
                axpy(row, -a, rem)
                if new_tag:
                    axpy(rtag, -a, new_tag)
        self.pivots[c] = (rem, new_tag)
        return True

    def contains(self, v) -> bool:
        rem, _ = self.reduce(as_sparse(v))
        return not rem


def rref(m: SparseMatrix) -> Echelon:
    ech = Echelon()
    for r in m.row_dicts():
        if r:
            ech.add(r)
    return ech


def rank(m: SparseMatrix) -> int:
    return rref(m).rank


def rank_kernel(m: SparseMatrix):
    """Return ``(rank, kernel_basis)`` with dense kernel vectors.

    The kernel basis is the canonical one read off the reduced row echelon
    form: one vector per free column, with a 1 in that column.
    """
    ech = rref(m)
    F = m.field
    free = [j for j in range(m.cols) if j not in ech.pivots]
    kernel = []
    for f in free:
        x = {f: F.one}
        for c, (row, _) in ech.pivots.items():
            a = row.get(f)
            if a:
                x[c] = -a
        kernel.append(as_dense(x, m.cols, F))
    return ech.rank, kernel


def kernel_sparse(m: SparseMatrix) -> list:
    _, ker = rank_kernel(m)
    return [as_sparse(v) for v in ker]


class ImageSolver:
    """Solve ``m x = b`` repeatedly for one matrix."""

    def __init__(self, m: SparseMatrix):
        self.m = m
        self.ech = Echelon()
        for j, col in enumerate(m.column_dicts()):
            if col:
                self.ech.add(col, {j: m.field.one})

    def solve_sparse(self, b) -> dict | None:
        rem, tag = self.ech.reduce(as_sparse(b))
        if rem:
            return None
        return tag

    def solve(self, b) -> list | None:
        x = self.solve_sparse(b)
        if x is None:
            return None
        return as_dense(x, self.m.cols, self.m.field)


def solve(m: SparseMatrix, b) -> list | None:
    """x with m x = b, or None when b is not in the image."""
    if not isinstance(b, dict) and len(b) != m.rows:
        raise ValueError(f"rhs has length {len(b)}, expected {m.rows}")
    return ImageSolver(m).solve(b)


class Quotient:
    """Representatives of span(candidates + subspace) / subspace.

    Representatives are the candidates that are independent modulo the
    subspace and the earlier candidates, in the given order.
    """

    def __init__(self, subspace: Iterable, candidates: Iterable, F: Field = QQ):
        self.field = F
        self.ech = Echelon()
        self.sub_rank = 0
        for v in subspace:
            if self.ech.add(v):
                self.sub_rank += 1
        self.reps: list = []
        for c in candidates:
            c = as_sparse(c)
            if self.ech.add(c, {len(self.reps): F.one}):
                self.reps.append(c)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def reduce_sparse(self, v) -> dict:
        rem, tag = self.ech.reduce(as_sparse(v))
        if rem:
            raise ValueError("vector is outside the span of subspace and representatives")
        return tag

    def reduce(self, v) -> list:
        return as_dense(self.reduce_sparse(v), self.dim, self.field)


def quotient_representatives(subspace: list, ambient_dim: int, F: Field = QQ):
    """Standard-basis representatives of ambient/subspace and the reduction map."""
    for v in subspace:
        if not isinstance(v, dict) and len(v) != ambient_dim:
            raise ValueError("subspace vector has wrong length")
    units = [{j: F.one} for j in range(ambient_dim)]
    q = Quotient(subspace, units, F)
    reps = [as_dense(r, ambient_dim, F) for r in q.reps]
    reduce: Callable = q.reduce
    return reps, reduce
