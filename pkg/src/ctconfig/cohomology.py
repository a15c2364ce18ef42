"""Cochain complexes over exact fields: Betti numbers, representatives, ring tables."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield

from .e1 import E1
from .fields import Field
from .linalg import Echelon, Quotient, SparseMatrix, axpy, rank, rank_kernel


class ComplexError(ValueError):
    pass


class CochainComplex:
    """Finite cochain complex: ``labels[k]`` basis of degree k, ``diffs[k]`` maps k -> k+1."""

    def __init__(self, labels: dict, diffs: dict, F: Field):
        self.labels = {k: list(v) for k, v in sorted(labels.items()) if v}
        self.field = F
        self.diffs = {}
        for k, basis in self.labels.items():
            m = diffs.get(k)
            rows = len(self.labels.get(k + 1, []))
            if m is None:
                m = SparseMatrix(rows, len(basis), {}, F)
            if (m.rows, m.cols) != (rows, len(basis)):
                raise ComplexError(f"differential in degree {k} has shape {(m.rows, m.cols)}")
            self.diffs[k] = m
        self._index = {k: {lab: i for i, lab in enumerate(v)} for k, v in self.labels.items()}

    @classmethod
    def from_function(cls, labels: dict, d, F: Field):
        """Build from a map label -> {label of degree k+1: coeff}."""
        labels = {k: list(v) for k, v in labels.items() if v}
        index = {k: {lab: i for i, lab in enumerate(v)} for k, v in labels.items()}
        diffs = {}
        for k, basis in labels.items():
            tgt = index.get(k + 1, {})
            cols = []
            for lab in basis:
                img = d(lab)
                col = {}
                for t, c in img.items():
                    if t not in tgt:
                        raise ComplexError(f"d({lab!r}) leaves degree {k + 1}: {t!r}")
                    col[tgt[t]] = c
                cols.append(col)
            diffs[k] = SparseMatrix.from_columns(cols, len(tgt), F)
        return cls(labels, diffs, F)

    def degrees(self) -> list:
        return sorted(self.labels)

    def dim(self, k: int) -> int:
        return len(self.labels.get(k, []))

    def to_vector(self, k: int, element: dict) -> dict:
        idx = self._index[k]
        return {idx[lab]: c for lab, c in element.items() if c}

    def to_element(self, k: int, vec: dict) -> dict:
        return {self.labels[k][i]: c for i, c in vec.items() if c}

    def d_squared_failures(self) -> list:
        bad = []
        for k, m in self.diffs.items():
            nxt = self.diffs.get(k + 1)
            if nxt is None:
                continue
            for j, col in enumerate(m.column_dicts()):
                if nxt.apply(col):
                    bad.append((k, self.labels[k][j]))
        return bad

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.dim(k) for k in self.labels)


def betti(cx: CochainComplex, check: bool = True) -> dict:
    """Degree -> dim ker - dim im, zeros omitted."""
    if check:
        bad = cx.d_squared_failures()
        if bad:
            raise ComplexError(f"d^2 != 0 on {len(bad)} basis elements, e.g. {bad[0]!r}")
    ranks = {k: rank(m) for k, m in cx.diffs.items()}
    out = {}
    for k in cx.degrees():
        b = cx.dim(k) - ranks[k] - ranks.get(k - 1, 0)
        if b:
            out[k] = b
    return out


def euler_from_betti(b: dict) -> int:
    return sum((-1) ** k * v for k, v in b.items())


@dataclass
class CohomologyResult:
    betti: dict
    representatives: dict
    structure_constants: dict = dfield(default_factory=dict)
    complex: CochainComplex | None = None
    quotients: dict = dfield(default_factory=dict)

    def classes(self) -> list:
        """(degree, index) pairs in stable order."""
        return [(k, i) for k in sorted(self.representatives) for i in range(len(self.representatives[k]))]

    def coordinates(self, k: int, cocycle: dict) -> dict:
        """Class of a degree-k cocycle (element keyed by labels) in the representative basis."""
        if not cocycle:
            return {}
        cx = self.complex
        if k not in self.quotients:
            if cx.dim(k) and cx.diffs[k].apply(cx.to_vector(k, cocycle)):
                raise ComplexError("not a cocycle")
            return {}
        v = cx.to_vector(k, cocycle)
        if cx.diffs[k].apply(v):
            raise ComplexError("not a cocycle")
        return {i: c for i, c in self.quotients[k].reduce_sparse(v).items() if c}


def _image_columns(cx: CochainComplex, k: int) -> list:
    m = cx.diffs.get(k - 1)
    return [c for c in m.column_dicts() if c] if m is not None else []


def cohomology(cx: CochainComplex) -> CohomologyResult:
    """Betti numbers with echelon-pivot cocycle representatives."""
    bad = cx.d_squared_failures()
    if bad:
        raise ComplexError(f"d^2 != 0 on {len(bad)} basis elements, e.g. {bad[0]!r}")
    F = cx.field
    reps, quots, b = {}, {}, {}
    for k in cx.degrees():
        _, ker = rank_kernel(cx.diffs[k])
        kvecs = [{i: c for i, c in enumerate(v) if c} for v in ker]
        q = Quotient(_image_columns(cx, k), kvecs, F)
        if q.dim:
            reps[k] = [cx.to_element(k, r) for r in q.reps]
            quots[k] = q
            b[k] = q.dim
    return CohomologyResult(betti=b, representatives=reps, complex=cx, quotients=quots)


def _table(res: CohomologyResult, multiply, reps: dict) -> dict:
    table = {}
    classes = res.classes()
    for (ka, ia) in classes:
        for (kb, ib) in classes:
            k = ka + kb
            prod = multiply(reps[ka][ia], reps[kb][ib])
            if not prod:
                table[((ka, ia), (kb, ib))] = {}
                continue
            if k not in res.complex.labels:
                raise ComplexError(f"product lands in degree {k} outside the complex")
            coords = res.coordinates(k, prod)
            table[((ka, ia), (kb, ib))] = {(k, i): c for i, c in sorted(coords.items())}
    return table


def perturbed_representatives(res: CohomologyResult, seed: int = 0) -> dict:
    """Representatives shifted by random coboundaries."""
    cx = res.complex
    rng = random.Random(seed)
    out = {}
    for k, reps in res.representatives.items():
        m = cx.diffs.get(k - 1)
        new = []
        for r in reps:
            r = dict(r)
            if m is not None and m.cols:
                x = {j: cx.field(rng.randint(-3, 3)) for j in range(m.cols)}
                axpy(r, cx.field.one, cx.to_element(k, m.apply(x)))
            new.append({a: c for a, c in r.items() if c})
        out[k] = new
    return out


def ring_table(cx: CochainComplex, multiply, perturb_seeds=(1,)) -> CohomologyResult:
    """Cohomology with the multiplication table of the induced product.

    ``multiply(a, b)`` is a chain-level product satisfying Leibniz.  The table
    is recomputed with representatives moved by random coboundaries; any
    disagreement raises ComplexError.
    """
    res = cohomology(cx)
    table = _table(res, multiply, res.representatives)
    for seed in perturb_seeds:
        other = _table(res, multiply, perturbed_representatives(res, seed))
        if other != table:
            raise ComplexError("structure constants depend on the representatives")
    res.structure_constants = table
    return res


def leibniz_failures(cx: CochainComplex, d, multiply, degree_of, pairs) -> list:
    """Pairs of basis labels where d(ab) != d(a) b + (-1)^|a| a d(b)."""
    bad = []
    for a, b in pairs:
        lhs = d(multiply({a: cx.field.one}, {b: cx.field.one}))
        rhs: dict = {}
        axpy(rhs, cx.field.one, multiply(d({a: cx.field.one}), {b: cx.field.one}))
        axpy(rhs, cx.field((-1) ** degree_of(a)), multiply({a: cx.field.one}, d({b: cx.field.one})))
        diff = dict(lhs)
        axpy(diff, -cx.field.one, rhs)
        if diff:
            bad.append((a, b))
    return bad


# -- builders ------------------------------------------------------------------

def cnh_complex(c) -> CochainComplex:
    """(C_n^H, d) graded by total degree."""
    return CochainComplex.from_function(c.basis_by_degree(), c.d_monomial, c.F)


def e1_complex(e: E1) -> CochainComplex:
    return CochainComplex.from_function(e.basis_by_degree(), e.d1_monomial, e.F)


def e1_invariant_complex(e: E1) -> CochainComplex:
    """(E1^{Sigma_n}, d1) on the basis produced by averaging.

    Labels are pairs (k, i) pointing at ``complex.vectors[k][i]`` (E1 elements).
    """
    F = e.F
    vecs: dict = {}
    for (t, r), vs in e.invariants_basis().items():
        vecs.setdefault(t + r * e.edge_deg, []).extend(vs)
    vecs = dict(sorted(vecs.items()))
    solvers = {}
    for k, vs in vecs.items():
        ech = Echelon()
        for i, v in enumerate(vs):
            ech.add(e.coords(v), {i: F.one})
        solvers[k] = ech
    diffs = {}
    for k, vs in vecs.items():
        cols = []
        for v in vs:
            img = e.coords(e.d1(v))
            if not img:
                cols.append({})
                continue
            if k + 1 not in solvers:
                raise ComplexError("d1 of an invariant left the invariant subspace")
            rem, tag = solvers[k + 1].reduce(img)
            if rem:
                raise ComplexError("d1 of an invariant left the invariant subspace")
            cols.append(tag)
        diffs[k] = SparseMatrix.from_columns(cols, len(vecs.get(k + 1, [])), F)
    cx = CochainComplex({k: [(k, i) for i in range(len(v))] for k, v in vecs.items()}, diffs, F)
    cx.vectors = vecs
    cx.solvers = solvers
    return cx


def e1_invariant_product(cx: CochainComplex, e: E1):
    """Product on an ``e1_invariant_complex`` induced by the E1 product."""
    F = cx.field

    def lift(a: dict) -> dict:
        out: dict = {}
        for (k, i), c in a.items():
            axpy(out, c, cx.vectors[k][i])
        return out

    def multiply(a: dict, b: dict) -> dict:
        p = e.multiply(lift(a), lift(b))
        if not p:
            return {}
        k = e.degree(next(iter(p)))
        if k not in cx.solvers:
            raise ComplexError("product left the invariant subspace")
        rem, tag = cx.solvers[k].reduce(e.coords(p))
        if rem:
            raise ComplexError("product left the invariant subspace")
        return {(k, i): c for i, c in tag.items() if c}

    return multiply


def invariant_cohomology_dims(e: E1) -> dict:
    """dim H(E1)^{Sigma_n} per degree: averaged cocycles modulo coboundaries."""
    F = e.F
    cx = e1_complex(e)
    out = {}
    for k in cx.degrees():
        _, ker = rank_kernel(cx.diffs[k])
        bnd = _image_columns(cx, k)
        base = Echelon()
        for v in bnd:
            base.add(v)
        nb = base.rank
        for v in ker:
            z = cx.to_element(k, {i: c for i, c in enumerate(v) if c})
            base.add(cx.to_vector(k, e.average_project(z)))
        if base.rank - nb:
            out[k] = base.rank - nb
    return out
