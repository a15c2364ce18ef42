"""The Cohen-Taylor E1 term (H^{(x)n} (x) Lambda(e_ij)) / I for a PD algebra H.

A monomial is ``(labels, forest)``: ``forest`` is a canonical edge monomial
from `arnold` and ``labels`` is a length-n tuple of H basis indices, with
non-unit labels only at component roots (the minimal vertex of each
component).  It stands for the ordered product
``p_1^*(labels[0]) ... p_n^*(labels[n-1]) * e_{forest}``: all labels first by
vertex, then the edges by target.  Elements are dicts monomial -> scalar.
"""

from __future__ import annotations

from itertools import permutations, product as iproduct
from math import factorial

from . import arnold
from .guards import check_n
from .linalg import Echelon, axpy
from .pdalgebra import PDAlgebra
from .words import wedge_words


def forests(n: int) -> list:
    return [m for r in range(n) for m in arnold.os_basis(n, r)]


def roots(n: int, forest) -> list:
    """root[v-1] = minimal vertex of the component of v."""
    root = list(range(1, n + 1))
    for i, j in forest:  # targets increase and i < j, so root[i] is final
        root[j - 1] = root[i - 1]
    return root


class E1:
    """E1 term of the Cohen-Taylor spectral sequence for (H, n)."""

    def __init__(self, h: PDAlgebra, n: int):
        if n < 1:
            raise ValueError("n >= 1 required")
        check_n(n)
        self.h = h
        self.n = n
        self.F = h.field
        self.parity = h.N % 2
        self.edge_deg = h.N - 1
        self._act_cache: dict = {}
        self._d_cache: dict = {}
        self._basis = None

    # -- basis and grading ------------------------------------------------

    def basis(self) -> list:
        if self._basis is None:
            h, n = self.h, self.n
            out = []
            for f in forests(n):
                rts = sorted(set(roots(n, f)))
                for labs in iproduct(range(h.dim), repeat=len(rts)):
                    lab = [h.unit] * n
                    for v, a in zip(rts, labs):
                        lab[v - 1] = a
                    out.append((tuple(lab), f))
            self._basis = out
        return self._basis

    def bidegree(self, m) -> tuple:
        labels, forest = m
        return sum(self.h.deg(a) for a in labels), len(forest)

    def degree(self, m) -> int:
        t, r = self.bidegree(m)
        return t + r * self.edge_deg

    def basis_by_bidegree(self) -> dict:
        out: dict = {}
        for m in self.basis():
            out.setdefault(self.bidegree(m), []).append(m)
        return dict(sorted(out.items()))

    def basis_by_degree(self) -> dict:
        out: dict = {}
        for m in self.basis():
            out.setdefault(self.degree(m), []).append(m)
        return dict(sorted(out.items()))

    def unit(self) -> dict:
        return {((self.h.unit,) * self.n, ()): self.F.one}

    def label(self, vertex: int, a: int, coeff=1) -> dict:
        lab = [self.h.unit] * self.n
        lab[vertex - 1] = a
        return {(tuple(lab), ()): self.F(coeff)}

    def edge(self, i: int, j: int) -> dict:
        return self.normalize({(self.h.unit,) * self.n: self.F.one}, [(i, j)])

    # -- normal form ----------------------------------------------------------

    def _tensor_mul(self, A: tuple, B: tuple):
        """(a_1(x)..(x)a_n)(b_1(x)..(x)b_n) as (sign, per-vertex product vectors)."""
        h = self.h
        s = 0
        acc = 0
        for v in range(self.n):
            # a_v passes b_1..b_{v-1}
            s += h.deg(A[v]) * acc
            acc += h.deg(B[v])
        vecs = []
        for a, b in zip(A, B):
            p = h.mul_basis(a, b)
            if not p:
                return 0, None
            vecs.append(p)
        return (-1 if s % 2 else 1), vecs

    def _expand(self, vecs):
        """Tensor product of per-vertex vectors -> {label tuple: scalar}."""
        out: dict = {}
        items = [list(v.items()) for v in vecs]
        for combo in iproduct(*items):
            c = self.F.one
            for _, x in combo:
                c = c * x
            key = tuple(k for k, _ in combo)
            out[key] = out.get(key, self.F.zero) + c
        return {k: c for k, c in out.items() if c}

    def _collapse(self, labels: tuple, forest) -> dict:
        """Move every label to its component root: p_v^*(a) e = p_root^*(a) e."""
        h, n = self.h, self.n
        root = roots(n, forest)
        moved = [(root[v], labels[v]) for v in range(n) if labels[v] != h.unit]
        s = 0
        for x in range(len(moved)):
            for y in range(x + 1, len(moved)):
                if moved[x][0] > moved[y][0]:
                    s += h.deg(moved[x][1]) * h.deg(moved[y][1])
        moved.sort(key=lambda t: t[0])  # stable
        per_root: dict = {}
        for r, a in moved:
            cur = per_root.get(r)
            per_root[r] = {a: self.F.one} if cur is None else h.mul(cur, {a: self.F.one})
            if not per_root[r]:
                return {}
        vecs = [{h.unit: self.F.one}] * n
        for r, vec in per_root.items():
            vecs[r - 1] = vec
        sign = -1 if s % 2 else 1
        return {(lab, forest): sign * c for lab, c in self._expand(vecs).items()}

    def normalize(self, tensor: dict, edges) -> dict:
        """Normal form of (sum tensor) * (product of edges in the given order)."""
        out: dict = {}
        for forest, fc in arnold.straighten(self.n, self.parity, edges).items():
            for labels, c in tensor.items():
                axpy(out, fc * c, self._collapse(labels, forest))
        return out

    # -- algebra structure ------------------------------------------------------

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (L1, F1), c1 in x.items():
            for (L2, F2), c2 in y.items():
                t2 = sum(self.h.deg(a) for a in L2)
                s = -1 if (len(F1) * self.edge_deg * t2) % 2 else 1
                ts, vecs = self._tensor_mul(L1, L2)
                if not ts:
                    continue
                axpy(out, s * ts * c1 * c2, self.normalize(self._expand(vecs), F1 + F2))
        return out

    def diagonal_tensor(self, i: int, j: int) -> dict:
        """p_ij^*(Delta) as a label tensor."""
        out: dict = {}
        for a, b, c in self.h.diagonal_class().terms:
            lab = [self.h.unit] * self.n
            lab[i - 1], lab[j - 1] = a, b
            out[tuple(lab)] = out.get(tuple(lab), self.F.zero) + c
        return {k: v for k, v in out.items() if v}

    def d1_monomial(self, m) -> dict:
        if m in self._d_cache:
            return self._d_cache[m]
        labels, forest = m
        out: dict = {}
        t = sum(self.h.deg(a) for a in labels)
        for k, (i, j) in enumerate(forest):
            s = -1 if (t + self.edge_deg * k) % 2 else 1
            rest = forest[:k] + forest[k + 1:]
            prod: dict = {}
            for D, c in self.diagonal_tensor(i, j).items():
                ts, vecs = self._tensor_mul(labels, D)
                if not ts:
                    continue
                for lab, x in self._expand(vecs).items():
                    prod[lab] = prod.get(lab, self.F.zero) + ts * c * x
            axpy(out, s, self.normalize(prod, rest))
        self._d_cache[m] = out
        return out

    def d1(self, x: dict) -> dict:
        out: dict = {}
        for m, c in x.items():
            axpy(out, c, self.d1_monomial(m))
        return out

    # -- symmetric group --------------------------------------------------------

    def act_monomial(self, perm, m) -> dict:
        key = (perm, m)
        if key in self._act_cache:
            return self._act_cache[key]
        h, n = self.h, self.n
        labels, forest = m
        moved = [(perm[v], labels[v]) for v in range(n)]
        s = 0
        for x in range(n):
            if not h.deg(moved[x][1]) % 2:
                continue
            for y in range(x + 1, n):
                if moved[x][0] > moved[y][0] and h.deg(moved[y][1]) % 2:
                    s += 1
        new = [h.unit] * n
        for v, a in moved:
            new[v - 1] = a
        edges = [(perm[i - 1], perm[j - 1]) for i, j in forest]
        res = self.normalize({tuple(new): self.F(-1 if s % 2 else 1)}, edges)
        self._act_cache[key] = res
        return res

    def sigma_act(self, perm, x: dict) -> dict:
        perm = tuple(perm)
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{self.n}")
        out: dict = {}
        for m, c in x.items():
            axpy(out, c, self.act_monomial(perm, m))
        return out

    def average_project(self, x: dict) -> dict:
        self.F.require_order(self.n)
        out: dict = {}
        for p in permutations(range(1, self.n + 1)):
            axpy(out, self.F.one, self.sigma_act(p, x))
        inv = self.F.one / self.F(factorial(self.n))
        return {m: c * inv for m, c in out.items()}

    def invariants_basis(self) -> dict:
        """Per-bidegree basis of the fixed subspace, as images of averaging."""
        self.F.require_order(self.n)
        out = {}
        for bd, monos in self.basis_by_bidegree().items():
            ech = Echelon()
            vecs = []
            for m in monos:
                v = self.average_project({m: self.F.one})
                if v and ech.add(_keyed(v, self._index())):
                    vecs.append(v)
            out[bd] = vecs
        return out

    def _index(self) -> dict:
        if not hasattr(self, "_idx"):
            self._idx = {m: k for k, m in enumerate(self.basis())}
        return self._idx

    def coords(self, x: dict) -> dict:
        return _keyed(x, self._index())


def _keyed(x: dict, index: dict) -> dict:
    return {index[m]: c for m, c in x.items()}


def e1_basis(h: PDAlgebra, n: int) -> dict:
    return E1(h, n).basis_by_bidegree()


def odd_invariants_check(h: PDAlgebra, n: int):
    """Check every invariant with an edge vanishes; return (passes, Lambda^n H words).

    Each word comes with its degree; their histogram is H*(C_n(M); k).
    """
    if h.N % 2 == 0:
        raise ValueError("odd_invariants_check needs an odd-dimensional ring")
    e = E1(h, n)
    inv = e.invariants_basis()
    passes = all(not vecs for (t, r), vecs in inv.items() if r > 0)
    degs = dict(enumerate(h.degrees))
    words = wedge_words(range(h.dim), degs, n)
    return passes, [(w, sum(h.deg(a) for a in w)) for w in words]
