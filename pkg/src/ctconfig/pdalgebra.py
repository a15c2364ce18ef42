"""Finite Poincare-duality algebras H = H*(M; k).

An algebra is stored as a dense multiplication table on a homogeneous basis.
Structure constants are field elements; vectors are dicts ``basis index ->
scalar``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .fields import QQ, Field
from .linalg import SparseMatrix, solve


class RingError(ValueError):
    """A ring file or construction that does not describe a valid algebra."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _add(vec: dict, k, c) -> None:
    t = vec.get(k)
    t = c if t is None else t + c
    if t:
        vec[k] = t
    else:
        vec.pop(k, None)


class PDAlgebra:
    def __init__(self, name: str, dimension: int, labels, degrees, unit: int,
                 fundamental: int, table: dict, field: Field = QQ):
        self.name = name
        self.N = dimension
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.unit = unit
        self.fundamental = fundamental
        self.field = field
        self.table = {}
        for (i, j), vec in table.items():
            clean = {k: field(c) for k, c in vec.items() if field(c)}
            if clean:
                self.table[(i, j)] = clean
        self._dual = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise RingError(f"unknown basis label {label!r}") from None

    def deg(self, i: int) -> int:
        return self.degrees[i]

    def mul_basis(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mul_basis(i, j).items():
                    _add(out, k, a * b * c)
        return out

    def pairing(self, i: int, j: int):
        return self.mul_basis(i, j).get(self.fundamental, self.field.zero)

    def with_field(self, F: Field) -> "PDAlgebra":
        if self.field.characteristic != 0:
            raise RingError("only rational rings can be moved to another field")
        table = {k: {m: F(c) for m, c in v.items()} for k, v in self.table.items()}
        return PDAlgebra(self.name, self.N, self.labels, self.degrees, self.unit,
                         self.fundamental, table, F)

    def __eq__(self, other):
        if not isinstance(other, PDAlgebra):
            return NotImplemented
        return (self.N == other.N and self.labels == other.labels
                and self.degrees == other.degrees and self.unit == other.unit
                and self.fundamental == other.fundamental
                and self.field == other.field and self.table == other.table)

    def __repr__(self):
        return f"PDAlgebra({self.name!r}, N={self.N}, dim={self.dim}, {self.field!r})"

    # -- axioms -----------------------------------------------------------

    def validate(self) -> list:
        """Every violated axiom, as human-readable strings."""
        out = []
        n, d = self.dim, self.degrees
        if not (0 <= self.unit < n and 0 <= self.fundamental < n):
            return ["unit or fundamental class index out of range"]
        for i in range(n):
            if not 0 <= d[i] <= self.N:
                out.append(f"degree: {self.labels[i]} has degree {d[i]} outside 0..{self.N}")
        deg0 = [i for i in range(n) if d[i] == 0]
        if deg0 != [self.unit]:
            out.append("connectivity: degree 0 must be spanned by the unit alone")
        degN = [i for i in range(n) if d[i] == self.N]
        if degN != [self.fundamental]:
            out.append(f"top-class: degree {self.N} must be spanned by the fundamental class alone")
        for (i, j), vec in self.table.items():
            for k in vec:
                if d[k] != d[i] + d[j]:
                    out.append(f"degree: {self.labels[i]}*{self.labels[j]} has a term "
                               f"{self.labels[k]} of the wrong degree")
        for i in range(n):
            if self.mul_basis(self.unit, i) != {i: self.field.one} or \
                    self.mul_basis(i, self.unit) != {i: self.field.one}:
                out.append(f"unit: 1*{self.labels[i]} or {self.labels[i]}*1 is not {self.labels[i]}")
        for i, j in iproduct(range(n), repeat=2):
            lhs = self.mul_basis(i, j)
            sign = -1 if d[i] * d[j] % 2 else 1
            rhs = {k: sign * c for k, c in self.mul_basis(j, i).items()}
            if lhs != rhs:
                out.append(f"graded commutativity: {self.labels[i]}*{self.labels[j]} "
                           f"!= (-1)^|.||.| {self.labels[j]}*{self.labels[i]}")
        for i, j, k in iproduct(range(n), repeat=3):
            lhs = self.mul(self.mul_basis(i, j), {k: self.field.one})
            rhs = self.mul({i: self.field.one}, self.mul_basis(j, k))
            if lhs != rhs:
                out.append(f"associativity: ({self.labels[i]}*{self.labels[j]})*{self.labels[k]}")
        if self._pairing_rank() < n:
            out.append("PD nondegeneracy: the pairing into the fundamental class is singular")
        return out

    def _pairing_matrix(self) -> SparseMatrix:
        ent = {(i, j): self.pairing(i, j) for i in range(self.dim) for j in range(self.dim)}
        return SparseMatrix(self.dim, self.dim, ent, self.field)

    def _pairing_rank(self) -> int:
        from .linalg import rank
        return rank(self._pairing_matrix())

    # -- duality ------------------------------------------------------------

    def dual_basis(self) -> list:
        """Vectors b_i' with coefficient of Omega in b_i * b_j' equal to delta_ij."""
        if self._dual is None:
            P = self._pairing_matrix()
            dual = []
            for j in range(self.dim):
                x = solve(P, {j: self.field.one})
                if x is None:
                    raise RingError("PD nondegeneracy: the pairing into the fundamental "
                                    "class is singular")
                dual.append({k: c for k, c in enumerate(x) if c})
            self._dual = dual
        return self._dual

    def diagonal_class(self) -> "DiagonalClass":
        """Sum over i of (-1)^|b_i'| b_i (x) b_i'."""
        terms: dict = {}
        for i, vec in enumerate(self.dual_basis()):
            for k, c in vec.items():
                sign = -1 if (self.N - self.deg(i)) % 2 else 1
                _add(terms, (i, k), sign * c)
        return DiagonalClass(self, sorted((a, b, c) for (a, b), c in terms.items()))

    def is_odd_dimensional(self) -> bool:
        return self.N % 2 == 1

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        products = []
        for (i, j), vec in sorted(self.table.items()):
            if i == self.unit or j == self.unit:
                continue
            products.append({
                "left": self.labels[i], "right": self.labels[j],
                "value": [{"basis": self.labels[k], "coeff": self.field.to_str(c)}
                          for k, c in sorted(vec.items())],
            })
        return {
            "name": self.name, "dimension": self.N,
            "basis": [{"label": l, "degree": g} for l, g in zip(self.labels, self.degrees)],
            "unit": self.labels[self.unit], "fundamental": self.labels[self.fundamental],
            "products": products,
        }


@dataclass(frozen=True)
class DiagonalClass:
    algebra: PDAlgebra
    terms: list  # (left index, right index, scalar)

    def as_dict(self) -> dict:
        return {(a, b): c for a, b, c in self.terms}

    def degree_ok(self) -> bool:
        h = self.algebra
        return all(h.deg(a) + h.deg(b) == h.N for a, b, _ in self.terms)

    def left_action(self, x: int) -> dict:
        h, out = self.algebra, {}
        for a, b, c in self.terms:
            for k, m in h.mul_basis(x, a).items():
                _add(out, (k, b), c * m)
        return out

    def right_action(self, x: int) -> dict:
        """(1 (x) h) . Delta with the Koszul sign of moving h past the left factor."""
        h, out = self.algebra, {}
        for a, b, c in self.terms:
            sign = -1 if h.deg(x) * h.deg(a) % 2 else 1
            for k, m in h.mul_basis(x, b).items():
                _add(out, (a, k), sign * c * m)
        return out

    def is_balanced(self) -> bool:
        return all(self.left_action(x) == self.right_action(x)
                   for x in range(self.algebra.dim))


# -- built-in rings ----------------------------------------------------------

def point(F: Field = QQ) -> PDAlgebra:
    return PDAlgebra("point", 0, ["1"], [0], 0, 0, {(0, 0): {0: 1}}, F)


def sphere(N: int, F: Field = QQ) -> PDAlgebra:
    if N < 1:
        raise RingError(f"sphere dimension must be >= 1, got {N}")
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return PDAlgebra(f"S^{N}", N, ["1", "w"], [0, N], 0, 1, table, F)


def complex_projective(m: int, F: Field = QQ) -> PDAlgebra:
    if m < 1:
        raise RingError(f"complex projective dimension must be >= 1, got {m}")
    labels = ["1", "x"] + [f"x^{k}" for k in range(2, m + 1)]
    table = {(i, j): {i + j: 1} for i in range(m + 1) for j in range(m + 1) if i + j <= m}
    return PDAlgebra(f"CP^{m}", 2 * m, labels, [2 * k for k in range(m + 1)], 0, m, table, F)


def surface(g: int, F: Field = QQ) -> PDAlgebra:
    """Closed orientable surface of genus g: a_i b_i = Omega = -b_i a_i."""
    if g < 0:
        raise RingError(f"genus must be >= 0, got {g}")
    if g == 0:
        s = sphere(2, F)
        s.name = "surface(0)"
        return s
    labels = ["1"] + [f"a{i}" for i in range(1, g + 1)] + [f"b{i}" for i in range(1, g + 1)] + ["w"]
    top = 2 * g + 1
    table = {(0, k): {k: 1} for k in range(top + 1)}
    table.update({(k, 0): {k: 1} for k in range(top + 1)})
    for i in range(1, g + 1):
        table[(i, g + i)] = {top: 1}
        table[(g + i, i)] = {top: -1}
    return PDAlgebra(f"surface({g})", 2, labels, [0] + [1] * (2 * g) + [2], 0, top, table, F)


def torus(k: int, F: Field = QQ) -> PDAlgebra:
    """Exterior algebra on k degree-1 generators, basis ordered by degree."""
    if k < 1:
        raise RingError(f"torus dimension must be >= 1, got {k}")
    from itertools import combinations
    subsets = [s for r in range(k + 1) for s in combinations(range(1, k + 1), r)]
    index = {s: i for i, s in enumerate(subsets)}
    labels = ["1" if not s else "".join(f"e{t}" for t in s) for s in subsets]
    table = {}
    for s, t in iproduct(subsets, repeat=2):
        if set(s) & set(t):
            continue
        word = list(s) + list(t)
        inv = sum(1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b])
        table[(index[s], index[t])] = {index[tuple(sorted(word))]: -1 if inv % 2 else 1}
    return PDAlgebra(f"T^{k}", k, labels, [len(s) for s in subsets], 0, len(subsets) - 1, table, F)


def product_ring(a: PDAlgebra, b: PDAlgebra) -> PDAlgebra:
    """Graded tensor product: (u (x) v)(w (x) z) = (-1)^|v||w| uw (x) vz."""
    if a.field != b.field:
        raise RingError("cannot multiply rings over different fields")
    pairs = sorted(iproduct(range(a.dim), range(b.dim)),
                   key=lambda p: (a.deg(p[0]) + b.deg(p[1]), p))
    index = {p: i for i, p in enumerate(pairs)}

    def label(i, j):
        if j == b.unit:
            return a.labels[i]
        if i == a.unit:
            return b.labels[j]
        return f"{a.labels[i]}*{b.labels[j]}"

    labels = [label(*p) for p in pairs]
    if len(set(labels)) < len(labels):
        labels = ["1" if p == (a.unit, b.unit) else f"{a.labels[p[0]]}*{b.labels[p[1]]}"
                  for p in pairs]

    table = {}
    for (u, v), (w, z) in iproduct(pairs, repeat=2):
        sign = -1 if b.deg(v) * a.deg(w) % 2 else 1
        vec: dict = {}
        for k1, c1 in a.mul_basis(u, w).items():
            for k2, c2 in b.mul_basis(v, z).items():
                _add(vec, index[(k1, k2)], sign * c1 * c2)
        if vec:
            table[(index[(u, v)], index[(w, z)])] = vec
    return PDAlgebra(f"{a.name}x{b.name}", a.N + b.N, labels,
                     [a.deg(p[0]) + b.deg(p[1]) for p in pairs],
                     index[(a.unit, b.unit)], index[(a.fundamental, b.fundamental)],
                     table, a.field)


def builtin_ring(name: str, params=None, F: Field = QQ) -> PDAlgebra:
    """Built-in rings by name: sphere, complex_projective, surface, torus, point.

    Short forms ``sphere:2``, ``cp:2``, ``cp2``, ``surface:1``, ``torus:3`` and
    products joined by ``*`` (``sphere:1*sphere:2``) are accepted too.
    """
    if params is None:
        if "*" in name:
            parts = name.split("*")
            ring = builtin_ring(parts[0], F=F)
            for part in parts[1:]:
                ring = product_ring(ring, builtin_ring(part, F=F))
            return ring
        m = re.fullmatch(r"([a-z_]+?):?(\d+)?", name.strip().lower())
        if not m:
            raise RingError(f"unknown builtin ring {name!r}")
        name, params = m.group(1), m.group(2)
        params = int(params) if params is not None else None
    key = name.lower()
    makers = {
        "sphere": sphere, "s": sphere,
        "complex_projective": complex_projective, "cp": complex_projective,
        "surface": surface, "torus": torus, "t": torus,
    }
    if key == "point":
        return point(F)
    if key not in makers:
        raise RingError(f"unknown builtin ring {name!r}")
    if params is None:
        raise RingError(f"builtin ring {name!r} needs a parameter")
    if isinstance(params, (tuple, list)):
        params = params[0]
    return makers[key](int(params), F)


# -- ring files ----------------------------------------------------------

_COEFF = re.compile(r"[+-]?\d+(/[+-]?\d+)?")
_TOP_KEYS = {"name", "dimension", "basis", "unit", "fundamental", "products"}


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise RingError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise RingError(f"{where}: unknown keys {sorted(extra)}")
    missing = allowed - set(obj)
    if missing:
        raise RingError(f"{where}: missing keys {sorted(missing)}")


def parse_coefficient(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise RingError(f"coefficient {s!r} must be a string 'p/q' or 'p'")
    s = str(s).strip()
    if not _COEFF.fullmatch(s):
        raise RingError(f"coefficient {s!r} is not an exact rational 'p/q' or 'p'")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise RingError(f"coefficient {s!r} has zero denominator") from None


def ring_from_json(doc: dict, F: Field = QQ, check: bool = True) -> PDAlgebra:
    _check_keys(doc, _TOP_KEYS, "ring")
    basis = doc["basis"]
    if not isinstance(basis, list) or not basis:
        raise RingError("basis: expected a non-empty list")
    labels, degrees = [], []
    for k, entry in enumerate(basis):
        _check_keys(entry, {"label", "degree"}, f"basis[{k}]")
        if entry["label"] in labels:
            raise RingError(f"basis[{k}]: duplicate label {entry['label']!r}")
        if not isinstance(entry["degree"], int):
            raise RingError(f"basis[{k}]: degree must be an integer")
        labels.append(entry["label"])
        degrees.append(entry["degree"])

    def idx(label, where):
        if label not in labels:
            raise RingError(f"{where}: unknown basis label {label!r}")
        return labels.index(label)

    if not isinstance(doc["dimension"], int):
        raise RingError("dimension: must be an integer")
    unit = idx(doc["unit"], "unit")
    fundamental = idx(doc["fundamental"], "fundamental")
    table = {(unit, i): {i: 1} for i in range(len(labels))}
    table.update({(i, unit): {i: 1} for i in range(len(labels))})
    for k, prod in enumerate(doc["products"]):
        where = f"products[{k}]"
        _check_keys(prod, {"left", "right", "value"}, where)
        i, j = idx(prod["left"], where), idx(prod["right"], where)
        vec: dict = {}
        for t, term in enumerate(prod["value"]):
            _check_keys(term, {"basis", "coeff"}, f"{where}.value[{t}]")
            _add(vec, idx(term["basis"], f"{where}.value[{t}]"),
                 F(parse_coefficient(term["coeff"])))
        if (i, j) in table and (unit not in (i, j)):
            raise RingError(f"{where}: product {prod['left']}*{prod['right']} given twice")
        if unit in (i, j) and vec != {(j if i == unit else i): F.one}:
            raise RingError(f"{where}: product with the unit must be the identity")
        table[(i, j)] = vec
    ring = PDAlgebra(doc["name"], doc["dimension"], labels, degrees, unit, fundamental, table, F)
    if check:
        problems = ring.validate()
        if problems:
            raise RingError(problems)
    return ring


def load_ring(path, F: Field = QQ) -> PDAlgebra:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise RingError(f"malformed JSON at line {e.lineno}: {e.msg}") from None
    return ring_from_json(doc, F)


def dump_ring(ring: PDAlgebra, path) -> None:
    with open(path, "w") as fh:
        json.dump(ring.to_json(), fh, indent=2)
        fh.write("\n")
