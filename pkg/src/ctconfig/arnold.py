"""The algebra generated by the e_ij modulo the Arnold relations.

A monomial is a tuple of edges ``(i, j)`` with ``i < j``, read as the
ordered product of the e_ij.  Canonical monomials have strictly increasing
targets, so they are forests in which every vertex is the target of at most
one edge.  Only the parity of the ambient dimension N matters: for N even
the generators anticommute and e_ji = e_ij; for N odd they commute,
e_ji = -e_ij and e_ij^2 = 0.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

from .fields import QQ, Field
from .guards import check_n
from .linalg import Echelon, SparseMatrix, rank_kernel


def perm_sign(seq) -> int:
    """Sign of the permutation sorting seq (entries distinct)."""
    seq = list(seq)
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def has_cycle(edges) -> bool:
    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(j)
        if a == b:
            return True
        parent[a] = b
    return False


def is_canonical(edges) -> bool:
    return (all(i < j for i, j in edges)
            and all(edges[k][1] < edges[k + 1][1] for k in range(len(edges) - 1)))


def straighten(n: int, N_parity: int, raw_edges) -> dict:
    """Rewrite a product of e_ij as a combination of canonical monomials.

    Coefficients are integers.
    """
    sign = 1
    oriented = []
    for i, j in raw_edges:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValueError(f"bad edge ({i},{j}) for n={n}")
        if i > j:
            i, j = j, i
            if N_parity % 2:
                sign = -sign
        oriented.append((i, j))
    res = _straighten(tuple(oriented), N_parity % 2 == 0)
    if sign == 1:
        return dict(res)
    return {m: -c for m, c in res.items()}


@lru_cache(maxsize=None)
def _straighten(edges: tuple, odd: bool):
    if len(set(edges)) < len(edges) or has_cycle(edges):
        return {}
    order = sorted(range(len(edges)), key=lambda k: (edges[k][1], edges[k][0]))
    sign = perm_sign(order) if odd else 1
    srt = tuple(edges[k] for k in order)
    # largest target with two incoming edges
    p = None
    for k in range(len(srt) - 2, -1, -1):
        if srt[k][1] == srt[k + 1][1]:
            p = k
            break
    if p is None:
        return {srt: sign}
    (i, k), (j, _) = srt[p], srt[p + 1]
    # e_ik e_jk = e_ij e_jk - e_ij e_ik   (i < j < k)
    out: dict = {}
    for repl, c in (((i, j), (j, k)), 1), (((i, j), (i, k)), -1):
        for m, v in _straighten(srt[:p] + repl + srt[p + 2:], odd).items():
            t = out.get(m, 0) + sign * c * v
            if t:
                out[m] = t
            else:
                out.pop(m, None)
    return out


def os_basis(n: int, r: int) -> list:
    """Canonical monomials with r edges: increasing targets, sources below."""
    out = []
    for targets in combinations(range(2, n + 1), r):
        for sources in product(*[range(1, j) for j in targets]):
            out.append(tuple(zip(sources, targets)))
    return out


def poincare_polynomial(n: int, N: int) -> list:
    """Coefficients (index = degree) of the Poincare polynomial of F(R^N, n)."""
    if n < 1 or N < 2:
        raise ValueError("need n >= 1 and N >= 2")
    coeffs = [0] * ((n - 1) * (N - 1) + 1)
    for r in range(n):
        coeffs[r * (N - 1)] = len(os_basis(n, r))
    return coeffs


def poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def product_formula(n: int, N: int) -> list:
    """prod_{k=1}^{n-1} (1 + k t^(N-1)), expanded."""
    out = [1]
    for k in range(1, n):
        f = [0] * N
        f[0], f[N - 1] = 1, k
        out = poly_mul(out, f)
    return out


def act(perm, monomial, N_parity: int) -> dict:
    """sigma(e_ij) = e_{sigma(i) sigma(j)}; perm[i-1] is sigma(i)."""
    n = len(perm)
    return straighten(n, N_parity, [(perm[i - 1], perm[j - 1]) for i, j in monomial])


def compose(s, t) -> tuple:
    """(s t)(i) = s(t(i))."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def transposition(n: int, a: int, b: int) -> tuple:
    p = list(range(1, n + 1))
    p[a - 1], p[b - 1] = b, a
    return tuple(p)


def cycle(n: int, points) -> tuple:
    p = list(range(1, n + 1))
    for k, a in enumerate(points):
        p[a - 1] = points[(k + 1) % len(points)]
    return tuple(p)


def group_generators(n: int, subgroup: str = "full") -> list:
    if subgroup == "full":
        moved = list(range(1, n + 1))
    elif subgroup == "stabilizer_of_1":
        moved = list(range(2, n + 1))
    else:
        raise ValueError(f"unknown subgroup {subgroup!r}")
    if len(moved) < 2:
        return []
    gens = [transposition(n, moved[0], moved[1])]
    if len(moved) > 2:
        gens.append(cycle(n, moved))
    return gens


def group_elements(n: int, subgroup: str = "full"):
    check_n(n)
    if subgroup == "full":
        yield from permutations(range(1, n + 1))
    elif subgroup == "stabilizer_of_1":
        for p in permutations(range(2, n + 1)):
            yield (1,) + p
    else:
        raise ValueError(f"unknown subgroup {subgroup!r}")


def action_matrix(perm, basis: list, N_parity: int, F: Field = QQ) -> SparseMatrix:
    index = {m: k for k, m in enumerate(basis)}
    ent = {}
    for col, m in enumerate(basis):
        for img, c in act(perm, m, N_parity).items():
            ent[(index[img], col)] = c
    return SparseMatrix(len(basis), len(basis), ent, F)


def top_component(n: int) -> list:
    """Canonical spanning trees: the basis of G_n."""
    return os_basis(n, n - 1)


def tree_invariants(n: int, N_parity: int, subgroup: str = "full", F: Field = QQ):
    """Fixed subspace of the top component G_n under the chosen group.

    Returns ``(dim, basis)`` with each basis vector a dict monomial -> scalar.
    The fixed subspace is the common kernel of g - 1 over group generators.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    basis = top_component(n)
    index = {m: k for k, m in enumerate(basis)}
    ent = {}
    row0 = 0
    for g in group_generators(n, subgroup):
        for col, m in enumerate(basis):
            for img, c in act(g, m, N_parity).items():
                key = (row0 + index[img], col)
                ent[key] = ent.get(key, 0) + c
            key = (row0 + col, col)
            ent[key] = ent.get(key, 0) - 1
        row0 += len(basis)
    stacked = SparseMatrix(max(row0, 1), len(basis), ent, F)
    _, ker = rank_kernel(stacked)
    vecs = [{basis[k]: c for k, c in enumerate(v) if c} for v in ker]
    return len(vecs), vecs


def averaging_matrix(n: int, N_parity: int, basis: list, subgroup: str = "full",
                     F: Field = QQ) -> SparseMatrix:
    """Reynolds operator (1/|G|) sum_g g on span(basis), by enumeration."""
    index = {m: k for k, m in enumerate(basis)}
    acc: dict = {}
    count = 0
    for g in group_elements(n, subgroup):
        count += 1
        for col, m in enumerate(basis):
            for img, c in act(g, m, N_parity).items():
                key = (index[img], col)
                acc[key] = acc.get(key, 0) + c
    F.require_order(n) if subgroup == "full" else None
    inv = F(1) / F(count)
    return SparseMatrix(len(basis), len(basis), {k: F(v) * inv for k, v in acc.items()}, F)


def fixed_rank_by_averaging(n: int, N_parity: int, subgroup: str = "full", F: Field = QQ) -> int:
    A = averaging_matrix(n, N_parity, top_component(n), subgroup, F)
    ech = Echelon()
    for col in A.column_dicts():
        ech.add(col)
    return ech.rank


def star_tree(n: int) -> tuple:
    """C_n: the edges (1,2), ..., (1,n)."""
    return tuple((1, j) for j in range(2, n + 1))
