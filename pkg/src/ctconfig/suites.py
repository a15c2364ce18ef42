"""Verification suites: CP^2 classes and relations, odd dimension, the map into E1, axioms.

Each suite returns a list of ``Check(name, ok, detail)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

from . import arnold
from . import cohomology as K
from .cnh import (CnH, deconcatenate, delta_prime, matchings, nu_bar_prime, nu_bar_tensor,
                  nu_prime, nu_tensor, p_r_count, red_prime, red_prime_matchings, red_tensor,
                  shuffle, symmetrize, wedge_product)
from .e1 import E1, odd_invariants_check
from .fields import QQ, Field
from .linalg import Echelon, axpy
from .pdalgebra import PDAlgebra, builtin_ring
from .words import wedge_words


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _diff(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def _sum(c: CnH, terms) -> dict:
    out: dict = {}
    for xw, yw, k in terms:
        axpy(out, c.F.one, c.monomial(xw, yw, k))
    return out


# -- CP^2 ------------------------------------------------------------------------

def cp2_elements(c: CnH) -> dict:
    """The cocycles of the CP^2 basis list, for the slice n of ``c``.

    x_k stands for the k-th power of the generator, y_k for its shift.
    """
    n, F = c.n, c.F
    x0 = (0,)
    out = {"1": c.unit()}
    if n >= 1:
        inv = F(1) / F(factorial(n - 1))
        out["t1"] = c.monomial(x0 * (n - 1) + (1,), (), inv)
        out["t2"] = c.monomial(x0 * (n - 1) + (2,), (), inv)
    if n >= 3:
        out["z0"] = _sum(c, [(x0 * (n - 3) + (1,), (1,), 1), (x0 * (n - 3) + (2,), (0,), -2),
                             (x0 * (n - 2), (2,), 4)])
        out["z1"] = _sum(c, [(x0 * (n - 3) + (2,), (1,), 1), (x0 * (n - 3) + (1,), (2,), -2)])
    if n >= 4:
        out["z2"] = _sum(c, [(x0 * (n - 4) + (1, 2), (1,), 1), (x0 * (n - 4) + (1, 1), (2,), -2)])
    return out


def cp2_expected_count(n: int) -> int:
    return 3 if n <= 2 else 5 if n == 3 else 6


def cp2_classes(n: int, F: Field = QQ):
    """(CnH, cohomology result, elements, class coordinates of each element)."""
    h = builtin_ring("cp2", F=F)
    c = CnH(h, n)
    res = K.ring_table(K.cnh_complex(c), c.multiply, perturb_seeds=())
    els = cp2_elements(c)
    coords = {name: (c.degree(next(iter(z))), res.coordinates(c.degree(next(iter(z))), z))
              for name, z in els.items()}
    return c, res, els, coords


def _class(c: CnH, res, z: dict):
    if not z:
        return None, {}
    k = c.degree(next(iter(z)))
    return k, res.coordinates(k, z)


def cp2_relations(n: int, F: Field = QQ) -> list:
    """[(relation, lhs class, rhs class, holds, holds at chain level)]."""
    c, res, els, coords = cp2_classes(n, F)
    out = []

    def rel(name, lhs, factor, rhs_name):
        rhs = {m: v * F(factor) for m, v in els[rhs_name].items()} if rhs_name else {}
        kl, cl = _class(c, res, lhs)
        kr, cr = _class(c, res, rhs)
        chain = not _diff(lhs, rhs)
        same = (cl == cr) and (not cl or kl == kr)
        out.append((name, (kl, cl), (kr, cr), same, chain))

    t1 = els.get("t1")
    if n >= 2:
        rel(f"[t1]^2 = (3-2n)[t2] = {3 - 2 * n}[t2]", c.multiply(t1, t1), 3 - 2 * n, "t2")
        rel("[t1]^3 = 0", c.multiply(c.multiply(t1, t1), t1), 0, None)
    if n >= 3:
        rel(f"[t1][z0] = (3-2n)[z1] = {3 - 2 * n}[z1]", c.multiply(t1, els["z0"]), 3 - 2 * n, "z1")
    if n == 3:
        rel("[t1][z1] = 0", c.multiply(t1, els["z1"]), 0, None)
    if n >= 4:
        rel(f"[t1][z1] = (n-3)[z2] = {n - 3}[z2]", c.multiply(t1, els["z1"]), n - 3, "z2")
    return out


def cp2_suite(n_max: int = 6, F: Field = QQ) -> list:
    checks = []
    for n in range(1, n_max + 1):
        c, res, els, coords = cp2_classes(n, F)
        want = cp2_expected_count(n)
        got = sum(res.betti.values())
        one_each = all(v == 1 for v in res.betti.values())
        checks.append(Check(f"cp2 n={n}: {want} classes, one per degree", got == want and one_each,
                            f"betti {res.betti}"))
        ech = Echelon()
        spans = True
        for name, (k, v) in coords.items():
            spans &= bool(v) and ech.add({(k, i): x for i, x in v.items()})
        checks.append(Check(f"cp2 n={n}: listed cocycles form a basis", spans and ech.rank == got,
                            ", ".join(f"{nm}:{k}" for nm, (k, _) in coords.items())))
        for name, lhs, rhs, ok, chain in cp2_relations(n, F):
            checks.append(Check(f"cp2 n={n}: {name}", ok, "chain level" if chain else "modulo coboundaries"))
    return checks


# -- odd dimension ---------------------------------------------------------------------

def wedge_histogram(h: PDAlgebra, n: int) -> dict:
    degs = {b: h.deg(b) for b in range(h.dim)}
    out: dict = {}
    for w in wedge_words(range(h.dim), degs, n):
        k = sum(degs[a] for a in w)
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def odd_suite(n_max: int = 4, rings=("sphere:3", "sphere:1*sphere:2"), F: Field = QQ) -> list:
    checks = []
    for name in rings:
        h = builtin_ring(name, F=F)
        for n in range(1, n_max + 1):
            ok, words = odd_invariants_check(h, n)
            hist = wedge_histogram(h, n)
            b = K.betti(K.e1_invariant_complex(E1(h, n)))
            checks.append(Check(f"{name} n={n}: invariants with edges vanish", ok))
            checks.append(Check(f"{name} n={n}: cohomology = degree histogram of wedge^n H",
                                b == hist, f"{b}"))
    return checks


# -- the comparison map ------------------------------------------------------------------

def phi_checks(h: PDAlgebra, n: int, pairs: int | None = None, seed: int = 0) -> list:
    """Injectivity, image = fixed subspace, chain map, multiplicativity."""
    c = CnH(h, n)
    e = c.e1
    checks = []
    inv = e.invariants_basis()
    groups: dict = {}
    for m in c.basis():
        r = len(m[1])
        groups.setdefault((c.degree(m) - r * e.edge_deg, r), []).append(m)
    inj = image = True
    for bd in set(groups) | set(inv):
        ech = Echelon()
        rk = 0
        for m in groups.get(bd, []):
            v = c.phi({m: c.F.one})
            if ech.add(e.coords(v)):
                rk += 1
            image &= e.average_project(v) == v
        inj &= rk == len(groups.get(bd, []))
        fixed = Echelon()
        for v in inv.get(bd, []):
            fixed.add(e.coords(v))
        image &= rk == fixed.rank and all(fixed.contains(r) for r, _ in ech.pivots.values())
    tag = f"{h.name} n={n}"
    checks.append(Check(f"phi {tag}: injective", inj))
    checks.append(Check(f"phi {tag}: image = fixed subspace", image))
    bad = [m for m in c.basis() if _diff(c.phi(c.d({m: c.F.one})), e.d1(c.phi({m: c.F.one})))]
    checks.append(Check(f"phi {tag}: phi d = d1 phi", not bad, f"{len(bad)} failures"))
    B = c.basis()
    if pairs is None:
        todo = [(a, b) for a in B for b in B]
    else:
        rng = random.Random(seed)
        todo = [(rng.choice(B), rng.choice(B)) for _ in range(pairs)]
    bad = 0
    for a, b in todo:
        lhs = c.phi(c.multiply({a: c.F.one}, {b: c.F.one}))
        rhs = e.multiply(c.phi({a: c.F.one}), c.phi({b: c.F.one}))
        bad += bool(_diff(lhs, rhs))
    checks.append(Check(f"phi {tag}: phi(ab) = phi(a)phi(b)", not bad, f"{len(todo)} pairs, {bad} failures"))
    return checks


def phi_suite(n_max: int = 4, rings=("sphere:2", "cp2", "surface:1"), F: Field = QQ) -> list:
    checks = []
    for name in rings:
        h = builtin_ring(name, F=F)
        for n in range(1, n_max + 1):
            checks += phi_checks(h, n, pairs=None if n <= 3 else 200)
    return checks


def oracle_suite(n_max: int = 4, rings=("sphere:2", "cp2", "surface:1"), F: Field = QQ) -> list:
    checks = []
    for name in rings:
        h = builtin_ring(name, F=F)
        for n in range(1, n_max + 1):
            c = CnH(h, n)
            b1 = K.betti(K.cnh_complex(c))
            b2 = K.betti(K.e1_invariant_complex(c.e1))
            checks.append(Check(f"{name} n={n}: betti(C_n^H) = betti(E1 invariants)", b1 == b2, f"{b1}"))
    return checks


# -- axioms and structure maps -------------------------------------------------------------

def _sym_el(el: dict, degs, F) -> dict:
    out: dict = {}
    for w, c in el.items():
        axpy(out, c, symmetrize(w, degs, F))
    return out


def structure_map_checks(h: PDAlgebra, max_len: int = 4) -> list:
    """The four squares through symmetrization, and the shuffle intertwining."""
    F = h.field
    xd = {b: h.deg(b) for b in range(h.dim)}
    yd = {b: h.deg(b) + h.N - 1 for b in range(h.dim)}
    bad = {"nu": 0, "nu-bar": 0, "coproduct": 0, "red": 0, "shuffle": 0, "red two forms": 0}
    for m in range(1, max_len + 1):
        W = wedge_words(range(h.dim), xd, m)
        Y = wedge_words(range(h.dim), yd, m)
        for u in W:
            su = symmetrize(u, xd, F)
            for v in W:
                bad["nu"] += _sym_el(nu_prime(h, u, v, F), xd, F) != nu_tensor(h, su, symmetrize(v, xd, F))
            for w in Y:
                bad["nu-bar"] += (_sym_el(nu_bar_prime(h, u, w, F), yd, F)
                                  != nu_bar_tensor(h, su, symmetrize(w, yd, F)))
            for p in range(m + 1):
                lhs: dict = {}
                for (l, r), c in delta_prime(u, p, xd, F).items():
                    for tl, cl in symmetrize(l, xd, F).items():
                        for tr, cr in symmetrize(r, xd, F).items():
                            axpy(lhs, c * cl * cr, {(tl, tr): 1})
                bad["coproduct"] += lhs != deconcatenate(su, p)
            if m % 2 == 0:
                bad["red"] += _sym_el(red_prime(h, u, F), xd, F) != red_tensor(h, su)
                if all(not xd[a] % 2 for a in u):
                    bad["red two forms"] += red_prime(h, u, F) != red_prime_matchings(h, u, F)
        for p in range(1, m):
            for a in wedge_words(range(h.dim), xd, p):
                for b in wedge_words(range(h.dim), xd, m - p):
                    lhs = _sym_el(wedge_product({a: 1}, {b: 1}, xd), xd, F)
                    bad["shuffle"] += lhs != shuffle(symmetrize(a, xd, F), symmetrize(b, xd, F), xd)
    return [Check(f"{h.name}: {k} square" if k not in ("shuffle", "red two forms") else f"{h.name}: {k}",
                  v == 0, f"{v} failures") for k, v in bad.items()]


def e1_axiom_checks(h: PDAlgebra, n: int) -> list:
    e = E1(h, n)
    B = e.basis()
    tag = f"{h.name} n={n}"
    checks = [Check(f"E1 {tag}: d1^2 = 0", not any(e.d1(e.d1({m: e.F.one})) for m in B))]
    gens = arnold.group_generators(n) if n > 1 else []
    bad = 0
    for g in gens:
        for m in B:
            x = {m: e.F.one}
            bad += bool(_diff(e.d1(e.sigma_act(g, x)), e.sigma_act(g, e.d1(x))))
    checks.append(Check(f"E1 {tag}: d1 is equivariant", not bad))
    bad = 0
    for m in B:
        a = e.average_project({m: e.F.one})
        bad += bool(_diff(e.average_project(a), a))
    checks.append(Check(f"E1 {tag}: averaging is idempotent", not bad))
    if n <= 3:
        inv = K.invariant_cohomology_dims(e)
        b = K.betti(K.e1_invariant_complex(e))
        checks.append(Check(f"E1 {tag}: H(E1^G) = H(E1)^G dimensions", inv == b, f"{b}"))
    return checks


def cnh_axiom_checks(h: PDAlgebra, n: int) -> list:
    c = CnH(h, n)
    cx = K.cnh_complex(c)
    tag = f"{h.name} n={n}"
    b = K.betti(cx)
    return [Check(f"C_n^H {tag}: d^2 = 0", not cx.d_squared_failures()),
            Check(f"C_n^H {tag}: Euler characteristic", K.euler_from_betti(b) == cx.euler_characteristic())]


def axioms_suite(n_max: int = 4, rings=("sphere:2", "cp2", "surface:1"), F: Field = QQ) -> list:
    checks = []
    for name in rings:
        h = builtin_ring(name, F=F)
        checks += structure_map_checks(h)
        for n in range(1, n_max + 1):
            checks += e1_axiom_checks(h, n)
            checks += cnh_axiom_checks(h, n)
    return checks


def free_suite(n_max: int = 6) -> list:
    checks = []
    for n in range(2, n_max + 1):
        checks.append(Check(f"G_{n}: top component has dimension (n-1)!",
                            len(arnold.top_component(n)) == factorial(n - 1)))
        for N in (2, 3):
            checks.append(Check(f"F(R^{N},{n}): Poincare polynomial factors",
                                arnold.poincare_polynomial(n, N) == arnold.product_formula(n, N)))
    return checks


def matchings_suite(n_max: int = 8) -> list:
    bad = [(n, r) for n in range(n_max + 1) for r in range(n // 2 + 1)
           if len(matchings(n, r)) != p_r_count(n, r)]
    return [Check(f"|P_r| = n!/((n-2r)! 2^r r!) for n <= {n_max}", not bad, f"failures {bad}")]


SUITES = {"cp2": cp2_suite, "odd": odd_suite, "phi": phi_suite, "axioms": axioms_suite}
