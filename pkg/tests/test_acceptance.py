"""One test per acceptance criterion; each records a PASS/FAIL line shown in the summary.

Arithmetic is exact, so every comparison is an equality (tolerance zero).
"""

import time

from ctconfig import arnold
from ctconfig import cohomology as K
from ctconfig import suites as S
from ctconfig.cli import main
from ctconfig.cnh import CnH, matchings, p_r_count
from ctconfig.e1 import E1
from ctconfig.fields import GF, QQ
from ctconfig.pdalgebra import builtin_ring

START = time.time()
RINGS = ("sphere:2", "cp2", "surface:1")


def failures(checks):
    return [c.line() for c in checks if not c.ok]


def cp2_counts(F):
    out = {}
    for n in range(1, 7):
        c = CnH(builtin_ring("cp2", F=F), n)
        out[n] = K.betti(K.cnh_complex(c))
    return out


def test_1_cp2_betti(acceptance):
    counts = cp2_counts(QQ)
    expected_degrees = {1: [0, 2, 4], 2: [0, 2, 4], 3: [0, 2, 4, 7, 9]}
    ok = True
    for n, b in counts.items():
        ok &= all(v == 1 for v in b.values()) and sum(b.values()) == S.cp2_expected_count(n)
        ok &= sorted(b) == expected_degrees.get(n, [0, 2, 4, 7, 9, 11])
    basis_checks = [c for c in S.cp2_suite(6) if "basis" in c.name]
    ok &= not failures(basis_checks)
    acceptance(1, ok, "CP^2 n=1..6 class counts 3,3,5,6,6,6 in degrees from the listed cocycles "
                      f"{ {n: sorted(b) for n, b in counts.items()} }")
    assert ok


def test_2_cp2_structure_constants(acceptance):
    rel = [c for c in S.cp2_suite(6) if "[t1]" in c.name]
    bad = failures(rel)
    names = {c.name.split(": ", 1)[1].split(" = ")[0] for c in rel}
    acceptance(2, not bad, f"{len(rel)} relations over n=2..6 ({', '.join(sorted(names))}) equal on classes")
    assert not bad, bad


def oracle_betti(F):
    out = {}
    for name in RINGS:
        for n in range(1, 5):
            c = CnH(builtin_ring(name, F=F), n)
            out[(name, n)] = (K.betti(K.cnh_complex(c)), K.betti(K.e1_invariant_complex(c.e1)))
    return out


def test_3_oracle_equivalence(acceptance):
    res = oracle_betti(QQ)
    bad = [k for k, (a, b) in res.items() if a != b]
    acceptance(3, not bad, f"betti(C_n^H) = betti(averaged E1 invariants) for {len(res)} (ring, n<=4) cases")
    assert not bad, bad


def test_4_phi_isomorphism(acceptance):
    checks = []
    for name in RINGS:
        h = builtin_ring(name)
        for n in range(1, 4):
            checks += S.phi_checks(h, n)
        checks += S.phi_checks(h, 4, pairs=200, seed=2024)
    bad = failures(checks)
    acceptance(4, not bad, f"{len(checks)} checks: injective, image = fixed subspace, chain map, multiplicative")
    assert not bad, bad


def test_5_free_configurations(acceptance):
    checks = S.free_suite(6)
    bad = failures(checks)
    acceptance(5, not bad, "top component (n-1)! and prod (1 + k t^(N-1)) for n<=6, N in {2,3}")
    assert not bad, bad


def test_6_tree_invariants(acceptance):
    ok = True
    for n in range(3, 6):
        for odd in (0, 1):
            ok &= arnold.tree_invariants(n, odd, "full")[0] == 0
            ok &= arnold.fixed_rank_by_averaging(n, odd, "full") == 0
            ok &= arnold.tree_invariants(n, odd, "stabilizer_of_1")[0] == 1
        dim, (v,) = arnold.tree_invariants(n, 1, "stabilizer_of_1")
        ok &= set(v) == {arnold.star_tree(n)}
    acceptance(6, ok, "full invariants 0, stabilizer-of-1 invariants 1-dim (= C_n in the commuting-edge model), 3<=n<=5")
    assert ok


def test_7_p_r_count(acceptance):
    bad = [(n, r) for n in range(9) for r in range(n // 2 + 1) if len(matchings(n, r)) != p_r_count(n, r)]
    acceptance(7, not bad, "|P_r| = n!/((n-2r)! 2^r r!) for 0 <= 2r <= n <= 8")
    assert not bad


def test_8_odd_dimension(acceptance):
    checks = S.odd_suite(4)
    s3 = [K.betti(K.e1_invariant_complex(E1(builtin_ring("sphere:3"), n)))
          for n in range(2, 5)]
    ok = not failures(checks) and all(b == {0: 1, 3: 1} for b in s3)
    acceptance(8, ok, "S^3 and S^1xS^2, n<=4: no invariant with an edge; cohomology = histogram of wedge^n H")
    assert ok, failures(checks)


def test_9_property_suites(acceptance):
    checks = S.axioms_suite(4)
    for name in RINGS:
        for n in (5,):
            checks += S.cnh_axiom_checks(builtin_ring(name), n)
    bad = failures(checks)
    acceptance(9, not bad, f"{len(checks)} checks: d1^2, d^2, equivariance, averaging, four squares, "
                           "shuffle, invariants commute with cohomology, Euler characteristic")
    assert not bad, bad


def test_10_field_robustness(acceptance, capsys):
    F = GF(101)
    same1 = cp2_counts(F) == cp2_counts(QQ)
    rel = failures([c for c in S.cp2_suite(6, F) if "[t1]" in c.name or "basis" in c.name])
    same3 = oracle_betti(F) == oracle_betti(QQ)
    rc = main(["betti", "--ring", "builtin:cp2", "--n", "3", "--field", "fp:3"])
    rc2 = main(["betti", "--ring", "builtin:cp2", "--n", "5", "--field", "fp:5"])
    capsys.readouterr()
    ok = same1 and not rel and same3 and rc == 2 and rc2 == 2
    acceptance(10, ok, f"criteria 1-3 identical over F_101; fp:3 at n=3 -> exit {rc}, fp:5 at n=5 -> exit {rc2}")
    assert ok


def test_runtime_budget(acceptance):
    elapsed = time.time() - START
    acceptance(11, elapsed < 300, f"acceptance suite ran in {elapsed:.1f}s (budget 300s)", label="runtime target")
    assert elapsed < 300
