"""Command line front end: ``ctconfig <command> ...``.

Exit codes: 0 success, 1 validation or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arnold
from . import cohomology as K
from . import suites
from .cnh import CnH
from .e1 import E1, odd_invariants_check
from .fields import QQ, parse_field
from .guards import check_n
from .pdalgebra import RingError, builtin_ring, load_ring


class UsageError(Exception):
    pass


# -- inputs --------------------------------------------------------------------------

def get_field(spec: str, n: int | None = None):
    try:
        F = parse_field(spec)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if n is not None and not F.supports_order(max(n, 2)):
        raise UsageError(f"field F_{F.characteristic} needs p > n (and p > 2); got n={n}")
    return F


def get_ring(source: str, F=QQ):
    """``builtin:NAME`` or a path to a ring file."""
    if source.startswith("builtin:"):
        try:
            return builtin_ring(source[len("builtin:"):], F=F)
        except RingError as e:
            raise UsageError(str(e)) from None
    return load_ring(source, F)


def get_n(n: int) -> int:
    if n < 0:
        raise UsageError("n must be >= 0")
    try:
        check_n(n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return n


# -- rendering -------------------------------------------------------------------------

def word_str(h, xword, yword) -> str:
    """x-letters by label, y-letters as s(label), repeats as powers."""
    parts = []
    for letters, wrap in ((xword, "{}"), (yword, "s({})")):
        for letter in sorted(set(letters)):
            lab = wrap.format(h.labels[letter])
            k = letters.count(letter)
            if k > 1 and "^" in lab:
                lab = f"({lab})"
            parts.append(lab if k == 1 else f"{lab}^{k}")
    return " ".join(parts) if parts else "1"


def label_str(h, label) -> str:
    if isinstance(label, tuple) and len(label) == 2 and isinstance(label[0], tuple):
        a, b = label
        if b and isinstance(b[0], tuple):  # E1 monomial: (labels, forest)
            lab = " ".join(f"{h.labels[x]}@{v + 1}" for v, x in enumerate(a) if x != h.unit)
            edges = " ".join(f"e{i}{j}" for i, j in b)
            return " ".join(p for p in (lab, edges) if p) or "1"
        if not b or isinstance(b[0], int):
            if all(isinstance(x, int) for x in a):
                return word_str(h, a, b)
    return repr(label)


def emit(doc: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


def betti_doc(h, n, F, b: dict, cx) -> dict:
    return {
        "ring": h.name, "n": n, "field": "q" if F.characteristic == 0 else f"fp:{F.characteristic}",
        "dimension": h.N,
        "model": "invariant complex" if h.N % 2 == 0 else "averaged E1 invariants",
        "betti": [{"degree": k, "dim": v} for k, v in sorted(b.items())],
        "total": sum(b.values()),
        "euler_characteristic": cx.euler_characteristic(),
    }


def build(h, n):
    """(complex, chain-level product): C_n^H for N even, averaged E1 invariants for N odd."""
    if h.N % 2 == 0:
        c = CnH(h, n)
        return K.cnh_complex(c), c.multiply
    e = E1(h, n) if n >= 1 else None
    if e is None:
        raise UsageError("odd-dimensional rings need n >= 1")
    cx = K.e1_invariant_complex(e)
    return cx, K.e1_invariant_product(cx, e)


def describe(h, cx, label) -> str:
    if hasattr(cx, "vectors"):
        k, i = label
        return " + ".join(f"{c}*[{label_str(h, m)}]" for m, c in sorted(cx.vectors[k][i].items(), key=repr))
    return label_str(h, label)


# -- commands ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        h = load_ring(args.ring_file, QQ)
    except RingError as e:
        for p in e.problems:
            print(f"error: {p}", file=sys.stderr)
        return 1
    except OSError as e:
        raise UsageError(str(e)) from None
    D = h.diagonal_class()
    doc = {"ring": h.name, "dimension": h.N, "rank": h.dim, "valid": True,
           "basis": [{"label": l, "degree": g} for l, g in zip(h.labels, h.degrees)],
           "diagonal_class": [{"left": h.labels[a], "right": h.labels[b], "coeff": h.field.to_str(c)}
                              for a, b, c in D.terms],
           "balanced": D.is_balanced()}
    lines = [f"{h.name}: valid PD algebra, dimension {h.N}, total rank {h.dim}",
             "diagonal class: " + " + ".join(f"({h.field.to_str(c)}) {h.labels[a]}(x){h.labels[b]}"
                                           for a, b, c in D.terms)]
    emit(doc, args.json, lines)
    return 0


def cmd_betti(args) -> int:
    n = get_n(args.n)
    F = get_field(args.field, n)
    h = get_ring(args.ring, F)
    cx, _ = build(h, n)
    b = K.betti(cx)
    doc = betti_doc(h, n, F, b, cx)
    lines = [f"{h.name}, n={n}, field {doc['field']}: {doc['total']} classes"]
    lines += [f"  b_{k} = {v}" for k, v in sorted(b.items())]
    emit(doc, args.json, lines)
    return 0 if K.euler_from_betti(b) == cx.euler_characteristic() else 1


def cmd_ring_table(args) -> int:
    n = get_n(args.n)
    F = get_field(args.field, n)
    h = get_ring(args.ring, F)
    cx, mul = build(h, n)
    try:
        res = K.ring_table(cx, mul)
    except K.ComplexError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    names = {cl: f"c{k}_{i}" for cl in res.classes() for k, i in [cl]}
    classes = [{"name": names[(k, i)], "degree": k,
                "representative": [{"term": describe(h, cx, m), "coeff": F.to_str(c)}
                                   for m, c in res.representatives[k][i].items()]}
               for k, i in res.classes()]
    products = []
    for (a, b), val in res.structure_constants.items():
        if val:
            products.append({"left": names[a], "right": names[b],
                             "value": [{"class": names[cl], "coeff": F.to_str(c)} for cl, c in val.items()]})
    doc = {**betti_doc(h, n, F, res.betti, cx), "classes": classes, "products": products}
    lines = [f"{h.name}, n={n}: {len(classes)} classes"]
    for c in classes:
        rep = " + ".join(f"({t['coeff']}) {t['term']}" for t in c["representative"])
        lines.append(f"  {c['name']} (degree {c['degree']}) = {rep}")
    lines.append("nonzero products:")
    for p in products:
        val = " + ".join(f"({v['coeff']}) {v['class']}" for v in p["value"])
        lines.append(f"  {p['left']} * {p['right']} = {val}")
    emit(doc, args.json, lines)
    return 0


def cmd_e1(args) -> int:
    n = get_n(args.n)
    if n < 1:
        raise UsageError("E1 needs n >= 1")
    needs_avg = args.invariants or args.check_phi
    F = get_field(args.field, n if needs_avg else None)
    h = get_ring(args.ring, F)
    e = E1(h, n)
    dims = {bd: len(v) for bd, v in e.basis_by_bidegree().items()}
    doc = {"ring": h.name, "n": n, "dims": [{"t": t, "r": r, "dim": d} for (t, r), d in sorted(dims.items())],
           "total": sum(dims.values())}
    lines = [f"E1 for {h.name}, n={n}: total dimension {doc['total']}"]
    lines += [f"  (t={t}, r={r}): {d}" for (t, r), d in sorted(dims.items())]
    rc = 0
    if args.invariants:
        inv = {bd: len(v) for bd, v in e.invariants_basis().items() if v}
        doc["invariants"] = [{"t": t, "r": r, "dim": d} for (t, r), d in sorted(inv.items())]
        lines.append(f"invariants: total {sum(inv.values())}")
        lines += [f"  (t={t}, r={r}): {d}" for (t, r), d in sorted(inv.items())]
    if args.check_phi:
        if h.N % 2:
            ok, _ = odd_invariants_check(h, n)
            checks = [suites.Check(f"{h.name} n={n}: invariants with edges vanish", ok)]
        else:
            checks = suites.phi_checks(h, n, pairs=None if n <= 3 else 200)
        doc["checks"] = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]
        lines += [c.line() for c in checks]
        rc = 0 if all(c.ok for c in checks) else 1
    emit(doc, args.json, lines)
    return rc


def cmd_free(args) -> int:
    n = get_n(args.n)
    N = args.ambient_dim
    if N < 2 or n < 1:
        raise UsageError("need ambient dimension >= 2 and n >= 1")
    poly = arnold.poincare_polynomial(n, N)
    prod = arnold.product_formula(n, N)
    doc = {"ambient_dim": N, "n": n,
           "poincare": [{"degree": k, "dim": c} for k, c in enumerate(poly) if c],
           "factorizes": poly == prod,
           "top_dimension": len(arnold.top_component(n))}
    lines = [f"F(R^{N},{n}): " + " + ".join(f"{c} t^{k}" for k, c in enumerate(poly) if c),
             f"  equals prod_k (1 + k t^{N - 1}): {poly == prod}",
             f"  top component dimension: {doc['top_dimension']}"]
    if n >= 2:
        F = get_field(args.field, n)
        full, _ = arnold.tree_invariants(n, N % 2, "full", F)
        stab, vecs = arnold.tree_invariants(n, N % 2, "stabilizer_of_1", F)
        doc["tree_invariants"] = {"full": full, "stabilizer_of_1": stab}
        lines.append(f"  invariants in the top component: full group {full}, stabilizer of 1 {stab}")
    emit(doc, args.json, lines)
    return 0 if poly == prod else 1


def cmd_verify(args) -> int:
    if args.n_max is not None:
        get_n(args.n_max)
    F = get_field(args.field, args.n_max)
    fn = suites.SUITES[args.suite]
    checks = fn(n_max=args.n_max, F=F) if args.n_max is not None else fn(F=F)
    doc = {"suite": args.suite, "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks],
           "passed": sum(c.ok for c in checks), "failed": sum(not c.ok for c in checks)}
    lines = [c.line() for c in checks] + [f"{doc['passed']} passed, {doc['failed']} failed"]
    emit(doc, args.json, lines)
    return 0 if not doc["failed"] else 1


# -- parser ----------------------------------------------------------------------------------

def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ctconfig", description="Rational and mod-p cohomology of "
                                "unordered configuration spaces of closed manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        if field:
            sp.add_argument("--field", default="q", help="q or fp:<p> (default q)")
        sp.add_argument("--json", action="store_true", help="JSON output")

    sp = sub.add_parser("validate", help="check a ring file")
    sp.add_argument("ring_file")
    common(sp, field=False)
    sp.set_defaults(func=cmd_validate)

    for name, func, help_ in (("betti", cmd_betti, "Betti numbers of C_n(M)"),
                              ("ring-table", cmd_ring_table, "cohomology classes and products")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--ring", required=True, help="ring file or builtin:NAME")
        sp.add_argument("--n", type=int, required=True)
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("e1", help="the E1 term and its invariants")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--invariants", action="store_true")
    sp.add_argument("--check-phi", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_e1)

    sp = sub.add_parser("free", help="configurations in euclidean space")
    sp.add_argument("--ambient-dim", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_free)

    sp = sub.add_parser("verify", help="run a bundled verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    sp.add_argument("--n-max", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    p = parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except RingError as e:
        for msg in e.problems:
            print(f"error: {msg}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
