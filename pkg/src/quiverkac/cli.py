"""Command-line front end.

Exit status: 0 success, 1 a check failed, 2 usage or schema error,
3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from typing import Optional

from .equipped import equipped_count_polynomial, equipped_count_terms
from .errors import ConsistencyError, DomainError, ResourceError, SchemaError
from .gf import GF, SUPPORTED_Q
from .kac import PolynomialCache, kac_polynomial
from .maxrank import MaxRankSolver, maxrank_polynomial
from .oracle import Budget, count_abs_indec_equipped, count_abs_indec_quiver
from .polynomial import IntPolynomial, pretty
from .quiver import (
    EquippedGraph,
    Quiver,
    canonical_orientation,
    doubled_graph,
    load_json,
    orient,
    orientations,
    quadratic_form,
)
from .roots import RootTag, classify_root

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
ORACLE_QS = (2, 3)
MAX_VARIANTS = 64


def parse_alpha(text: str, vertices) -> dict:
    """``1,2,1`` (declared vertex order) or ``v1=1,v2=2``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        if parts and all("=" in p for p in parts):
            named = {}
            for p in parts:
                k, v = p.split("=", 1)
                named[k.strip()] = int(v)
            return named
        values = [int(p) for p in parts]
    except ValueError:
        raise SchemaError(f"cannot parse --alpha {text!r}") from None
    if len(values) != len(vertices):
        raise SchemaError(f"--alpha has {len(values)} entries but the input has {len(vertices)} vertices")
    return dict(zip(vertices, values))


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None
    return load_json(doc)


def _budget(args) -> Budget:
    return Budget(max_points=args.max_points, max_group=args.max_group, max_end_dim=args.max_end_dim)


def _cache(args) -> Optional[PolynomialCache]:
    path = args.cache or os.environ.get("QUIVERKAC_CACHE")
    return PolynomialCache(path) if path else None


def _poly_doc(p: IntPolynomial) -> dict:
    return {"poly": pretty(p), "coeffs": list(p.coeffs)}


def _as_quiver(obj) -> Quiver:
    return obj if isinstance(obj, Quiver) else canonical_orientation(obj)


def _arrow_subset(text: Optional[str], Q: Quiver) -> list[str]:
    if text is None:
        return []
    ids = [x.strip() for x in text.split(",") if x.strip()]
    for a in ids:
        Q.arrow(a)
    return ids


# -- verbs ---------------------------------------------------------------------


def cmd_roots(args, obj):
    Q = _as_quiver(obj)
    alpha = Q.dimvector(parse_alpha(args.alpha, Q.vertices))
    rc = classify_root(Q, alpha)
    return {"class": rc.tag.value, "q": quadratic_form(Q, alpha), "witness": list(rc.witness)}, EXIT_OK


def _oracle_values(poly, count):
    out = {}
    ok = True
    for q in ORACLE_QS:
        n = count(GF(q))
        out[str(q)] = n
        ok &= n == poly(q)
    return out, ok


def _oracle_check(poly, count):
    vals, ok = _oracle_values(poly, count)
    return ok, vals


def cmd_kac(args, obj):
    Q = _as_quiver(obj)
    alpha = Q.dimvector(parse_alpha(args.alpha, Q.vertices))
    p = kac_polynomial(Q, alpha, _budget(args), _cache(args))
    return _poly_doc(p), EXIT_OK


def cmd_maxrank(args, obj):
    if not isinstance(obj, Quiver):
        raise SchemaError("maxrank needs a quiver input (with 'arrows')")
    budget = _budget(args)
    alpha = obj.dimvector(parse_alpha(args.alpha, obj.vertices))
    M = _arrow_subset(args.max, obj)
    p = maxrank_polynomial(obj, M, alpha, budget, _cache(args), verify=args.verify_oracle)
    doc = _poly_doc(p)
    status = EXIT_OK
    if args.verify_oracle:
        doc["oracle"], ok = _oracle_values(
            p, lambda F: count_abs_indec_quiver(obj, alpha, M, F, budget)
        )
        doc["verified"] = ok
        status = EXIT_OK if ok else EXIT_FAIL
    return doc, status


def cmd_equipped(args, obj):
    if not isinstance(obj, EquippedGraph):
        raise SchemaError("equipped needs an equipped graph input (with 'edges')")
    budget = _budget(args)
    cache = _cache(args)
    alpha = obj.quiver.dimvector(parse_alpha(args.alpha, obj.vertices))
    solver = MaxRankSolver(budget, cache)
    doc = {}
    if args.show_terms:
        terms = equipped_count_terms(obj, alpha, budget, cache, solver)
        doc["terms"] = [{"alpha": t, **_poly_doc(p)} for t, p in terms]
    p = equipped_count_polynomial(obj, alpha, budget, cache, verify=args.verify_oracle, solver=solver)
    doc.update(_poly_doc(p))
    status = EXIT_OK
    if args.verify_oracle:
        doc["oracle"], ok = _oracle_values(
            p, lambda F: count_abs_indec_equipped(obj, alpha, F, budget)
        )
        doc["verified"] = ok
        status = EXIT_OK if ok else EXIT_FAIL
    return doc, status


def cmd_oracle_count(args, obj):
    budget = _budget(args)
    if args.q not in SUPPORTED_Q:
        raise SchemaError(f"--q {args.q} is not a supported field size {SUPPORTED_Q}")
    F = GF(args.q)
    if isinstance(obj, EquippedGraph):
        if args.max:
            raise SchemaError("--max applies to quiver inputs only")
        alpha = obj.quiver.dimvector(parse_alpha(args.alpha, obj.vertices))
        n = count_abs_indec_equipped(obj, alpha, F, budget)
    else:
        alpha = obj.dimvector(parse_alpha(args.alpha, obj.vertices))
        n = count_abs_indec_quiver(obj, alpha, _arrow_subset(args.max, obj), F, budget)
    return {"q": args.q, "count": n}, EXIT_OK


class _Battery:
    def __init__(self):
        self.checks = []

    def run(self, name, fn):
        try:
            ok, detail = fn()
            status = "pass" if ok else "fail"
        except ResourceError as exc:
            status, detail = "skipped", str(exc)
        except ConsistencyError as exc:
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        self.checks.append({"name": name, "status": status, "detail": detail})

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)


def _limited(it):
    return list(itertools.islice(it, MAX_VARIANTS))


def cmd_verify(args, obj):
    budget = _budget(args)
    cache = _cache(args)
    solver = MaxRankSolver(budget, cache)
    bat = _Battery()
    Q = _as_quiver(obj)
    alpha = Q.dimvector(parse_alpha(args.alpha, Q.vertices))
    rc = classify_root(Q, alpha)
    qf = quadratic_form(Q, alpha)

    def root_vs_form():
        ok = {RootTag.REAL: qf == 1, RootTag.IMAGINARY: qf <= 0}.get(rc.tag, True)
        return ok, f"{rc.tag.value}, q={qf}"

    bat.run("root class vs quadratic form", root_vs_form)
    kac = {}

    def kac_check():
        kac["p"] = kac_polynomial(Q, alpha, budget, cache)
        nonzero = not kac["p"].is_zero()
        return nonzero == rc.is_root, f"A = {kac['p']}"

    bat.run("kac polynomial (monic, degree 1-q, nonzero iff root)", kac_check)

    def kac_oracle():
        return _oracle_check(kac["p"], lambda F: count_abs_indec_quiver(Q, alpha, (), F, budget))

    if "p" in kac:
        bat.run("kac polynomial vs oracle", kac_oracle)

        def kac_orient():
            polys = {str(kac_polynomial(Qo, alpha, budget, cache)) for Qo in _limited(orientations(Q))}
            return polys == {str(kac["p"])}, sorted(polys)

        bat.run("kac polynomial orientation independence", kac_orient)

    if isinstance(obj, Quiver):
        M = _arrow_subset(args.max, obj) if args.max else list(obj.arrow_ids)
        mr = {}

        def mr_check():
            mr["p"] = maxrank_polynomial(obj, M, alpha, budget, cache, verify=True, solver=solver)
            return True, f"A^M = {mr['p']} (M={M}); choice and orientation invariant"

        bat.run("maxrank recursion", mr_check)
        if "p" in mr:
            bat.run(
                "maxrank vs oracle",
                lambda: _oracle_check(mr["p"], lambda F: count_abs_indec_quiver(obj, alpha, M, F, budget)),
            )
        _, EG0 = orient(doubled_graph(obj), obj.arrow_ids)
        equippings = _limited(EG0.equippings())
    else:
        equippings = _limited(obj.equippings())

        def eq_oracle():
            p = equipped_count_polynomial(obj, alpha, budget, cache, solver=solver)
            return _oracle_check(p, lambda F: count_abs_indec_equipped(obj, alpha, F, budget))

        bat.run("equipped polynomial vs oracle", eq_oracle)

    if "p" in kac:

        def all_equippings():
            bad = []
            for EG in equippings:
                p = equipped_count_polynomial(EG, alpha, budget, cache, solver=solver)
                if p != kac["p"]:
                    bad.append({"phi": EG.phi, "poly": str(p)})
            return not bad, bad or f"{len(equippings)} equippings all give {kac['p']}"

        bat.run("equipped count equals kac polynomial for every equipping", all_equippings)

    doc = {"input": "quiver" if isinstance(obj, Quiver) else "equipped", "alpha": alpha, "checks": bat.checks}
    doc["passed"] = bat.passed
    return doc, EXIT_OK if bat.passed else EXIT_FAIL


# -- argument parsing ------------------------------------------------------------


def _common(p: argparse.ArgumentParser, alpha=True):
    p.add_argument("input", help="quiver or equipped-graph JSON file")
    if alpha:
        p.add_argument("--alpha", required=True, help="dimension vector: 1,2,1 or v1=1,v2=2")
    p.add_argument("--output", choices=("json", "text"), default="json")
    p.add_argument("--cache", help="polynomial cache file (default: $QUIVERKAC_CACHE)")
    p.add_argument("--max-points", type=int, default=10**6)
    p.add_argument("--max-group", type=int, default=10**6)
    p.add_argument("--max-end-dim", type=int, default=8)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverkac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("roots", help="classify a dimension vector as real/imaginary/non-root")
    _common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("kac", help="Kac polynomial A_{Q,alpha}(q)")
    _common(p)
    p.set_defaults(func=cmd_kac)

    p = sub.add_parser("maxrank", help="count polynomial with maximal-rank arrows")
    _common(p)
    p.add_argument("--max", help="comma-separated arrow ids required to have maximal rank")
    p.add_argument("--verify-oracle", action="store_true")
    p.set_defaults(func=cmd_maxrank)

    p = sub.add_parser("equipped", help="count polynomial for an equipped graph")
    _common(p)
    p.add_argument("--verify-oracle", action="store_true")
    p.add_argument("--show-terms", action="store_true", help="list each Delta summand")
    p.set_defaults(func=cmd_equipped)

    p = sub.add_parser("oracle-count", help="brute-force count over a single field F_q")
    _common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max", help="arrow ids required to have maximal rank (quivers)")
    p.set_defaults(func=cmd_oracle_count)

    p = sub.add_parser("oracle", help="brute-force oracle (subcommand: count)")
    osub = p.add_subparsers(dest="oracle_verb", required=True)
    pc = osub.add_parser("count", help="same as oracle-count")
    _common(pc)
    pc.add_argument("--q", type=int, required=True)
    pc.add_argument("--max")
    pc.set_defaults(func=cmd_oracle_count)

    p = sub.add_parser("verify", help="run the cross-check battery")
    _common(p)
    p.add_argument("--max", help="arrow subset for the maximal-rank checks (default: all arrows)")
    p.set_defaults(func=cmd_verify)
    return parser


def _render_text(doc) -> str:
    if "checks" in doc:
        lines = [f"{c['status'].upper():7} {c['name']}" for c in doc["checks"]]
        lines.append("ALL PASS" if doc["passed"] else "FAILURES")
        return "\n".join(lines)
    if "terms" in doc:
        lines = [f"{json.dumps(t['alpha'])}: {t['poly']}" for t in doc["terms"]]
        return "\n".join(lines + [doc["poly"]])
    if "poly" in doc:
        return doc["poly"]
    if "class" in doc:
        return f"{doc['class']} (q={doc['q']})"
    return str(doc.get("count", doc))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        obj = _load(args.input)
        doc, status = args.func(args, obj)
    except (SchemaError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.output == "json":
        print(json.dumps(doc))
    else:
        print(_render_text(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
