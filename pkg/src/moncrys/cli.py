"""Command-line front end.

Subcommands: fundamental, product, weights, highest-weights, check-regular,
enumerate-regular, classify, flag-crystal, verify, export.  Output is
deterministic byte-for-byte for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cartan import build_diagram, diagram_names
from .crystal import DEFAULT_CAP, Crystal, classify_params, fundamental, product_crystal
from .errors import CapExceeded, MonomialCrystalError
from .hw import enumerate_highest_weights, finite_dim_certificate, hw_problem
from .monomial import (
    Monomial,
    decompose_S,
    freeze_msets,
    is_highest,
    mset,
    param_set,
    t_multisets,
    weight,
    y_param,
    z_of_msets,
)
from .regularity import find_violation
from .typea import all_flags, flag_to_monomial, render_grid, verify_flag_isomorphism

SCHEMA_VERSION = 1


def parse_msets(text: str) -> dict[int, list[int]]:
    """Parse "1:0,2;2:1" into {1: [0, 2], 2: [1]}."""
    out: dict[int, list[int]] = {}
    if not text.strip():
        return out
    for group in text.split(";"):
        group = group.strip()
        if not group:
            continue
        node_text, _, values_text = group.partition(":")
        node = int(node_text)
        values = [int(v) for v in values_text.split(",") if v.strip() != ""]
        out.setdefault(node, []).extend(values)
    return out


def parse_vector(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def emit(data, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(data)


def msets_to_json(m) -> dict:
    items = m.items() if isinstance(m, dict) else m
    return {str(i): list(values) for i, values in sorted(items) if values}


def _crystal_report(crystal: Crystal, fmt: str) -> None:
    if fmt == "dot":
        print(crystal.to_dot())
    elif fmt == "json":
        emit(crystal.to_json(), "json")
    else:
        print(f"# {len(crystal)} elements, {len(crystal.edges)} edges")
        for idx, p in enumerate(crystal.elements):
            print(f"{idx}\t{p}\twt={','.join(map(str, weight(crystal.diagram, p)))}")
        for a, i, b in crystal.edges:
            print(f"{a} -f_{i}-> {b}")


def cmd_fundamental(args) -> int:
    d = build_diagram(args.type, args.parity_flip)
    crystal = fundamental(d, args.node, args.c)
    _crystal_report(crystal, args.format)
    return 0


def cmd_product(args) -> int:
    d = build_diagram(args.type, args.parity_flip)
    r = param_set(d, parse_msets(args.R))
    crystal = product_crystal(d, r, args.cap)
    _crystal_report(crystal, args.format)
    return 0


def cmd_weights(args) -> int:
    d = build_diagram(args.type, args.parity_flip)
    r = param_set(d, parse_msets(args.R))
    crystal = product_crystal(d, r, args.cap)
    if args.mu:
        mu = parse_vector(args.mu)
        elements = crystal.weight_space(mu)
        emit(
            {
                "schema_version": SCHEMA_VERSION,
                "mu": list(mu),
                "count": len(elements),
                "elements": [
                    {
                        "monomial": p.to_json(),
                        "text": str(p),
                        "S": msets_to_json(decompose_S(d, r, p)),
                    }
                    for p in elements
                ],
            },
            "json",
        )
    else:
        emit(
            {
                "schema_version": SCHEMA_VERSION,
                "size": len(crystal),
                "weights": {
                    ",".join(map(str, w)): c for w, c in sorted(crystal.weights().items())
                },
            },
            "json",
        )
    return 0


def cmd_highest_weights(args) -> int:
    d = build_diagram(args.type, args.parity_flip)
    r = param_set(d, parse_msets(args.R))
    mu = parse_vector(args.mu)
    prob = hw_problem(d, r, mu)
    rows = []
    for frozen in sorted(enumerate_highest_weights(prob)):
        s = dict(frozen)
        p = y_param(r) * z_of_msets(d, s).inverse()
        cert = finite_dim_certificate(d, r, s)
        row = {
            "S": msets_to_json(s),
            "monomial": p.to_json(),
            "text": str(p),
            "highest_weight": is_highest(d, p),
            "finite_dim": cert is not None,
        }
        if cert is not None:
            row["PQ"] = {
                str(i): {
                    "P": str(pq[0]),
                    "P_doubled_roots": list(pq[0].roots),
                    "Q": str(pq[1]),
                    "Q_doubled_roots": list(pq[1].roots),
                }
                for i, pq in sorted(cert.items())
            }
        rows.append(row)
    emit(
        {
            "schema_version": SCHEMA_VERSION,
            "mu": list(mu),
            "mu_dominant": prob.mu_dominant,
            "count": len(rows),
            "results": rows,
        },
        "json",
    )
    return 0


def cmd_check_regular(args) -> int:
    if args.spec:
        with open(args.spec, encoding="utf-8") as handle:
            data = json.load(handle)
        d = build_diagram(data["type"], data.get("parity_flip", args.parity_flip))
        r = param_set(d, {int(k): v for k, v in data["R"].items()})
        s = {int(k): mset(v) for k, v in data.get("S", {}).items() if v}
    else:
        if not args.type or args.R is None or args.S is None:
            raise ValueError("check-regular needs either --spec or --type/--R/--S")
        d = build_diagram(args.type, args.parity_flip)
        r = param_set(d, parse_msets(args.R))
        s = {i: mset(v) for i, v in parse_msets(args.S).items() if v}
    violation = find_violation(d, r, s)
    report = {
        "schema_version": SCHEMA_VERSION,
        "type": str(d),
        "R": msets_to_json(r.items()),
        "S": msets_to_json(s),
        "regular": violation is None,
    }
    if violation is not None:
        i, n, q, value = violation
        report["witness"] = {
            "node": i,
            "n": n,
            "q": q.to_json(),
            "q_text": str(q),
            "value": value,
        }
    emit(report, "json")
    return 0


def cmd_enumerate_regular(args) -> int:
    from .regularity import enumerate_by_regularity

    d = build_diagram(args.type, args.parity_flip)
    r = param_set(d, parse_msets(args.R))
    mu = parse_vector(args.mu)
    results = sorted(enumerate_by_regularity(d, r, mu))
    emit(
        {
            "schema_version": SCHEMA_VERSION,
            "mu": list(mu),
            "count": len(results),
            "results": [msets_to_json(dict(s)) for s in results],
        },
        "json",
    )
    return 0


def cmd_classify(args) -> int:
    d = build_diagram(args.type, args.parity_flip)
    r = param_set(d, parse_msets(args.R))
    c = classify_params(d, r, args.cap)
    emit(
        {
            "schema_version": SCHEMA_VERSION,
            "well_spaced": c.well_spaced,
            "generic": c.generic,
            "maximally_singular": c.maximally_singular,
            "gap_bound": c.gap_bound,
            "crystal_size": c.crystal_size,
            "tensor_size": c.tensor_size,
            "irreducible_size": c.irreducible_size,
        },
        "json",
    )
    return 0


def cmd_flag_crystal(args) -> int:
    r = mset(int(v) for v in args.R.split(","))
    n = args.n
    d = build_diagram(f"A{n - 1}", args.parity_flip)
    ok = verify_flag_isomorphism(n, r)
    rows = []
    rset = param_set(d, {1: r})
    for f in all_flags(n, r):
        p = flag_to_monomial(f)
        rows.append({"flag": str(f), "monomial": p.to_json(), "text": str(p)})
    print(json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "R": list(r),
            "isomorphism_verified": ok,
            "count": len(rows),
            "table": rows,
        },
        indent=2,
        sort_keys=True,
    ))
    if args.ascii:
        for f in all_flags(n, r):
            p = flag_to_monomial(f)
            s = decompose_S(d, rset, p)
            print()
            print(f"flag {f}")
            print(render_grid(d, rset, s))
    return 0


def cmd_export(args) -> int:
    d = build_diagram(args.type, args.parity_flip)
    r = param_set(d, parse_msets(args.R))
    crystal = product_crystal(d, r, args.cap)
    text = crystal.to_dot() if args.format == "dot" else json.dumps(
        crystal.to_json(), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_checks

    print(f"seed: {args.seed}")
    failures = 0
    for result in run_checks(seed=args.seed, only=args.only):
        status = "PASS" if result.ok else "FAIL"
        print(f"[{status}] {result.name}: {result.detail} ({result.seconds:.2f}s)")
        failures += 0 if result.ok else 1
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moncrys",
        description="Monomial crystal combinatorics: product crystals, "
        "regularity, and highest-weight enumeration.",
    )
    parser.add_argument("--parity-flip", action="store_true",
                        help="flip the 2-coloring of the diagram (shifts all k by 1)")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="element cap guarding crystal generation")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("fundamental", cmd_fundamental, help="generate B(varpi_i, c)")
    p.add_argument("--type", required=True, choices=diagram_names())
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--format", choices=["json", "text", "dot"], default="text")

    p = add("product", cmd_product, help="generate the product crystal B(lambda, R)")
    p.add_argument("--type", required=True, choices=diagram_names())
    p.add_argument("--R", required=True, help='parameters, e.g. "1:0,2;2:1"')
    p.add_argument("--format", choices=["json", "text", "dot"], default="text")

    p = add("weights", cmd_weights, help="weight multiplicities or one weight space")
    p.add_argument("--type", required=True, choices=diagram_names())
    p.add_argument("--R", required=True)
    p.add_argument("--mu", help="comma-separated weight vector")

    p = add("highest-weights", cmd_highest_weights,
            help="enumerate S-tuples at weight mu by multiset inclusion")
    p.add_argument("--type", required=True, choices=diagram_names())
    p.add_argument("--R", required=True)
    p.add_argument("--mu", required=True)

    p = add("check-regular", cmd_check_regular, help="regularity verdict and witness")
    p.add_argument("--type", choices=diagram_names())
    p.add_argument("--R")
    p.add_argument("--S")
    p.add_argument("--spec", help="JSON file with type/parity_flip/R/S")

    p = add("enumerate-regular", cmd_enumerate_regular,
            help="enumerate S at weight mu by the regularity test")
    p.add_argument("--type", required=True, choices=diagram_names())
    p.add_argument("--R", required=True)
    p.add_argument("--mu", required=True)

    p = add("classify", cmd_classify,
            help="well-spaced / generic / maximally singular classification")
    p.add_argument("--type", required=True, choices=diagram_names())
    p.add_argument("--R", required=True)

    p = add("flag-crystal", cmd_flag_crystal,
            help="flag crystal of a multiset and its monomial table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--R", required=True, help='comma-separated values, e.g. "0,2"')
    p.add_argument("--ascii", action="store_true", help="render grid diagrams")

    p = add("verify", cmd_verify, help="run the full cross-check suite")
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--only", help="run only the named check")

    p = add("export", cmd_export, help="export a product crystal to JSON or DOT")
    p.add_argument("--type", required=True, choices=diagram_names())
    p.add_argument("--R", required=True)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MonomialCrystalError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
