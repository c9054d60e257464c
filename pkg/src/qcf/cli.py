"""Command-line front end.

Exit codes: 0 success, 1 a reproduced table has a mismatching row, 2 bad
input (schema or arguments), 3 a mathematical precondition failed, 4 an
exhaustive search exceeded the budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import matprod, quantum, recipes, tables
from .codes import LinearCode, default_budget
from .errors import (
    ArgumentError,
    BudgetExceededError,
    ConfigurationError,
    FieldMismatchError,
    PreconditionError,
    UndefinedDistanceError,
)
from .galois import field_new

log = logging.getLogger("qcf")

EXIT_MISMATCH, EXIT_SCHEMA, EXIT_PRECONDITION, EXIT_BUDGET = 1, 2, 3, 4


def _field_of_size(q):
    for p in (2, 3, 5, 7, 11, 13):
        r, x = 0, 1
        while x < q:
            x *= p
            r += 1
        if x == q:
            return field_new(p, r)
    raise ArgumentError(f"{q} is not a supported prime power")


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _table_text(header, rows, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return "\n".join(lines)


def _record_rows(rec):
    """Rows in table column order (n, k, d, field) for code and quantum records."""
    recs = rec.values() if "type" not in rec else [rec]
    rows = []
    for r in recs:
        if r.get("type") == "gv_check":
            p = r["params"]
            rows.append((p["n"], p["k"], p["d_bound"], f"GF({p['q']})", "yes" if r["exceeds_gv"] else "no"))
        elif r.get("type") == "quantum":
            rows.append((r["n"], r["k"], r["d_bound"], f"GF({r['q']})", ""))
        else:
            rows.append((r["n"], r["k"], r["d"], f"GF({r['q']})", ""))
    return rows


def _emit(obj, fmt, rows=None, header=None):
    if fmt == "json" or rows is None:
        print(_dump(obj))
    else:
        print(_table_text(header, rows, fmt))


# -- subcommands ------------------------------------------------------------
def cmd_construct(args):
    recipe = recipes.load(args.recipe)
    if args.output:
        recipe["output"] = args.output
        recipe = recipes.normalize(recipe)
    rec = recipes.run_recipe(recipe, args.budget, args.close_orbits, args.jobs)
    _emit(rec, args.format, _record_rows(rec), ("n", "k", "d", "field", "exceeds_gv"))
    return 0


def cmd_quantum(args):
    recipe = recipes.load(args.recipe)
    ev = recipes.Evaluator(recipe, args.budget, args.close_orbits, args.jobs)
    out = args.output or recipe["output"]
    if not isinstance(out, str):
        raise recipes.RecipeError("quantum expects a single output node")
    Q = ev[out]
    if not isinstance(Q, quantum.QuantumParams):
        raise recipes.RecipeError(f"node {out!r} is not a quantum construction")
    rec = Q.to_json()
    rec["exceeds_gv"] = quantum.exceeds_gv(Q)
    row = Q.csv_row()
    _emit(rec, args.format, [row], quantum.QuantumParams.CSV_HEADER)
    return 0


def cmd_reproduce(args):
    ids = tables.table_ids() if args.all else [args.table]
    if not args.all and args.table is None:
        raise ArgumentError("give --table N or --all")
    rep = tables.Reproducer(args.budget, args.close_orbits, args.jobs)
    reports = [rep.reproduce(t) for t in ids]
    if args.format == "json":
        print(_dump(reports if args.all else reports[0]))
    else:
        chunks = []
        for r in reports:
            rows = [tuple(row[c] for c in tables.COLUMNS) for row in tables.report_rows(r)]
            title = f"Table {r['table']}: {r['title']}"
            chunks.append((title + "\n\n" if args.format == "md" else "") + _table_text(tables.COLUMNS, rows, args.format))
        print("\n\n".join(chunks))
    return 0 if all(r["ok"] for r in reports) else EXIT_MISMATCH


def cmd_search(args):
    ctx = _field_of_size(args.q)
    found = matprod.enumerate_orthogonal(ctx, args.size, budget=args.budget, jobs=args.jobs)
    nsc = [M for M in found if M.is_nsc()]
    rec = {"q": ctx.q, "s": args.size, "orthogonal_count": len(found), "nsc_count": len(nsc)}
    if args.emit:
        rec["matrices"] = [M.A.tolist() for M in (nsc if args.nsc_only else found)]
    rows = [(ctx.q, args.size, len(found), len(nsc))]
    _emit(rec, args.format, rows, ("q", "s", "orthogonal_count", "nsc_count"))
    return 0


def cmd_mindist(args):
    if args.matrix:
        with open(args.matrix) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise recipes.RecipeError(f"{args.matrix}: invalid JSON ({exc})") from None
        try:
            C = LinearCode(field_new(int(obj["p"]), int(obj["r"])), obj["rows"])
        except (KeyError, TypeError) as exc:
            raise recipes.RecipeError(f"{args.matrix}: need p, r and rows ({exc})") from None
    elif args.recipe:
        recipe = recipes.load(args.recipe)
        ev = recipes.Evaluator(recipe, args.budget, args.close_orbits, args.jobs)
        out = args.output or recipe["output"]
        C = ev[out]
        if not isinstance(C, LinearCode):
            raise recipes.RecipeError(f"node {out!r} is not a classical code")
    else:
        raise ArgumentError("give a recipe or --matrix FILE")
    budget = default_budget() if args.budget is None else args.budget
    d, exact = C.min_weight(budget, use_dual=not args.no_dual, jobs=args.jobs)
    if args.strict and not exact:
        raise BudgetExceededError(f"{C!r}: exact distance out of budget {budget}")
    rec = {"q": C.ctx.q, "n": C.n, "k": C.k, "d": d, "d_exact": exact}
    if exact:
        rec["weight_distribution"] = C.weight_distribution(budget, use_dual=not args.no_dual, jobs=args.jobs)
    else:
        rec["designed_source"] = C.designed_source
    _emit(rec, args.format, [(C.n, C.k, d, f"GF({C.ctx.q})")], ("n", "k", "d", "field"))
    return 0


# -- parser -----------------------------------------------------------------
def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--budget", type=_positive, default=None,
                        help="enumeration limit (codewords or search size); defaults to QCF_BUDGET or 2^24")
    common.add_argument("--close-orbits", action="store_true",
                        help="close defining sets under the cyclotomic action instead of rejecting them")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="qcf", description="Quantum stabilizer codes from classical code families.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="run a recipe and print its output node(s)")
    p.add_argument("recipe")
    p.add_argument("--output", help="node to print instead of the recipe's output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("quantum", parents=[common], help="quantum parameters of a recipe's output node")
    p.add_argument("recipe")
    p.add_argument("--output")
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("reproduce", parents=[common], help="rebuild a parameter table from the fixtures")
    p.add_argument("--table", type=int)
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("search-matrices", parents=[common], help="count orthogonal and NSC square matrices")
    p.add_argument("--q", type=int, required=True, help="field size")
    p.add_argument("--size", "-s", type=_positive, default=3)
    p.add_argument("--emit", action="store_true", help="also list the matrices")
    p.add_argument("--nsc-only", action="store_true", help="with --emit, list only the NSC ones")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("mindist", parents=[common], help="exact minimum distance of a code")
    p.add_argument("recipe", nargs="?")
    p.add_argument("--matrix", help="JSON file {p, r, rows} with a generator matrix")
    p.add_argument("--output")
    p.add_argument("--no-dual", action="store_true", help="enumerate the code itself only (no MacWilliams)")
    p.add_argument("--strict", action="store_true", help="exit 4 instead of reporting a designed bound")
    p.set_defaults(func=cmd_mindist)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failed ({exc.step}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except UndefinedDistanceError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ArgumentError, ConfigurationError, FieldMismatchError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
