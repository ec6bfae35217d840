"""germlab command-line front end."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .catalog import (
    PUBLISHED_SIGMA,
    CatalogEntry,
    build_catalog,
    catalog_text,
    classify,
    entry_named,
    load_catalog,
    separation_matrix,
    series_form,
    series_variables,
)
from .certify import (
    DEFAULT_SAMPLES,
    Family,
    check_constrained_membership_scheme,
    check_control_function,
    check_deforms_to_j10,
    check_theorem_triviality,
    parse_rho_spec,
)
from .errors import GermlabError, InputError
from .expr import VariableContext, envelope, format_polynomial, infer_context, jsonable, parse
from .invariants import fingerprint, lct_jacobian
from .j10 import polar_restriction, possibly_equivalent, ratio_invariant
from .jets import DEFAULT_MAX_N, DEFAULT_SEED, milnor_number, mprimary_level
from .newton import polyhedron_from_points
from .poly import Polynomial
from .qi import as_number, format_number
from .splitting import split, verify_split

SEED_ENV = "GERMLAB_SEED"


# argument helpers ----------------------------------------------------------------


def _context(args, source: str, parameter: str | None = None) -> VariableContext:
    if args.vars:
        return VariableContext.from_spec(args.vars, parameter)
    return infer_context(source, parameter)


def _germ(args, source: str) -> tuple[Polynomial, VariableContext]:
    ctx = _context(args, source)
    f = parse(source, ctx)
    if not f:
        raise InputError("the zero polynomial is not a germ with an isolated singularity")
    return f, ctx


def _number(text: str):
    p = parse(text, VariableContext(("x",)))
    if p.degree() > 0:
        raise InputError(f"expected a number, got {text!r}")
    return as_number(p.constant_term())


def _samples(text: str | None) -> tuple:
    if not text:
        return DEFAULT_SAMPLES
    return tuple(_number(s) for s in text.split(",") if s.strip())


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer") from None


# commands --------------------------------------------------------------------------
# Each returns (source echo, context, result payload).


def cmd_invariants(args):
    f, ctx = _germ(args, args.expr)
    return args.expr, ctx, fingerprint(f, args.max_jet, seed=args.seed_value)


def cmd_classify(args):
    f, ctx = _germ(args, args.expr)
    return args.expr, ctx, classify(f, args.max_jet, seed=args.seed_value)


def cmd_split(args):
    f, ctx = _germ(args, args.expr)
    result = split(f, args.max_jet if args.jet is None else args.jet)
    ok, reason = verify_split(f, result)
    c = result.corank
    names = ctx.slots
    payload = {
        "corank": c,
        "quadratic_rank": result.quad_rank,
        "jet_bound": result.jet_bound,
        "residual": format_polynomial(result.residual, VariableContext(names[:c])) if c else "0",
        "square_coefficients": result.square_coefficients,
        "linear_change": result.linear_change.matrix,
        "transcript": [{names[j]: shift for j, shift in sorted(step.items())} for step in result.transcript],
        "verified": ok,
        "check": reason,
    }
    return args.expr, ctx, payload


def cmd_milnor(args):
    f, ctx = _germ(args, args.expr)
    mu = milnor_number(f, args.max_jet)
    gens = [g for g in f.gradient() if g]
    return args.expr, ctx, {"milnor": mu, "level": mprimary_level(gens, args.max_jet) if gens else 0}


def cmd_lct(args):
    f, ctx = _germ(args, args.expr)
    return args.expr, ctx, lct_jacobian(f)


def cmd_newton(args):
    f, ctx = _germ(args, args.expr)
    return args.expr, ctx, polyhedron_from_points(list(f.exponents()))


def cmd_j10(args):
    if args.lambda_ is None:
        raise InputError("--lambda is required")
    lam = _number(args.lambda_)
    payload = {
        "lambda": lam,
        "polar_restriction": list(polar_restriction(lam)),
        "ratio_invariant": list(ratio_invariant(lam)),
    }
    if args.lambda2 is not None:
        other = _number(args.lambda2)
        same = possibly_equivalent(lam, other)
        payload["lambda2"] = other
        payload["ratio_invariant2"] = list(ratio_invariant(other))
        payload["verdict"] = "possibly-equivalent" if same else "not-equivalent"
    source = args.lambda_ if args.lambda2 is None else f"{args.lambda_},{args.lambda2}"
    return source, None, payload


def _family(args) -> tuple[Family, VariableContext]:
    """A family from an expression in the variables and --param, or from a catalog name."""
    try:
        entry = entry_named(args.expr)
    except KeyError:
        entry = None
    if entry is not None:
        return _catalog_family(entry, args)
    ctx = _context(args, args.expr, args.param)
    body = parse(args.expr, ctx)
    return Family(body, _samples(args.samples)), ctx


def _catalog_family(entry: CatalogEntry, args) -> tuple[Family, VariableContext]:
    template = entry.template
    if not entry.variables or entry.series:
        raise InputError(f"{entry.name} has no one-parameter normal form")
    if "b" in infer_context(template).names:
        raise InputError(f"{entry.name} has two moduli; pass the family as an expression")
    if "a" not in infer_context(template).names:
        raise InputError(f"{entry.name} has no modulus")
    ctx = VariableContext.from_spec(entry.variables, args.param)
    body = parse(template.replace("a", args.param), ctx)
    samples = tuple(s for s in _samples(args.samples) if _admissible(entry.constraint, s))
    if not samples:
        raise InputError(f"no sample satisfies {entry.constraint}")
    return Family(body, samples), ctx


def _admissible(constraint: str, value) -> bool:
    """Evaluate a constraint of the form 'lhs != rhs' in the modulus a."""
    if not constraint:
        return True
    lhs, rhs = constraint.split("!=")
    ctx = VariableContext(("a",))
    expr = parse(f"({lhs.strip().replace('4a', '4*a')})-({rhs.strip()})", ctx)
    return expr(value) != 0


def cmd_certify(args):
    kind = args.kind
    if kind == "deforms-j10":
        f, ctx = _germ(args, args.expr)
        witness = check_deforms_to_j10(f)
        payload = {"verdict": "yes" if witness else "no-evidence", "witness": witness}
        return args.expr, ctx, payload
    if kind == "membership":
        f, ctx = _germ(args, args.expr)
        if not args.targets:
            raise InputError("--targets is required")
        targets = [parse(t, ctx) for t in args.targets.split(",")]
        w = tuple(int(a) for a in args.weights.split(",")) if args.weights else (1,) * f.nvars
        if len(w) != f.nvars:
            raise InputError("one weight per variable is required")
        minfil = _number(args.minfil)
        cert = check_constrained_membership_scheme(f, targets, w, minfil, args.degbound)
        return args.expr, ctx, {"certificate": cert, "verified": cert.verify()}
    fam, ctx = _family(args)
    if kind == "qh-triviality":
        cert = check_theorem_triviality(fam)
    else:
        names = VariableContext(ctx.names)
        spec = parse_rho_spec(args.rho, fam.nvars, names) if args.rho else None
        cert = check_control_function(fam, spec)
    return args.expr, ctx, {"certificate": cert, "verified": cert.verify()}


def _table_rows(entries, corank: int):
    rows = []
    for e in entries:
        if not e.simple:
            continue
        if e.series:
            if corank != 2 or e.series not in "AD":
                continue
            k = 4 if e.series == "D" else 1
            rows.append({
                "name": e.name, "normal_form": e.template, "codimension": e.constraint,
                "milnor": f"{e.series}_k checked for k <= {e.instances[-1][0]}",
                "matches": all(fp.milnor == k for k, fp in e.instances),
                "sample": series_form(e.series, k), "vars": series_variables(e.series),
            })
            continue
        if e.fingerprint.corank not in ((1, 2) if corank == 2 else (3,)):
            continue
        mu = milnor_number(e.polynomial())
        rows.append({"name": e.name, "normal_form": e.form, "codimension": e.codimension, "milnor": mu,
                     "matches": mu == e.codimension})
    return rows


def _sigma_rows(entries):
    rows = []
    for e in entries:
        if e.name not in PUBLISHED_SIGMA:
            continue
        s = e.fingerprint.sigma
        rows.append({"name": e.name, "normal_form": e.form, "milnor": e.fingerprint.milnor,
                     "sigma_lines": s.line_count, "sigma_degree": s.scheme_degree,
                     "published_sigma": PUBLISHED_SIGMA[e.name]})
    return rows


def cmd_tables(args):
    entries = load_catalog()
    payload = {
        "corank_1_2": _table_rows(entries, 2),
        "corank_3": _table_rows(entries, 3),
        "sigma": _sigma_rows(entries),
    }
    return None, None, payload


def cmd_separation(args):
    return None, None, {"cells": separation_matrix()}


def cmd_catalog(args):
    entries = build_catalog(args.max_jet)
    text = catalog_text(entries)
    if args.write:
        with open(args.write, "w") as fh:
            fh.write(text)
        return None, None, {"written": args.write, "entries": len(entries)}
    return None, None, {"entries": entries}


COMMANDS = {
    "invariants": cmd_invariants,
    "classify": cmd_classify,
    "split": cmd_split,
    "milnor": cmd_milnor,
    "lct": cmd_lct,
    "newton": cmd_newton,
    "j10": cmd_j10,
    "certify": cmd_certify,
    "tables": cmd_tables,
    "separation": cmd_separation,
    "catalog": cmd_catalog,
}


# text rendering ---------------------------------------------------------------------


def _render(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                sub = _render(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}" if sub else f"{pad}-")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(value)}")
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def _render_tables(result: dict) -> list[str]:
    lines = ["Corank 1 and 2 simple germs", f"{'name':<12}{'normal form':<34}{'codim':>8}{'mu':>10}  ok"]
    for r in result["corank_1_2"] + [None] + result["corank_3"]:
        if r is None:
            lines += ["", "Corank 3 simple germs", f"{'name':<12}{'normal form':<34}{'codim':>8}{'mu':>10}  ok"]
            continue
        mu = r["milnor"] if isinstance(r["milnor"], int) else "series"
        lines.append(f"{r['name']:<12}{r['normal_form']:<34}{str(r['codimension']):>8}{str(mu):>10}  {'yes' if r['matches'] else 'NO'}")
    lines += ["", "Singular locus of the tangent cone (computed vs published)",
              f"{'name':<12}{'mu':>4}{'lines':>7}{'degree':>8}  published"]
    for r in result["sigma"]:
        lines.append(f"{r['name']:<12}{r['milnor']:>4}{r['sigma_lines']:>7}{r['sigma_degree']:>8}  {r['published_sigma']}")
    return lines


def _render_separation(result: dict) -> list[str]:
    lines = []
    trivial = 0
    for c in result["cells"]:
        if c["reading"] in ("milnor", "corank") and "note" not in c:
            trivial += 1
            continue
        line = f"{c['left']:<12}{c['right']:<12}{c['reading']}"
        if "values" in c:
            line += f"  ({c['values'][0]} vs {c['values'][1]})"
        if c.get("flagged"):
            line += "  [open question]"
        lines.append(line)
        if "note" in c:
            lines.append(f"  note: {c['note']}")
    lines.append(f"{trivial} further pairs separated by milnor or corank")
    return lines


RENDERERS = {"tables": _render_tables, "separation": _render_separation}


# entry point ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors become InputError so they share the one-line error report."""

    def error(self, message):
        raise InputError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", help="comma-separated variable names (default: order of appearance)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (env {SEED_ENV}; default {DEFAULT_SEED})")
    common.add_argument("--max-jet", type=int, default=DEFAULT_MAX_N, help="largest jet order explored")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    parser = _Parser(prog="germlab", description="Invariants of isolated hypersurface singularities.")
    parser.add_argument("--version", action="version", version=f"germlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("invariants", "fingerprint of a germ"),
        ("classify", "match a germ against the catalog"),
        ("split", "splitting into residual plus squares"),
        ("milnor", "Milnor number"),
        ("lct", "log canonical threshold of the Jacobian ideal"),
        ("newton", "Newton polyhedron of the support"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("expr")
        if name == "split":
            p.add_argument("--jet", type=int, default=None, help="jet bound for the transcript")

    p = sub.add_parser("j10", parents=[common], help="modulus of the J10 family")
    p.add_argument("--lambda", dest="lambda_", help="family parameter")
    p.add_argument("--lambda2", help="second parameter to compare against")

    p = sub.add_parser("certify", parents=[common], help="triviality and adjacency certificates")
    p.add_argument("kind", choices=["qh-triviality", "control", "membership", "deforms-j10"])
    p.add_argument("expr", help="germ, family in the variables and --param, or a catalog name such as X_9")
    p.add_argument("--param", default="t", help="family parameter name")
    p.add_argument("--samples", help="comma-separated parameter values")
    p.add_argument("--rho", help="control function exponents and monomials, e.g. 2,2,2*y")
    p.add_argument("--targets", help="comma-separated membership targets")
    p.add_argument("--minfil", default="0", help="least cofactor filtration")
    p.add_argument("--weights", help="comma-separated filtration weights (default all 1)")
    p.add_argument("--degbound", type=int, default=12, help="cofactor degree bound")

    for name, text in (("tables", "regenerate the catalog tables"), ("separation", "pairwise separation matrix")):
        sub.add_parser(name, parents=[common], help=text)
    p = sub.add_parser("catalog", parents=[common], help="rebuild the catalog data file")
    p.add_argument("--write", help="path for the regenerated JSON")
    return parser


def _fail(exc: Exception, code: int) -> int:
    reason = " ".join(str(exc).split()) or type(exc).__name__
    print(json.dumps({"error": type(exc).__name__, "exit": code, "reason": reason}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as exc:
        return _fail(exc, exc.exit_code)
    start = time.perf_counter()
    try:
        args.seed_value = _seed(args)
        source, ctx, result = COMMANDS[args.command](args)
    except GermlabError as exc:
        return _fail(exc, exc.exit_code)
    except RecursionError as exc:
        return _fail(exc, 4)
    elapsed = round((time.perf_counter() - start) * 1000) if args.timing else None
    report = envelope(args.command, source, ctx, args.seed_value, result, __version__, elapsed)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        payload = report["result"]
        render = RENDERERS.get(args.command)
        lines = render(payload) if render else _render(payload)
        if elapsed is not None:
            lines.append(f"time: {elapsed} ms")
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
