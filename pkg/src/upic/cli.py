"""Command-line driver: ``upic analyze <file|->`` and ``upic selftest``.

Exit codes: 0 success, 1 failed self-test, 2 unreadable input, 3 invalid
mathematical data, 4 cost budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources

import jsonschema

from .cohomology import BudgetExceeded, CohomologyConfig
from .complexes import ComplexError
from .gmodules import ModuleError, validate_module
from .groups import (
    GroupTableError,
    Subgroup,
    make_cyclic,
    make_dihedral,
    make_klein,
    make_product,
    make_quaternion,
    make_symmetric,
    validate_group,
)
from .lattice import as_matrix, identity
from .rootdata import RootDatumError, invariant_report, named, validate_root_datum

EXIT_OK, EXIT_SELFTEST, EXIT_PARSE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3, 4


class InputError(Exception):
    """Malformed input document; ``location`` says where."""

    def __init__(self, message, location=""):
        super().__init__(message)
        self.location = location


class ValidationError(Exception):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


def load_schema(name):
    text = resources.files("upic").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def parse_document(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    validator = jsonschema.Draft202012Validator(load_schema("input"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "/".join(str(p) for p in err.absolute_path) or "(root)"
        raise InputError(err.message, f"at {path}")
    return doc


def build_galois(desc):
    if desc is None:
        return make_cyclic(1)
    if "table" in desc:
        return validate_group(desc["table"], name="table")
    kind = desc["named"]
    n = desc.get("n")
    if kind == "trivial":
        return make_cyclic(1)
    if kind == "cyclic":
        if n is None:
            raise ValidationError("cyclic galois group needs n")
        return make_cyclic(n)
    if kind == "klein":
        return make_klein()
    if kind == "s3":
        return make_symmetric(3)
    if kind == "dihedral":
        if n is None or n < 3:
            raise ValidationError("dihedral galois group needs n >= 3")
        return make_dihedral(n)
    if kind == "quaternion":
        return make_quaternion()
    if kind == "product":
        factors = [build_galois(f) for f in desc.get("factors", [])]
        if not factors:
            raise ValidationError("product needs at least one factor")
        G = factors[0]
        for H in factors[1:]:
            G = make_product(G, H)
        return G
    raise ValidationError(f"unknown galois group {kind!r}")


def _subgroup(G, elements):
    elems = tuple(sorted(set(elements)))
    bad = [g for g in elems if g >= G.order]
    if bad:
        raise ValidationError(f"subgroup element {bad[0]} is not in the group", bad[:1])
    if 0 not in elems:
        raise ValidationError("subgroup must contain the identity 0", (0,))
    for a in elems:
        for b in elems:
            if G.mult[a][b] not in elems:
                raise ValidationError(f"subgroup is not closed: {a} * {b} = {G.mult[a][b]}", (a, b))
    return Subgroup(G, elems)


def build_datum(doc, G):
    group = doc["group"]
    action = doc.get("action", {})
    if "root_datum" in group:
        raw = group["root_datum"]
        r = raw["rank"]
        mats = action.get("matrices")
        if "twist" in action or "diagram" in action:
            raise ValidationError("explicit root data take their action as matrices")
        X = validate_module(G, mats if mats is not None else [identity(r)] * G.order, rank=r)
        roots = as_matrix(raw["roots"], cols=r).T.copy() if raw["roots"] else as_matrix([], rows=r, cols=0)
        coroots = as_matrix(raw["coroots"], cols=r) if raw["coroots"] else as_matrix([], rows=0, cols=r)
        if roots.shape[1] != coroots.shape[0]:
            raise ValidationError("roots and coroots must have the same count")
        return validate_root_datum(X, roots, coroots, name=group.get("name", "root_datum"))
    family = group["named"]
    twist = action.get("twist", action.get("diagram"))
    subgroup = _subgroup(G, group["subgroup"]) if "subgroup" in group else None
    if "matrices" in action and family != "torus":
        raise ValidationError(f"{family} takes a diagram twist, not matrices")
    if twist is not None and family.endswith("torus"):
        raise ValidationError("tori take their action as matrices")
    return named(family, group.get("n"), G, twist, subgroup, action.get("matrices"))


def analyze_document(doc, config, sha=True):
    G = build_galois(doc.get("galois"))
    rd = build_datum(doc, G)
    report = invariant_report(rd, config, sha=sha)
    out = {"input": doc}
    out.update(report.to_json())
    out["timing"] = None
    return out


def render_table(report):
    def fmt(v):
        if v is None:
            return "-"
        parts = []
        if v["free_rank"]:
            parts.append("Z" if v["free_rank"] == 1 else f"Z^{v['free_rank']}")
        parts += [f"Z/{d}" for d in v["torsion"]]
        return " + ".join(parts) if parts else "0"

    rows = [
        ("group", report["name"]),
        ("type", report["cartan_type"] or "-"),
        ("|Γ|", str(report["galois_order"])),
        ("U rank", str(report["U_rank"])),
        ("Pic(Ḡ)", fmt(report["Pic_bar"])),
        ("Pic(G)", fmt(report["Pic"])),
        ("Br_a(G)", fmt(report["Br_a"])),
        ("Sha1_omega", fmt(report["Sha1_omega"])),
        ("Sha2_omega", fmt(report["Sha2_omega"])),
    ]
    width = max(len(k) for k, _ in rows)
    lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
    lines.append(report["level_note"])
    if report["timing"] is not None:
        lines.append(f"time {report['timing']:.3f}s")
    return "\n".join(lines) + "\n"


def _write(text):
    sys.stdout.buffer.write(text.encode("utf-8"))
    sys.stdout.flush()


def _error(kind, message, extra=""):
    line = f"error: {kind}: {message}"
    if extra:
        line += f" ({extra})"
    print(line, file=sys.stderr)


def _config(args, options=None):
    options = options or {}
    max_degree = args.max_degree if args.max_degree is not None else options.get("max_degree", 3)
    budget = args.budget if args.budget is not None else options.get("budget", 10**6)
    return CohomologyConfig(max_degree=max_degree, budget=budget)


def cmd_analyze(args):
    try:
        if args.path == "-":
            text = sys.stdin.read()
        else:
            with open(args.path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        _error("parse", f"cannot read {args.path}: {exc.strerror}")
        return EXIT_PARSE
    try:
        doc = parse_document(text)
    except InputError as exc:
        _error("parse", str(exc), exc.location)
        return EXIT_PARSE
    config = _config(args, doc.get("options"))
    start = time.perf_counter()
    try:
        report = analyze_document(doc, config, sha=args.sha)
    except (GroupTableError, ModuleError, RootDatumError, ValidationError, ComplexError) as exc:
        witness = getattr(exc, "witness", ())
        _error("validation", str(exc), f"witness {list(witness)}" if witness else "")
        return EXIT_INVALID
    except BudgetExceeded as exc:
        _error("budget", str(exc))
        return EXIT_BUDGET
    if args.timing:
        report["timing"] = round(time.perf_counter() - start, 6)
    if args.format == "table":
        _write(render_table(report))
    else:
        _write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def cmd_selftest(args):
    from .checks import run_all

    results = run_all(_config(args))
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_SELFTEST


def build_parser():
    parser = argparse.ArgumentParser(
        prog="upic",
        description="Picard, Brauer and Sha invariants of reductive groups from their root data.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=None, help="cohomological degree bound (default 3)")
    common.add_argument("--budget", type=int, default=None, help="largest differential in matrix entries (default 10^6)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="compute the invariant report for an input document")
    p.add_argument("path", help="input JSON file, or - for standard input")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--sha", action=argparse.BooleanOptionalAction, default=True, help="compute Sha_omega (default on)")
    p.add_argument("--timing", action="store_true", help="record wall time (makes output non-deterministic)")
    p.set_defaults(func=cmd_analyze)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    for name in ("max_degree", "budget"):
        value = getattr(args, name)
        if value is not None and value < 0:
            _error("parse", f"--{name.replace('_', '-')} must be non-negative")
            return EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
