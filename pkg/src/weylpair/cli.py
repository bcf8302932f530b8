"""Command-line front end.

Every command writes one document (JSON, CSV or text) to stdout or
``--output``.  Failures print ``{"error": {...}}`` on stderr and exit with
status 2; a verification that runs but does not pass exits with status 1.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .exterior import build_lie_model, verify_structure
from .grassmann import MAX_SIZE, verify_trace_identity
from .invariants import generators_for, jacobian_check, load_seed_file
from .milnor import build_milnor_ring, is_associative, is_confluent, poincare_exponents, predict_vanishing
from .pairing import c_table, d_table, mod_squares_project, verify_bezoutiante, verify_gendi
from .rootsys import build_root_system, parse_label
from .scalar import format_scalar

log = logging.getLogger("weylpair")

THREADS_ENV = "WEYLPAIR_THREADS"


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind
        self.message = message


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


@dataclass
class RunConfig:
    command: str
    type: str | None
    format: str
    output: str | None
    verbose: int
    allow_large_weyl: bool
    seed_polynomials: str | None
    threads: int


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise CliError("config", f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise CliError("config", f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _scalar(x):
    if isinstance(x, tuple):
        return [format_scalar(v) for v in x]
    return format_scalar(x)


def _text_cell(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(format_scalar(v) for v in x) + ")"
    return format_scalar(x)


def _render_grid(header: list[str], rows: list[list[str]]) -> str:
    width = max(len(c) for c in header + [c for r in rows for c in r])
    lines = [" ".join(c.rjust(width) for c in header)]
    lines += [" ".join(c.rjust(width) for c in r) for r in rows]
    return "\n".join(lines)


def _inner(degrees) -> list[int]:
    """Indices shown in text tables: all but degree 2 and the top degree."""
    top = max(degrees)
    return [i for i, d in enumerate(degrees) if d != 2 and d != top]


def _load_inv(cfg: RunConfig, label: str, averaged: bool = False):
    seeds = load_seed_file(cfg.seed_polynomials) if cfg.seed_polynomials else None
    t = time.perf_counter()
    inv = generators_for(label, seeds=seeds, averaged=averaged, allow_large=cfg.allow_large_weyl)
    log.info("generators for %s built in %.2fs", label, time.perf_counter() - t)
    return inv


def _label(cfg: RunConfig) -> str:
    fam, n = parse_label(cfg.type)
    return f"{fam}{n}"


# -- commands ------------------------------------------------------------------------


def cmd_tables(cfg: RunConfig, args) -> tuple[object, int]:
    label = _label(cfg)
    rs = build_root_system(label)
    inv = _load_inv(cfg, label)
    d = d_table(inv)
    c = c_table(d, rs)
    if cfg.format == "json":
        return (
            {
                "type": label,
                "exponents": list(rs.exponents),
                "degrees": list(rs.degrees),
                "coxeter_number": rs.coxeter_number,
                "generators": list(inv.names),
                "mask": [list(r) for r in d.mask],
                "d": [[_scalar(x) for x in row] for row in d.matrix()],
                "c": [[_scalar(x) for x in row] for row in c.matrix()],
            },
            0,
        )
    idx = _inner(rs.degrees)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "deg_i", "deg_j", "value"])
        for name, mat in (("d", d.matrix()), ("c", c.matrix())):
            for i in range(d.rank):
                for j in range(d.rank):
                    w.writerow([name, rs.degrees[i], rs.degrees[j], _text_cell(mat[i][j])])
        return buf.getvalue(), 0
    head = [""] + [str(rs.degrees[j]) for j in idx]
    parts = [f"{label}  exponents {' '.join(map(str, rs.exponents))}  h {rs.coxeter_number}"]
    for name, mat in (("d_ij", d.matrix()), ("c_ij", c.matrix())):
        rows = [[str(rs.degrees[i])] + [_text_cell(mat[i][j]) for j in idx] for i in idx]
        parts.append(name)
        parts.append(_render_grid(head, rows))
    return "\n".join(parts) + "\n", 0


def cmd_verify(cfg: RunConfig, args) -> tuple[object, int]:
    label = _label(cfg)
    rs = build_root_system(label)
    inv = _load_inv(cfg, label)

    def gendi():
        rep = verify_gendi(d_table(inv), rs)
        return "gendi", {"passed": rep.passed, "exceptional": rep.exceptional, "violations": rep.violations, "notes": rep.notes}

    def bez():
        rep = verify_bezoutiante(inv, strict=True if args.strict else None)
        return "bezoutiante", {
            "passed": rep.passed,
            "antidiagonal": [[i, j, format_scalar(c)] for i, j, c in rep.antidiagonal],
            "violations": rep.violations,
        }

    def milnor():
        ring = build_milnor_ring(label)
        mask = predict_vanishing(ring)
        dmask = [[d_table(inv).nonzero(i, j) for j in range(inv.rank)] for i in range(inv.rank)]
        poincare = poincare_exponents(ring) == [m - 1 for m in rs.exponents]
        return "milnor", {"passed": mask == dmask and poincare, "poincare": poincare, "mask_matches": mask == dmask}

    def jacobian():
        ratio = jacobian_check(inv)
        return "jacobian", {"passed": True, "ratio": format_scalar(ratio)}

    jobs = [gendi, bez]
    if rs.family == "E":
        jobs.append(milnor)
    if args.full and rs.rank <= 4:
        jobs.append(jacobian)
    # d_table shares the pairing cache; build it once before fanning out
    d_table(inv)
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        results = dict(pool.map(lambda f: f(), jobs))
    checks = {k: results[k] for k in ("gendi", "bezoutiante", "milnor", "jacobian") if k in results}
    passed = all(v["passed"] for v in checks.values())
    doc = {"type": label, "status": "PASS" if passed else "FAIL", "checks": checks}
    if cfg.format == "text":
        lines = [f"{label}: {doc['status']}"]
        for k, v in checks.items():
            lines.append(f"  {k}: {'PASS' if v['passed'] else 'FAIL'}")
            for note in v.get("notes", []):
                lines.append(f"    {note}")
            for viol in v.get("violations", []):
                lines.append(f"    {viol}")
        return "\n".join(lines) + "\n", 0 if passed else 1
    return doc, 0 if passed else 1


def cmd_invariants(cfg: RunConfig, args) -> tuple[object, int]:
    label = _label(cfg)
    inv = _load_inv(cfg, label, averaged=args.averaged)
    idx = range(inv.rank) if args.degree is None else inv.indices_of_degree(args.degree)
    if not idx:
        raise CliError("value", f"{label} has no generator of degree {args.degree}")
    items = [
        {
            "name": inv.names[i],
            "degree": inv.degrees[i],
            "provenance": inv.provenance[i],
            "frame": list(inv.frame.ring.names),
            "polynomial": str(inv.generators[i]),
        }
        for i in idx
    ]
    if cfg.format == "text":
        return "".join(f"# {it['name']} degree {it['degree']} ({it['provenance']})\n{it['polynomial']}\n" for it in items), 0
    return {"type": label, "generators": items}, 0


def cmd_pair(cfg: RunConfig, args) -> tuple[object, int]:
    label = _label(cfg)
    inv = _load_inv(cfg, label)
    polys = []
    for path in (args.file_a, args.file_b):
        try:
            with open(path, encoding="utf-8") as fh:
                polys.append(inv.parse(fh.read()))
        except OSError as exc:
            raise CliError("io", str(exc)) from None
    from .genring import leibniz_pairing

    prod = leibniz_pairing(inv.frame, polys[0], polys[1])
    img = mod_squares_project(prod, inv)
    image = {inv.names[t]: format_scalar(c) for t, c in zip(img.targets, img.coefficients)}
    doc = {"type": label, "degree": img.degree, "pairing": str(prod), "image": image}
    if cfg.format == "text":
        terms = " + ".join(f"{v}*{k}" for k, v in image.items()) or "0"
        return f"a o b = {prod}\nmod decomposables: {terms}\n", 0
    return doc, 0


def cmd_oracle(cfg: RunConfig, args) -> tuple[object, int]:
    try:
        model = build_lie_model(args.algebra)
    except ValueError as exc:
        raise CliError("unsupported", str(exc)) from None
    t = time.perf_counter()
    rep = verify_structure(model)
    log.info("structure checks for %s in %.2fs", args.algebra, time.perf_counter() - t)
    doc = rep.to_dict()
    code = 0 if rep.passed else 1
    if cfg.format == "text":
        lines = [f"{args.algebra}: {'PASS' if rep.passed else 'FAIL'}"]
        lines += [f"  {k}: {'PASS' if v else 'FAIL'}" for k, v in sorted(rep.checks.items())]
        lines.append(f"  Gamma dims {doc['gamma_dims']}")
        lines.append(f"  A dims {doc['a_dims']}")
        return "\n".join(lines) + "\n", code
    return doc, code


def cmd_grassmann(cfg: RunConfig, args) -> tuple[object, int]:
    if not 1 <= args.n <= MAX_SIZE:
        raise CliError("value", f"--n must be between 1 and {MAX_SIZE}")
    rep = verify_trace_identity(args.n)
    code = 1 if args.verify and not rep.passed else 0
    if cfg.format == "text":
        d = rep.to_dict()
        lines = [f"n={args.n}: {'PASS' if rep.passed else 'FAIL'}"]
        lines += [f"  {k}: {d[k]}" for k in ("nilpotent", "trace_identity_matrix", "trace_identity_traced", "odd_traces_anticommute", "reading")]
        return "\n".join(lines) + "\n", code
    return rep.to_dict(), code


def cmd_milnor(cfg: RunConfig, args) -> tuple[object, int]:
    label = _label(cfg)
    try:
        ring = build_milnor_ring(label)
    except ValueError as exc:
        raise CliError("unsupported", str(exc)) from None

    def mono(m):
        parts = [v if k == 1 else f"{v}^{k}" for v, k in zip("xy", m) if k]
        return "*".join(parts) or "1"

    def elem(e):
        if not e:
            return "0"
        terms = []
        for m, c in sorted(e.items()):
            if c == 1:
                terms.append(mono(m))
            else:
                terms.append(f"{format_scalar(c)}*{mono(m)}" if any(m) else format_scalar(c))
        return " + ".join(terms)

    table = ring.multiplication_table() if args.table else None
    if cfg.format == "csv":
        if table is None:
            raise CliError("usage", "csv output needs --table")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["left", "right", "product"])
        for i, a in enumerate(ring.basis):
            for j, b in enumerate(ring.basis):
                w.writerow([mono(a), mono(b), elem(table[i][j])])
        return buf.getvalue(), 0
    doc = {
        "type": label,
        "singularity": ring.singularity,
        "weights": list(ring.weights),
        "coxeter_number": ring.coxeter_number,
        "basis": [mono(m) for m in ring.basis],
        "degrees": list(ring.basis_degrees),
        "confluent": is_confluent(ring),
        "associative": is_associative(ring),
    }
    if table is not None:
        doc["table"] = [[elem(x) for x in row] for row in table]
    if cfg.format == "text":
        lines = [f"{label}: {ring.singularity}  weights {ring.weights}  h {ring.coxeter_number}"]
        lines += [f"  {mono(m)}  degree {d}" for m, d in zip(ring.basis, ring.basis_degrees)]
        if table is not None:
            head = [""] + [mono(m) for m in ring.basis]
            rows = [[mono(a)] + [elem(x) for x in row] for a, row in zip(ring.basis, table)]
            lines.append(_render_grid(head, rows))
        return "\n".join(lines) + "\n", 0
    return doc, 0


# -- plumbing ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--allow-large-weyl", action="store_true", help="permit averaging over large Weyl groups")
    common.add_argument("--seed-polynomials", default=None, help="JSON file overriding the E-type seed invariants")

    p = _Parser(prog="weylpair", description="Gradient pairings of Weyl group invariants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("tables", parents=[common], help="d_ij and c_ij tables")
    s.add_argument("--type", required=True)
    s = sub.add_parser("verify", parents=[common], help="generator theorem, Bezoutiante, Milnor mask")
    s.add_argument("--type", required=True)
    s.add_argument("--strict", action="store_true", help="project every Bezoutiante entry by a full solve")
    s.add_argument("--full", action="store_true", help="also run the Jacobian check (rank <= 4)")
    s = sub.add_parser("invariants", parents=[common], help="print basic invariants")
    s.add_argument("--type", required=True)
    s.add_argument("--degree", type=int, default=None)
    s.add_argument("--averaged", action="store_true", help="build by Weyl averaging in coordinates")
    s = sub.add_parser("pair", parents=[common], help="pair two invariants read from files")
    s.add_argument("--type", required=True)
    s.add_argument("file_a")
    s.add_argument("file_b")
    s = sub.add_parser("oracle", parents=[common], help="exterior algebra checks for sl2/sl3")
    s.add_argument("--algebra", required=True)
    s.add_argument("--report", choices=("json", "text"), default=None)
    s = sub.add_parser("grassmann", parents=[common], help="generic Grassmann matrix identities")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s = sub.add_parser("milnor", parents=[common], help="Milnor ring of an E-type singularity")
    s.add_argument("--type", required=True)
    s.add_argument("--table", action="store_true")
    return p


COMMANDS = {
    "tables": cmd_tables,
    "verify": cmd_verify,
    "invariants": cmd_invariants,
    "pair": cmd_pair,
    "oracle": cmd_oracle,
    "grassmann": cmd_grassmann,
    "milnor": cmd_milnor,
}

_CSV_COMMANDS = {"tables", "milnor"}


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": {"kind": kind, "message": message}}) + "\n")
    return 2


def main(argv: list[str] | None = None) -> int:
    from .invariants import NotAGenerator
    from .pairing import ProjectionError
    from .poly import ParseError
    from .rootsys import UnsupportedType, WeylGroupTooLarge

    try:
        args = build_parser().parse_args(argv)
        fmt = args.format or getattr(args, "report", None) or "json"
        if fmt == "csv" and args.command not in _CSV_COMMANDS:
            raise CliError("usage", f"csv output is not available for {args.command}")
        cfg = RunConfig(
            command=args.command,
            type=getattr(args, "type", None),
            format=fmt,
            output=args.output,
            verbose=args.verbose,
            allow_large_weyl=args.allow_large_weyl,
            seed_polynomials=args.seed_polynomials,
            threads=_threads(),
        )
        logging.basicConfig(
            level=logging.DEBUG if cfg.verbose > 1 else logging.INFO if cfg.verbose else logging.WARNING,
            format="%(name)s: %(message)s",
            stream=sys.stderr,
        )
        doc, code = COMMANDS[cfg.command](cfg, args)
    except CliError as exc:
        return _error(exc.kind, exc.message)
    except UnsupportedType as exc:
        return _error("unsupported type", str(exc))
    except WeylGroupTooLarge as exc:
        return _error("weyl group too large", str(exc))
    except (NotAGenerator, ProjectionError, ParseError) as exc:
        return _error(type(exc).__name__, str(exc))
    except (OSError, json.JSONDecodeError) as exc:
        return _error("io", str(exc))
    except ValueError as exc:
        return _error("value", str(exc))
    text = doc if isinstance(doc, str) else json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    _emit(text, cfg.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
