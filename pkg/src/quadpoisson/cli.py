"""Command-line front end.

Exit status: 0 when the check passes, 1 when it fails, 2 on any input or
usage error (reported as a JSON ``{"error": ...}`` object on stdout).

Examples::

    quadpoisson derive --algebra quaternions --r "j^k" --scale 1/2
    quadpoisson check jacobi --bracket zero.json
    quadpoisson check cybe --algebra upper_triangular:2 --r "e11^e12"
    quadpoisson numeric drinfeld --algebra matrix:2 --r "e11^e12" --samples 100
    quadpoisson paper-suite --format text
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import (
    Algebra,
    AlgebraError,
    algebra_from_json,
    algebra_to_json,
    lie_structure,
    validate_algebra,
)
from .bialgebra import (
    cobracket_at,
    cobracket_from_json,
    cobracket_to_json,
    coboundary_cobracket,
    cocycle_residual,
    dual_lie,
    dual_lie_obstruction,
    lie_to_algebra_json,
    linear_bracket,
    pencil_residual,
)
from .catalog import ALGEBRA_NAMES, get_algebra, parse_r, sphere_casimir_residual
from .numeric import (
    SamplePlan,
    drinfeld_proportionality,
    group_multiplicativity_sample,
    iso_pushforward_check,
    log_bracket,
    polynomial_evaluator,
)
from .poisson import (
    bracket_from_json,
    bracket_to_json,
    jacobiator,
    multiplicativity_residual,
    unit_vanishing,
)
from .rational import emit_rational, parse_rational
from .suite import run_paper_suite
from .yang_baxter import (
    ad_invariance_residual,
    cybe_residual,
    derivation_residual,
    quadratic_from_r,
    rmatrix_from_json,
    rmatrix_to_json,
    schouten,
)

CHECKS = ("jacobi", "multiplicative", "derivation", "cybe", "schouten-invariance", "cocycle", "pencil", "casimir")
RESIDUAL_LIMIT = 50


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------

class Inputs:
    """Loads the objects named on the command line and records their digests."""

    def __init__(self, args):
        self.args = args
        self.digests: dict = {}
        self._alg = None

    def _read_json(self, role, path):
        p = Path(path)
        try:
            raw = p.read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {role} file {path}: {exc.strerror}") from exc
        self.digests[role] = {"path": str(path), "sha256": hashlib.sha256(raw).hexdigest()}
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed JSON in {path}: {exc}") from exc

    def algebra(self, required=True) -> Algebra | None:
        if self._alg is not None:
            return self._alg
        spec = getattr(self.args, "algebra", None)
        if spec is None:
            if required:
                raise UsageError("--algebra is required for this command")
            return None
        if Path(spec).suffix == ".json" or Path(spec).is_file():
            alg = algebra_from_json(self._read_json("algebra", spec))
        else:
            alg = get_algebra(spec)
            text = json.dumps(algebra_to_json(alg), sort_keys=True).encode()
            self.digests["algebra"] = {"catalog": spec, "sha256": hashlib.sha256(text).hexdigest()}
        self._alg = alg
        return alg

    def rmatrix(self, required=True):
        a = self.args
        if getattr(a, "r_file", None):
            r = rmatrix_from_json(self._read_json("r", a.r_file))
            alg = self.algebra(required=False)
            if alg is not None and alg.dim != r.dim:
                raise AlgebraError(f"r-matrix dim {r.dim} vs algebra dim {alg.dim}")
            return r
        if getattr(a, "r", None):
            alg = self.algebra()
            if "algebra" in self.digests and "catalog" not in self.digests["algebra"]:
                raise UsageError("inline r-matrix shorthand is accepted for catalog algebras only; use --r-file")
            self.digests["r"] = {"inline": a.r}
            return parse_r(alg, a.r)
        if required:
            raise UsageError("an r-matrix is required (--r or --r-file)")
        return None

    def bracket(self, required=True):
        """A quadratic bracket from --bracket, or derived from --algebra/--r/--scale."""
        a = self.args
        if getattr(a, "bracket", None):
            qt = bracket_from_json(self._read_json("bracket", a.bracket))
            alg = self.algebra(required=False)
            if alg is not None and alg.dim != qt.dim:
                raise AlgebraError(f"bracket dim {qt.dim} vs algebra dim {alg.dim}")
            return qt
        r = self.rmatrix(required=False)
        if r is not None:
            return quadratic_from_r(self.algebra(), r, self.scale())
        if required:
            raise UsageError("a bracket is required (--bracket, or --algebra with --r/--r-file)")
        return None

    def scale(self) -> Fraction:
        try:
            return parse_rational(getattr(self.args, "scale", None) or "1")
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


def _plan(args, **defaults) -> SamplePlan:
    fields = {"seed": args.seed, "samples": args.samples, "tol": args.tol}
    for key in ("low", "high"):
        value = getattr(args, key, None)
        fields[key] = defaults[key] if value is None else value
    try:
        return SamplePlan(**fields)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _vector(text: str, dim: int):
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != dim:
        raise AlgebraError(f"vector needs {dim} components, got {len(parts)}")
    return tuple(parse_rational(p) for p in parts)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _write(path, obj):
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def cmd_validate(args, inp):
    alg = inp.algebra()
    rep = validate_algebra(alg)
    return rep.passed, {
        "check": "validate",
        "pass": rep.passed,
        "checked": rep.checked,
        "violations": [[kind, list(idx), emit_rational(l), emit_rational(r)] for kind, idx, l, r in rep.violations[:RESIDUAL_LIMIT]],
    }


def cmd_derive(args, inp):
    alg = inp.algebra()
    r = inp.rmatrix()
    qt = quadratic_from_r(alg, r, inp.scale())
    doc = bracket_to_json(qt)
    if args.output:
        _write(args.output, doc)
    return True, {"check": "derive", "pass": True, "scale": emit_rational(inp.scale()), "bracket": doc, "table": qt.table()}


def cmd_check(args, inp):
    name = args.check
    if name == "jacobi":
        rep = jacobiator(inp.bracket())
    elif name == "multiplicative":
        alg = inp.algebra()
        rep = multiplicativity_residual(alg, inp.bracket())
    elif name == "derivation":
        alg = inp.algebra()
        rep = derivation_residual(alg, inp.bracket())
    elif name == "cybe":
        alg = inp.algebra()
        t = cybe_residual(alg, inp.rmatrix())
        return t.is_zero(), {
            "check": "cybe",
            "pass": t.is_zero(),
            "nonzero": len(t.data),
            "residuals": [[list(k), emit_rational(v)] for k, v in t.items()[:RESIDUAL_LIMIT]],
        }
    elif name == "schouten-invariance":
        alg = inp.algebra()
        rep = ad_invariance_residual(alg, schouten(alg, inp.rmatrix()))
    elif name == "cocycle":
        alg = inp.algebra()
        if getattr(args, "cobracket", None):
            cb = cobracket_from_json(inp._read_json("cobracket", args.cobracket))
        elif getattr(args, "bracket", None):
            cb = cobracket_at(alg, inp.bracket(), alg.require_unit(), doubled=True)
        else:
            cb = coboundary_cobracket(alg, inp.rmatrix())
        rep = cocycle_residual(lie_structure(alg), cb)
    elif name == "pencil":
        qt = inp.bracket()
        if getattr(args, "linear", None):
            lt = bracket_from_json(inp._read_json("linear", args.linear))
        else:
            alg = inp.algebra()
            lt = linear_bracket(cobracket_at(alg, qt, alg.require_unit()))
        rep = pencil_residual(qt, lt)
    elif name == "casimir":
        rep = sphere_casimir_residual(inp.bracket())
    else:  # argparse restricts the choices
        raise UsageError(f"unknown check {name!r}")
    extra = {}
    if name in ("multiplicative",) and inp.algebra(required=False) and inp.algebra().unit is not None:
        extra["unit_vanishing"] = unit_vanishing(inp.algebra(), inp.bracket()).to_json(RESIDUAL_LIMIT)
    return rep.passed, {**rep.to_json(RESIDUAL_LIMIT), **extra}


def cmd_bialgebra(args, inp):
    alg = inp.algebra()
    qt = inp.bracket()
    a = _vector(args.a, alg.dim) if args.a else alg.require_unit()
    cb = cobracket_at(alg, qt, a, doubled=args.doubled)
    lie, rep = dual_lie(cb)
    cb_doc = cobracket_to_json(cb)
    lie_doc = lie_to_algebra_json(lie, [f"x{i + 1}" for i in range(alg.dim)], "dual Lie algebra")
    if args.output:
        _write(args.output, cb_doc)
    if args.dual_output:
        _write(args.dual_output, lie_doc)
    return rep.passed, {
        "check": "bialgebra",
        "pass": rep.passed,
        "doubled": args.doubled,
        "a": [emit_rational(v) for v in a],
        "cobracket": cb_doc,
        "dual_lie": lie_doc,
        "dual_lie_residual": rep.to_json(RESIDUAL_LIMIT),
        "dual_lie_obstruction": dual_lie_obstruction(qt, a).to_json(RESIDUAL_LIMIT),
        "linear_bracket": linear_bracket(cb).table(),
    }


def cmd_catalog(args, inp):
    if args.action == "list":
        return True, {"check": "catalog", "pass": True, "algebras": list(ALGEBRA_NAMES)}
    if not args.name:
        raise UsageError("catalog emit needs an algebra name")
    alg = get_algebra(args.name)
    doc = rmatrix_to_json(parse_r(alg, args.r)) if args.r else algebra_to_json(alg)
    if args.output:
        _write(args.output, doc)
    return True, {"check": "catalog", "pass": True, "document": doc}


def cmd_numeric(args, inp):
    kind = args.kind
    if kind == "drinfeld":
        alg = inp.algebra()
        r = inp.rmatrix()
        rep = drinfeld_proportionality(alg, r, quadratic_from_r(alg, r), _plan(args, low=-2.0, high=2.0))
    elif kind == "group":
        if args.log:
            alg = get_algebra("componentwise:2")
            rep = group_multiplicativity_sample(alg, log_bracket, _plan(args, low=0.05, high=2.0))
        else:
            alg = inp.algebra()
            qt = inp.bracket()
            rep = group_multiplicativity_sample(alg, polynomial_evaluator(qt), _plan(args, low=-2.0, high=2.0))
    else:
        rep = iso_pushforward_check(_plan(args, low=0.05, high=2.0))
    return rep.passed, rep.to_json()


def cmd_paper_suite(args, inp):
    fixtures = run_paper_suite()
    ok = all(f["pass"] for f in fixtures)
    return ok, {"check": "paper-suite", "pass": ok, "fixtures": fixtures}


# ---------------------------------------------------------------------------
# Parser and driver
# ---------------------------------------------------------------------------

def _add_objects(p, r=True, bracket=True):
    p.add_argument("--algebra", help="catalog name (e.g. quaternions, matrix:3) or algebra JSON file")
    if r:
        p.add_argument("--r", help='r-matrix shorthand over basis labels, e.g. "j^k" or "1/2*i^j - j^k"')
        p.add_argument("--r-file", help="r-matrix JSON file")
        p.add_argument("--scale", default="1", help="bracket scale for ad_r (rational, default 1)")
    if bracket:
        p.add_argument("--bracket", help="bracket JSON file")


def _add_sampling(p):
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--low", type=float, default=None)
    p.add_argument("--high", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadpoisson", description="Quadratic Poisson brackets compatible with associative algebras.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    # --format is accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("validate", help="check associativity and unit axioms")
    p.add_argument("algebra", help="catalog name or algebra JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("derive", help="quadratic bracket scale*[r, x(x)x]")
    _add_objects(p, bracket=False)
    p.add_argument("-o", "--output", help="write the bracket JSON here")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("check", help="exact identity checks")
    p.add_argument("check", choices=CHECKS)
    _add_objects(p)
    p.add_argument("--cobracket", help="cobracket JSON file (cocycle)")
    p.add_argument("--linear", help="linear bracket JSON file (pencil); default is Delta_u*")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bialgebra", help="emit Delta_a and the dual Lie algebra")
    _add_objects(p)
    p.add_argument("--a", help="vector a (space or comma separated rationals); default is the unit")
    p.add_argument("--doubled", action="store_true", help="multiply by 2, giving 2 delta(x(x)a + a(x)x)")
    p.add_argument("-o", "--output", help="write the cobracket JSON here")
    p.add_argument("--dual-output", help="write the dual Lie algebra JSON here")
    p.set_defaults(func=cmd_bialgebra)

    p = sub.add_parser("catalog", help="list or emit built-in algebras and r-matrices")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("--r", help="emit this r-matrix (shorthand) instead of the algebra")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("numeric", help="floating-point sampling checks")
    p.add_argument("kind", choices=("drinfeld", "group", "iso"))
    _add_objects(p)
    p.add_argument("--log", action="store_true", help="group: use the log bracket on componentwise R^2")
    _add_sampling(p)
    p.set_defaults(func=cmd_numeric)

    p = sub.add_parser("paper-suite", help="run every worked-example fixture")
    p.set_defaults(func=cmd_paper_suite)
    return parser


def _render_text(report: dict) -> str:
    lines = [f"{report.get('check', '?')}: {'PASS' if report.get('pass') else 'FAIL'}"]
    if "fixtures" in report:
        for f in report["fixtures"]:
            lines.append(f"  [{'PASS' if f['pass'] else 'FAIL'}] {f['fixture']}")
            for c in f["checks"]:
                lines.append(f"      [{'PASS' if c['pass'] else 'FAIL'}] {c['check']}  ({c['provenance']})")
        return "\n".join(lines)
    if "table" in report:
        lines.append(report["table"])
    if "linear_bracket" in report:
        lines.append(report["linear_bracket"])
    for key in ("checked", "nonzero", "max_abs_residual", "max_rel_residual", "kappa", "kappa_variance"):
        if key in report:
            lines.append(f"  {key}: {report[key]}")
    for idx, v in report.get("residuals", [])[:10]:
        lines.append(f"  residual {idx}: {v}")
    for entry in report.get("violations", [])[:10]:
        lines.append(f"  violation {entry}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    fmt = "json"
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        inp = Inputs(args)
        ok, report = args.func(args, inp)
    except (UsageError, AlgebraError, ValueError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}, "tool": "quadpoisson", "version": __version__}
        print(json.dumps(err, sort_keys=True))
        return 2
    report["tool"] = "quadpoisson"
    report["version"] = __version__
    report["inputs"] = inp.digests
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_render_text(report))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
