"""Command-line front end.

Every subcommand builds a :class:`Report` and prints it as text, or as one
JSON object under ``--json``.  Exit status is 0 on success, 1 for malformed
input and 2 when well-formed input fails a precondition.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import dehn, forms, polygon, search as rsearch, seifert, sol
from .errors import ParseError, PreconditionError
from .presentation import abelianization, parse_presentation
from .quaternion import (
    Representation,
    UnitQuaternion,
    is_abelian_rep,
    rational_angle,
    relator_residual,
)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2


@dataclass
class Report:
    verdict: str
    certificate: Optional[str] = None
    witness: Optional[dict] = None
    residual: Optional[float] = None
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificate": self.certificate,
            "witness": self.witness,
            "residual": self.residual,
            "extras": self.extras,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False)

    def to_text(self) -> str:
        lines = [
            f"verdict: {self.verdict}",
            f"certificate: {_fmt(self.certificate)}",
            f"residual: {_fmt(self.residual)}",
        ]
        if self.witness is None:
            lines.append("witness: none")
        else:
            lines.append("witness:")
            for g, q in self.witness.items():
                lines.append(f"  {g} -> {_fmt(q)}")
        for k, v in self.extras.items():
            lines.append(f"{k}: {_fmt(v)}")
        return "\n".join(lines)


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def _plain(x):
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(y) for k, y in x.items()}
    return str(x)


def _group(g) -> dict:
    return {"rank": g.rank, "torsion": list(g.torsion), "text": str(g)}


# ---------------------------------------------------------------------------
# manifold descriptions

_TBUNDLE = re.compile(r"\s*tbundle\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$")
_NUN = re.compile(r"\s*nun\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$")


def parse_manifold(text: str):
    """Return ("sfs" | "tbundle" | "nun", object)."""
    stripped = text.lstrip()
    if stripped.startswith("sfs"):
        return "sfs", seifert.parse_sfs(text)
    m = _TBUNDLE.match(text)
    if m:
        a, b, c, d = map(int, m.groups())
        if a * d - b * c != 1:
            raise PreconditionError(f"monodromy [[{a},{b}],[{c},{d}]] does not have determinant 1")
        return "tbundle", sol.Monodromy(a, b, c, d)
    m = _NUN.match(text)
    if m:
        return "nun", sol.GluingMatrix(*map(int, m.groups()))
    if stripped.startswith(("tbundle", "nun")):
        raise ParseError("expected tbundle[a,b;c,d] or nun[m,n;p,q]", text, 0)
    raise ParseError("expected sfs(...), tbundle[...] or nun[...]", text, 0)


def _angle_note(rep: Representation) -> dict:
    # best effort only: rotation angles as rational multiples of pi
    out = {}
    for g, q in zip(rep.generators, rep.images):
        f = rational_angle(q)
        out[g] = f"{f}*pi" if f is not None else "irrational?"
    return out


def _rep_dict(rep: Representation) -> dict:
    return {k: [float(x) for x in v] for k, v in rep.as_dict().items()}


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> Report:
    kind, obj = parse_manifold(args.input)
    if kind == "sfs":
        v = seifert.is_su2_abelian(obj)
        extras = {
            "normalized": str(seifert.normalize(obj)),
            "h1": _group(seifert.h1(obj)),
            "euler_number": str(seifert.euler_number(obj)),
            "orbifold_euler_char": str(seifert.orbifold_euler_char(obj)),
            "geometry": seifert.geometry(obj).value,
        }
        extras.update({k: _plain(x) for k, x in v.notes.items()})
        if v.abelian:
            return Report("abelian", v.certificate.value, extras=extras)
        return Report("non-abelian", None, _rep_dict(v.witness), v.residual, extras)
    if kind == "tbundle":
        abelian = sol.sol_is_su2_abelian(obj)
        reps = sol.torus_bundle_reps(obj)
        extras = {
            "trace": obj.trace,
            "theta_pairs": [[r.thetas.theta1, r.thetas.theta2] for r in reps],
            "h1": _group(abelianization(sol.torus_bundle_presentation(obj))),
            "geometry": "Sol",
        }
        if abelian:
            return Report("abelian", "TraceDivisibility", extras=extras)
        w = next(r for r in reps if r.nonabelian)
        return Report("non-abelian", None, _rep_dict(w.rep), w.residual, extras)
    rep = sol.nun_q8_rep(obj)
    pres = sol.nun_presentation(obj)
    extras = {
        "image_order": len(sol.image_closure(rep.images)),
        "h1": _group(abelianization(pres)),
        "geometry": "Sol",
    }
    return Report("non-abelian", None, _rep_dict(rep), relator_residual(pres, rep), extras)


def cmd_search(args) -> Report:
    pres = parse_presentation(args.presentation)
    rep = rsearch.search(pres, args.restarts, args.seed, args.tol)
    extras = {
        "restarts": rep.restarts_used,
        "seed": rep.seed,
        "tol": rep.tolerance,
        "found_abelian": sum(f.classification == "abelian" for f in rep.found),
        "found_nonabelian": len(rep.nonabelian),
    }
    if rep.caveat:
        extras["caveat"] = rep.caveat
        abelian = [f for f in rep.found if f.classification == "abelian"]
        if abelian:
            extras["abelian_angles"] = _angle_note(min(abelian, key=lambda f: f.residual).rep)
    witness = residual = None
    if rep.nonabelian:
        best = rep.nonabelian[0]
        if best.residual < seifert.WITNESS_TOL:
            witness, residual = _rep_dict(best.rep), best.residual
        else:
            extras["best_nonabelian_residual"] = best.residual
    return Report(rep.verdict, None, witness, residual, extras)


def cmd_forms(args) -> Report:
    if (args.disc is None) == (args.trace is None):
        raise ParseError("give exactly one of --disc or --trace")
    if args.disc is not None:
        cycles = forms.form_cycles(args.disc)
        return Report(
            f"{len(cycles)} classes",
            extras={
                "discriminant": args.disc,
                "class_number": len(cycles),
                "cycles": [[list(q.as_tuple()) for q in c] for c in cycles],
            },
        )
    reps = forms.sl2_trace_classes(args.trace)
    return Report(
        f"{len(reps)} classes",
        extras={
            "trace": args.trace,
            "class_number": len(reps),
            "representatives": [[list(r) for r in m] for m in reps],
        },
    )


def _table_extras(t: dehn.FillingTable) -> dict:
    out = {}
    for e in t.entries:
        out[e.slope] = {"manifold": str(e.manifold), "h1_order": e.h1_order}
        if e.cfrac:
            out[e.slope]["cfrac"] = list(e.cfrac)
    return out


def cmd_mg(args) -> Report:
    if args.g is None:
        raise ParseError("--g is required")
    t = dehn.mg_fillings(args.g)
    extras = {"g": args.g, "fillings": _table_extras(t)}
    if args.unverified:
        c = dehn.mg_fillings_conjectural(args.g)
        extras["conjectural"] = {"g": c.g, "fillings": _table_extras(c), "status": "unverified"}
    names = ", ".join(str(e.manifold) for e in t.entries)
    return Report(f"M_{args.g}: {names}", extras=extras)


def cmd_h1(args) -> Report:
    text = args.input.strip()
    if text.startswith("<"):
        g = abelianization(parse_presentation(text))
    else:
        kind, obj = parse_manifold(text)
        if kind == "sfs":
            g = seifert.h1(obj)
        elif kind == "tbundle":
            g = abelianization(sol.torus_bundle_presentation(obj))
        else:
            g = abelianization(sol.nun_presentation(obj))
    return Report(str(g), extras=_group(g) | {"order": g.order if g.is_finite else "infinite"})


def cmd_geometry(args) -> Report:
    kind, obj = parse_manifold(args.input)
    if kind == "sfs":
        return Report(
            seifert.geometry(obj).value,
            extras={
                "euler_number": str(seifert.euler_number(obj)),
                "orbifold_euler_char": str(seifert.orbifold_euler_char(obj)),
            },
        )
    if kind == "tbundle" and abs(obj.trace) <= 2:
        raise PreconditionError(f"trace {obj.trace}: not a Sol monodromy")
    return Report("Sol")


def _parse_int_list(text: str) -> list:
    m = re.fullmatch(r"\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]\s*", text)
    if not m:
        raise ParseError("expected a list like [3,2]", text, 0)
    return [int(x) for x in m.group(1).split(",")]


def cmd_cfrac(args) -> Report:
    text = args.value.strip()
    if text.startswith("["):
        x = dehn.cfrac_eval(_parse_int_list(text))
        return Report(str(x), extras={"numerator": x.numerator, "denominator": x.denominator})
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError("expected [a1,...,ak] or a rational p/q", text, 0) from None
    cf = dehn.cfrac_of(x)
    return Report("[" + ",".join(map(str, cf)) + "]", extras={"value": str(x), "cfrac": cf})


def cmd_lens_eq(args) -> Report:
    L1 = dehn.LensSpace(args.p1, args.q1)
    L2 = dehn.LensSpace(args.p2, args.q2)
    same = dehn.lens_homeo(L1, L2)
    return Report(
        "homeomorphic" if same else "not-homeomorphic",
        extras={"first": str(L1), "second": str(L2)},
    )


def cmd_splice_h1(args) -> Report:
    s = dehn.SpliceDescriptor(args.a, args.b, args.c, args.d)
    n = dehn.splice_h1(s)
    return Report(str(n), extras={"splice": str(s), "h1": f"Z/{n}"})


def cmd_verify_rep(args) -> Report:
    pres = parse_presentation(args.presentation)
    try:
        data = json.loads(args.rep)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", args.rep, exc.pos) from None
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object mapping generators to [w,x,y,z]", args.rep, 0)
    mapping = {}
    for g, q in data.items():
        if not (isinstance(q, list) and len(q) == 4 and all(isinstance(x, (int, float)) for x in q)):
            raise ParseError(f"image of {g} must be a list of four numbers", args.rep, 0)
        mapping[g] = UnitQuaternion.from_array(q)
    rep = Representation.from_mapping(pres.generators, mapping)
    res = relator_residual(pres, rep)
    abelian = is_abelian_rep(rep, rsearch.COMMUTATOR_TOL)
    ok = res < args.tol
    extras = {"tol": args.tol, "abelian": abelian, "satisfies_relators": ok}
    if abelian:
        extras["abelian_angles"] = _angle_note(rep)
    verdict = ("representation" if ok else "not-a-representation") + (
        ", abelian" if abelian else ", non-abelian"
    )
    return Report(
        verdict,
        None,
        _rep_dict(rep) if ok and not abelian else None,
        res,
        extras,
    )


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    p = _Parser(prog="su2abelian", description="SU(2)-abelian classification toolkit")
    p.add_argument("--json", dest="json_top", action="store_true", help="emit one JSON object")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="classify sfs(...), tbundle[...], nun[...]")
    c.add_argument("input")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("search", parents=[common], help="numeric representation search")
    s.add_argument("presentation")
    s.add_argument("--restarts", type=int, default=300)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_search)

    f = sub.add_parser("forms", parents=[common], help="quadratic form classes")
    f.add_argument("--disc", type=int)
    f.add_argument("--trace", type=int)
    f.set_defaults(func=cmd_forms)

    for name in ("mg", "mg-table"):
        m = sub.add_parser(name, parents=[common], help="four-filling table of M_g")
        m.add_argument("--g", type=int)
        m.add_argument("--unverified", action="store_true", help="also show the conjectural M_{-g-1} row")
        m.set_defaults(func=cmd_mg)

    h = sub.add_parser("h1", parents=[common], help="first homology")
    h.add_argument("input")
    h.set_defaults(func=cmd_h1)

    g = sub.add_parser("geometry", parents=[common], help="Thurston geometry")
    g.add_argument("input")
    g.set_defaults(func=cmd_geometry)

    cf = sub.add_parser("cfrac", parents=[common], help="evaluate [a1,...] or expand p/q")
    cf.add_argument("value")
    cf.set_defaults(func=cmd_cfrac)

    le = sub.add_parser("lens-eq", parents=[common], help="lens space homeomorphism")
    for name in ("p1", "q1", "p2", "q2"):
        le.add_argument(name, type=int)
    le.set_defaults(func=cmd_lens_eq)

    sp = sub.add_parser("splice-h1", parents=[common], help="|H1| of Y(T_{a,b}, T_{c,d})")
    for name in "abcd":
        sp.add_argument(name, type=int)
    sp.set_defaults(func=cmd_splice_h1)

    v = sub.add_parser("verify-rep", parents=[common], help="check a representation")
    v.add_argument("presentation")
    v.add_argument("rep", help='JSON object, e.g. {"a": [0, 1, 0, 0]}')
    v.add_argument("--tol", type=float, default=1e-10)
    v.set_defaults(func=cmd_verify_rep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(report.to_json() if args.json or args.json_top else report.to_text())
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
