"""Command-line front end: ``seifert <command> -p <presentation> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .classify import classify, dioph_witness
from .engines import make_engine
from .equations import bounded_solve, parse_system
from .errors import SeifertError, UnknownSymbol, WordSyntaxError
from .h10reduce import compile_system, flatten, parse_poly, verify_reduction
from .presentation import (check, chi, family_id, full_presentation, parse_presentation,
                           presentation_json)

DEFAULT_BOX = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(value: str) -> str:
    if value.startswith("@"):
        try:
            with open(value[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {value[1:]}: {exc.strerror}") from None
    return value


def _element_json(e, coords) -> dict:
    return {"coords": dict(zip(e.coord_names, coords)), "tuple": list(coords), "word": e.format(coords)}


def _box(args, err) -> int:
    if args.box is None:
        print(f"warning: --box not given, using {DEFAULT_BOX}; bounded search is exponential "
              "in the number of variables", file=err)
        return DEFAULT_BOX
    if args.box < 0:
        raise UsageError("--box must be non-negative")
    return args.box


def _assignment(text: str) -> dict:
    out = {}
    for part in text.replace(";", ",").split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"bad assignment {part.strip()!r}; expected NAME=INT")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise UsageError(f"bad integer in assignment {part.strip()!r}") from None
    return out


def _cmd_classify(p, args, out, err):
    c = classify(p)
    if args.json:
        return c.to_json()
    lines = [f"presentation: {p}", f"chi: {c.chi}",
             f"family: {c.family.value}", f"c: {'-' if c.c is None else c.c}",
             f"dp_status: {c.dp_status}", f"fo_status: {c.fo_status}",
             f"single_eq_status: {c.single_eq_status}"]
    if c.witness is not None:
        for k, v in c.witness.to_json().items():
            lines.append(f"witness.{k}: {', '.join(map(str, v)) if isinstance(v, list) else v}")
    lines += [f"note: {n}" for n in c.notes]
    return "\n".join(lines)


def _cmd_chi(p, args, out, err):
    x = chi(p)
    if args.json:
        sign = "positive" if x > 0 else "zero" if x == 0 else "negative"
        return {"chi": str(x), "sign": sign, "family": None if family_id(p).value == "NONE" else family_id(p).value}
    return str(x)


def _cmd_present(p, args, out, err):
    fp = full_presentation(p)
    if args.json:
        return {"presentation": presentation_json(p), "generators": list(fp.generators),
                "relators": [str(r) for r in fp.relators]}
    return "generators: " + " ".join(fp.generators) + "\n" + "\n".join(f"{r} = 1" for r in fp.relators)


def _cmd_nf(p, args, out, err):
    e = make_engine(p)
    v = e.parse(args.word)
    return {"family": e.family.value, **_element_json(e, v)} if args.json else e.format(v)


def _cmd_mul(p, args, out, err):
    e = make_engine(p)
    a, b = e.parse(args.a), e.parse(args.b)
    v = e.mul(a, b)
    if args.json:
        return {"family": e.family.value, "a": _element_json(e, a), "b": _element_json(e, b),
                "product": _element_json(e, v)}
    return e.format(v)


def _cmd_comm(p, args, out, err):
    e = make_engine(p)
    k = e.commutator_power(args.i, args.j)
    x, y = (e.user_word(w) for w in e.pair)
    if args.json:
        return {"family": e.family.value, "x": str(x), "y": str(y), "i": args.i, "j": args.j,
                "exponent": k, "c": e.c, "law_holds": k == e.c * args.i * args.j}
    return f"[({x})^{args.i}, ({y})^{args.j}] = h^{k}"


def _cmd_centralizer(p, args, out, err):
    e = make_engine(p)
    B = _box(args, err)
    g = e.parse(args.word)
    found = sorted(e.centralizer_box(g, B))
    if args.json:
        return {"family": e.family.value, "element": _element_json(e, g), "box": B,
                "count": len(found), "elements": [list(x) for x in found]}
    return "\n".join(e.format(x) for x in found) + f"\n# {len(found)} elements in box {B}"


def _cmd_solve(p, args, out, err):
    e = make_engine(p)
    B = _box(args, err)
    sys_ = parse_system(_read(args.system), generators=e.generators)
    sols = bounded_solve(e, sys_, B, jobs=args.jobs)
    if args.json:
        return {"family": e.family.value, "box": B, "variables": list(sys_.variables),
                "count": len(sols),
                "solutions": [{v: list(a[v]) for v in sys_.variables} for a in sols]}
    lines = [", ".join(f"{v} = {e.format(a[v])}" for v in sys_.variables) for a in sols]
    return "\n".join(lines + [f"# {len(sols)} solutions in box {B}"])


def _dioph(p):
    make_engine(p)  # NotChiZero for chi != 0
    return dioph_witness(p)


def _cmd_compile(p, args, out, err):
    w = _dioph(p)
    ps = parse_poly(_read(args.poly))
    atomic = flatten(ps)
    cs = compile_system(atomic, w)
    if args.json:
        return {"polynomials": [f"{q.format(ps.variables)} = 0" for q in ps.polynomials],
                "atomic": [str(c) for c in atomic.constraints],
                "carriers": dict(cs.var_map),
                "x": str(cs.x), "y": str(cs.y), "c": cs.c,
                "variables": list(cs.system.variables),
                "equations": [str(eq) for eq in cs.system.equations]}
    header = [f"# polynomials: {ps}", f"# atomic: {atomic}"]
    return "\n".join(header) + "\n" + str(cs.system).rstrip("\n")


def _cmd_verify(p, args, out, err):
    w = _dioph(p)
    e = make_engine(p)
    ps = parse_poly(_read(args.poly))
    sigma = _assignment(args.assign)
    box = None if args.no_search else _box(args, err)
    report = verify_reduction(ps, e, w, sigma, box=box, jobs=args.jobs)
    args._failed = not report.passed
    return report.to_json() if args.json else str(report)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seifert", description="Equations in Seifert fibered 3-manifold groups.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-p", "--presentation", required=True,
                        help="'type=o1 g=1 b=0 fibers=[]', its JSON form, or @file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    add("classify", _cmd_classify, "decidability status with witness")
    add("chi", _cmd_chi, "orbifold Euler characteristic of the base")
    add("present", _cmd_present, "full finite presentation")
    add("nf", _cmd_nf, "normal form of a word").add_argument("-w", "--word", required=True)
    sp = add("mul", _cmd_mul, "product of two elements")
    sp.add_argument("-a", required=True, help="left factor (word or canonical print)")
    sp.add_argument("-b", required=True, help="right factor")
    sp = add("comm", _cmd_comm, "h-exponent of [x^i, y^j] for the distinguished pair")
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    sp = add("centralizer", _cmd_centralizer, "centralizer of an element inside a box")
    sp.add_argument("-w", "--word", required=True)
    sp.add_argument("--box", type=int)
    sp = add("solve", _cmd_solve, "bounded search for solutions of an equation system")
    sp.add_argument("-s", "--system", required=True, help="equations (newline separated) or @file")
    sp.add_argument("--box", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("compile-h10", _cmd_compile, "compile integer polynomial equations to group equations")
    sp.add_argument("--poly", required=True, help="'X*Y=6; X+Y=5' or @file")
    sp = add("verify-h10", _cmd_verify, "check the reduction on an integer assignment")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--assign", required=True, help="e.g. X=2,Y=3")
    sp.add_argument("--box", type=int)
    sp.add_argument("--no-search", action="store_true", help="skip the bounded search check")
    sp.add_argument("--jobs", type=int, default=1)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        p = check(parse_presentation(_read(args.presentation)))
        result = args.fn(p, args, out, err)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except (WordSyntaxError, UnknownSymbol) as exc:
        print(f"syntax error: {exc}", file=err)
        return 2
    except SeifertError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 1
    if isinstance(result, (dict, list)):
        out.write(json.dumps(result, sort_keys=True, indent=2) + "\n")
    else:
        out.write(result + "\n")
    return 1 if getattr(args, "_failed", False) else 0


def main():  # console-script entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
