"""Command-line front end: ``gausspoly compute|transform|fuzz|compare``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from . import diagram as dg
from .diagram import Diagram, FlatLongDiagram, KnotGaussDiagram, LongGaussDiagram
from .errors import GaussError
from .fuzz import INVARIANTS, run_fuzz
from .knot_invariants import affine_index_poly, f_polys, knot_report, scalar_invariants, writhe_poly
from .laurent import LaurentPoly
from .link_invariants import fg_polys, format_lk, link_report, link_scalars, linking_poly
from .longflat import flat_report, flat_writhe_poly
from .moves import DEFAULT_MAX_CHORDS

EXIT_OK, EXIT_INPUT, EXIT_PROPERTY = 0, 1, 2

log = logging.getLogger("gausspoly")


class InputError(Exception):
    """Bad command-line input that is not a diagram error."""


# -- reports ---------------------------------------------------------------


def report(d: Diagram) -> dict:
    if isinstance(d, KnotGaussDiagram):
        return knot_report(d)
    if isinstance(d, FlatLongDiagram):
        return flat_report(d)
    if isinstance(d, LongGaussDiagram):
        return {"closure": knot_report(dg.closure(d)), "flat": flat_report(dg.forget(d))}
    return link_report(d)


def _ring(p: LaurentPoly) -> str:
    return f"Z[t]/(t^{p.modulus} - 1)" if p.modulus else "Z[t, t^-1]"


def text_report(d: Diagram) -> list[str]:
    lines = [f"code = {dg.serialize(d)}"]
    if isinstance(d, KnotGaussDiagram):
        s = scalar_invariants(d)
        lines += [f"wr = {s.wr}", f"J = {s.J}", f"Q = {s.Q}",
                  f"writhe_poly = {writhe_poly(d)}",
                  f"affine_index_poly = {affine_index_poly(d)}"]
        lines += [f"f_{k} = {p}" for k, p in f_polys(d).items()]
    elif isinstance(d, FlatLongDiagram):
        p = flat_writhe_poly(d)
        lines += [f"flat_writhe_poly = {p}", f"s = {p.coeff_abs_sum()}"]
    elif isinstance(d, LongGaussDiagram):
        lines += [f"closure_writhe_poly = {writhe_poly(dg.closure(d))}",
                  f"flat_writhe_poly = {flat_writhe_poly(dg.forget(d))}"]
    else:
        s = link_scalars(d)
        fg = fg_polys(d)
        lp = linking_poly(d)
        lines += [f"lk = {format_lk(s.two_lk)}", f"span = {s.span}",
                  f"bridges = {s.bridge_count}", f"F = {fg.F}", f"G = {fg.G}",
                  f"linking_poly = {lp}", f"ring = {_ring(lp)}"]
    return lines


def _values(d: Diagram) -> dict[str, object]:
    """Invariants used by ``compare``, keyed by name."""
    if isinstance(d, KnotGaussDiagram):
        s = scalar_invariants(d)
        out = {"wr": s.wr, "J": s.J, "Q": s.Q, "writhe_poly": writhe_poly(d),
               "affine_index_poly": affine_index_poly(d)}
        out.update({f"f_{k}": p for k, p in f_polys(d).items()})
        return out
    if isinstance(d, FlatLongDiagram):
        return {"flat_writhe_poly": flat_writhe_poly(d)}
    if isinstance(d, LongGaussDiagram):
        return {"closure_writhe_poly": writhe_poly(dg.closure(d)),
                "flat_writhe_poly": flat_writhe_poly(dg.forget(d))}
    s = link_scalars(d)
    fg = fg_polys(d)
    return {"two_lk": s.two_lk, "span": s.span, "F": fg.F, "G": fg.G,
            "linking_poly": linking_poly(d)}


def _jsonable(v):
    return v.to_json() if isinstance(v, LaurentPoly) else v


# -- input -----------------------------------------------------------------


def _read_codes(code: str | None, path: str | None) -> tuple[list[str], bool]:
    """Codes to process and whether this is batch (file/stdin) input."""
    if code is not None and path is not None:
        raise InputError("give either an inline code or --file, not both")
    if code is not None and code != "-":
        return [code], False
    if path is not None and path != "-":
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    else:
        text = sys.stdin.read()
    codes = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            codes.append(line)
    return codes, True


def _emit_json(obj) -> None:
    print(json.dumps(obj))


# -- verbs -----------------------------------------------------------------


def cmd_compute(args) -> int:
    codes, batch = _read_codes(args.code, args.file)
    diagrams = [dg.parse(c) for c in codes]
    if args.json:
        out = [report(d) for d in diagrams]
        _emit_json(out if batch else out[0])
    else:
        for i, d in enumerate(diagrams):
            if i:
                print()
            print("\n".join(text_report(d)))
    return EXIT_OK


def _choice(d: FlatLongDiagram, flip: str | None) -> dict[int, str]:
    which = set()
    if flip:
        try:
            which = {int(x) for x in flip.split(",") if x.strip()}
        except ValueError:
            raise InputError(f"--flip expects comma-separated chord ids, got {flip!r}") from None
    return {c: "flipped" if c in which else "asRepresented" for c in list(d.chords) + sorted(which)}


def _transform(op: str, d: Diagram, args) -> Diagram:
    if op == "inverse":
        return dg.inverse(d)
    if op == "mirror":
        if isinstance(d, FlatLongDiagram):
            raise InputError("mirror is not defined for flat diagrams")
        return dg.mirror(d)
    if op == "closure":
        return dg.closure(d)
    if op == "descending":
        return dg.descending(d)
    if op == "resolve":
        if not isinstance(d, FlatLongDiagram):
            raise InputError(f"resolve needs a flat long diagram, got {d.kind}")
        return dg.resolve(d, _choice(d, args.flip))
    if op == "connect":
        if args.other is None:
            raise InputError("connect needs a second diagram via --with")
        other = dg.parse(args.other)
        if isinstance(d, KnotGaussDiagram) and isinstance(other, KnotGaussDiagram):
            return dg.connected_sum(d, args.cut1, other, args.cut2)
        if type(d) is type(other) and isinstance(d, (LongGaussDiagram, FlatLongDiagram)):
            return dg.concat(d, other)
        raise InputError(f"cannot connect {d.kind} with {other.kind}")
    raise InputError(f"unknown transform {op!r}")


def cmd_transform(args) -> int:
    codes, batch = _read_codes(args.code, args.file)
    results = [dg.serialize(dg.canonical(_transform(args.op, dg.parse(c), args))) for c in codes]
    if args.json:
        _emit_json(results if batch else results[0])
    else:
        print("\n".join(results))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    seed = args.seed
    env = os.environ.get("GAUSS_SEED")
    if env is not None and env.strip():
        try:
            seed = int(env)
        except ValueError:
            raise InputError(f"GAUSS_SEED must be an integer, got {env!r}") from None
    for name in ("trials", "steps", "max_chords"):
        if getattr(args, name) < 0:
            raise InputError(f"--{name.replace('_', '-')} must be non-negative")
    names = None
    if args.invariants:
        names = [x.strip() for x in args.invariants.split(",") if x.strip()]
    try:
        rep = run_fuzz(args.kind, seed=seed, trials=args.trials, steps=args.steps,
                       max_chords=args.max_chords, invariants=names)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _emit_json(rep.to_json())
    else:
        print(f"kind = {rep.kind}  seed = {rep.seed}  trials = {rep.trials}  steps = {rep.steps}")
        print("moves = " + ", ".join(f"{k} {v}" for k, v in sorted(rep.move_counts.items())))
        print(f"failures = {len(rep.failures)}")
        for f in rep.failures:
            print(f"  trial {f['trial']} step {f['step']}: {f['invariant']}")
            print(f"    before: {f['before']}")
            print(f"    after:  {f['after']}")
            if "detail" in f:
                print(f"    detail: {f['detail']}")
            print(f"    trace:  {json.dumps(f['trace'])}")
    return EXIT_OK if rep.ok else EXIT_PROPERTY


def cmd_compare(args) -> int:
    a, b = dg.parse(args.code_a), dg.parse(args.code_b)
    if a.kind != b.kind:
        raise InputError(f"cannot compare a {a.kind} diagram with a {b.kind} diagram")
    va, vb = _values(a), _values(b)
    names = list(va) + [k for k in vb if k not in va]
    zero = LaurentPoly()
    rows = {}
    for name in names:
        x, y = va.get(name, zero), vb.get(name, zero)
        rows[name] = {"a": _jsonable(x), "b": _jsonable(y), "equal": x == y}
    same = all(r["equal"] for r in rows.values())
    if args.json:
        _emit_json({"equal": same, "invariants": rows})
    else:
        for name in names:
            x, y = va.get(name, zero), vb.get(name, zero)
            mark = "=" if rows[name]["equal"] else "!="
            print(f"{name}: {x} {mark} {y}")
        print("all invariants agree" if same else "diagrams are distinguished")
    if args.expect_equal and not same:
        return EXIT_PROPERTY
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gausspoly",
                                description="Polynomial invariants of virtual knots and links from Gauss codes.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("compute", help="print the invariant report of a diagram")
    c.add_argument("code", nargs="?", help='Gauss code, e.g. "knot: O1+ O2+ U1+ U2+" ("-" for stdin)')
    c.add_argument("--file", metavar="PATH", help="read one code per line")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compute)

    t = sub.add_parser("transform", help="apply a diagram transform and print the canonical code")
    t.add_argument("op", choices=["inverse", "mirror", "closure", "descending", "resolve", "connect"])
    t.add_argument("code", nargs="?")
    t.add_argument("--file", metavar="PATH")
    t.add_argument("--json", action="store_true")
    t.add_argument("--flip", metavar="IDS", help="resolve: comma-separated chord ids to flip")
    t.add_argument("--with", dest="other", metavar="CODE", help="connect: the second diagram")
    t.add_argument("--cut1", type=int, default=0, help="connect: segment of the first knot")
    t.add_argument("--cut2", type=int, default=0, help="connect: segment of the second knot")
    t.set_defaults(func=cmd_transform)

    f = sub.add_parser("fuzz", help="check invariance along random Reidemeister walks")
    f.add_argument("--kind", choices=sorted(INVARIANTS), default="knot")
    f.add_argument("--seed", type=int, default=0, help="base seed (GAUSS_SEED overrides)")
    f.add_argument("--trials", type=int, default=100)
    f.add_argument("--steps", type=int, default=20)
    f.add_argument("--max-chords", type=int, default=DEFAULT_MAX_CHORDS)
    f.add_argument("--invariants", metavar="LIST", help="comma-separated subset to check")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fuzz)

    m = sub.add_parser("compare", help="compare the invariants of two diagrams of one kind")
    m.add_argument("code_a")
    m.add_argument("code_b")
    m.add_argument("--json", action="store_true")
    m.add_argument("--expect-equal", action="store_true",
                   help="exit 2 when some invariant distinguishes the diagrams")
    m.set_defaults(func=cmd_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GaussError, InputError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
