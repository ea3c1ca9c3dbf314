"""Command line interface: ``upsilon-kit <command> ...``.

Exit codes: 0 success, 1 integrity failure (or a failing ``verify``),
2 usage error.  Errors are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

from . import bordered, cfk, links
from . import upsilon as ups
from .errors import CatalogError, DomainError, UpsilonKitError
from .exact import PLFunction, as_rational, format_rational, rational_to_json

FORMATS = ("json", "csv", "svg")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (DomainError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _t_value(text: str) -> Fraction:
    t = _rational(text)
    if not 0 <= t <= 2:
        raise argparse.ArgumentTypeError(f"t={text} outside [0, 2]")
    return t


def _range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo > hi or lo < 1:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return list(range(lo, hi + 1))


# ---------------------------------------------------------------------------
# input


def _add_source(p: argparse.ArgumentParser, multiple: bool = False):
    # always append, so that a repeated flag is reported instead of silently overwritten
    g = p.add_argument_group("input (exactly one)" if not multiple else "inputs (two in total)")
    action = "append"
    g.add_argument("--knot", action=action, help="catalog name, e.g. trefoil or torus:3,4")
    g.add_argument("--in", dest="infile", action=action, help="complex JSON file ('-' for stdin)")
    g.add_argument("--pairing", action=action, help="bordered pairing, e.g. cable_trefoil(2) or K_n(3)")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_one(kind: str, value: str):
    if kind == "knot":
        return cfk.builtin(value)
    if kind == "pairing":
        return bordered.knot_from_pairing(value)
    data = _read_json(value)
    if isinstance(data, dict) and "components" in data:
        return links.LinkComplex.from_json(data)
    return cfk.CfkComplex.from_json(data)


def _sources(args) -> list[tuple[str, str]]:
    out = []
    for kind, attr in (("knot", "knot"), ("infile", "infile"), ("pairing", "pairing")):
        v = getattr(args, attr, None)
        if v is None:
            continue
        for item in (v if isinstance(v, list) else [v]):
            out.append((kind, item))
    return out


def _single(args):
    src = _sources(args)
    if len(src) != 1:
        raise UsageError("give exactly one of --knot, --in, --pairing")
    return _load_one(*src[0])


def _single_knot(args) -> cfk.CfkComplex:
    c = _single(args)
    if isinstance(c, links.LinkComplex):
        raise UsageError("this command needs a knot complex, not a link complex")
    return c


# ---------------------------------------------------------------------------
# output


def _emit(obj, out):
    out.write(json.dumps(obj, ensure_ascii=False, separators=(", ", ": ")) + "\n")


def render_svg(f: PLFunction, width: int = 480, height: int = 320, margin: int = 40) -> str:
    """Polyline through the exact breakpoints; floats only at formatting time."""
    lo, hi = f.domain
    ys = list(f.values) + [Fraction(0)]
    ymin, ymax = min(ys), max(ys)
    if ymin == ymax:
        ymin, ymax = ymin - 1, ymax + 1
    sx = Fraction(width - 2 * margin) / (hi - lo)
    sy = Fraction(height - 2 * margin) / (ymax - ymin)

    def xy(t, y):
        return f"{float(margin + (t - lo) * sx):.6f},{float(margin + (ymax - y) * sy):.6f}"

    pts = " ".join(xy(t, y) for t, y in zip(f.breakpoints, f.values))
    axis = f'{xy(lo, 0)} {xy(hi, 0)}'
    labels = "".join(
        f'<text x="{xy(t, y).split(",")[0]}" y="{xy(t, y).split(",")[1]}" font-size="10">'
        f"({format_rational(t)}, {format_rational(y)})</text>"
        for t, y in zip(f.breakpoints, f.values))
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
            f'<polyline points="{axis}" fill="none" stroke="#999" stroke-width="1"/>'
            f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="2"/>'
            f"{labels}</svg>\n")


# ---------------------------------------------------------------------------
# commands


def cmd_upsilon(args, out):
    if args.link:
        if _sources(args):
            raise UsageError("--link excludes --knot, --in and --pairing")
        c = links.builtin_link(args.link)
    else:
        c = _single(args)
    if isinstance(c, links.LinkComplex):
        if args.at is None:
            raise UsageError("link complexes need --at")
        values = links.upsilon_set(c, args.at)
        if args.format == "json" and args.explicit_format:
            _emit({"t": rational_to_json(args.at), "upsilon_set": [rational_to_json(v) for v in values]}, out)
        else:
            out.write(" ".join(format_rational(v) for v in values) + "\n")
        return 0
    if args.at is not None:
        value = ups.upsilon_at(c, args.at)
        if args.format == "json" and args.explicit_format:
            _emit({"t": rational_to_json(args.at), "upsilon": rational_to_json(value)}, out)
        else:
            out.write(format_rational(value) + "\n")
        return 0
    r = ups.upsilon(c, args.lo, args.hi)
    if args.format == "json":
        _emit(r.to_json(), out)
    elif args.format == "csv":
        out.write(r.to_csv(args.samples))
    else:
        out.write(render_svg(r.upsilon))
    return 0


def cmd_tau(args, out):
    out.write(f"{ups.tau(_single_knot(args))}\n")
    return 0


def cmd_nu(args, out):
    out.write(f"{ups.nu_minus(_single_knot(args))}\n")
    return 0


def cmd_hfk(args, out):
    c = _single_knot(args)
    table = cfk.hfk_hat(c)
    rows = sorted(table.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))
    if args.format == "json":
        _emit({"hfk": [{"m": m, "a": a, "dim": d} for (m, a), d in rows],
               "total": sum(table.values()),
               "alexander": str(cfk.euler_characteristic(table))}, out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["m", "a", "dim"])
        for (m, a), d in rows:
            w.writerow([m, a, d])
    return 0


def cmd_tensor(args, out):
    src = _sources(args)
    if len(src) != 2:
        raise UsageError("tensor needs exactly two inputs (repeat --knot/--in/--pairing)")
    a, b = (_load_one(*s) for s in src)
    if isinstance(a, links.LinkComplex) or isinstance(b, links.LinkComplex):
        raise UsageError("tensor works on knot complexes only")
    c = cfk.tensor(a, b)
    if args.simplify:
        c = cfk.simplify(c)
    _emit(c.to_json(), out)
    return 0


def cmd_mirror(args, out):
    _emit(cfk.dual(_single_knot(args)).to_json(), out)
    return 0


def cmd_phi(args, out):
    if not 0 < args.at < 2:
        raise UsageError("phi needs 0 < t < 2")
    out.write(f"{ups.phi(_single_knot(args), args.at)}\n")
    return 0


def cmd_independence(args, out):
    if args.family == "Tnn1":
        knots = [cfk.builtin(f"torus:{n},{n + 1}") for n in args.n]
        params = [Fraction(2, n) for n in args.n]
        names = [f"T({n},{n + 1})" for n in args.n]
    else:
        knots = [bordered.knot_from_pairing(f"K_n({n})") for n in args.n]
        params = [Fraction(2, 2 * n - 1) for n in args.n]
        names = [f"K_{n}" for n in args.n]
    rep = ups.independence_certificate(knots, params)
    if args.format == "json":
        _emit({"knots": names, "params": [rational_to_json(p) for p in params],
               "jumps": [list(r) for r in rep.jumps], "matrix": [list(r) for r in rep.matrix],
               "unitriangular": rep.unitriangular, "certificate": rep.certificate}, out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t"] + names)
        for p, row in zip(params, rep.matrix):
            w.writerow([format_rational(p)] + list(row))
        out.write(f"# {rep.certificate or 'not unitriangular'}\n")
    return 0 if rep.unitriangular else 1


def cmd_pair(args, out):
    a = bordered.builtin_type_a(args.typeA)
    d = bordered.builtin_type_d(args.typeD, s_reading=args.s_reading, variant=args.variant)
    if args.raw:
        c = bordered.pair(a, d)
    else:
        c = bordered.knot_pairing(a, d)
    _emit(c.to_json(), out)
    return 0


def cmd_verify(args, out):
    from . import acceptance
    wanted = args.only or sorted(acceptance.CRITERIA)
    results = [acceptance.run(k) for k in wanted]
    for r in results:
        out.write(r.line() + "\n")
        if args.verbose or not r.ok:
            for d in r.details:
                out.write(f"    {d}\n")
    passed = sum(r.ok for r in results)
    out.write(f"{passed}/{len(results)} criteria passed\n")
    return 0 if passed == len(results) else 1


def cmd_catalog(args, out):
    entries = {
        "knots": list(cfk.CATALOG),
        "pairings": list(bordered.PAIRINGS),
        "type_a": ["cabling:n"],
        "type_d": ["trefoil_framed2", "square", "wd_trefoil_framed2", "unknot_framed2"],
        "links": ["unlink:l"],
    }
    if args.format == "json":
        _emit(entries, out)
    else:
        for k, v in entries.items():
            out.write(f"{k}: {', '.join(v)}\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="upsilon-kit", description="Exact Upsilon and friends for knot Floer complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("upsilon", help="Upsilon as an exact piecewise linear function, or its value at --at")
    _add_source(s)
    s.add_argument("--link", help="link builtin, e.g. unlink:3 (prints the Upsilon-set at --at)")
    s.add_argument("--at", type=_t_value)
    s.add_argument("--lo", type=_t_value, default=Fraction(0))
    s.add_argument("--hi", type=_t_value, default=Fraction(2))
    s.add_argument("--format", choices=FORMATS)
    s.add_argument("--samples", type=int, help="csv: evenly spaced samples instead of breakpoints")
    s.set_defaults(func=cmd_upsilon)

    for name, fn, helptext in (("tau", cmd_tau, "tau"), ("nu", cmd_nu, "nu-minus"),
                               ("mirror", cmd_mirror, "dual complex (mirror image) as JSON")):
        s = sub.add_parser(name, help=helptext)
        _add_source(s)
        s.set_defaults(func=fn)

    s = sub.add_parser("hfk", help="hat knot Floer homology table")
    _add_source(s)
    s.add_argument("--format", choices=("json", "csv"), default="csv")
    s.set_defaults(func=cmd_hfk)

    s = sub.add_parser("tensor", help="tensor product of two complexes as JSON")
    _add_source(s, multiple=True)
    s.add_argument("--simplify", action="store_true", help="cancel unit arrows first")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("phi", help="normalized slope jump at t")
    _add_source(s)
    s.add_argument("--at", type=_t_value, required=True)
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("independence", help="unitriangularity certificate for a knot family")
    s.add_argument("--family", choices=("Tnn1", "Kn"), required=True)
    s.add_argument("--n", type=_range, required=True, help="N or A..B")
    s.add_argument("--format", choices=("json", "csv"), default="csv")
    s.set_defaults(func=cmd_independence)

    s = sub.add_parser("pair", help="box tensor product of a type A module and a type D structure")
    s.add_argument("--typeA", required=True, help="e.g. cabling:3")
    s.add_argument("--typeD", required=True, help="trefoil_framed2, wd_trefoil_framed2, unknot_framed2")
    s.add_argument("--variant", choices=sorted(bordered.UNKNOT_VARIANTS), help="unknot_framed2 arrow reading")
    s.add_argument("--s-reading", dest="s_reading", choices=("inverse", "direct"), default="inverse")
    s.add_argument("--raw", action="store_true", help="calibrated box tensor without the symmetric completion")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("verify", help="run the acceptance criteria and print a pass/fail table")
    s.add_argument("--only", type=int, action="append", choices=range(1, 11), metavar="K")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalog", help="list builtin objects")
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.set_defaults(func=cmd_catalog)
    return p


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, ensure_ascii=False) + "\n")
    return code


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "upsilon":
        args.explicit_format = args.format is not None
        args.format = args.format or "json"
    try:
        return args.func(args, out)
    except UsageError as exc:
        return _fail(2, "usage", str(exc))
    except (CatalogError, DomainError) as exc:
        return _fail(2, getattr(exc, "kind", "usage"), str(exc.args[0]) if exc.args else str(exc))
    except UpsilonKitError as exc:
        return _fail(1, exc.kind, str(exc))


if __name__ == "__main__":
    sys.exit(main())
