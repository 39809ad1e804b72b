"""Command line interface: ``erasing <command> ...``.

Every command accepts ``--json``. Exit status is 0 on success, 1 when a
verification check fails and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import product

from . import fibers, geometry, realmap, verify
from .special import chaos, complexity, fixed
from .substitution import vanishing_order
from .words import BudgetError, EPWord, WordError, check_word, expand, expand_terminating, parse_rational


class UsageError(Exception):
    pass


def _frac(x) -> str:
    return str(Fraction(x))


def _beta(x: Fraction) -> str:
    return str(expand(x)) if x > 0 else "-"


def _beta_prime(x: Fraction) -> str:
    return str(expand_terminating(x)) if x < 1 else "-"


# ---------------------------------------------------------------------------
# commands; each returns (payload dict, text lines)


def cmd_eval(args):
    x = parse_rational(args.x)
    r = realmap.interval_map(x)
    data = {"x": _frac(x), "R": _frac(r), "beta_x": _beta(x), "beta_prime_x": _beta_prime(x),
            "beta_R": _beta(r), "beta_prime_R": _beta_prime(r)}
    lines = [f"x = {data['x']}", f"R = {data['R']}",
             f"beta(x) = {data['beta_x']}", f"beta'(x) = {data['beta_prime_x']}",
             f"beta(R) = {data['beta_R']}", f"beta'(R) = {data['beta_prime_R']}"]
    return data, lines


def cmd_orbit(args):
    x = parse_rational(args.x)
    rec = realmap.iterate_orbit(x, args.max_steps)
    data = {"x": _frac(x), "points": [_frac(p) for p in rec.points], "label": rec.label,
            "steps_to_cycle": rec.steps_to_cycle, "cycle": [_frac(p) for p in rec.cycle]}
    lines = [" -> ".join(data["points"]), f"cycle: {rec.label}",
             f"steps to cycle: {rec.steps_to_cycle if rec.steps_to_cycle is not None else '-'}"]
    return data, lines


def cmd_fiber(args):
    y = parse_rational(args.y)
    spec = fibers.fiber_spec(y)
    data = {"y": _frac(y), "branches": {k: str(v) for k, v in spec.branches().items()},
            "includes_zero": spec.includes_zero}
    lines = [f"y = {data['y']}"]
    lines += [f"section of {k}: {v}" for k, v in data["branches"].items()]
    if spec.includes_zero:
        lines.append("the fibre also contains 0")
    d = fibers.density(y)
    data["density"] = _frac(d)
    lines.append(f"density = {d}")
    if args.dim:
        dim = fibers.fiber_dimension(y)
        data["dimension"] = dim
        lines.append(f"dimension = {dim!r}")
    if args.sample is not None:
        pts = {br: _frac(fibers.fiber_point(y, args.sample, br)) for br in spec.branches()}
        data["sample"] = {"a": list(args.sample), "points": pts}
        lines += [f"point {br} a={tuple(args.sample)}: {p}" for br, p in pts.items()]
    return data, lines


def cmd_graph(args):
    level = args.level
    data = {"level": level}
    lines = []
    if args.out:
        rows = geometry.export_plot_data(args.what, args.out, level)
        data.update(what=args.what, out=str(args.out), rows=rows)
        lines.append(f"wrote {rows} rows of {args.what} data to {args.out}")
    if args.what != "integral":
        a = geometry.area(geometry.rect_level(level))
        data["area"] = _frac(a)
        lines.append(f"area(K_{level}) = {a}")
        if level <= geometry.MAX_BOX_LEVEL:
            b = geometry.box_count(level)
            data["boxes"] = b
            lines.append(f"boxes of side 2^-{level}: {b}")
    return data, lines


def cmd_integral(args):
    n = args.level
    if n < 0 or n % 2:
        raise UsageError("--level must be even and non-negative")
    a = geometry.integral_staircase(n) if n <= geometry.MAX_LEVEL else geometry.integral_recursive(n)
    gap = Fraction(3, 7) - a
    data = {"level": n, "A": _frac(a), "A_decimal": geometry.dyadic_decimal(a),
            "target": "3/7", "gap": float(gap)}
    lines = [f"A_{n} = {data['A_decimal']}", "target = 3/7", f"3/7 - A_{n} = {float(gap)!r}"]
    return data, lines


def cmd_fixed(args):
    a = tuple(args.a or ())
    b = fixed.fixed_point_from_gaps(a)
    digits = b.prefix(args.digits)
    data = {"a": list(a), "digits": digits}
    return data, [digits]


def cmd_periodic(args):
    w = check_word(args.w)
    if not w:
        raise UsageError("--w must be non-empty")
    b = fixed.periodic_point(w, args.choice or ())
    digits = b.prefix(args.digits)
    data = {"w": w, "period": vanishing_order(w), "choice": list(args.choice or ()), "digits": digits}
    return data, [f"period {data['period']}", digits]


_SOURCES = {
    "b0": fixed.simplest_fixed_point,
    "thue-morse": lambda: fixed.thue_morse(0),
    "x1": lambda: fixed.odd_period_point(1),
    "x2": lambda: fixed.odd_period_point(2),
}


def cmd_complexity(args):
    if args.word in _SOURCES:
        b = _SOURCES[args.word]()
    elif "(" in args.word:
        b = EPWord.parse(args.word).lazy()
    else:
        raise UsageError(f"--word must be one of {sorted(_SOURCES)} or PREFIX(PERIOD)")
    ns = args.n if args.n else [1]
    prof = complexity.complexity_profile(b, ns, args.prefix_len)
    data = {"word": args.word, "prefix_len": args.prefix_len, "counts": {str(n): c for n, c in prof.items()}}
    lines = [f"p({n}) = {c}" for n, c in prof.items()]
    return data, lines


def cmd_scrambled(args):
    if args.alpha_bits < 1 or args.alpha_bits > 8:
        raise UsageError("--alpha-bits must be between 1 and 8")
    sources = list(product((0, 1), repeat=args.alpha_bits))
    fam = chaos.scrambled_family(chaos.ScrambledParams(sources, args.w0, args.depth))
    payload = [m.to_json() for m in fam]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(chaos.family_json(fam) + "\n")
    lines = [f"times k_n = {list(fam[0].times)}"]
    for m in fam:
        blocks = " ".join(r["block"][:16] for r in m.checkpoints())
        lines.append(f"member {m.member_id} bits={''.join(map(str, m.bits))} "
                     f"alpha={''.join(map(str, m.alpha))} blocks: {blocks}")
    if args.out:
        lines.append(f"wrote {len(fam)} members to {args.out}")
    return {"depth": args.depth, "members": payload}, lines


def cmd_verify(args):
    report = verify.run(args.suite, args.budget)
    lines = []
    for r in report:
        extra = r.get("detail") or r.get("counterexample") or ""
        lines.append(f"{r['name']}: {r['status']}" + (f" ({extra})" if extra else ""))
    failed = sum(r["status"] != "pass" for r in report)
    lines.append(f"{len(report) - failed}/{len(report)} checks passed")
    return {"suite": args.suite, "budget": args.budget, "checks": report, "failed": failed}, lines


# ---------------------------------------------------------------------------


def _int_list(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("entries must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="erasing", description="Exact dynamics of the erasing substitution map.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("eval", cmd_eval, "image of a rational point")
    sp.add_argument("x", help="p/q, an integer, or PREFIX(PERIOD)")

    sp = add("orbit", cmd_orbit, "orbit of a rational point")
    sp.add_argument("x")
    sp.add_argument("--max-steps", type=int, default=10_000)

    sp = add("fiber", cmd_fiber, "fibre over a rational point")
    sp.add_argument("y")
    sp.add_argument("--dim", action="store_true", help="Hausdorff dimension of the fibre")
    sp.add_argument("--sample", type=_int_list, nargs="*", metavar="A", help="gap sequence of a fibre point")

    sp = add("graph", cmd_graph, "rectangle sets containing the graph")
    sp.add_argument("--level", type=int, default=8)
    sp.add_argument("--out", help="write CSV plot data here")
    sp.add_argument("--what", choices=("rects", "graph", "integral"), default="rects")

    sp = add("integral", cmd_integral, "staircase integral at an even level")
    sp.add_argument("--level", type=int, default=20)

    sp = add("fixed", cmd_fixed, "fixed point with a given gap sequence")
    sp.add_argument("--a", type=_int_list, nargs="*", metavar="A")
    sp.add_argument("--digits", type=int, default=64)

    sp = add("periodic", cmd_periodic, "periodic point through a cylinder")
    sp.add_argument("--w", required=True)
    sp.add_argument("--choice", type=_int_list, nargs="*")
    sp.add_argument("--digits", type=int, default=64)

    sp = add("complexity", cmd_complexity, "factor counts of a prefix")
    sp.add_argument("--n", type=int, nargs="*")
    sp.add_argument("--prefix-len", type=int, default=10_000)
    sp.add_argument("--word", default="b0")

    sp = add("scrambled", cmd_scrambled, "scrambled family over all alpha sources of a given length")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--alpha-bits", type=int, default=2)
    sp.add_argument("--w0", default="1")
    sp.add_argument("--out", help="write the family as JSON here")

    sp = add("verify", cmd_verify, "run invariant checks")
    sp.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    sp.add_argument("--budget", choices=("small", "full"), default="small")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data, lines = args.fn(args)
    except (UsageError, WordError, BudgetError) as exc:
        print(f"erasing {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(lines))
    if args.command == "verify" and data["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
