"""Command-line driver: verify, tilde, figure, bell, census.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import entanglement as ent
from . import figures
from . import tilde as tl
from .errors import QuestionsError
from .question_groups import MAX_CENSUS_N, group_census
from .verify import SUITE_NAMES, run_suite

SEED_ENV = "QUESTIONS_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {SEED_ENV} must be an integer, got {raw!r}")


def fmt14(v: float) -> str:
    """Fixed 14 significant digits, trailing zeros kept."""
    return f"{v:#.14g}"


def fmt_short(v: float) -> str:
    """Shortest round-trip representation, capped at 14 significant digits."""
    v = float(v)
    capped = f"{v:.14g}"
    return repr(v) if float(capped) == v else capped


def _probability(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if not (0.0 <= v <= 1.0):
        raise argparse.ArgumentTypeError(f"{text} is outside [0, 1]")
    return v


def _step(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if not (figures.MIN_STEP <= v <= figures.MAX_STEP):
        raise argparse.ArgumentTypeError(
            f"step must lie in [{figures.MIN_STEP}, {figures.MAX_STEP}]")
    return v


def _trials(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 0:
        raise argparse.ArgumentTypeError("trials must be non-negative")
    return v


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.seed)
    print(report.table())
    print(report.to_json())
    return report.exit_code


def cmd_tilde(args) -> int:
    e = tl.tilde_closed_form(args.pa, args.pb)
    print(f"x = {fmt14(e.x)}")
    if args.full:
        print(f"T = {fmt_short(e.T)}")
        print(f"S = {fmt_short(e.S)}")
        print(f"Y = {fmt_short(e.Y)}")
        print(f"U = {fmt_short(e.U.imag)}i")
        print(f"V = {fmt_short(e.V.real)} {'-' if e.V.imag < 0 else '+'} {fmt_short(abs(e.V.imag))}i")
        cond = tl.tilde_conditional(args.pa, args.pb)
        print("P(B|A) = unconstrained" if cond is tl.UNCONSTRAINED else f"P(B|A) = {fmt_short(cond)}")
        if 0.0 < args.pa < 1.0 and 0.0 < args.pb < 1.0:
            roots = tl.quartic_roots_oracle(args.pa, args.pb).roots
            print("roots = [" + ", ".join(fmt_short(r) for r in roots) + "]")
        else:
            print("roots = boundary (oracle needs 0 < pa, pb < 1)")
    return 0


def cmd_figure(args) -> int:
    spec = figures.FigureSpec(args.name, args.step, args.format)
    text = figures.render(spec)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        try:
            figures.write_figure(spec, args.out)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {args.name} ({args.format}) to {args.out}")
    return 0


def cmd_bell(args) -> int:
    p = ent.quantum_bell_probs(args.w_angle)
    print(f"w angle = {fmt_short(args.w_angle)} degrees")
    print(f"P(x1+, y2+) = {p.p_xy:.6f}")
    print(f"P(x1+, w2-) = {p.p_xw:.6f}")
    print(f"P(w1-, y2+) = {p.p_wy:.6f}")
    print(f"{p.p_xw:.6f} + {p.p_wy:.6f} = {p.lhs:.6f} vs {p.p_xy:.6f}: "
          + ("VIOLATED" if p.violated else "not violated"))
    if args.trials > 0:
        print(f"Monte Carlo: {args.trials} trials per pair, seed {args.seed}")
        for s in ent.sample_bell(args.w_angle, args.trials, args.seed):
            print(f"  {s.name}: frequency {s.frequency:.6f} +- {s.stderr:.6f} "
                  f"(exact {s.exact:.6f}, {s.sigmas:.2f} sigma)")
    return 0


def cmd_census(args) -> int:
    ns = range(0, MAX_CENSUS_N + 1) if args.n is None else [args.n]
    for n in ns:
        c = group_census(n, seed=args.seed)
        sizes = ", ".join(f"|S{m}|={v}" for m, v in sorted(c.subject_sizes.items()))
        mode = "exhaustive" if c.exhaustive else "sampled"
        laws = "ok" if (c.closure and c.associativity and c.involution and c.identity) else "FAILED"
        print(f"N={n}: |Q|={c.q_size} |Q1|={c.q1_size} generators={c.generator_count} "
              f"{sizes} |K|={c.k_size} laws {laws} ({mode})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="questions", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default: ${SEED_ENV} or 0)")
    sub = parser.add_subparsers(dest="command", required=True)
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"random seed (default: ${SEED_ENV} or 0)")

    p = sub.add_parser("verify", parents=[seeded], help="run a verification suite")
    p.add_argument("suite", nargs="?", default="all", choices=SUITE_NAMES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tilde", help="evaluate the tilde relation at (pa, pb)")
    p.add_argument("pa", type=_probability)
    p.add_argument("pb", type=_probability)
    p.add_argument("--full", action="store_true", help="print intermediates and quartic roots")
    p.set_defaults(func=cmd_tilde)

    p = sub.add_parser("figure", help="write figure data as CSV or JSON")
    p.add_argument("name", choices=figures.FIGURES)
    p.add_argument("--step", type=_step, default=0.01)
    p.add_argument("--format", choices=figures.FORMATS, default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("bell", parents=[seeded], help="Bell inequality probabilities for the singlet")
    p.add_argument("--w-angle", type=float, default=225.0, help="angle of w from x, in degrees")
    p.add_argument("--trials", type=_trials, default=0)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("census", parents=[seeded], help="question group sizes for N <= 4")
    p.add_argument("-n", type=int, default=None, choices=range(0, MAX_CENSUS_N + 1))
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = default_seed()
    try:
        return args.func(args)
    except (QuestionsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
