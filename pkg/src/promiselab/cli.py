"""Command line entry point.

Subcommands map one-to-one onto the library: run / branches for machine
simulation, simulate / decide for circuits, classify for problems,
enumerate for the presentation series, and gaplang / diagonalize /
ladner for the diagonalization tooling.  Output is deterministic, exact
values are printed as fractions with an advisory 12-digit decimal, and
tables come with a tab-separated header so they parse mechanically.

Exit codes: 0 success, 1 domain error (the error name is printed),
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import circuit as qc
from . import diagonal, enumeration, ptm, tm
from .config import Config, load_config
from .errors import CapExceeded, DimensionCap, PromiseLabError
from .field import FieldElem, decimal_string
from .promise import (BUILTIN_PROBLEMS, TotalDecider, builtin, karp_check,
                      marked_union)
from .words import words_up_to


def _polynomial(text: str) -> enumeration.Polynomial:
    """Comma-separated coefficients, constant term first: "2,1" is 2 + n."""
    try:
        coeffs = tuple(int(part) for part in text.split(","))
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        return enumeration.Polynomial(coeffs)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad polynomial {text!r}: {exc}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad fraction {text!r}: {exc}")


def _problem(ref: str) -> TotalDecider:
    """Problem references: builtin:<name> or machine:<file>."""
    kind, _, rest = ref.partition(":")
    if kind == "builtin" and rest:
        return builtin(rest)
    if kind == "machine" and rest:
        machine = tm.load_machine_file(rest)
        return TotalDecider.from_machine(f"machine:{rest}", machine,
                                         lambda n: 10_000)
    raise argparse.ArgumentTypeError(
        f"bad problem reference {ref!r}; use builtin:<name> or machine:<file>")


def _presentation(spec: str, problem_for_harder: TotalDecider | None = None
                  ) -> enumeration.Enumeration:
    """Presentation specs: builtins:<name>,<name>,... or family:<name>."""
    kind, _, rest = spec.partition(":")
    if kind == "builtins" and rest:
        return enumeration.builtins_presentation(
            [builtin(name) for name in rest.split(",")])
    if kind == "family" and rest:
        fam = rest.lower()
        if fam == "p":
            return enumeration.p_presentation()
        if fam == "np":
            return enumeration.np_presentation()
        return enumeration.starred_presentation(fam)
    raise argparse.ArgumentTypeError(
        f"bad presentation spec {spec!r}; use builtins:a,b,c or family:<name>")


def _r_spec(text: str) -> diagonal.CostedFunction:
    """Gap function specs: succ, or affine:<slope>:<offset>."""
    if text == "succ":
        return diagonal.affine_costed(1, 1)
    if text.startswith("affine:"):
        parts = text.split(":")
        if len(parts) == 3:
            return diagonal.affine_costed(int(parts[1]), int(parts[2]))
    raise argparse.ArgumentTypeError(
        f"bad gap function spec {text!r}; use succ or affine:<a>:<b>")


def _print_exact(label: str, value: FieldElem) -> None:
    print(f"{label}: {value}  (~ {decimal_string(value)})")


def _cmd_run(args, config: Config) -> int:
    machine = tm.load_machine_file(args.machine)
    fuel = args.fuel if args.fuel is not None else config.default_fuel
    result = tm.run(machine, args.input, fuel)
    if isinstance(result, tm.Halted):
        print(f"halted\toutput={result.output}\tsteps={result.steps}")
    else:
        print(f"fuel-exhausted\tsteps={result.steps}")
    return 0


def _cmd_branches(args, config: Config) -> int:
    machine = ptm.load_ptm_file(args.machine)
    fuel = args.fuel if args.fuel is not None else config.default_fuel
    stats = ptm.enumerate_branches(machine, args.input, fuel)
    print("accepting\trejecting\ttotal\tp_acc\tp_rej")
    print(f"{stats.accepting}\t{stats.rejecting}\t{stats.total}"
          f"\t{stats.p_acc}\t{stats.p_rej}")
    _print_exact("p_acc", FieldElem(stats.p_acc))
    return 0


def _cmd_simulate(args, config: Config) -> int:
    circ = qc.load_circuit_file(args.circuit, args.witness_header)
    if circ.total_qubits > config.max_qubits:
        raise DimensionCap(
            f"{circ.total_qubits} qubits exceed cap {config.max_qubits}")
    print(f"gates: {circ.listing()}")
    print(f"qubits: {circ.total_qubits}\twitness: {circ.witness_qubits}"
          f"\ttrivial: {'yes' if circ.trivial else 'no'}")
    basis = args.input if args.input is not None else "0" * circ.total_qubits
    _print_exact("p_acc", qc.p_acc(circ, basis))
    return 0


def _cmd_decide(args, config: Config) -> int:
    gen = tm.load_machine_file(args.gen)
    thresholds = (args.c if args.c is not None else config.threshold_c,
                  args.s if args.s is not None else config.threshold_s)
    if args.problem_class == "bqp":
        verdict = qc.classify_bqp(gen, args.gen_runtime, args.input, thresholds)
    elif args.problem_class == "qcma":
        verdict = qc.classify_qcma(gen, args.gen_runtime, args.input, thresholds,
                                   witness_cap=2 ** config.max_witness_qubits)
    else:
        verdict = qc.classify_qma(gen, args.gen_runtime, args.input, thresholds,
                                  dimension_cap=2 ** config.max_witness_qubits)
    print(verdict.value)
    return 0


def _cmd_classify(args) -> int:
    print(args.problem.classify(args.input).value)
    return 0


def _cmd_enumerate(args, config: Config) -> int:
    if args.index > config.max_enum_index:
        raise CapExceeded(
            f"index {args.index} exceeds configured cap {config.max_enum_index}")
    if args.max_len > config.max_word_length:
        raise CapExceeded(
            f"--max-len {args.max_len} exceeds cap {config.max_word_length}")
    fam = args.family.lower()
    if fam in ("polyfunc",):
        f = enumeration.polyfunc_series(args.index)
        print("word\timage")
        for w in words_up_to(args.max_len):
            print(f"{w or '(empty)'}\t{f(w) or '(empty)'}")
        return 0
    if fam == "p":
        decider = enumeration.p_machine(args.index)
    elif fam == "np":
        decider = enumeration.np_machine(args.index)
    else:
        decider = enumeration.class_presentation(fam, args.index)
    print(f"decider: {decider.tag}")
    print("word\tverdict")
    for w in words_up_to(args.max_len):
        print(f"{w or '(empty)'}\t{decider.classify(w).value}")
    return 0


def _cmd_gaplang(args) -> int:
    r = args.r
    if args.member is not None:
        print("true" if diagonal.gap_member(r, args.member) else "false")
    if args.table is not None:
        print("start\tend\tmember")
        for start, end, member in diagonal.gap_intervals(r, args.table):
            print(f"{start}\t{end}\t{'true' if member else 'false'}")
    return 0


def _emit_diag_report(result: diagonal.DiagResult, target: TotalDecider,
                      bound: int, r_table_rows: int) -> None:
    r = result.r
    print("## r-table")
    print("n\tq\tq_prime\tr")
    for n in range(r_table_rows + 1):
        q = result.q.value(n) if result.q else ""
        q_prime = result.q_prime.value(n) if result.q_prime else ""
        print(f"{n}\t{q}\t{q_prime}\t{r.value(n)}")
    print()
    print("## intervals")
    print("start\tend\tmember")
    for start, end, member in diagonal.gap_intervals(r, r_table_rows):
        print(f"{start}\t{end}\t{'true' if member else 'false'}")
    print()
    print("## witnesses")
    print("side\tmachine\tinterval\tstart\tend\tword\ta_verdict\tmachine_verdict")
    for w in result.witnesses:
        print(f"{w.side}\t{w.machine_index}\t{w.interval_index}"
              f"\t{w.interval_start}\t{w.interval_end}\t{w.word}"
              f"\t{w.a_verdict.value}\t{w.machine_verdict.value}")
    print()
    print("## reduction-check")
    report = karp_check(result.reduction, result.b, target, bound)
    print("checked\tviolations")
    print(f"{report.checked}\t{len(report.violations)}")


def _cmd_diagonalize(args) -> int:
    a = args.a
    a_prime = args.aprime
    inst = diagonal.DiagInstance(
        a, a_prime, args.a_pres, args.aprime_pres,
        args.a_mode, args.aprime_mode, args.search_cap)
    result = diagonal.diagonalize(inst, witness_bound=args.witnesses)
    _emit_diag_report(result, marked_union(a, a_prime), args.bound, args.table)
    return 0


def _cmd_ladner(args) -> int:
    a = args.a
    pres_c = args.pres
    pres_harder = enumeration.harder_set_presentation(a, pres_c, "T")
    result = diagonal.ladner(a, pres_c, args.a_mode, pres_harder,
                             search_cap=args.search_cap,
                             witness_bound=args.witnesses)
    _emit_diag_report(result, marked_union(a, builtin("const-no")),
                      args.bound, args.table)
    print()
    print("## reduction-to-a")
    assert result.reduction_to_a is not None
    report = karp_check(result.reduction_to_a, result.b, a, args.bound)
    print("checked\tviolations")
    print(f"{report.checked}\t{len(report.violations)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="promiselab",
        description="exact deciders for promise problems and delayed "
                    "diagonalization at desk scale")
    parser.add_argument("--config", help="flat key=value configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a deterministic machine")
    p.add_argument("--machine", required=True)
    p.add_argument("--input", action="append", default=[])
    p.add_argument("--fuel", type=int, default=None)

    p = sub.add_parser("branches", help="enumerate probabilistic branches")
    p.add_argument("--machine", required=True)
    p.add_argument("--input", action="append", default=[])
    p.add_argument("--fuel", type=int, default=None)

    p = sub.add_parser("simulate", help="parse and simulate a circuit file")
    p.add_argument("--circuit", required=True)
    p.add_argument("--witness-header", action="store_true")
    p.add_argument("--input", default=None, help="basis input bits")

    p = sub.add_parser("decide", help="decide via a circuit generator")
    p.add_argument("problem_class", choices=("bqp", "qcma", "qma"))
    p.add_argument("--gen", required=True, help="generator machine file")
    p.add_argument("--input", required=True)
    p.add_argument("--gen-runtime", type=_polynomial,
                   default=enumeration.Polynomial((1000, 100)))
    p.add_argument("--c", type=_fraction, default=None)
    p.add_argument("--s", type=_fraction, default=None)

    p = sub.add_parser("classify", help="classify a word under a problem")
    p.add_argument("--problem", required=True, type=_problem)
    p.add_argument("--input", required=True)

    p = sub.add_parser("enumerate", help="print a presented decider's verdicts")
    p.add_argument("family")
    p.add_argument("index", type=int)
    p.add_argument("--max-len", type=int, default=4)

    p = sub.add_parser("gaplang", help="gap language membership")
    p.add_argument("--r", type=_r_spec, required=True)
    p.add_argument("--member", default=None)
    p.add_argument("--table", type=int, default=None,
                   help="also print intervals up to this length")

    p = sub.add_parser("diagonalize", help="run the diagonalization construction")
    p.add_argument("--a", required=True, type=_problem)
    p.add_argument("--a-pres", required=True, type=_presentation)
    p.add_argument("--aprime", required=True, type=_problem)
    p.add_argument("--aprime-pres", required=True, type=_presentation)
    p.add_argument("--a-mode", default=diagonal.PRESENTABLE,
                   choices=(diagonal.PRESENTABLE, diagonal.REPRESENTABLE))
    p.add_argument("--aprime-mode", default=diagonal.PRESENTABLE,
                   choices=(diagonal.PRESENTABLE, diagonal.REPRESENTABLE))
    p.add_argument("--bound", type=int, default=8,
                   help="reduction spot-check word length")
    p.add_argument("--witnesses", type=int, default=3)
    p.add_argument("--search-cap", type=int, default=diagonal.DEFAULT_SEARCH_CAP)
    p.add_argument("--table", type=int, default=16,
                   help="interval table length bound")

    p = sub.add_parser("ladner", help="intermediate problem construction")
    p.add_argument("--a", required=True, type=_problem)
    p.add_argument("--pres", required=True, type=_presentation)
    p.add_argument("--a-mode", default=diagonal.PRESENTABLE,
                   choices=(diagonal.PRESENTABLE, diagonal.REPRESENTABLE))
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--witnesses", type=int, default=3)
    p.add_argument("--search-cap", type=int, default=diagonal.DEFAULT_SEARCH_CAP)
    p.add_argument("--table", type=int, default=16)

    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(args.config) if args.config else Config()
        if args.command == "run":
            return _cmd_run(args, config)
        if args.command == "branches":
            return _cmd_branches(args, config)
        if args.command == "simulate":
            return _cmd_simulate(args, config)
        if args.command == "decide":
            return _cmd_decide(args, config)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "enumerate":
            return _cmd_enumerate(args, config)
        if args.command == "gaplang":
            return _cmd_gaplang(args)
        if args.command == "diagonalize":
            return _cmd_diagonalize(args)
        if args.command == "ladner":
            return _cmd_ladner(args)
        raise AssertionError(f"unhandled command {args.command}")
    except (PromiseLabError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
