"""Command-line frontend.

Exit codes: 0 success/pass, 1 usage or input error, 2 experiment verdict
fail, 3 inconclusive (lower-bound status, budget, not-found, ambiguous).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .complexity import (
    ComplexityProfile,
    ResultStatus,
    SearchConfig,
    expansion_complexity,
    expansion_profile,
    extend_sequence,
    find_defining_poly,
    i_expansion_complexity,
)
from .errors import BudgetExceededError, ExcomError
from .experiments import (
    ExperimentReport,
    compare_carlitz,
    count_exceptional_shifts,
    montecarlo_theorem2,
    verify_derivative_identity,
    verify_theorem3,
    verify_theorem_star,
)
from .field import PrimeField
from .generators import (
    format_sequence,
    inversive_prefix,
    random_prefix,
    read_sequence_file,
    write_sequence_file,
)
from .poly import count_normalized_irreducible, format_poly, parse_poly

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        enum_cap=args.enum_cap,
        sample_cap=args.sample_cap,
        sampling_seed=getattr(args, "search_seed", 0),
        divisor_budget=args.budget,
    )


def _add_search_flags(parser):
    parser.add_argument("--enum-cap", type=int, default=SearchConfig.enum_cap,
                        help="max projective points enumerated exhaustively")
    parser.add_argument("--sample-cap", type=int, default=SearchConfig.sample_cap,
                        help="random samples per level beyond the enumeration cap")
    parser.add_argument("--search-seed", type=int, default=0,
                        help="seed for the sampling fallback")
    parser.add_argument("--budget", type=int, default=SearchConfig.divisor_budget,
                        help="candidate-divisor budget for irreducibility tests")


def _read_input(args):
    if args.input == "-":
        return read_sequence_file(sys.stdin)
    return read_sequence_file(args.input)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _result_text(res) -> str:
    lines = [f"n: {res.n}", f"kind: {res.kind.value}", f"value: {res.value}",
             f"status: {res.status.value}"]
    if res.witness is not None:
        lines.append(f"witness: {format_poly(res.witness)}")
    return "\n".join(lines) + "\n"


def _report_exit(report: ExperimentReport) -> int:
    return {"pass": EXIT_OK, "fail": EXIT_FAIL}.get(report.verdict, EXIT_INCONCLUSIVE)


def _handle_report(report: ExperimentReport, args, human: str) -> int:
    if getattr(args, "csv", None):
        report.write_csv(args.csv)
    if getattr(args, "plot", None):
        from .plotting import save_report_figure

        save_report_figure(report, args.plot)
    if args.json:
        print(report.to_json())
    else:
        sys.stdout.write(human)
    return _report_exit(report)


# -- subcommand handlers ---------------------------------------------------------


def cmd_profile(args) -> int:
    s = _read_input(args)
    n_max = args.nmax if args.nmax is not None else len(s)
    cfg = _search_config(args)
    profile = expansion_profile(s, n_max, with_witnesses=args.witnesses)
    istar = None
    if args.istar:
        istar = tuple(i_expansion_complexity(s, n, cfg) for n in range(1, n_max + 1))
        profile = ComplexityProfile(profile.sequence, profile.entries, istar)
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf)
        header = ["n", "e"]
        if istar:
            header += ["e_star", "e_star_status"]
        if args.witnesses:
            header.append("witness")
        writer.writerow(header)
        for i, entry in enumerate(profile.entries):
            row = [entry.n, entry.value]
            if istar:
                row += [istar[i].value, istar[i].status.value]
            if args.witnesses:
                row.append(format_poly(entry.witness) if entry.witness else "")
            writer.writerow(row)
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    if args.plot:
        from .plotting import save_profile_figure

        save_profile_figure(profile, args.plot)
    if args.json:
        print(json.dumps(profile.to_json_dict(), indent=2))
    else:
        for i, entry in enumerate(profile.entries):
            line = f"N={entry.n:4d}  E={entry.value:3d}"
            if istar:
                line += f"  E*={istar[i].value:3d} ({istar[i].status.value})"
            if args.witnesses and entry.witness is not None:
                line += f"  witness: {format_poly(entry.witness)}"
            print(line)
    if istar and any(e.status != ResultStatus.EXACT for e in istar):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_en(args) -> int:
    s = _read_input(args)
    res = expansion_complexity(s, args.n)
    print(json.dumps(res.to_json_dict(), indent=2) if args.json else _result_text(res), end="")
    return EXIT_OK


def cmd_istar(args) -> int:
    s = _read_input(args)
    res = i_expansion_complexity(s, args.n, _search_config(args))
    print(json.dumps(res.to_json_dict(), indent=2) if args.json else _result_text(res), end="")
    return EXIT_OK if res.status == ResultStatus.EXACT else EXIT_INCONCLUSIVE


def cmd_gen(args) -> int:
    if args.generator == "inversive":
        s = inversive_prefix(args.p, args.shift, args.len)
    else:
        s = random_prefix(PrimeField(args.q), args.len, args.seed)
    if args.out:
        write_sequence_file(s, args.out)
    else:
        sys.stdout.write(format_sequence(s))
    return EXIT_OK


def cmd_find_poly(args) -> int:
    s = _read_input(args)
    h = find_defining_poly(s, args.dmax, _search_config(args))
    if args.json:
        print(json.dumps({"found": h is not None,
                          "poly": h.to_json_dict() if h else None}, indent=2))
    else:
        print(format_poly(h) if h is not None else "not found")
    return EXIT_OK if h is not None else EXIT_INCONCLUSIVE


def cmd_predict(args) -> int:
    s = _read_input(args)
    h = parse_poly(args.poly, s.field)
    result = extend_sequence(h, s, args.extend)
    if args.json:
        print(json.dumps({
            "status": result.status,
            "appended": list(result.appended),
            "failed_at": result.failed_at,
            "candidates": list(result.candidates),
            "sequence": {"p": s.field.p, "symbols": list(result.sequence.symbols)},
        }, indent=2))
    else:
        _emit(format_sequence(result.sequence), args.out)
        if not result.ok:
            sys.stderr.write(
                f"{result.status} at step {result.failed_at}: "
                f"{len(result.candidates)} viable candidates\n"
            )
    return EXIT_OK if result.ok else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    if args.theorem == "theorem3":
        report = verify_theorem3(args.p)
        bad = [c for c in report.cases if not c["ok"]]
        human = (
            f"theorem3 p={args.p}: {report.verdict}"
            + (f" ({len(bad)} mismatches)" if bad else "")
            + "\n"
        )
    elif args.theorem == "star":
        report = verify_theorem_star(args.p, _search_config(args), threads=args.threads)
        human = f"theorem star p={args.p}: {report.verdict}"
        if report.notes:
            human += f" ({'; '.join(report.notes)})"
        human += "\n"
    else:  # gprime
        report = verify_derivative_identity(args.p, args.n)
        human = f"derivative identity p={args.p}, n_check={args.n}: {report.verdict}\n"
    return _handle_report(report, args, human)


def cmd_shifts(args) -> int:
    report = count_exceptional_shifts(args.p, args.d, threads=args.threads)
    params = report.params
    human = (
        f"p={params['p']} d={params['d']} N={params['n']}: "
        f"{params['exceptional_count']} exceptional shifts, "
        f"proof bound {params['proof_bound']} -> {report.verdict}\n"
    )
    return _handle_report(report, args, human)


def cmd_count_irr(args) -> int:
    count = count_normalized_irreducible(PrimeField(args.q), args.d,
                                         divisor_budget=args.budget)
    if args.json:
        print(json.dumps({"q": args.q, "d": args.d, "count": count}))
    else:
        print(count)
    return EXIT_OK


def cmd_carlitz(args) -> int:
    report = compare_carlitz(args.q, args.dmax)
    lines = []
    for c in report.cases:
        lines.append(
            f"d={c['d']}: exact={c['exact']} main={c['main_term']} "
            f"scale={c['error_scale']} ratio={c['ratio']:.3f}"
        )
    human = "\n".join(lines) + f"\nverdict: {report.verdict}\n"
    return _handle_report(report, args, human)


def cmd_mc2(args) -> int:
    report = montecarlo_theorem2(
        args.q, args.n, args.trials, Fraction(args.epsilon), args.seed,
        _search_config(args), threads=args.threads,
    )
    params = report.params
    human = (
        f"q={params['q']} n={params['n']} trials={params['trials']} "
        f"b_n={params['b_n']}: empirical fraction {params['empirical_fraction']:.4f}, "
        f"analytic bound {params['analytic_bound']} "
        f"({params['analytic_bound_float']:.2e}) -> {report.verdict}\n"
    )
    return _handle_report(report, args, human)


# -- parser ------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="excom",
                     description="expansion-complexity analysis over prime fields")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=handler)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("profile", cmd_profile, help="complexity profile of a sequence file")
    p.add_argument("--input", required=True, help="sequence file ('-' for stdin)")
    p.add_argument("--nmax", type=int, default=None, help="largest N (default: prefix length)")
    p.add_argument("--istar", action="store_true", help="also compute E*_N per N")
    p.add_argument("--witnesses", action="store_true", help="attach witness polynomials")
    p.add_argument("--csv", help="write the per-N table to this CSV file")
    p.add_argument("--plot", help="render the profile figure to this file")
    _add_search_flags(p)

    p = add("en", cmd_en, help="expansion complexity at a single N")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("istar", cmd_istar, help="irreducible-expansion complexity at a single N")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_search_flags(p)

    p = add("gen", cmd_gen, help="generate a sequence file")
    gsub = p.add_subparsers(dest="generator", required=True)
    gi = gsub.add_parser("inversive", help="explicit inversive congruential generator")
    gi.add_argument("--p", type=int, required=True)
    gi.add_argument("--shift", type=int, default=0)
    gi.add_argument("--len", type=int, required=True)
    gi.add_argument("--out")
    gi.set_defaults(func=cmd_gen, json=False)
    gr = gsub.add_parser("random", help="seeded uniform random sequence (splitmix64)")
    gr.add_argument("--q", type=int, required=True)
    gr.add_argument("--len", type=int, required=True)
    gr.add_argument("--seed", type=int, required=True)
    gr.add_argument("--out")
    gr.set_defaults(func=cmd_gen, json=False)

    p = add("find-poly", cmd_find_poly, help="recover a defining polynomial from a prefix")
    p.add_argument("--input", required=True)
    p.add_argument("--dmax", type=int, required=True)
    _add_search_flags(p)

    p = add("predict", cmd_predict, help="extend a sequence with a defining polynomial")
    p.add_argument("--poly", required=True, help="polynomial expression, e.g. 'y + 4*x^5'")
    p.add_argument("--input", required=True)
    p.add_argument("--extend", type=int, required=True)
    p.add_argument("--out")

    p = add("verify", cmd_verify, help="run a theorem verification")
    vsub = p.add_subparsers(dest="theorem", required=True)
    v3 = vsub.add_parser("theorem3", help="maximal profile of the inversive generator")
    v3.add_argument("--p", type=int, required=True)
    v3.add_argument("--csv")
    v3.set_defaults(func=cmd_verify, json=False, threads=None)
    vs = vsub.add_parser("star", help="E* = E on maximal-profile windows")
    vs.add_argument("--p", type=int, required=True)
    vs.add_argument("--csv")
    vs.add_argument("--threads", type=int, default=None)
    _add_search_flags(vs)
    vs.set_defaults(func=cmd_verify, json=False)
    vg = vsub.add_parser("gprime", help="derivative identity of the generating function")
    vg.add_argument("--p", type=int, required=True)
    vg.add_argument("--n", type=int, required=True)
    vg.add_argument("--csv")
    vg.set_defaults(func=cmd_verify, json=False, threads=None)
    for vp in (v3, vs, vg):
        vp.add_argument("--json", action="store_true")

    p = add("shifts", cmd_shifts, help="exceptional shifts of the inversive generator")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--plot")
    p.add_argument("--threads", type=int, default=None)

    p = add("count-irr", cmd_count_irr, help="count normalized irreducible polynomials")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--budget", type=int, default=SearchConfig.divisor_budget)

    p = add("carlitz", cmd_carlitz, help="exact counts against the density main term")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--plot")

    p = add("mc2", cmd_mc2, help="Monte Carlo of the E* threshold inequality")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--epsilon", required=True, help="fraction in (0,1), e.g. 1/4 or 0.25")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--plot")
    p.add_argument("--threads", type=int, default=None)
    _add_search_flags(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_INCONCLUSIVE
    except ExcomError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
