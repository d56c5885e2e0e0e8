"""Command-line front end: ``argrank <subcommand> ...``.

Exit codes: 0 success, 1 principle violated, 2 usage or parse error,
3 capacity error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import af_io
from .af_core import Semantics, extensions, status
from .axioms import (
    IWS_PERTURBATIONS,
    Principle,
    TargetPreorder,
    check_dominating_set,
    check_generalisation,
    check_iws,
    check_k_supermajority,
    check_pareto,
    check_refinement,
    check_respects_conflicts,
    check_sc,
    check_sigma_c,
    check_sigma_sk_c,
    perturb_worst_stratum,
    realisable,
)
from .errors import ArgRankError, CapacityError, ParseError
from .ext_ranking import ExtensionPreorder, ExtRanking, rank_table
from .social_ranking import POWERSET_CAP, SocialRanking, rank_arguments
from .suite import standard_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

_DEFAULTS = {"format": "text", "input_format": "auto", "force": False, "ascii": False}


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand without clobbering each other.
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    p.add_argument("--input-format", choices=["auto", "apx", "iccma"], default=argparse.SUPPRESS)
    p.add_argument("--force", action="store_true", default=argparse.SUPPRESS,
                   help=f"allow powerset computations above {POWERSET_CAP} arguments")
    p.add_argument("--ascii", action="store_true", default=argparse.SUPPRESS,
                   help="use > and = instead of the Unicode relation symbols")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="argrank", parents=[common],
                                     description="Extension and argument rankings for abstract argumentation.")
    sub = parser.add_subparsers(dest="command", required=True)
    sems = [s.value for s in Semantics]
    ers = [t.value for t in ExtRanking]
    srs = [s.value for s in SocialRanking]

    p = sub.add_parser("extensions", parents=[common], help="list the extensions of a semantics")
    p.add_argument("file")
    p.add_argument("--semantics", "-s", choices=sems, required=True)

    p = sub.add_parser("status", parents=[common], help="skeptical/credulous/rejected per argument")
    p.add_argument("file")
    p.add_argument("--semantics", "-s", choices=sems, required=True)

    p = sub.add_parser("erank", parents=[common], help="rank strata of all subsets")
    p.add_argument("file")
    p.add_argument("--er", choices=ers, required=True)

    p = sub.add_parser("arank", parents=[common], help="argument ranking via a social ranking function")
    p.add_argument("file")
    p.add_argument("--sr", choices=srs, required=True)
    p.add_argument("--er", choices=ers, required=True)

    p = sub.add_parser("compare", parents=[common], help="compare two sets under an extension ranking")
    p.add_argument("file")
    p.add_argument("--er", choices=ers, required=True)
    p.add_argument("--set", dest="sets", action="append", default=[], metavar="LABELS",
                   help="comma-separated labels; give exactly twice (empty string for the empty set)")

    p = sub.add_parser("check", parents=[common], help="check principles on one framework")
    p.add_argument("file")
    p.add_argument("--principle", required=True, help="comma-separated: " + ", ".join(x.value for x in Principle))
    p.add_argument("--sr", choices=srs, default=SocialRanking.LEX_CEL.value)
    p.add_argument("--er", choices=ers, required=True)
    p.add_argument("--sigma", choices=sems, help="semantics for the sigma-* principles (default: the one behind --er)")
    p.add_argument("--k", type=int, help="multiplier for rank-k-supermajority")

    p = sub.add_parser("verify", parents=[common], help="run the theorem suite over enumerated frameworks")
    p.add_argument("--max-n", type=int, default=4, help="exhaustive for n = 1..MAX_N (at most 4)")
    p.add_argument("--samples", type=int, default=0, help="seeded random frameworks per sampled size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", dest="sample_ns", type=int, action="append", default=[],
                   help="framework size to sample (repeatable)")
    p.add_argument("--extended", action="store_true",
                   help="also check independence from the worst set and the conditional dominating-set claims (slow)")

    p = sub.add_parser("realise", aliases=["realize"], parents=[common], help="search for an AF inducing a preorder")
    p.add_argument("file", help="preorder file with lines 'SET >= SET', 'SET > SET' or 'SET == SET'")
    p.add_argument("--er", choices=ers, required=True)
    p.add_argument("--exact", action="store_true", help="also require unrelated pairs to be incomparable")
    return parser


# ---------------------------------------------------------------------------
# helpers


def _set_text(labels) -> str:
    return "{" + ", ".join(labels) + "}"


def _guard(af, args) -> None:
    if af.n > POWERSET_CAP and not args.force:
        raise CapacityError(f"{af.n} arguments exceed the powerset cap of {POWERSET_CAP}; pass --force to continue")


def _parse_set(af, text: str) -> int:
    labels = [x.strip() for x in text.strip().strip("{}").split(",") if x.strip()]
    try:
        return af.set_of(labels)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"unknown argument in --set {text!r}: {exc}") from None


def _symbol(outcome, ascii_: bool) -> str:
    return outcome.ascii if ascii_ else outcome.symbol


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, payload for JSON, text)


def _cmd_extensions(args):
    af = af_io.read_af(args.file, args.input_format)
    sem = Semantics(args.semantics)
    sets = tuple(extensions(af, sem))
    text = "\n".join(_set_text(af.labels(s)) for s in sets) if sets else "(no extensions)"
    return EXIT_OK, af_io.ExtensionList(af, sem, sets), text


def _cmd_status(args):
    af = af_io.read_af(args.file, args.input_format)
    rep = status(af, Semantics(args.semantics))
    lines = [f"{name}: {rep.of(i).value}" for i, name in enumerate(af.names)]
    if rep.vacuous:
        lines.append("(no extensions: every argument is rejected and skeptical acceptance is undefined)")
    return EXIT_OK, rep, "\n".join(lines)


def _cmd_erank(args):
    af = af_io.read_af(args.file, args.input_format)
    _guard(af, args)
    rt = rank_table(ExtensionPreorder(af, args.er))
    lines = [f"rank {k}: " + ", ".join(_set_text(af.labels(s)) for s in stratum)
             for k, stratum in enumerate(rt.strata, start=1)]
    return EXIT_OK, rt, "\n".join(lines)


def _matrix_text(ranking, ascii_: bool) -> str:
    width = max(2, *(len(x) for x in ranking.labels))
    head = " " * width + " " + " ".join(f"{x:>{width}}" for x in ranking.labels)
    rows = [head]
    for a in range(ranking.n):
        cells = " ".join(f"{_symbol(ranking.outcome(a, b), ascii_):>{width}}" for b in range(ranking.n))
        rows.append(f"{ranking.labels[a]:<{width}} {cells}")
    return "\n".join(rows)


def _cmd_arank(args):
    af = af_io.read_af(args.file, args.input_format)
    _guard(af, args)
    pre = ExtensionPreorder(af, args.er)
    ranking = rank_arguments(args.sr, pre, extension=args.er, force=args.force)
    head = ranking.format(args.ascii) if ranking.is_total_preorder() else "(not a total preorder)"
    return EXIT_OK, ranking, head + "\n\n" + _matrix_text(ranking, args.ascii)


def _cmd_compare(args):
    if len(args.sets) != 2:
        raise ParseError(f"compare needs exactly two --set options, got {len(args.sets)}")
    af = af_io.read_af(args.file, args.input_format)
    e, f = (_parse_set(af, s) for s in args.sets)
    outcome = ExtensionPreorder(af, args.er).compare(e, f)
    payload = {"extension_ranking": args.er, "left": af.labels(e), "right": af.labels(f),
               "outcome": outcome.name, "symbol": outcome.symbol}
    return EXIT_OK, payload, outcome.name


def _run_principle(p: Principle, af, args):
    tau = ExtRanking(args.er)
    sigma = Semantics(args.sigma) if args.sigma else tau.semantics
    pre = ExtensionPreorder(af, tau)
    if p is Principle.RESPECTS_CONFLICTS:
        return check_respects_conflicts(pre)
    if p in (Principle.SIGMA_SOUNDNESS, Principle.SIGMA_COMPLETENESS, Principle.SIGMA_GENERALISATION):
        part = {"sigma-soundness": "soundness", "sigma-completeness": "completeness"}.get(p.value, "both")
        return check_generalisation(af, tau, sigma, part, pre)

    rt = rank_table(pre)
    rank_fn = lambda t: rank_arguments(args.sr, t.preorder, t, tau, force=args.force)  # noqa: E731
    ranking = rank_fn(rt)
    if p is Principle.SC:
        return check_sc(af, ranking)
    if p is Principle.SIGMA_C:
        return check_sigma_c(af, sigma, ranking)
    if p is Principle.SIGMA_SK_C:
        return check_sigma_sk_c(af, sigma, ranking)
    if p is Principle.SIGMA_REFINEMENT:
        return check_refinement(af, sigma, ranking)
    if p is Principle.PARETO_EFFICIENCY:
        return check_pareto(rt, ranking)
    if p is Principle.DOMINATING_SET:
        return check_dominating_set(pre, ranking)
    if p is Principle.RANK_K_SUPERMAJORITY:
        if args.k is None:
            raise ParseError("rank-k-supermajority needs --k")
        return check_k_supermajority(rt, ranking, args.k)
    # independence from the worst set: every stock perturbation, first failure wins
    rep = None
    for strategy, seed in IWS_PERTURBATIONS:
        rep = check_iws(rt, perturb_worst_stratum(rt, strategy, seed), rank_fn)
        if not rep.holds:
            break
    rep.note = f"{len(IWS_PERTURBATIONS)} worst-stratum perturbations tried"
    return rep


def _cmd_check(args):
    try:
        principles = [Principle(x.strip().lower()) for x in args.principle.split(",") if x.strip()]
    except ValueError:
        bad = next(x for x in args.principle.split(",") if x.strip().lower() not in {p.value for p in Principle})
        raise ParseError(f"unknown principle {bad.strip()!r}") from None
    af = af_io.read_af(args.file, args.input_format)
    _guard(af, args)
    reports = [_run_principle(p, af, args) for p in principles]
    lines = []
    for rep in reports:
        tag = rep.principle + (f" [{rep.semantics}]" if rep.semantics else "")
        verdict = "holds" + (" (vacuously)" if rep.vacuous else "") if rep.holds else "violated"
        lines.append(f"{tag}: {verdict}")
        for w in rep.witnesses:
            left = _set_text(w.left) if isinstance(w.left, list) else w.left
            pair = left if w.right is None else f"({left}, {w.right})"
            rel = f" {_symbol(w.outcome, args.ascii)}" if w.outcome is not None else ""
            lines.append(f"  witness {pair}{rel}: {w.reason}")
    code = EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATION
    payload = {"extension_ranking": args.er, "social_ranking": args.sr, "reports": reports}
    return code, payload, "\n".join(lines)


def _cmd_verify(args):
    if not 0 <= args.max_n <= 4:
        raise ParseError(f"--max-n must be between 0 and 4, got {args.max_n}")
    if args.sample_ns and args.samples <= 0:
        raise ParseError("--n needs --samples with a positive count")
    ns = args.sample_ns or ([5] if args.samples > 0 else [])
    report = standard_suite(args.max_n, args.samples, ns, args.seed, args.extended)
    code = EXIT_OK if report.holds else EXIT_VIOLATION
    return code, report, report.format()


def _cmd_realise(args):
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    target = TargetPreorder.from_statements(af_io.parse_preorder(text))
    af = realisable(target, args.er, exact=args.exact)
    if af is None:
        return EXIT_OK, {"realisable": False, "extension_ranking": args.er, "af": None}, "not realisable in scope"
    return EXIT_OK, {"realisable": True, "extension_ranking": args.er, "af": af}, af_io.write_apx(af).rstrip("\n")


COMMANDS = {
    "extensions": _cmd_extensions,
    "status": _cmd_status,
    "erank": _cmd_erank,
    "arank": _cmd_arank,
    "compare": _cmd_compare,
    "check": _cmd_check,
    "verify": _cmd_verify,
    "realise": _cmd_realise,
    "realize": _cmd_realise,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        code, payload, text = COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"argrank: capacity error: {exc}", file=stderr)
        return EXIT_CAPACITY
    except (ArgRankError, ValueError, OSError) as exc:
        print(f"argrank: error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.format == "json":
        stdout.write(af_io.write_json(payload))
    else:
        stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
