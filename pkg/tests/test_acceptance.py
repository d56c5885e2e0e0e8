"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also repeated in the terminal summary.
"""

import time
from itertools import combinations

from argrank.af_core import AF, extensions, status
from argrank.af_io import parse_preorder
from argrank.axioms import (
    IWS_PERTURBATIONS,
    TargetPreorder,
    check_iws,
    check_k_supermajority,
    check_sc,
    check_sigma_c,
    enumerate_afs,
    perturb_worst_stratum,
    prop2_family,
    realisable,
)
from argrank.ext_ranking import ExtensionPreorder, ExtRanking, rank_table
from argrank.social_ranking import apply, lex_cel
from argrank.suite import SuiteReport, run_suite, standard_suite

from .conftest import ACCEPTANCE_LINES, F3_ATTACKS, F4_ATTACKS


def verdict(number, ok, detail, started, budget):
    seconds = time.perf_counter() - started
    ok = ok and seconds < budget
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail} [{seconds:.2f}s, budget {budget:g}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def f1():
    return AF.from_attacks("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "c")])


def sets(af, masks):
    return {frozenset(af.labels(s)) for s in masks}


def fs(*groups):
    return {frozenset(g) for g in groups}


def describe(ranking):
    """Strata string for a total preorder, otherwise the list of incomparable or cyclic pairs."""
    if ranking.is_total_preorder():
        return ranking.format()
    odd = [f"{x}{ranking.outcome(x, y).symbol}{y}" for x, y in combinations(ranking.labels, 2)
           if ranking.outcome(x, y).name == "INCOMPARABLE"]
    if not all(ranking.weakly_better(x, x) for x in ranking.labels):
        odd.append("not reflexive")
    return "partial(" + ", ".join(odd) + ")"


def test_criterion_1_f1_semantics_and_status():
    t = time.perf_counter()
    af = f1()
    got = {sem: sets(af, extensions(af, sem)) for sem in ("co", "pr", "gr")}
    want = {"co": fs("a", "ac", "ad"), "pr": fs("ac", "ad"), "gr": fs("a")}
    st = {k: v.value for k, v in status(af, "co").as_dict().items()}
    want_st = {"a": "skeptical", "b": "rejected", "c": "credulous", "d": "credulous"}
    ok = got == want and st == want_st
    verdict(1, ok, "F1 complete/preferred/grounded extensions and statuses"
            + ("" if ok else f" got {got} {st}"), t, 1)


def test_criterion_2_r_co_strata():
    t = time.perf_counter()
    af = f1()
    rt = rank_table(ExtensionPreorder(af, "r-co"))
    first, second = (sets(af, layer) for layer in rt.strata[:2])
    ok = first == fs("a", "ac", "ad") and second == fs("", "d")
    verdict(2, ok, f"r-co on F1 rank 1 = {sorted(map(sorted, first))}, rank 2 = {sorted(map(sorted, second))}", t, 1)


def test_criterion_3_argument_rankings_on_f1():
    t = time.perf_counter()
    af = f1()
    expected = [
        ("lex-cel", "r-co", "a ≻ d ≻ c ≻ b"),
        ("singleton", "r-ad", "a ≃ d ≻ b ≃ c"),
        ("focusing", "r-ad", "a ≃ c ≃ d ≻ b"),
        ("focusing", "r-co", "a ≃ c ≃ d ≻ b"),
        ("focusing", "r-pr", "a ≃ c ≃ d ≻ b"),
        ("focusing", "r-gr", "a ≻ c ≃ d ≻ b"),
    ]
    misses = []
    for sr, tau, want in expected:
        got = describe(apply(sr, tau, af))
        if got != want:
            misses.append(f"{sr}/{tau}: want {want}, got {got}")
    verdict(3, not misses, "lex-cel, singleton and focusing on F1"
            + ("" if not misses else "; " + "; ".join(misses)), t, 6)


def test_criterion_4_sc_counterexamples():
    t = time.perf_counter()
    f3 = AF.from_attacks("abc", F3_ATTACKS)
    f4 = AF.from_attacks("ab", F4_ATTACKS)
    cp = apply("cp-majority", "r-ad", f3)
    bz = apply("banzhaf", "r-ad", f4)
    parts = {
        "cp-majority c ⪰ a on F3": cp.weakly_better("c", "a"),
        "banzhaf a ⪰ b on F4": bz.weakly_better("a", "b"),
        "cp-majority flagged by SC": not check_sc(f3, cp).holds,
        "banzhaf flagged by SC": not check_sc(f4, bz).holds,
    }
    failed = [k for k, v in parts.items() if not v]
    detail = "SC counterexamples over r-ad"
    if failed:
        detail += (f"; not reproduced: {', '.join(failed)} (cp-majority gives a {cp.outcome('a', 'c').symbol} c, "
                   f"banzhaf gives a {bz.outcome('a', 'b').symbol} b)")
    verdict(4, not failed, detail, t, 1)


def suite_detail(report: SuiteReport) -> tuple[bool, str]:
    bad = [f"{x.name} ({x.failures})" for x in report.tallies.values() if x.failures]
    checks = sum(x.checked for x in report.tallies.values())
    head = f"{report.afs} frameworks, {len(report.tallies)} checks, {checks} instances"
    return not bad, head + ("" if not bad else "; counterexamples in: " + ", ".join(bad))


def test_criterion_5_exhaustive_suite():
    t = time.perf_counter()
    report = standard_suite(max_n=4)
    ok, detail = suite_detail(report)
    assert report.afs == 2 + 16 + 512 + 65536
    verdict(5, ok, "exhaustive n = 1..4: " + detail, t, 600)


def test_criterion_6_sampled_suite():
    t = time.perf_counter()
    report = SuiteReport()
    run_suite(enumerate_afs(5, "sampled", count=100, seed=0), "sampled n=5", report)
    run_suite(enumerate_afs(6, "sampled", count=25, seed=0), "sampled n=6", report)
    ok, detail = suite_detail(report)
    verdict(6, ok, "sampled 100 at n=5 and 25 at n=6: " + detail, t, 600)


def test_criterion_7_supermajority_family():
    t = time.perf_counter()
    problems = []
    for k in (1, 2, 3, 5):
        l = max(k, 3)
        af = prop2_family(k, l)
        rt = rank_table(ExtensionPreorder(af, "r-cf"))
        lc = lex_cel(rt)
        a, b = af.index("a"), af.index("b")
        others = [i for i in range(af.n) if i not in (a, b)]
        contexts = [sum(1 << i for i in c) for r in range(len(others) + 1) for c in combinations(others, r)]
        r = rt.rank
        a_wins = {z for z in contexts if r[z | 1 << a] < r[z | 1 << b]}
        b_wins = {z for z in contexts if r[z | 1 << b] < r[z | 1 << a]}
        if a_wins != {0} or b_wins != {z for z in contexts if bin(z).count("1") >= 2}:
            problems.append(f"k={k}: count sets differ")
        if not check_sigma_c(af, "cf", lc).holds:
            problems.append(f"k={k}: cf-compatibility fails")
        rep = check_k_supermajority(rt, lc, k)
        if rep.holds or {rep.witnesses[0].left, rep.witnesses[0].right} != {"a", "b"}:
            problems.append(f"k={k}: no supermajority violation on (a, b)")
    verdict(7, not problems, "supermajority family k in {1,2,3,5}"
            + ("" if not problems else "; " + "; ".join(problems)), t, 5)


def test_criterion_8_realisability():
    t = time.perf_counter()
    no = realisable(TargetPreorder.from_statements(parse_preorder("{a,b} > {a}")), "r-cf")
    yes = realisable(TargetPreorder.from_statements(parse_preorder("{a} >= {a,b}\n{b} >= {a,b}")), "r-cf")
    ok = no is None and yes is not None
    witness = "none" if yes is None else f"attacks {[(yes.names[x], yes.names[y]) for x, y in yes.attacks]}"
    verdict(8, ok, f"r-cf realisability at n=2: first target unrealisable, second realised by {witness}", t, 1)


def test_criterion_9_independence_from_worst_set():
    t = time.perf_counter()
    count, failures = 0, []
    for n in (1, 2, 3):
        for af in enumerate_afs(n):
            for tau in ExtRanking:
                rt = rank_table(ExtensionPreorder(af, tau))
                for strategy, seed in IWS_PERTURBATIONS:
                    count += 1
                    rep = check_iws(rt, perturb_worst_stratum(rt, strategy, seed), lex_cel)
                    if not rep.holds and len(failures) < 3:
                        failures.append(f"{af} {tau.value} {strategy}/{seed}")
    verdict(9, not failures, f"lex-cel keeps strict preferences over {count} worst-stratum perturbations"
            + ("" if not failures else "; first failures: " + "; ".join(failures)), t, 300)
