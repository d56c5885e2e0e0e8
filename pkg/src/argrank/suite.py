"""The theorem-verification harness: run every instance check over many frameworks.

Results are aggregated per check name in a fixed order, and for each check
the first counterexample in enumeration order is kept. A clean run only
means that no counterexample was found in scope.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .af_core import AF, Semantics, status
from .axioms import (
    IWS_PERTURBATIONS,
    CheckReport,
    check_dominating_set,
    check_dominating_via_worst_set,
    check_generalisation,
    check_iws,
    check_pareto,
    check_respects_conflicts,
    check_sc,
    check_sigma_c,
    check_sigma_sk_c,
    enumerate_afs,
    perturb_worst_stratum,
)
from .errors import PremiseViolation
from .ext_ranking import ExtensionPreorder, ExtRanking, naive_ranks, rank_table
from .social_ranking import SocialRanking, focusing_rank, lex_cel, rank_arguments

SIGMAS = (Semantics.AD, Semantics.CO, Semantics.PR, Semantics.GR, Semantics.SST)
RANKINGS = tuple(ExtRanking)


@dataclass
class CheckTally:
    name: str
    checked: int = 0
    skipped: int = 0
    failures: int = 0
    first_failure: dict | None = None

    def add(self, af: AF, ok: bool | None, detail=None):
        """``ok=None`` counts a skipped (vacuous or not-applicable) instance."""
        if ok is None:
            self.skipped += 1
            return
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = {"af": af, "detail": detail}

    def to_dict(self):
        return {
            "check": self.name,
            "checked": self.checked,
            "skipped": self.skipped,
            "counterexamples": self.failures,
            "first_counterexample": self.first_failure,
        }


@dataclass
class SuiteReport:
    scopes: list[str] = field(default_factory=list)
    tallies: dict[str, CheckTally] = field(default_factory=dict)
    afs: int = 0
    seconds: float = 0.0

    def tally(self, name: str) -> CheckTally:
        if name not in self.tallies:
            self.tallies[name] = CheckTally(name)
        return self.tallies[name]

    @property
    def holds(self) -> bool:
        return all(t.failures == 0 for t in self.tallies.values())

    def to_dict(self):
        return {
            "scopes": self.scopes,
            "frameworks": self.afs,
            "holds": self.holds,
            "verdict": "no counterexample found in scope" if self.holds else "counterexample found",
            "checks": [t.to_dict() for t in self.tallies.values()],
        }

    def format(self) -> str:
        lines = [f"scopes: {'; '.join(self.scopes)}", f"frameworks: {self.afs}"]
        width = max((len(n) for n in self.tallies), default=0)
        for t in self.tallies.values():
            mark = "ok  " if t.failures == 0 else "FAIL"
            extra = f", {t.skipped} skipped" if t.skipped else ""
            lines.append(f"{mark} {t.name:<{width}}  {t.checked} checked{extra}, {t.failures} counterexamples")
            if t.first_failure is not None:
                lines.append(f"     first: {t.first_failure['af']!r} {t.first_failure['detail']}")
        lines.append("no counterexample found in scope" if self.holds else "counterexample found")
        return "\n".join(lines)


def _weak_implies(a, b) -> bool:
    return bool((~a.ge | b.ge).all())


def _first_witness(rep: CheckReport):
    return rep.witnesses[0].to_dict() if rep.witnesses else None


def _iws_all(rt, rank_fn) -> CheckReport | None:
    """IWS against every stock perturbation; the first failing report, else None."""
    for strategy, seed in IWS_PERTURBATIONS:
        rep = check_iws(rt, perturb_worst_stratum(rt, strategy, seed), rank_fn)
        if not rep.holds:
            return rep
    return None


def verify_af(af: AF, report: SuiteReport, extended: bool = False) -> None:
    """Run every per-framework check on ``af`` and add the outcomes to ``report``."""
    report.afs += 1
    pres = {tau: ExtensionPreorder(af, tau) for tau in RANKINGS}
    rts = {tau: rank_table(pres[tau]) for tau in RANKINGS}
    lex = {tau: lex_cel(rts[tau], tau) for tau in RANKINGS}

    for sigma in SIGMAS:
        tau = ExtRanking("r-" + sigma.value)
        rep = check_generalisation(af, tau, sigma, pre=pres[tau])
        report.tally(f"generalisation {tau}/{sigma}").add(af, rep.holds, _first_witness(rep))

    for tau in RANKINGS:
        rep = check_respects_conflicts(pres[tau])
        report.tally(f"respects-conflicts {tau}").add(af, rep.holds, _first_witness(rep))

    for tau in RANKINGS:
        naive = naive_ranks(pres[tau])
        ok = np.array_equal(naive, rts[tau].rank)
        report.tally(f"rank oracle {tau}").add(af, ok, None if ok else "layered ranks differ from longest-chain recursion")

    for tau in RANKINGS:
        rep = check_sc(af, lex[tau])
        report.tally(f"lex-cel sc {tau}").add(af, rep.holds, _first_witness(rep))

    for sigma in SIGMAS:
        tau = ExtRanking("r-" + sigma.value)
        st = status(af, sigma)
        rep = check_sigma_c(af, sigma, lex[tau], st)
        report.tally(f"lex-cel sigma-c {tau}/{sigma}").add(af, rep.holds, _first_witness(rep))
        rep = check_sigma_sk_c(af, sigma, lex[tau], st)
        report.tally(f"lex-cel sigma-sk-c {tau}/{sigma}").add(af, None if rep.vacuous else rep.holds, _first_witness(rep))

    for tau in RANKINGS:
        ok = _weak_implies(lex[tau], focusing_rank(pres[tau], tau))
        report.tally(f"lex-cel refines focusing {tau}").add(af, ok, None if ok else "lex-cel weak preference not kept by focusing")

    for tau in RANKINGS:
        rep = check_pareto(rts[tau], lex[tau])
        report.tally(f"lex-cel pareto {tau}").add(af, rep.holds, _first_witness(rep))
        rep = check_dominating_set(pres[tau], lex[tau])
        report.tally(f"lex-cel dominating-set {tau}").add(af, rep.holds, _first_witness(rep))

    if extended:
        _verify_extended(af, report, pres, rts)


def _verify_extended(af, report, pres, rts) -> None:
    """Independence from the worst set and the conditional dominating-set claims."""
    for tau in RANKINGS:
        rt = rts[tau]
        try:
            fail = _iws_all(rt, lex_cel)
        except PremiseViolation as exc:
            report.tally("iws perturbation premise").add(af, False, str(exc))
        else:
            report.tally(f"lex-cel iws {tau}").add(af, fail is None, fail and _first_witness(fail))
        for sr in SocialRanking:
            rep = check_dominating_via_worst_set(rt, lambda t, sr=sr: rank_arguments(sr, t.preorder, t))
            report.tally(f"pareto+iws => dominating-set {sr}").add(af, None if rep.vacuous else rep.holds, _first_witness(rep))

    for tau, sigma in ((ExtRanking.R_CF, Semantics.CF), (ExtRanking.R_AD, Semantics.AD)):
        st = status(af, sigma)
        for sr in SocialRanking:
            ranking = rank_arguments(sr, pres[tau], rts[tau], tau)
            premise = check_sigma_c(af, sigma, ranking, st).holds
            rep = check_dominating_set(pres[tau], ranking)
            report.tally(f"{sigma}-c => dominating-set {sr}/{tau}").add(af, rep.holds if premise else None, _first_witness(rep))


def run_suite(afs: Iterable[AF], scope: str, report: SuiteReport | None = None, extended: bool = False) -> SuiteReport:
    report = report or SuiteReport()
    report.scopes.append(scope)
    start = time.perf_counter()
    for af in afs:
        verify_af(af, report, extended)
    report.seconds += time.perf_counter() - start
    return report


def standard_suite(max_n: int = 4, samples: int = 0, sample_ns=(), seed: int = 0, extended: bool = False) -> SuiteReport:
    """Exhaustive over ``n = 1..max_n`` plus ``samples`` seeded frameworks per size in ``sample_ns``."""
    report = SuiteReport()
    for n in range(1, max_n + 1):
        run_suite(enumerate_afs(n), f"exhaustive n={n}", report, extended)
    for n in sample_ns:
        run_suite(enumerate_afs(n, "sampled", count=samples, seed=seed), f"sampled n={n} ({samples}, seed {seed})", report, extended)
    return report
