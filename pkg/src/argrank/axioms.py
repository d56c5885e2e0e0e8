"""Instance-level principle checkers and the generators that feed them.

Every checker looks at one framework or one preorder and returns a
:class:`CheckReport`. Universal claims are only ever tested instance by
instance, so a passing report means "no counterexample in this instance".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .af_core import AF, Semantics, StatusReport, extension_mask, membership, status, subset_ids
from .af_io import PreorderStatement
from .errors import ArgRankError, PremiseViolation
from .ext_ranking import (
    ComparisonOutcome,
    ExtensionPreorder,
    ExtRanking,
    RankTable,
    SetPreorder,
    most_plausible,
    rank_table,
    ranking_matrix,
    signature_tables,
)
from .social_ranking import ArgumentRanking

EXHAUSTIVE_MAX_N = 4


class Principle(str, enum.Enum):
    SC = "sc"
    SIGMA_C = "sigma-c"
    SIGMA_SK_C = "sigma-sk-c"
    SIGMA_REFINEMENT = "sigma-refinement"
    SIGMA_SOUNDNESS = "sigma-soundness"
    SIGMA_COMPLETENESS = "sigma-completeness"
    SIGMA_GENERALISATION = "sigma-generalisation"
    RESPECTS_CONFLICTS = "respects-conflicts"
    PARETO_EFFICIENCY = "pareto-efficiency"
    DOMINATING_SET = "dominating-set"
    INDEPENDENCE_WORST_SET = "independence-worst-set"
    RANK_K_SUPERMAJORITY = "rank-k-supermajority"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Witness:
    """One violating tuple: two arguments (labels) or two sets (sorted label lists)."""

    left: object
    right: object
    outcome: ComparisonOutcome | None = None
    reason: str = ""

    def to_dict(self):
        return {
            "left": self.left,
            "right": self.right,
            "outcome": self.outcome.symbol if self.outcome is not None else None,
            "reason": self.reason,
        }


@dataclass
class CheckReport:
    principle: str
    holds: bool
    witnesses: list[Witness] = field(default_factory=list)
    semantics: str | None = None
    vacuous: bool = False
    note: str = ""

    def __post_init__(self):
        if not self.holds and not self.witnesses:
            raise ValueError("a failing report needs at least one witness")

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {
            "principle": str(self.principle),
            "semantics": self.semantics,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "note": self.note,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _report(principle, witnesses, semantics=None, **kw) -> CheckReport:
    sem = str(semantics) if semantics is not None else None
    return CheckReport(str(principle), not witnesses, witnesses, sem, **kw)


def _require_strict(ranking: ArgumentRanking, pairs, reason: str) -> list[Witness]:
    out = []
    for a, b in pairs:
        o = ranking.outcome(a, b)
        if o is not ComparisonOutcome.STRICTLY_BETTER:
            out.append(Witness(ranking.labels[a], ranking.labels[b], o, reason))
    return out


def _set_labels(labels, s) -> list[str]:
    return sorted(labels[i] for i in range(len(labels)) if s >> i & 1)


# ---------------------------------------------------------------------------
# Argument-ranking principles


def check_sc(af: AF, ranking: ArgumentRanking) -> CheckReport:
    """Self-contradiction: every non-self-attacker beats every self-attacker."""
    clean = [a for a in range(af.n) if not af.self_attacking(a)]
    dirty = [b for b in range(af.n) if af.self_attacking(b)]
    pairs = [(a, b) for a in clean for b in dirty]
    return _report(Principle.SC, _require_strict(ranking, pairs, "self-attacker not ranked last"))


def check_sigma_c(af: AF, sigma, ranking: ArgumentRanking, st: StatusReport | None = None) -> CheckReport:
    st = st or status(af, sigma)
    cred = [a for a in range(af.n) if st.credulous >> a & 1]
    rej = [b for b in range(af.n) if st.rejected >> b & 1]
    pairs = [(a, b) for a in cred for b in rej]
    return _report(Principle.SIGMA_C, _require_strict(ranking, pairs, "credulous not above rejected"), sigma)


def check_sigma_sk_c(af: AF, sigma, ranking: ArgumentRanking, st: StatusReport | None = None) -> CheckReport:
    st = st or status(af, sigma)
    if st.vacuous:
        return _report(Principle.SIGMA_SK_C, [], sigma, vacuous=True, note="no extensions; skeptical status undefined")
    sk = [a for a in range(af.n) if st.skeptical >> a & 1]
    rest = [b for b in range(af.n) if not st.skeptical >> b & 1]
    pairs = [(a, b) for a in sk for b in rest]
    return _report(Principle.SIGMA_SK_C, _require_strict(ranking, pairs, "skeptical not above the rest"), sigma)


def check_refinement(af: AF, sigma, ranking: ArgumentRanking, st: StatusReport | None = None) -> CheckReport:
    st = st or status(af, sigma)
    c = check_sigma_c(af, sigma, ranking, st)
    sk = check_sigma_sk_c(af, sigma, ranking, st)
    return _report(Principle.SIGMA_REFINEMENT, c.witnesses + sk.witnesses, sigma, vacuous=sk.vacuous)


# ---------------------------------------------------------------------------
# Extension-ranking principles


def check_generalisation(af: AF, tau, sigma, part: str = "both", pre: SetPreorder | None = None) -> CheckReport:
    """Most plausible sets of ``tau`` against the ``sigma`` extensions.

    ``part`` selects soundness (``max ⊆ σ``), completeness (``max ⊇ σ``) or both.
    """
    tau = ExtRanking(tau)
    pre = pre or ExtensionPreorder(af, tau)
    best = set(most_plausible(pre))
    exts = {int(s) for s in np.flatnonzero(extension_mask(af, sigma))}
    witnesses = []
    if part in ("both", "soundness"):
        for s in sorted(best - exts):
            witnesses.append(Witness(af.labels(s), None, None, f"most plausible under {tau} but not a {sigma} extension"))
    if part in ("both", "completeness"):
        for s in sorted(exts - best):
            witnesses.append(Witness(af.labels(s), None, None, f"{sigma} extension but not most plausible under {tau}"))
    principle = {
        "both": Principle.SIGMA_GENERALISATION,
        "soundness": Principle.SIGMA_SOUNDNESS,
        "completeness": Principle.SIGMA_COMPLETENESS,
    }[part]
    return _report(principle, witnesses, sigma)


def check_respects_conflicts(pre: ExtensionPreorder) -> CheckReport:
    """Every conflict-free set is strictly above every conflicting set."""
    cf = pre.af.conflict_free_table
    block = pre.strict[np.ix_(cf, ~cf)]
    witnesses = []
    if not block.all():
        ids = subset_ids(pre.n)
        i, j = np.argwhere(~block)[0]
        e, f = int(ids[cf][i]), int(ids[~cf][j])
        witnesses.append(Witness(pre.af.labels(e), pre.af.labels(f), pre.compare(e, f), "conflict-free set not strictly above conflicting set"))
    return _report(Principle.RESPECTS_CONFLICTS, witnesses)


# ---------------------------------------------------------------------------
# Social-ranking axioms


def _pair_contexts(n: int, x: int, y: int) -> np.ndarray:
    ids = subset_ids(n)
    return ids[(ids & ((1 << x) | (1 << y))) == 0]


def check_pareto(rt: RankTable, ranking: ArgumentRanking) -> CheckReport:
    """Coordinatewise rank dominance across all contexts ``Z`` forces ``x ≻ y``."""
    r = rt.rank
    pairs = []
    for x in range(rt.n):
        for y in range(rt.n):
            if x == y:
                continue
            z = _pair_contexts(rt.n, x, y)
            rx, ry = r[z | (1 << x)], r[z | (1 << y)]
            if (rx <= ry).all() and (rx < ry).any():
                pairs.append((x, y))
    return _report(Principle.PARETO_EFFICIENCY, _require_strict(ranking, pairs, "Pareto-dominant element not strictly preferred"))


def dominating_pairs(pre: SetPreorder) -> np.ndarray:
    """``[x, y]`` is true iff some set containing ``x`` is ``⊐`` every set containing ``y``."""
    mem = membership(pre.n).astype(np.float64)
    misses = (~pre.strict).astype(np.float64) @ mem
    dominates = (misses == 0).astype(np.float64)
    return (mem.T @ dominates) > 0


def check_dominating_set(pre: SetPreorder, ranking: ArgumentRanking) -> CheckReport:
    dom = dominating_pairs(pre)
    pairs = [tuple(p) for p in np.argwhere(dom).tolist()]
    return _report(Principle.DOMINATING_SET, _require_strict(ranking, pairs, "dominating set does not yield strict preference"))


def iws_premise_holds(rt: RankTable, rt_star: RankTable) -> bool:
    below = rt.rank < rt.w
    return bool((rt_star.rank[below] == rt.rank[below]).all() and (rt_star.rank[~below] >= rt.w).all())


def check_iws(rt: RankTable, rt_star: RankTable, rank_fn: Callable[[RankTable], ArgumentRanking]) -> CheckReport:
    """Strict preferences under ``rt`` must survive in ``rt_star``.

    Raises :class:`PremiseViolation` if ``rt_star`` changes anything above the
    worst stratum or lifts a worst set above rank ``w``.
    """
    if rt.n != rt_star.n:
        raise PremiseViolation("rank tables over different object sets")
    if not iws_premise_holds(rt, rt_star):
        raise PremiseViolation("perturbed table does not preserve ranks below the worst stratum")
    before, after = rank_fn(rt), rank_fn(rt_star)
    witnesses = []
    for x in range(rt.n):
        for y in range(rt.n):
            if before.strictly_better(x, y) and not after.strictly_better(x, y):
                witnesses.append(Witness(before.labels[x], before.labels[y], after.outcome(x, y), "strict preference lost after refining the worst stratum"))
    return _report(Principle.INDEPENDENCE_WORST_SET, witnesses)


def _transitive_closure(ge: np.ndarray) -> np.ndarray:
    ge = ge.copy()
    for k in range(len(ge)):
        ge |= ge[:, k : k + 1] & ge[k : k + 1, :]
    return ge


def perturb_worst_stratum(rt: RankTable, strategy: str = "random", seed: int = 0) -> RankTable:
    """Split the worst stratum of ``rt`` into ordered parts ranked ``w, w+1, ...``.

    The new preorder keeps every relation of the old one except inside the
    worst stratum, where earlier parts are placed strictly above later parts;
    the result is closed transitively. ``strategy`` is ``"identity"``,
    ``"parity"`` (popcount parity) or ``"random"`` (seeded partition).
    """
    worst = np.flatnonzero(rt.rank == rt.w)
    if strategy == "identity":
        parts = np.zeros(len(worst), dtype=np.int64)
    elif strategy == "parity":
        parts = np.array([bin(int(s)).count("1") % 2 for s in worst], dtype=np.int64)
    elif strategy == "random":
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, len(worst) + 1))
        parts = rng.integers(0, k, size=len(worst))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    _, parts = np.unique(parts, return_inverse=True)

    ge = rt.preorder.ge.copy()
    block = ge[np.ix_(worst, worst)]
    p, q = parts[:, None], parts[None, :]
    ge[np.ix_(worst, worst)] = (p < q) | ((p == q) & block)
    star = SetPreorder(rt.n, _transitive_closure(ge), labels=rt.preorder.labels)
    return rank_table(star)


def truncate_at(rt: RankTable, w: int) -> RankTable:
    """Coarsen ``rt`` so that every set of rank ``>= w`` lands in one worst stratum.

    ``X ⊒' Y`` iff ``X ⊒ Y`` and one of the two ranks is below ``w`` (plus
    reflexivity). The original table is then a refinement of the worst stratum
    of the result, which is what the Pareto-plus-IWS argument for the
    dominating-set axiom relies on.
    """
    low = rt.rank < w
    ge = rt.preorder.ge & (low[:, None] | low[None, :])
    np.fill_diagonal(ge, True)
    return rank_table(SetPreorder(rt.n, ge, labels=rt.preorder.labels))


def check_dominating_via_worst_set(rt: RankTable, rank_fn: Callable[[RankTable], ArgumentRanking]) -> CheckReport:
    """Dominating set on ``rt``, certified pair by pair through a truncated table.

    For each dominated pair ``(x, y)`` with best dominating set ``X``, the
    table is truncated at ``rank(X) + 1``. If ``rank_fn`` is Pareto-efficient on
    the truncation and keeps its strict preferences when the truncation is
    refined back into ``rt``, then ``x ≻ y`` is required. Pairs where either
    premise fails are exempt and counted in the note.
    """
    pre = rt.preorder
    mem = membership(rt.n)
    misses = (~pre.strict).astype(np.float64) @ mem.astype(np.float64)
    dominates = misses == 0  # [X, y]
    ranking = rank_fn(rt)
    witnesses, exempt, certified = [], 0, 0
    cache: dict[int, tuple[bool, ArgumentRanking]] = {}
    for x in range(rt.n):
        for y in range(rt.n):
            cands = np.flatnonzero(mem[:, x] & dominates[:, y])
            if x == y or len(cands) == 0:
                continue
            w = int(rt.rank[cands].min()) + 1
            if w not in cache:
                coarse = truncate_at(rt, w)
                coarse_rank = rank_fn(coarse)
                ok = iws_premise_holds(coarse, rt) and check_pareto(coarse, coarse_rank).holds
                ok = ok and not any(
                    coarse_rank.strictly_better(a, b) and not ranking.strictly_better(a, b)
                    for a in range(rt.n) for b in range(rt.n)
                )
                cache[w] = (ok, coarse_rank)
            if not cache[w][0]:
                exempt += 1
                continue
            certified += 1
            if not ranking.strictly_better(x, y):
                witnesses.append(Witness(ranking.labels[x], ranking.labels[y], ranking.outcome(x, y), "dominating set not strict although Pareto and IWS premises hold"))
    return _report(Principle.DOMINATING_SET, witnesses, vacuous=certified == 0, note=f"{exempt} pairs exempt")


IWS_PERTURBATIONS = (("identity", 0), ("parity", 0)) + tuple(("random", s) for s in range(5))


def supermajority_counts(rt: RankTable, x: int, y: int) -> tuple[int, int]:
    """Contexts where ``Z∪{x}`` outranks ``Z∪{y}``, and the reverse."""
    z = _pair_contexts(rt.n, x, y)
    rx, ry = rt.rank[z | (1 << x)], rt.rank[z | (1 << y)]
    return int((rx < ry).sum()), int((ry < rx).sum())


def check_k_supermajority(rt: RankTable, ranking: ArgumentRanking, k: int) -> CheckReport:
    if k < 1:
        raise ValueError("k must be a positive integer")
    witnesses = []
    for x in range(rt.n):
        for y in range(rt.n):
            if x == y:
                continue
            adv, rev = supermajority_counts(rt, x, y)
            if adv > k * rev and not ranking.weakly_better(x, y):
                witnesses.append(Witness(ranking.labels[x], ranking.labels[y], ranking.outcome(x, y), f"{adv} contexts favour the left element against {rev}"))
    return _report(Principle.RANK_K_SUPERMAJORITY, witnesses, note=f"k={k}")


# ---------------------------------------------------------------------------
# Generators


def prop2_family(k: int, l: int) -> AF:
    """``a, b, c1..cl`` with ``b`` self-attacking and every ``ci`` attacking ``a``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if l < max(k, 3):
        raise ValueError(f"need l >= max(k, 3), got l={l}")
    names = ["a", "b"] + [f"c{i}" for i in range(1, l + 1)]
    attacks = [("b", "b")] + [(f"c{i}", "a") for i in range(1, l + 1)]
    return AF.from_attacks(names, attacks)


def af_from_code(n: int, code: int, names=None) -> AF:
    """Decode a row-major attack matrix: bit ``a*n + b`` set means ``a`` attacks ``b``."""
    full = (1 << n) - 1
    attacked = [(code >> (a * n)) & full for a in range(n)]
    attackers = [sum(((attacked[a] >> b) & 1) << a for a in range(n)) for b in range(n)]
    names = tuple(names) if names is not None else tuple(f"a{i + 1}" for i in range(n))
    return AF(names, tuple(attackers), tuple(attacked))


def enumerate_afs(n: int, mode: str = "exhaustive", count: int = 100, seed: int = 0, names=None) -> Iterator[AF]:
    """All ``2^(n^2)`` frameworks in attack-matrix order, or a seeded sample."""
    if n < 1:
        raise ValueError("n must be positive")
    if mode == "exhaustive":
        if n > EXHAUSTIVE_MAX_N:
            raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")
        for code in range(1 << (n * n)):
            yield af_from_code(n, code, names)
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        weights = 1 << np.arange(n * n, dtype=object)
        for _ in range(count):
            bits = rng.integers(0, 2, size=n * n)
            yield af_from_code(n, int((bits.astype(object) * weights).sum()), names)
    else:
        raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Realisability


class TargetPreorder(SetPreorder):
    """An explicitly given relation on ``2^labels``, closed reflexively and transitively.

    Pairs that the closure relates are constrained; unrelated pairs are left open
    unless matched with ``exact=True``.
    """

    @classmethod
    def from_statements(cls, statements: list[PreorderStatement], labels=None) -> TargetPreorder:
        if labels is None:
            seen: list[str] = []
            for st in statements:
                for side in (st.left, st.right):
                    for x in sorted(side):
                        if x not in seen:
                            seen.append(x)
            labels = seen
        labels = list(labels)
        if not labels:
            raise ArgRankError("target preorder mentions no arguments")
        index = {x: i for i, x in enumerate(labels)}

        def mask(side):
            try:
                return sum(1 << index[x] for x in side)
            except KeyError as exc:
                raise ArgRankError(f"unknown label {exc.args[0]!r}") from None

        n = len(labels)
        ge = np.eye(1 << n, dtype=bool)
        strict = []
        for st in statements:
            x, y = mask(st.left), mask(st.right)
            ge[x, y] = True
            if st.op == "==":
                ge[y, x] = True
            elif st.op == ">":
                strict.append((x, y))
        ge = _transitive_closure(ge)
        for x, y in strict:
            if ge[y, x]:
                raise ArgRankError(
                    f"inconsistent target: {_set_labels(labels, x)} > {_set_labels(labels, y)} "
                    "but the reverse follows by transitivity"
                )
        return cls(n, ge, labels=labels)


def realisable(target: SetPreorder, tau, exact: bool = False) -> AF | None:
    """First framework (attack-matrix order) over ``target.labels`` inducing ``target`` under ``tau``.

    By default only the pairs the target relates must agree (same outcome,
    strict or equivalent); ``exact=True`` also requires every unrelated pair to
    be incomparable.
    """
    tau = ExtRanking(tau)
    n = target.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"realisability search is limited to {EXHAUSTIVE_MAX_N} arguments")
    want = target.ge
    related = want | want.T
    for af in enumerate_afs(n, names=target.labels):
        got = ranking_matrix(af, tau, signature_tables(af))
        if exact:
            if np.array_equal(got, want):
                return af
        elif (got[related] == want[related]).all():
            return af
    return None
