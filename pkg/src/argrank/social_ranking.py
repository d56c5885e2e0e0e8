"""Social ranking functions: from a preorder over ``2^A`` to a ranking of ``A``.

Every function here accepts any :class:`~argrank.ext_ranking.SetPreorder` (or a
:class:`~argrank.ext_ranking.RankTable` for the rank-based ones), not only those
induced by an argumentation framework.
"""

from __future__ import annotations

import enum

import numpy as np

from .af_core import AF, membership, subset_ids
from .errors import CapacityError
from .ext_ranking import (
    ComparisonOutcome,
    ExtensionPreorder,
    ExtRanking,
    RankTable,
    SetPreorder,
    rank_table,
)

# Powerset-wide functions are O(4^n); refuse anything past this unless forced.
POWERSET_CAP = 14


class SocialRanking(str, enum.Enum):
    LEX_CEL = "lex-cel"
    SINGLETON = "singleton"
    FOCUSING = "focusing"
    CP_MAJORITY = "cp-majority"
    BANZHAF = "banzhaf"

    def __str__(self):
        return self.value


class ArgumentRanking:
    """A relation ``⪰`` over arguments kept as a full pairwise matrix.

    Nothing is repaired: if the producing function yields a non-transitive
    relation, :attr:`strata` is ``None`` and only the matrix is meaningful.
    """

    def __init__(self, labels, ge: np.ndarray, social=None, extension=None):
        self.labels = tuple(labels)
        self.ge = np.asarray(ge, dtype=bool)
        self.ge.flags.writeable = False
        self.social = SocialRanking(social) if social is not None else None
        self.extension = ExtRanking(extension) if extension is not None else None

    @property
    def n(self) -> int:
        return len(self.labels)

    def _id(self, a) -> int:
        return self.labels.index(a) if isinstance(a, str) else a

    def weakly_better(self, a, b) -> bool:
        return bool(self.ge[self._id(a), self._id(b)])

    def outcome(self, a, b) -> ComparisonOutcome:
        a, b = self._id(a), self._id(b)
        return ComparisonOutcome.from_weak(bool(self.ge[a, b]), bool(self.ge[b, a]))

    def strictly_better(self, a, b) -> bool:
        return self.outcome(a, b) is ComparisonOutcome.STRICTLY_BETTER

    def matrix(self) -> list[list[ComparisonOutcome]]:
        return [[self.outcome(a, b) for b in range(self.n)] for a in range(self.n)]

    def is_transitive(self) -> bool:
        g = self.ge.astype(np.float64)
        return not ((g @ g > 0) & ~self.ge).any()

    def is_total_preorder(self) -> bool:
        return bool(self.ge.diagonal().all() and (self.ge | self.ge.T).all() and self.is_transitive())

    @property
    def strata(self) -> list[list[int]] | None:
        """Equivalence classes from best to worst, or ``None`` if not a total preorder."""
        if not self.is_total_preorder():
            return None
        beaten = self.ge.sum(axis=1)
        order = sorted(range(self.n), key=lambda a: (-beaten[a], self.labels[a]))
        out: list[list[int]] = []
        for a in order:
            if out and self.ge[a, out[-1][0]] and self.ge[out[-1][0], a]:
                out[-1].append(a)
            else:
                out.append([a])
        return out

    def label_strata(self) -> list[list[str]] | None:
        st = self.strata
        if st is None:
            return None
        return [sorted(self.labels[a] for a in group) for group in st]

    def format(self, ascii: bool = False) -> str:
        """``a ≻ d ≻ c ≻ b`` style rendering of a total preorder."""
        st = self.label_strata()
        if st is None:
            raise ValueError("ranking is not a total preorder; use the pairwise matrix")
        eq, gt = (" = ", " > ") if ascii else (" ≃ ", " ≻ ")
        return gt.join(eq.join(group) for group in st)

    def __repr__(self):
        tag = "/".join(str(x) for x in (self.social, self.extension) if x is not None)
        try:
            body = self.format()
        except ValueError:
            body = "partial"
        return f"ArgumentRanking({tag}: {body})" if tag else f"ArgumentRanking({body})"


def _check_cap(n: int, force: bool) -> None:
    if n > POWERSET_CAP and not force:
        raise CapacityError(f"{n} arguments exceed the powerset cap of {POWERSET_CAP}")


def lex_cel_vectors(rt: RankTable) -> list[tuple[int, ...]]:
    """Per argument: how many subsets of rank 1, 2, ..., w contain it."""
    return [tuple(int(c) for c in row) for row in rt.counts]


def lex_cel(rt: RankTable, extension=None) -> ArgumentRanking:
    vec = lex_cel_vectors(rt)
    n = rt.n
    ge = np.array([[vec[x] >= vec[y] for y in range(n)] for x in range(n)], dtype=bool)
    return ArgumentRanking(rt.preorder.labels, ge, SocialRanking.LEX_CEL, extension)


def singleton_rank(pre: SetPreorder, extension=None) -> ArgumentRanking:
    n = pre.n
    ge = np.array(
        [[pre.weakly_better(1 << a, 1 << b) for b in range(n)] for a in range(n)], dtype=bool
    )
    return ArgumentRanking(pre.labels, ge, SocialRanking.SINGLETON, extension)


def focusing_rank(pre: SetPreorder, extension=None, force: bool = False) -> ArgumentRanking:
    """``a ⪰ b`` iff some set containing ``a`` is ``⊒`` every set containing ``b``."""
    _check_cap(pre.n, force)
    mem = membership(pre.n).astype(np.float64)
    misses = (~pre.ge).astype(np.float64) @ mem  # [E, b]: sets with b that E fails to beat (float for BLAS; exact below 2^53)
    covers = (misses == 0).astype(np.float64)
    ge = (mem.T @ covers) > 0
    return ArgumentRanking(pre.labels, ge, SocialRanking.FOCUSING, extension)


def cp_counts(pre: SetPreorder) -> np.ndarray:
    """``[x, y]``: number of ``S ⊆ A∖{x,y}`` with ``S∪{x} ⊐ S∪{y}``."""
    n = pre.n
    ids = subset_ids(n)
    st = pre.strict
    out = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            bx, by = 1 << x, 1 << y
            s = ids[(ids & (bx | by)) == 0]
            out[x, y] = int(st[s | bx, s | by].sum())
    return out


def cp_majority(pre: SetPreorder, extension=None, force: bool = False) -> ArgumentRanking:
    _check_cap(pre.n, force)
    c = cp_counts(pre)
    return ArgumentRanking(pre.labels, c >= c.T, SocialRanking.CP_MAJORITY, extension)


def banzhaf_scores(pre: SetPreorder) -> list[int]:
    """Ordinal Banzhaf score: improvements minus deteriorations from joining a set."""
    ids = subset_ids(pre.n)
    st = pre.strict
    scores = []
    for x in range(pre.n):
        bx = 1 << x
        s = ids[(ids & bx) == 0]
        scores.append(int(st[s | bx, s].sum()) - int(st[s, s | bx].sum()))
    return scores


def banzhaf(pre: SetPreorder, extension=None, force: bool = False) -> ArgumentRanking:
    _check_cap(pre.n, force)
    s = np.array(banzhaf_scores(pre))
    return ArgumentRanking(pre.labels, s[:, None] >= s[None, :], SocialRanking.BANZHAF, extension)


def rank_arguments(sr: SocialRanking | str, pre: SetPreorder, rt: RankTable | None = None,
                   extension=None, force: bool = False) -> ArgumentRanking:
    """Apply a social ranking function to an arbitrary set preorder."""
    sr = SocialRanking(sr)
    if sr is SocialRanking.LEX_CEL:
        _check_cap(pre.n, force)
        return lex_cel(rt if rt is not None else rank_table(pre), extension)
    if sr is SocialRanking.SINGLETON:
        return singleton_rank(pre, extension)
    if sr is SocialRanking.FOCUSING:
        return focusing_rank(pre, extension, force)
    if sr is SocialRanking.CP_MAJORITY:
        return cp_majority(pre, extension, force)
    return banzhaf(pre, extension, force)


def apply(sr: SocialRanking | str, er: ExtRanking | str, af: AF, force: bool = False) -> ArgumentRanking:
    """The argument ranking ``ξ_τ(F)``: social ranking ``sr`` over ``⊒^er_F``."""
    er = ExtRanking(er)
    return rank_arguments(sr, ExtensionPreorder(af, er), extension=er, force=force)
