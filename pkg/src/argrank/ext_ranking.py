"""Base relations, extension-ranking semantics and rank stratification of ``2^A``.

Two independent routes compute the same preorder:

* :func:`weakly_better` evaluates the lexicographic definitions pair by pair from
  literally computed :class:`BaseSignature` objects;
* :meth:`ExtensionPreorder.ge` builds the whole ``2^n x 2^n`` matrix from
  vectorized signature tables.

Tests check that the two agree on every pair.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .af_core import (
    AF,
    ArgumentSet,
    Semantics,
    attacked_by,
    attackers_of,
    characteristic,
    members,
    membership,
    subset_ids,
)
from .errors import ArgRankError, ArgumentIndexError


class ComparisonOutcome(str, enum.Enum):
    STRICTLY_BETTER = "STRICTLY_BETTER"
    EQUIVALENT = "EQUIVALENT"
    STRICTLY_WORSE = "STRICTLY_WORSE"
    INCOMPARABLE = "INCOMPARABLE"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @property
    def ascii(self) -> str:
        return _ASCII[self]

    def flip(self) -> ComparisonOutcome:
        return _FLIP[self]

    @classmethod
    def from_weak(cls, ab: bool, ba: bool) -> ComparisonOutcome:
        if ab and ba:
            return cls.EQUIVALENT
        if ab:
            return cls.STRICTLY_BETTER
        if ba:
            return cls.STRICTLY_WORSE
        return cls.INCOMPARABLE

    def __str__(self):
        return self.value


_SYMBOLS = {
    ComparisonOutcome.STRICTLY_BETTER: "≻",
    ComparisonOutcome.EQUIVALENT: "≃",
    ComparisonOutcome.STRICTLY_WORSE: "≺",
    ComparisonOutcome.INCOMPARABLE: "⋈",
}
_ASCII = {
    ComparisonOutcome.STRICTLY_BETTER: ">",
    ComparisonOutcome.EQUIVALENT: "=",
    ComparisonOutcome.STRICTLY_WORSE: "<",
    ComparisonOutcome.INCOMPARABLE: "||",
}
_FLIP = {
    ComparisonOutcome.STRICTLY_BETTER: ComparisonOutcome.STRICTLY_WORSE,
    ComparisonOutcome.STRICTLY_WORSE: ComparisonOutcome.STRICTLY_BETTER,
    ComparisonOutcome.EQUIVALENT: ComparisonOutcome.EQUIVALENT,
    ComparisonOutcome.INCOMPARABLE: ComparisonOutcome.INCOMPARABLE,
}


class ExtRanking(str, enum.Enum):
    R_CF = "r-cf"
    R_AD = "r-ad"
    R_CO = "r-co"
    R_PR = "r-pr"
    R_GR = "r-gr"
    R_SST = "r-sst"

    @property
    def semantics(self) -> Semantics:
        """The classical semantics this ranking generalises."""
        return Semantics(self.value[2:])

    def __str__(self):
        return self.value


# The five lexicographic compositions, each as (base ranking, tie-breaking tier).
_COMPOSITION = {
    ExtRanking.R_AD: (ExtRanking.R_CF, "ud"),
    ExtRanking.R_CO: (ExtRanking.R_AD, "dn"),
    ExtRanking.R_PR: (ExtRanking.R_AD, "superset"),
    ExtRanking.R_GR: (ExtRanking.R_CO, "subset"),
    ExtRanking.R_SST: (ExtRanking.R_CO, "ua"),
}


# ---------------------------------------------------------------------------
# Literal, one-set-at-a-time route


def f_star(af: AF, s: ArgumentSet) -> ArgumentSet:
    """Consistent-defence closure: grow ``s`` by defended arguments that do not attack it."""
    excluded = attackers_of(af, s)
    cur = s
    while True:
        nxt = cur | (characteristic(af, cur) & ~excluded)
        if nxt == cur:
            return cur
        cur = nxt


@dataclass(frozen=True)
class BaseSignature:
    cf: frozenset  # attack pairs (a, b) with both ends inside the set
    ud: ArgumentSet  # undefended members
    dn: ArgumentSet  # defended, consistent, but not included
    ua: ArgumentSet  # outsiders not attacked by the set


def base_signature(af: AF, s: ArgumentSet) -> BaseSignature:
    if s < 0 or s & ~af.full:
        raise ArgumentIndexError(f"set {s:#x} has members outside 0..{af.n - 1}")
    inside = set(members(s))
    cf = frozenset((a, b) for a, b in af.attacks if a in inside and b in inside)
    ud = s & ~characteristic(af, s)
    dn = f_star(af, s) & ~s
    ua = af.full & ~s & ~attacked_by(af, s)
    return BaseSignature(cf, ud, dn, ua)


def _tier(kind: str, e: ArgumentSet, f: ArgumentSet, se: BaseSignature, sf: BaseSignature) -> bool:
    if kind == "superset":
        return f & ~e == 0
    if kind == "subset":
        return e & ~f == 0
    return getattr(se, kind) & ~getattr(sf, kind) == 0


def weakly_better(af: AF, tau: ExtRanking | str, e: ArgumentSet, f: ArgumentSet, signature=None) -> bool:
    """``e ⊒ f`` under ``tau``, evaluated straight from the definitions."""
    tau = ExtRanking(tau)
    sig = signature or (lambda s: base_signature(af, s))
    se, sf = sig(e), sig(f)
    if tau is ExtRanking.R_CF:
        return se.cf <= sf.cf
    base, kind = _COMPOSITION[tau]
    ef = weakly_better(af, base, e, f, sig)
    fe = weakly_better(af, base, f, e, sig)
    if ef and not fe:
        return True
    if ef and fe:
        return _tier(kind, e, f, se, sf)
    return False


# ---------------------------------------------------------------------------
# Vectorized, powerset-wide route


def _subset_matrix(keys: np.ndarray) -> np.ndarray:
    """``[i, j]`` is true iff ``keys[i] ⊆ keys[j]``; multiword keys have shape (N, W)."""
    if keys.ndim == 1:
        return (keys[:, None] & ~keys[None, :]) == 0
    return ((keys[:, None, :] & ~keys[None, :, :]) == 0).all(axis=-1)


def lexicographic(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """``first``-strict, or ``first``-equivalent and ``second``."""
    t = first.T
    return (first & ~t) | (first & t & second)


@dataclass(frozen=True, eq=False)
class SignatureTables:
    """Base-relation outputs for every subset, indexed by bitmask."""

    cf: np.ndarray  # (N, W) uint64 words over the attack list
    ud: np.ndarray
    dn: np.ndarray
    ua: np.ndarray
    f_star: np.ndarray


def signature_tables(af: AF) -> SignatureTables:
    n = af.n
    ids = subset_ids(n)
    mem = membership(n)
    attacks = af.attacks
    words = max(1, (len(attacks) + 63) // 64)
    cf = np.zeros((len(ids), words), dtype=np.uint64)
    for k, (a, b) in enumerate(attacks):
        inside = (mem[:, a] & mem[:, b]).astype(np.uint64)
        cf[:, k // 64] |= inside << np.uint64(k % 64)

    defended = af.defended_table
    minus = af.minus_table
    fs = ids.copy()
    while True:
        nxt = fs | (defended[fs] & ~minus)
        if np.array_equal(nxt, fs):
            break
        fs = nxt
    ud = ids & ~defended
    dn = fs & ~ids
    ua = af.full & ~ids & ~af.plus_table
    return SignatureTables(cf=cf, ud=ud, dn=dn, ua=ua, f_star=fs)


def ranking_matrix(af: AF, tau: ExtRanking | str, tables: SignatureTables | None = None) -> np.ndarray:
    """Dense ``ge`` matrix of ``tau`` on ``af``: ``[E, F]`` is true iff ``E ⊒ F``."""
    tau = ExtRanking(tau)
    t = tables or signature_tables(af)
    cache: dict = {}

    def build(r):
        if r in cache:
            return cache[r]
        if r is ExtRanking.R_CF:
            m = _subset_matrix(t.cf)
        else:
            base, kind = _COMPOSITION[r]
            ids = subset_ids(af.n)
            if kind == "superset":
                second = _subset_matrix(ids).T
            elif kind == "subset":
                second = _subset_matrix(ids)
            else:
                second = _subset_matrix(getattr(t, kind))
            m = lexicographic(build(base), second)
        cache[r] = m
        return m

    return build(tau)


# ---------------------------------------------------------------------------
# Preorders over the powerset


class SetPreorder:
    """A relation ``⊒`` over all subsets of ``n`` objects, stored densely.

    ``ge[X, Y]`` is true iff ``X ⊒ Y``. Subclasses may compute the matrix lazily
    by overriding :meth:`_compute_ge`.
    """

    def __init__(self, n: int, ge: np.ndarray | None = None, labels=None):
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(f"a{i + 1}" for i in range(n))
        if ge is not None:
            size = 1 << n
            if ge.shape != (size, size):
                raise ValueError(f"expected a {size}x{size} matrix, got {ge.shape}")
            self.__dict__["ge"] = ge.astype(bool, copy=False)

    def _compute_ge(self) -> np.ndarray:
        raise NotImplementedError

    @cached_property
    def ge(self) -> np.ndarray:
        return self._compute_ge()

    @cached_property
    def strict(self) -> np.ndarray:
        return self.ge & ~self.ge.T

    @cached_property
    def equiv(self) -> np.ndarray:
        return self.ge & self.ge.T

    def weakly_better(self, x: ArgumentSet, y: ArgumentSet) -> bool:
        return bool(self.ge[x, y])

    def compare(self, x: ArgumentSet, y: ArgumentSet) -> ComparisonOutcome:
        return ComparisonOutcome.from_weak(self.weakly_better(x, y), self.weakly_better(y, x))

    def is_preorder(self) -> bool:
        g = self.ge
        if not g.diagonal().all():
            return False
        gi = g.astype(np.float64)
        return not ((gi @ gi > 0) & ~g).any()

    def set_labels(self, s: ArgumentSet) -> list[str]:
        return sorted(self.labels[i] for i in members(s))


class ExtensionPreorder(SetPreorder):
    """The preorder ``⊒^τ_F`` induced on ``2^A`` by an extension-ranking semantics.

    Single comparisons go through the literal route with per-subset memoized
    signatures; the dense matrix is only built when a powerset-wide operation
    asks for it.
    """

    def __init__(self, af: AF, tau: ExtRanking | str):
        super().__init__(af.n, labels=af.names)
        self.af = af
        self.tau = ExtRanking(tau)
        self._signatures: dict[int, BaseSignature] = {}

    def signature(self, s: ArgumentSet) -> BaseSignature:
        sig = self._signatures.get(s)
        if sig is None:
            sig = self._signatures[s] = base_signature(self.af, s)
        return sig

    @cached_property
    def tables(self) -> SignatureTables:
        return signature_tables(self.af)

    def _compute_ge(self):
        return ranking_matrix(self.af, self.tau, self.tables)

    def weakly_better(self, x, y):
        if "ge" in self.__dict__:
            return bool(self.ge[x, y])
        return weakly_better(self.af, self.tau, x, y, self.signature)

    def __repr__(self):
        return f"ExtensionPreorder({self.tau.value}, {self.af!r})"


def compare(pre: SetPreorder, e: ArgumentSet, f: ArgumentSet) -> ComparisonOutcome:
    return pre.compare(e, f)


def most_plausible(pre: SetPreorder) -> list[ArgumentSet]:
    """Subsets with no strict dominator, ascending by bitmask."""
    return [int(s) for s in np.flatnonzero(~pre.strict.any(axis=0))]


# ---------------------------------------------------------------------------
# Rank of a set


class RankTable:
    """Rank of every subset: one more than the longest strict chain above it."""

    def __init__(self, preorder: SetPreorder, rank: np.ndarray):
        self.preorder = preorder
        self.rank = np.asarray(rank, dtype=np.int64)
        self.rank.flags.writeable = False

    @property
    def n(self) -> int:
        return self.preorder.n

    @cached_property
    def w(self) -> int:
        return int(self.rank.max())

    @cached_property
    def strata(self) -> list[list[ArgumentSet]]:
        return [[int(s) for s in np.flatnonzero(self.rank == k)] for k in range(1, self.w + 1)]

    @cached_property
    def counts(self) -> np.ndarray:
        """``counts[x, k-1]`` is the number of rank-``k`` subsets containing ``x``."""
        onehot = np.zeros((len(self.rank), self.w), dtype=np.int64)
        onehot[np.arange(len(self.rank)), self.rank - 1] = 1
        return membership(self.n).T.astype(np.int64) @ onehot

    def __repr__(self):
        return f"RankTable(n={self.n}, w={self.w})"


def _layered_ranks(strict: np.ndarray) -> np.ndarray:
    """Longest-path depth of every node in a DAG, peeling sources layer by layer."""
    m = len(strict)
    rank = np.zeros(m, dtype=np.int64)
    remaining = np.ones(m, dtype=bool)
    level = 0
    while remaining.any():
        level += 1
        blocked = (strict & remaining[:, None]).any(axis=0)
        ready = remaining & ~blocked
        if not ready.any():
            raise ArgRankError("strict relation has a cycle; not induced by a preorder")
        rank[ready] = level
        remaining &= ~ready
    return rank


def rank_table(pre: SetPreorder) -> RankTable:
    """Group ``≡``-classes, then a longest-path DP over the strict class DAG."""
    ge = pre.ge
    eq = ge & ge.T
    rep = eq.argmax(axis=1)
    classes, inverse = np.unique(rep, return_inverse=True)
    sub = ge[np.ix_(classes, classes)]
    class_rank = _layered_ranks(sub & ~sub.T)
    return RankTable(pre, class_rank[inverse])


def naive_ranks(pre: SetPreorder, literal: bool = False) -> list[int]:
    """Memoized recursion ``rank(X) = 1 + max{rank(Y) : Y ⊐ X}``.

    With ``literal=True`` each strict comparison goes through ``pre.compare``;
    otherwise the strict matrix is read directly.
    """
    size = 1 << pre.n
    if literal:
        better = ComparisonOutcome.STRICTLY_BETTER
        dominators = [[y for y in range(size) if pre.compare(y, x) is better] for x in range(size)]
    else:
        st = pre.strict
        dominators = [np.flatnonzero(st[:, x]).tolist() for x in range(size)]

    limit = sys.getrecursionlimit()
    if size + 100 > limit:
        sys.setrecursionlimit(size + 100)

    @lru_cache(maxsize=None)
    def rank(x):
        return 1 + max((rank(y) for y in dominators[x]), default=0)

    try:
        return [rank(x) for x in range(size)]
    finally:
        sys.setrecursionlimit(limit)


def count_in_rank(rt: RankTable, x: int, k: int) -> int:
    """Number of rank-``k`` subsets that contain argument ``x``."""
    if not 1 <= k <= rt.w:
        raise ValueError(f"rank {k} outside 1..{rt.w}")
    if not 0 <= x < rt.n:
        raise ArgumentIndexError(f"argument id {x} outside 0..{rt.n - 1}")
    return int(rt.counts[x, k - 1])
