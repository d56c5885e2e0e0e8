"""Argumentation frameworks, classical extension semantics and acceptance status.

Sets of arguments are plain ``int`` bitmasks (bit ``i`` set means argument ``i``
is a member). Powerset-wide quantities are numpy arrays indexed by that bitmask,
so ``arr[E]`` is the value for the set ``E``.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentIndexError, CapacityError

MAX_ARGS = 16

ArgumentSet = int


def max_args() -> int:
    """Argument cap, optionally lowered (never raised) by ``ARGRANK_MAX_ARGS``."""
    raw = os.environ.get("ARGRANK_MAX_ARGS")
    if not raw:
        return MAX_ARGS
    try:
        value = int(raw)
    except ValueError:
        return MAX_ARGS
    return max(1, min(value, MAX_ARGS))


def members(s: ArgumentSet) -> list[int]:
    out = []
    i = 0
    while s:
        if s & 1:
            out.append(i)
        s >>= 1
        i += 1
    return out


def from_members(ids: Iterable[int]) -> ArgumentSet:
    s = 0
    for i in ids:
        s |= 1 << i
    return s


def is_subset(a: ArgumentSet, b: ArgumentSet) -> bool:
    return a & ~b == 0


@lru_cache(maxsize=None)
def subset_ids(n: int) -> np.ndarray:
    """All subsets of ``n`` arguments as bitmasks ``0..2^n-1`` (read-only)."""
    ids = np.arange(1 << n, dtype=np.int64)
    ids.flags.writeable = False
    return ids


@lru_cache(maxsize=None)
def membership(n: int) -> np.ndarray:
    """Boolean ``(2^n, n)`` matrix; ``[E, i]`` is true iff ``i`` is in ``E``."""
    m = ((subset_ids(n)[:, None] >> np.arange(n)) & 1).astype(bool)
    m.flags.writeable = False
    return m


def union_over_members(values: Sequence[int], n: int) -> np.ndarray:
    """For every subset E, the bitwise OR of ``values[i]`` over ``i`` in E."""
    out = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        lo = 1 << i
        out[lo : 2 * lo] = out[:lo] | values[i]
    return out


class Semantics(str, enum.Enum):
    CF = "cf"
    AD = "ad"
    CO = "co"
    PR = "pr"
    GR = "gr"
    STB = "stb"
    SST = "sst"

    def __str__(self):
        return self.value


class Status(str, enum.Enum):
    SKEPTICAL = "skeptical"
    CREDULOUS = "credulous"
    REJECTED = "rejected"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class AF:
    """An argumentation framework with argument ids ``0..n-1``.

    Build instances with :meth:`from_attacks` or :meth:`from_index_pairs`;
    the raw constructor expects already consistent attacker/attacked masks.
    """

    names: tuple[str, ...]
    attackers: tuple[int, ...]
    attacked: tuple[int, ...]

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise ValueError("an argumentation framework needs at least one argument")
        cap = max_args()
        if n > cap:
            raise CapacityError(f"{n} arguments exceed the cap of {cap}")
        if len(set(self.names)) != n:
            raise ValueError("argument names must be unique")
        if any(not name for name in self.names):
            raise ValueError("argument names must be nonempty")
        if len(self.attackers) != n or len(self.attacked) != n:
            raise ValueError("attacker/attacked tables must have one entry per argument")
        full = (1 << n) - 1
        for i in range(n):
            if self.attackers[i] & ~full or self.attacked[i] & ~full:
                raise ValueError(f"bits beyond argument {n - 1} are set")
            for j in range(n):
                if bool(self.attackers[i] >> j & 1) != bool(self.attacked[j] >> i & 1):
                    raise ValueError("attackers and attacked tables disagree")

    @classmethod
    def from_index_pairs(cls, names: Sequence[str], pairs: Iterable[tuple[int, int]]) -> AF:
        n = len(names)
        attackers = [0] * n
        attacked = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ArgumentIndexError(f"attack ({a}, {b}) outside 0..{n - 1}")
            attacked[a] |= 1 << b
            attackers[b] |= 1 << a
        return cls(tuple(names), tuple(attackers), tuple(attacked))

    @classmethod
    def from_attacks(cls, names: Sequence[str], attacks: Iterable[tuple[str, str]] = ()) -> AF:
        """``AF.from_attacks("abcd", [("a", "b"), ...])`` with arguments named by label."""
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        pairs = []
        for a, b in attacks:
            if a not in index or b not in index:
                raise KeyError(f"attack ({a}, {b}) uses an undeclared argument")
            pairs.append((index[a], index[b]))
        return cls.from_index_pairs(names, pairs)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> ArgumentSet:
        return (1 << self.n) - 1

    @cached_property
    def attacks(self) -> tuple[tuple[int, int], ...]:
        """Attack pairs as ``(attacker, target)`` ids in row-major order."""
        return tuple((a, b) for a in range(self.n) for b in members(self.attacked[a]))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ArgumentIndexError(f"unknown argument {name!r}") from None

    def check_id(self, a: int) -> int:
        if not 0 <= a < self.n:
            raise ArgumentIndexError(f"argument id {a} outside 0..{self.n - 1}")
        return a

    def set_of(self, labels: Iterable[str]) -> ArgumentSet:
        return from_members(self.index(x) for x in labels)

    def labels(self, s: ArgumentSet) -> list[str]:
        """Labels of ``s``, sorted."""
        return sorted(self.names[i] for i in members(s))

    def self_attacking(self, a: int) -> bool:
        return bool(self.attacked[a] >> a & 1)

    def attack_matrix_code(self) -> int:
        """Row-major bit encoding of R: bit ``a*n + b`` is set iff ``a`` attacks ``b``."""
        return sum(1 << (a * self.n + b) for a, b in self.attacks)

    # Powerset-wide tables, memoized per instance.

    @cached_property
    def plus_table(self) -> np.ndarray:
        """``E⁺`` for every subset E."""
        return union_over_members(self.attacked, self.n)

    @cached_property
    def minus_table(self) -> np.ndarray:
        """``E⁻`` for every subset E."""
        return union_over_members(self.attackers, self.n)

    @cached_property
    def defended_table(self) -> np.ndarray:
        """The characteristic function applied to every subset."""
        plus = self.plus_table
        out = np.zeros_like(plus)
        for a in range(self.n):
            ok = (self.attackers[a] & ~plus) == 0
            out |= ok.astype(np.int64) << a
        return out

    @cached_property
    def conflict_free_table(self) -> np.ndarray:
        return (self.plus_table & subset_ids(self.n)) == 0

    def __repr__(self):
        pairs = ", ".join(f"({self.names[a]},{self.names[b]})" for a, b in self.attacks)
        return f"AF(args=[{', '.join(self.names)}], R={{{pairs}}})"


def attacked_by(af: AF, s: ArgumentSet) -> ArgumentSet:
    out = 0
    for i in members(s):
        out |= af.attacked[i]
    return out


def attackers_of(af: AF, s: ArgumentSet) -> ArgumentSet:
    out = 0
    for i in members(s):
        out |= af.attackers[i]
    return out


def _check_set(af: AF, s: ArgumentSet) -> None:
    if s < 0 or s & ~af.full:
        raise ArgumentIndexError(f"set {s:#x} has members outside 0..{af.n - 1}")


def defends(af: AF, s: ArgumentSet, a: int) -> bool:
    """True iff every attacker of ``a`` is attacked by some member of ``s``."""
    af.check_id(a)
    _check_set(af, s)
    return af.attackers[a] & ~attacked_by(af, s) == 0


def characteristic(af: AF, s: ArgumentSet) -> ArgumentSet:
    _check_set(af, s)
    plus = attacked_by(af, s)
    return from_members(a for a in range(af.n) if af.attackers[a] & ~plus == 0)


def is_conflict_free(af: AF, s: ArgumentSet) -> bool:
    return attacked_by(af, s) & s == 0


def _maximal(cands: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """Candidates whose key is not a proper subset of another candidate's key."""
    contained = (keys[:, None] & ~keys[None, :]) == 0
    proper = contained & (keys[:, None] != keys[None, :])
    return cands[~proper.any(axis=1)]


def _minimal(cands: np.ndarray) -> np.ndarray:
    contains = (cands[None, :] & ~cands[:, None]) == 0  # [i, j]: cand_j ⊆ cand_i
    proper = contains & (cands[:, None] != cands[None, :])
    return cands[~proper.any(axis=1)]


def extension_mask(af: AF, sem: Semantics | str) -> np.ndarray:
    """Boolean array over all subsets marking the σ-extensions (powerset filter)."""
    sem = Semantics(sem)
    ids = subset_ids(af.n)
    cf = af.conflict_free_table
    if sem is Semantics.CF:
        return cf.copy()
    defended = af.defended_table
    if sem is Semantics.AD:
        return cf & ((ids & ~defended) == 0)
    if sem is Semantics.STB:
        return cf & ((ids | af.plus_table) == af.full)
    co = cf & (defended == ids)
    if sem is Semantics.CO:
        return co
    cands = ids[co]
    if sem is Semantics.PR:
        keep = _maximal(cands, cands)
    elif sem is Semantics.GR:
        keep = _minimal(cands)
    else:  # SST
        keep = _maximal(cands, cands | af.plus_table[cands])
    out = np.zeros(len(ids), dtype=bool)
    out[keep] = True
    return out


def extensions(af: AF, sem: Semantics | str) -> list[ArgumentSet]:
    """All σ-extensions, ascending by bitmask value."""
    return [int(s) for s in np.flatnonzero(extension_mask(af, sem))]


def grounded_fixpoint(af: AF) -> ArgumentSet:
    """Least fixed point of the characteristic function, iterating from the empty set."""
    s = 0
    while True:
        nxt = characteristic(af, s)
        if nxt == s:
            return s
        s = nxt


@dataclass(frozen=True)
class StatusReport:
    """Acceptance status of every argument under one semantics.

    ``vacuous`` is set when there are no extensions at all (possible for stable);
    then nothing is reported as skeptical and every argument is rejected.
    """

    af: AF
    semantics: Semantics
    skeptical: ArgumentSet
    credulous: ArgumentSet
    vacuous: bool = False

    @property
    def rejected(self) -> ArgumentSet:
        return self.af.full & ~self.credulous

    def of(self, a: int) -> Status:
        if self.skeptical >> a & 1:
            return Status.SKEPTICAL
        if self.credulous >> a & 1:
            return Status.CREDULOUS
        return Status.REJECTED

    def as_dict(self) -> dict[str, Status]:
        return {name: self.of(i) for i, name in enumerate(self.af.names)}


def status(af: AF, sem: Semantics | str) -> StatusReport:
    sem = Semantics(sem)
    exts = extensions(af, sem)
    if not exts:
        return StatusReport(af, sem, 0, 0, vacuous=True)
    sk = af.full
    cred = 0
    for e in exts:
        sk &= e
        cred |= e
    return StatusReport(af, sem, sk, cred)


def is_isomorphic(af1: AF, af2: AF) -> dict[str, str] | None:
    """A label bijection witnessing ``af1 ≅ af2``, or ``None``. Backtracking search."""
    n = af1.n
    if n != af2.n or len(af1.attacks) != len(af2.attacks):
        return None

    def profile(af, i):
        return (af.self_attacking(i), bin(af.attacked[i]).count("1"), bin(af.attackers[i]).count("1"))

    p1 = [profile(af1, i) for i in range(n)]
    p2 = [profile(af2, i) for i in range(n)]
    if sorted(p1) != sorted(p2):
        return None

    image = [-1] * n
    used = [False] * n

    def consistent(i, j):
        for k in range(i):
            m = image[k]
            if bool(af1.attacked[i] >> k & 1) != bool(af2.attacked[j] >> m & 1):
                return False
            if bool(af1.attacked[k] >> i & 1) != bool(af2.attacked[m] >> j & 1):
                return False
        return True

    def search(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or p1[i] != p2[j] or not consistent(i, j):
                continue
            image[i] = j
            used[j] = True
            if search(i + 1):
                return True
            used[j] = False
        image[i] = -1
        return False

    if not search(0):
        return None
    return {af1.names[i]: af2.names[image[i]] for i in range(n)}
