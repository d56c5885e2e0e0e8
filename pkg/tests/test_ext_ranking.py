import itertools

import numpy as np
import pytest

from argrank.af_core import AF, extensions
from argrank.axioms import enumerate_afs
from argrank.errors import ArgRankError, ArgumentIndexError
from argrank.ext_ranking import (
    ComparisonOutcome,
    ExtensionPreorder,
    ExtRanking,
    SetPreorder,
    base_signature,
    compare,
    count_in_rank,
    f_star,
    most_plausible,
    naive_ranks,
    rank_table,
    ranking_matrix,
    weakly_better,
)

from .oracles import Ref

B, E, W, I = (ComparisonOutcome.STRICTLY_BETTER, ComparisonOutcome.EQUIVALENT,
              ComparisonOutcome.STRICTLY_WORSE, ComparisonOutcome.INCOMPARABLE)


def ref_of(af):
    return Ref(af.names, [(af.names[a], af.names[b]) for a, b in af.attacks])


def as_labels(af, s):
    return frozenset(af.labels(s))


def test_outcome_helpers():
    assert B.flip() is W and I.flip() is I and E.flip() is E
    assert [o.symbol for o in (B, E, W, I)] == ["≻", "≃", "≺", "⋈"]
    assert ComparisonOutcome.from_weak(False, False) is I


def test_f_star(f1):
    ref = ref_of(f1)
    for s in range(16):
        assert as_labels(f1, f_star(f1, s)) == ref.Fstar(as_labels(f1, s))
    assert f_star(f1, f1.set_of("a")) == f1.set_of("a")
    assert f_star(f1, f1.full) == f1.full
    free = AF.from_attacks("xyz")
    assert f_star(free, 0) == free.full


def test_base_signature(f1):
    c, d = f1.index("c"), f1.index("d")
    sig = base_signature(f1, f1.set_of("cd"))
    assert sig.cf == {(c, d), (d, c)}
    assert sig.ud == f1.set_of("c") and sig.dn == f1.set_of("a")
    sig = base_signature(f1, f1.set_of("acd"))
    assert sig.cf == {(c, d), (d, c)} and sig.ud == 0
    empty = base_signature(f1, 0)
    assert empty.cf == frozenset() and empty.ud == 0 and empty.ua == f1.full
    with pytest.raises(ArgumentIndexError):
        base_signature(f1, 1 << 4)


def test_base_signature_invariants():
    for af in enumerate_afs(3):
        for s in range(1 << af.n):
            sig = base_signature(af, s)
            assert sig.ud & ~s == 0 and sig.dn & s == 0 and sig.ua & s == 0
            assert all(s >> a & 1 and s >> b & 1 for a, b in sig.cf)


def test_compare_examples(f1):
    pre = ExtensionPreorder(f1, "r-ad")
    assert pre.compare(f1.set_of("acd"), f1.set_of("cd")) is B
    assert compare(pre, f1.set_of("cd"), f1.set_of("acd")) is W
    for tau in ExtRanking:
        p = ExtensionPreorder(f1, tau)
        assert all(p.compare(s, s) is E for s in range(16))
    # {a} and {a,c} are both complete: r-co ties them, r-pr and r-gr split them by inclusion
    a, ac = f1.set_of("a"), f1.set_of("ac")
    assert ExtensionPreorder(f1, "r-co").compare(a, ac) is E
    assert ExtensionPreorder(f1, "r-pr").compare(a, ac) is W
    assert ExtensionPreorder(f1, "r-gr").compare(a, ac) is B


def test_literal_route_matches_matrix(f1):
    for tau in ExtRanking:
        fresh = ExtensionPreorder(f1, tau)
        literal = [[fresh.weakly_better(x, y) for y in range(16)] for x in range(16)]
        assert np.array_equal(np.array(literal), ranking_matrix(f1, tau))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_against_literal_oracle(n):
    afs = enumerate_afs(n) if n < 3 else itertools.islice(enumerate_afs(3), 0, 512, 7)
    for af in afs:
        ref = ref_of(af)
        sets = [as_labels(af, s) for s in range(1 << n)]
        for tau in ExtRanking:
            m = ranking_matrix(af, tau)
            want = np.array([[ref.ge(tau.value, x, y) for y in sets] for x in sets])
            assert np.array_equal(m, want), (af, tau)


def test_literal_weakly_better_sampled_n4():
    for af in itertools.islice(enumerate_afs(4), 0, 65536, 4099):
        for tau in ExtRanking:
            m = ranking_matrix(af, tau)
            for x, y in [(3, 12), (0, 15), (5, 6), (9, 9), (14, 1)]:
                assert weakly_better(af, tau, x, y) == m[x, y]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_preorder_and_rank_invariants(n):
    for af in enumerate_afs(n):
        for tau in ExtRanking:
            pre = ExtensionPreorder(af, tau)
            assert pre.is_preorder()
            st = pre.strict
            assert not st.diagonal().any()
            rt = rank_table(pre)
            r = rt.rank
            xs, ys = np.nonzero(st)
            assert (r[xs] < r[ys]).all()
            xs, ys = np.nonzero(pre.equiv)
            assert (r[xs] == r[ys]).all()
            assert sorted(set(r.tolist())) == list(range(1, rt.w + 1))


def test_most_plausible(f1):
    lab = lambda pre: {as_labels(f1, s) for s in most_plausible(pre)}  # noqa: E731
    assert lab(ExtensionPreorder(f1, "r-co")) == {frozenset("a"), frozenset("ac"), frozenset("ad")}
    assert lab(ExtensionPreorder(f1, "r-pr")) == {frozenset("ac"), frozenset("ad")}
    free = AF.from_attacks("xyz")
    assert set(most_plausible(ExtensionPreorder(free, "r-ad"))) == set(extensions(free, "ad"))
    assert set(most_plausible(ExtensionPreorder(free, "r-co"))) == {free.full}


def test_rank_table_f1(f1):
    rt = rank_table(ExtensionPreorder(f1, "r-co"))
    strata = [{as_labels(f1, s) for s in layer} for layer in rt.strata]
    assert strata[0] == {frozenset("a"), frozenset("ac"), frozenset("ad")}
    assert strata[1] == {frozenset(), frozenset("d")}
    assert rt.rank.tolist() == naive_ranks(rt.preorder) == naive_ranks(rt.preorder, literal=True)


def test_rank_table_single_argument():
    af = AF.from_attacks("a")
    # with no attacks both subsets are admissible and tie under r-ad; DN separates them under r-co
    assert rank_table(ExtensionPreorder(af, "r-ad")).rank.tolist() == [1, 1]
    assert rank_table(ExtensionPreorder(af, "r-co")).rank.tolist() == [2, 1]


def test_rank_table_all_equivalent():
    pre = SetPreorder(3, np.ones((8, 8), dtype=bool))
    assert rank_table(pre).rank.tolist() == [1] * 8


def test_rank_table_rejects_cycles():
    ge = np.eye(4, dtype=bool)
    ge[0, 1] = ge[1, 2] = ge[2, 0] = True  # not transitive, strict part has a cycle
    with pytest.raises(ArgRankError):
        rank_table(SetPreorder(2, ge))


def test_rank_against_reference_recursion():
    for af in itertools.islice(enumerate_afs(3), 0, 512, 37):
        ref = ref_of(af)
        for tau in ExtRanking:
            want = ref.ranks(tau.value)
            got = rank_table(ExtensionPreorder(af, tau)).rank
            assert all(got[s] == want[as_labels(af, s)] for s in range(8))


def test_count_in_rank(f1):
    rt = rank_table(ExtensionPreorder(f1, "r-co"))
    assert count_in_rank(rt, f1.index("a"), 1) == 3
    assert count_in_rank(rt, f1.index("c"), 1) == 1
    for x in range(4):
        assert sum(count_in_rank(rt, x, k) for k in range(1, rt.w + 1)) == 8
    with pytest.raises(ValueError):
        count_in_rank(rt, 0, 0)
    with pytest.raises(ValueError):
        count_in_rank(rt, 0, rt.w + 1)
    with pytest.raises(ArgumentIndexError):
        count_in_rank(rt, 9, 1)


def test_set_preorder_labels():
    pre = SetPreorder(2, np.ones((4, 4), dtype=bool))
    assert pre.labels == ("a1", "a2") or list(pre.labels) == ["a1", "a2"]
    assert pre.set_labels(3) == ["a1", "a2"]
