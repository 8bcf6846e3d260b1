"""Set-value semantics: representation equivalence, variant applicability,
metadata bookkeeping, and the representation-selection policy."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sisa import sets as S
from sisa.errors import UniverseError, UsageError, VariantError
from sisa.sets import DB, SA, BudgetState, RepresentationPolicy, Variant, choose_representation

UNIVERSE = 128

elements = st.lists(
    st.integers(min_value=0, max_value=UNIVERSE - 1), max_size=40, unique=True
)


def both_reprs(xs):
    return [S.make_sa(xs, UNIVERSE), S.make_db(xs, UNIVERSE)]


def test_intersect_examples():
    a = S.make_sa([1, 3, 5, 7], UNIVERSE)
    b = S.make_sa([3, 4, 5], UNIVERSE)
    assert S.intersect(a, b, Variant.MERGE).elements().tolist() == [3, 5]
    empty = S.make_sa([], UNIVERSE)
    c = S.make_sa([1, 2, 3], UNIVERSE)
    assert S.intersect(empty, c, Variant.MERGE).elements().tolist() == []
    d = S.make_sa(range(10), UNIVERSE)
    e = S.make_sa(range(5, 15), UNIVERSE)
    assert S.intersect(d, e, Variant.GALLOP).elements().tolist() == [5, 6, 7, 8, 9]


def test_intersect_cardinality_examples():
    a = S.make_sa([1, 2], UNIVERSE)
    b = S.make_sa([2, 3], UNIVERSE)
    assert S.intersect_cardinality(a, b) == 1
    big = S.make_sa(range(100), UNIVERSE)
    big2 = S.make_sa(range(50, 128), UNIVERSE)
    assert S.intersect_cardinality(big, big2) == 50
    assert S.intersect_cardinality(big, big) == big.cardinality()


def test_union_difference_examples():
    a = S.make_sa([1, 2], UNIVERSE)
    b = S.make_sa([2, 3], UNIVERSE)
    assert S.union(a, b).elements().tolist() == [1, 2, 3]
    empty = S.make_sa([], UNIVERSE)
    assert S.sets_equal(S.union(a, empty), a)
    assert S.difference(S.make_sa([1, 2, 3], UNIVERSE), S.make_sa([2], UNIVERSE)).elements().tolist() == [1, 3]
    assert S.difference(a, a).elements().tolist() == []
    evens = S.make_db(range(0, 10, 2), UNIVERSE)
    first10 = S.make_db(range(10), UNIVERSE)
    assert S.difference(first10, evens).elements().tolist() == [1, 3, 5, 7, 9]


def test_membership_and_bounds():
    a = S.make_sa([1, 3, 5], UNIVERSE)
    assert S.membership(a, 3)
    assert not S.membership(S.make_sa([], UNIVERSE), 2)
    top = S.make_db([UNIVERSE - 1], UNIVERSE)
    assert S.membership(top, UNIVERSE - 1)
    with pytest.raises(UniverseError):
        S.membership(a, UNIVERSE)


def test_add_remove_examples():
    empty_db = S.make_db([], UNIVERSE)
    one = S.add_element(empty_db, 5)
    assert one.cardinality() == 1 and one.repr_kind is DB
    assert S.remove_element(one, 5).cardinality() == 0
    sa = S.make_sa([1, 3, 5], UNIVERSE)
    assert S.add_element(sa, 4).elements().tolist() == [1, 3, 4, 5]
    assert S.add_element(sa, 3).elements().tolist() == [1, 3, 5]  # idempotent
    assert S.remove_element(sa, 2).elements().tolist() == [1, 3, 5]


def test_convert_roundtrip():
    sa = S.make_sa([1, 3], UNIVERSE)
    db = S.convert(sa, DB)
    assert db.repr_kind is DB
    assert S.sets_equal(S.convert(db, SA), sa)
    assert S.convert(S.make_sa([], UNIVERSE), DB).cardinality() == 0
    full = S.make_db(range(UNIVERSE), UNIVERSE)
    assert S.convert(full, SA).elements().tolist() == list(range(UNIVERSE))


def test_variant_applicability_errors():
    sa = S.make_sa([1], UNIVERSE)
    db = S.make_db([1], UNIVERSE)
    with pytest.raises(VariantError):
        S.intersect(sa, db, Variant.MERGE)
    with pytest.raises(VariantError):
        S.intersect(sa, sa, Variant.DB_DB)
    with pytest.raises(VariantError):
        S.intersect(db, db, Variant.SA_DB)
    with pytest.raises(UniverseError):
        S.intersect(sa, S.make_sa([1], UNIVERSE + 1))


@given(xs=elements, ys=elements)
@settings(max_examples=120, deadline=None)
def test_representation_equivalence(xs, ys):
    """Same logical results across every representation combination and
    applicable variant (brute-force python sets as the oracle)."""
    expect_and = sorted(set(xs) & set(ys))
    expect_or = sorted(set(xs) | set(ys))
    expect_diff = sorted(set(xs) - set(ys))
    for a in both_reprs(xs):
        for b in both_reprs(ys):
            variants = [Variant.AUTO]
            if a.repr_kind is SA and b.repr_kind is SA:
                variants += [Variant.MERGE, Variant.GALLOP]
            elif a.repr_kind is DB and b.repr_kind is DB:
                variants += [Variant.DB_DB]
            else:
                variants += [Variant.SA_DB]
            for v in variants:
                got = S.intersect(a, b, v)
                assert got.elements().tolist() == expect_and
                assert S.intersect_cardinality(a, b, v) == len(expect_and)
            assert S.union(a, b).elements().tolist() == expect_or
            assert S.difference(a, b).elements().tolist() == expect_diff
    da = S.make_db(xs, UNIVERSE)
    db_ = S.make_db(ys, UNIVERSE)
    assert S.sets_equal(
        S.difference(da, db_), S.intersect(da, S.complement(db_))
    )


@given(
    ops=st.lists(
        st.tuples(st.booleans(), st.integers(min_value=0, max_value=UNIVERSE - 1)),
        max_size=60,
    ),
    start=elements,
    use_db=st.booleans(),
)
@settings(max_examples=80, deadline=None)
def test_cardinality_tracks_mutations(ops, start, use_db):
    val = S.make_db(start, UNIVERSE) if use_db else S.make_sa(start, UNIVERSE)
    model = set(start)
    for add, x in ops:
        val = S.add_element(val, x) if add else S.remove_element(val, x)
        if add:
            model.add(x)
        else:
            model.discard(x)
        assert val.cardinality() == len(model)
        assert val.elements().tolist() == sorted(model)


def test_choose_representation_threshold():
    policy = RepresentationPolicy(db_threshold=0.4)
    open_budget = BudgetState(baseline_bits=10**9, budget_fraction=0.10)
    assert choose_representation(50, 100, policy, open_budget) is DB
    assert choose_representation(10, 100, policy, open_budget) is SA


def test_choose_representation_budget_exhausted():
    policy = RepresentationPolicy(db_threshold=0.4)
    tight = BudgetState(baseline_bits=500, budget_fraction=0.10)  # cap: 50 bits
    assert choose_representation(99, 100, policy, tight) is SA
    roomy = BudgetState(baseline_bits=5000, budget_fraction=0.10)  # cap: 500 bits
    assert choose_representation(99, 100, policy, roomy) is DB
    assert roomy.extra_bits == 100
    for _ in range(4):
        choose_representation(99, 100, policy, roomy)
    # five bitvectors of 100 bits each exceed the cap; the fifth is refused
    assert roomy.extra_bits == 500
    assert choose_representation(99, 100, policy, roomy) is SA


def test_policy_validation():
    with pytest.raises(UsageError):
        RepresentationPolicy(db_threshold=1.5)
    with pytest.raises(UsageError):
        RepresentationPolicy(galloping_threshold=0.5)
