"""Physical set representations and representation-polymorphic set algebra.

A vertex set is stored either as a sorted sparse array (SA) of int32 member
IDs or as a dense bitvector (DB) of `universe` bits.  Operations here are
pure: they never touch cost accounting (that is the engine's job) and never
mutate their inputs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import UniverseError, UsageError, VariantError


class SetRepr(enum.Enum):
    SORTED_SPARSE_ARRAY = "sa"
    DENSE_BITVECTOR = "db"


SA = SetRepr.SORTED_SPARSE_ARRAY
DB = SetRepr.DENSE_BITVECTOR


class Variant(enum.Enum):
    MERGE = "merge"
    GALLOP = "gallop"
    SA_DB = "sa_db"
    DB_DB = "db_db"
    AUTO = "auto"


@dataclass
class SetValue:
    repr_kind: SetRepr
    payload: np.ndarray  # int32 members (SA) or uint64 words (DB)
    universe: int

    def cardinality(self) -> int:
        if self.repr_kind is SA:
            return len(self.payload)
        return kernels.popcount(self.payload)

    def elements(self) -> np.ndarray:
        """Members as a sorted int32 array (no sharing with the payload)."""
        if self.repr_kind is SA:
            return self.payload.copy()
        return kernels.db_to_sa(self.payload, self.universe)

    def copy(self) -> "SetValue":
        return SetValue(self.repr_kind, self.payload.copy(), self.universe)


def make_sa(elements, universe: int) -> SetValue:
    arr = np.asarray(elements, dtype=np.int32)
    if len(arr):
        arr = np.unique(arr)
        if int(arr[0]) < 0 or int(arr[-1]) >= universe:
            raise UniverseError(f"element out of universe [0, {universe})")
    return SetValue(SA, arr, universe)


def make_db(elements, universe: int) -> SetValue:
    return convert(make_sa(elements, universe), DB)


def make_set(elements, universe: int, repr_kind: SetRepr) -> SetValue:
    return make_sa(elements, universe) if repr_kind is SA else make_db(elements, universe)


def _check_universe(a: SetValue, b: SetValue) -> None:
    if a.universe != b.universe:
        raise UniverseError(f"universe mismatch: {a.universe} vs {b.universe}")


def resolve_variant(a: SetValue, b: SetValue, variant: Variant) -> Variant:
    """Replace AUTO with the representation-driven default and validate
    that the chosen variant is applicable to (a, b)."""
    both_sa = a.repr_kind is SA and b.repr_kind is SA
    both_db = a.repr_kind is DB and b.repr_kind is DB
    if variant is Variant.AUTO:
        if both_db:
            return Variant.DB_DB
        if both_sa:
            return Variant.MERGE
        return Variant.SA_DB
    if variant in (Variant.MERGE, Variant.GALLOP) and not both_sa:
        raise VariantError(f"{variant.value} requires two sparse arrays")
    if variant is Variant.DB_DB and not both_db:
        raise VariantError("db_db requires two dense bitvectors")
    if variant is Variant.SA_DB and (both_sa or both_db):
        raise VariantError("sa_db requires one sparse array and one bitvector")
    return variant


def _sa_db_sides(a: SetValue, b: SetValue):
    return (a, b) if a.repr_kind is SA else (b, a)


def intersect(a: SetValue, b: SetValue, variant: Variant = Variant.AUTO) -> SetValue:
    _check_universe(a, b)
    v = resolve_variant(a, b, variant)
    if v is Variant.MERGE:
        return SetValue(SA, kernels.intersect_merge(a.payload, b.payload), a.universe)
    if v is Variant.GALLOP:
        return SetValue(SA, kernels.intersect_gallop(a.payload, b.payload), a.universe)
    if v is Variant.SA_DB:
        sa, db = _sa_db_sides(a, b)
        return SetValue(SA, kernels.sa_db_intersect(sa.payload, db.payload), a.universe)
    return SetValue(DB, kernels.db_and(a.payload, b.payload), a.universe)


def intersect_cardinality(a: SetValue, b: SetValue, variant: Variant = Variant.AUTO) -> int:
    _check_universe(a, b)
    v = resolve_variant(a, b, variant)
    if v is Variant.MERGE:
        return kernels.intersect_merge_card(a.payload, b.payload)
    if v is Variant.GALLOP:
        return kernels.intersect_gallop_card(a.payload, b.payload)
    if v is Variant.SA_DB:
        sa, db = _sa_db_sides(a, b)
        return kernels.sa_db_intersect_card(sa.payload, db.payload)
    return kernels.popcount(kernels.db_and(a.payload, b.payload))


def union(a: SetValue, b: SetValue) -> SetValue:
    _check_universe(a, b)
    if a.repr_kind is SA and b.repr_kind is SA:
        return SetValue(SA, kernels.union_merge(a.payload, b.payload), a.universe)
    if a.repr_kind is DB and b.repr_kind is DB:
        return SetValue(DB, kernels.db_or(a.payload, b.payload), a.universe)
    sa, db = _sa_db_sides(a, b)
    words = db.payload.copy()
    words |= kernels.sa_to_db(sa.payload, a.universe)
    return SetValue(DB, words, a.universe)


def difference(a: SetValue, b: SetValue, variant: Variant = Variant.AUTO) -> SetValue:
    """a minus b.  Result keeps a's representation; the DB/DB path is the
    bitwise AND with b's complement."""
    _check_universe(a, b)
    if a.repr_kind is SA and b.repr_kind is SA:
        if variant is Variant.GALLOP:
            return SetValue(SA, kernels.difference_gallop(a.payload, b.payload), a.universe)
        return SetValue(SA, kernels.difference_merge(a.payload, b.payload), a.universe)
    if a.repr_kind is DB and b.repr_kind is DB:
        return SetValue(DB, kernels.db_andnot(a.payload, b.payload), a.universe)
    if a.repr_kind is SA:  # probe each member of a against the bitvector
        mask = kernels.db_complement(b.payload, b.universe)
        return SetValue(SA, kernels.sa_db_intersect(a.payload, mask), a.universe)
    words = a.payload.copy()
    for x in b.payload:
        kernels.db_clear_bit(words, int(x))
    return SetValue(DB, words, a.universe)


def complement(a: SetValue) -> SetValue:
    if a.repr_kind is not DB:
        raise VariantError("complement is defined for dense bitvectors")
    return SetValue(DB, kernels.db_complement(a.payload, a.universe), a.universe)


def membership(a: SetValue, x: int) -> bool:
    if x < 0 or x >= a.universe:
        raise UniverseError(f"element {x} outside universe [0, {a.universe})")
    if a.repr_kind is SA:
        return kernels.sa_contains(a.payload, x)
    return kernels.db_get_bit(a.payload, x)


def add_element(a: SetValue, x: int) -> SetValue:
    if x < 0 or x >= a.universe:
        raise UniverseError(f"element {x} outside universe [0, {a.universe})")
    if a.repr_kind is SA:
        return SetValue(SA, kernels.sa_insert(a.payload, x), a.universe)
    words = a.payload.copy()
    kernels.db_set_bit(words, x)
    return SetValue(DB, words, a.universe)


def remove_element(a: SetValue, x: int) -> SetValue:
    if x < 0 or x >= a.universe:
        raise UniverseError(f"element {x} outside universe [0, {a.universe})")
    if a.repr_kind is SA:
        return SetValue(SA, kernels.sa_remove(a.payload, x), a.universe)
    words = a.payload.copy()
    kernels.db_clear_bit(words, x)
    return SetValue(DB, words, a.universe)


def convert(a: SetValue, target: SetRepr) -> SetValue:
    if a.repr_kind is target:
        return a.copy()
    if target is DB:
        return SetValue(DB, kernels.sa_to_db(a.payload, a.universe), a.universe)
    return SetValue(SA, kernels.db_to_sa(a.payload, a.universe), a.universe)


def sets_equal(a: SetValue, b: SetValue) -> bool:
    """Logical (representation-independent) equality."""
    if a.universe != b.universe:
        return False
    return np.array_equal(a.elements(), b.elements())


@dataclass
class SetMetadata:
    """One set-metadata (SM) record: everything the dispatcher needs to pick
    an operation variant without touching the payload."""

    set_id: int
    repr_kind: SetRepr
    cardinality: int
    universe: int
    location: object = None


@dataclass
class RepresentationPolicy:
    """Neighborhood representation selection knobs.

    A neighborhood qualifies for a DB when its degree is at least
    db_threshold * n; qualifying neighborhoods are granted DBs largest-first
    while the cumulative extra storage stays within budget_fraction of the
    all-SA baseline.  galloping_threshold drives ratio-mode variant choice.
    """

    db_threshold: float = 0.4
    budget_fraction: float = 0.10
    galloping_threshold: float = 5.0

    def __post_init__(self):
        if not (0.0 <= self.db_threshold <= 1.0):
            raise UsageError(f"db threshold must lie in [0, 1], got {self.db_threshold}")
        if self.galloping_threshold < 1.0:
            raise UsageError("galloping_threshold must be >= 1")


class BudgetState:
    """Tracks extra storage consumed by DB grants over the all-SA baseline.

    Each granted bitvector charges its full n bits against the budget
    (budget_fraction times the all-SA baseline), so the cap bounds the
    total additional bits exactly.
    """

    def __init__(self, baseline_bits: int, budget_fraction: float, word_bits: int = 32):
        self.baseline_bits = baseline_bits
        self.budget_bits = budget_fraction * baseline_bits
        self.word_bits = word_bits
        self.extra_bits = 0

    def grant(self, degree: int, n: int) -> bool:
        if self.extra_bits + n <= self.budget_bits:
            self.extra_bits += n
            return True
        return False


def choose_representation(
    degree: int, n: int, policy: RepresentationPolicy, budget: BudgetState
) -> SetRepr:
    """Decide SA vs DB for one neighborhood and commit the budget if granted."""
    if degree >= policy.db_threshold * n and budget.grant(degree, n):
        return DB
    return SA
