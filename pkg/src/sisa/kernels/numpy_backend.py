"""Pure-numpy set kernels.

Fallback path used when numba is unavailable or SISA_KERNELS=numpy.
All sparse inputs/outputs are sorted, duplicate-free int32 arrays.
"""
import numpy as np

from ._bitops import (  # noqa: F401  (re-exported as part of the backend surface)
    db_and,
    db_andnot,
    db_complement,
    db_clear_bit,
    db_get_bit,
    db_or,
    db_set_bit,
    tail_mask,
    word_count,
    zero_words,
)

NAME = "numpy"

_EMPTY = np.empty(0, dtype=np.int32)


def intersect_merge(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return _EMPTY.copy()
    return np.intersect1d(a, b, assume_unique=True).astype(np.int32, copy=False)


def intersect_merge_card(a: np.ndarray, b: np.ndarray) -> int:
    return int(len(intersect_merge(a, b)))


def _gallop_hits(small: np.ndarray, large: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(large, small)
    idx_c = np.minimum(idx, len(large) - 1)
    return small[(idx < len(large)) & (large[idx_c] == small)]


def intersect_gallop(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return _EMPTY.copy()
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    return _gallop_hits(small, large).astype(np.int32, copy=False)


def intersect_gallop_card(a: np.ndarray, b: np.ndarray) -> int:
    return int(len(intersect_gallop(a, b)))


def union_merge(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.union1d(a, b).astype(np.int32, copy=False)


def difference_merge(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a.copy()
    return np.setdiff1d(a, b, assume_unique=True).astype(np.int32, copy=False)


def difference_gallop(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Keep elements of a absent from b, probing b by binary search."""
    if len(a) == 0 or len(b) == 0:
        return a.copy()
    idx = np.searchsorted(b, a)
    idx_c = np.minimum(idx, len(b) - 1)
    return a[~((idx < len(b)) & (b[idx_c] == a))]


def sa_db_intersect(a: np.ndarray, words: np.ndarray) -> np.ndarray:
    if len(a) == 0:
        return _EMPTY.copy()
    bits = (words[a >> 6] >> (a.astype(np.uint64) & np.uint64(63))) & np.uint64(1)
    return a[bits == 1]


def sa_db_intersect_card(a: np.ndarray, words: np.ndarray) -> int:
    return int(len(sa_db_intersect(a, words)))


def popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())


def db_to_sa(words: np.ndarray, n: int) -> np.ndarray:
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return np.flatnonzero(bits[:n]).astype(np.int32)


def sa_to_db(a: np.ndarray, n: int) -> np.ndarray:
    words = zero_words(n)
    if len(a):
        np.bitwise_or.at(
            words, a >> 6, np.uint64(1) << (a.astype(np.uint64) & np.uint64(63))
        )
    return words


def sa_contains(a: np.ndarray, x: int) -> bool:
    i = int(np.searchsorted(a, x))
    return i < len(a) and int(a[i]) == x


def sa_insert(a: np.ndarray, x: int) -> np.ndarray:
    i = int(np.searchsorted(a, x))
    if i < len(a) and int(a[i]) == x:
        return a
    return np.insert(a, i, np.int32(x))


def sa_remove(a: np.ndarray, x: int) -> np.ndarray:
    i = int(np.searchsorted(a, x))
    if i < len(a) and int(a[i]) == x:
        return np.delete(a, i)
    return a
