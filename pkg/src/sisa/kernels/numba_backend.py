"""Numba-compiled set kernels (the default backend).

Same surface as numpy_backend; the sorted-array scans and probe loops are
the hot paths of every mining algorithm, so they carry @njit.  Word-level
bulk ops are already vectorized in numpy and are reused as-is.
"""
import numpy as np
from numba import njit

from ._bitops import (  # noqa: F401
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
from .numpy_backend import sa_contains, sa_insert, sa_remove  # noqa: F401

NAME = "numba"

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)


@njit(cache=True, nogil=True)
def _merge(a, b, out):
    i = 0
    j = 0
    k = 0
    na = len(a)
    nb = len(b)
    while i < na and j < nb:
        x = a[i]
        y = b[j]
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            out[k] = x
            k += 1
            i += 1
            j += 1
    return k


@njit(cache=True, nogil=True)
def _merge_card(a, b):
    i = 0
    j = 0
    k = 0
    na = len(a)
    nb = len(b)
    while i < na and j < nb:
        x = a[i]
        y = b[j]
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            k += 1
            i += 1
            j += 1
    return k


@njit(cache=True, nogil=True)
def _bsearch(arr, x):
    lo = 0
    hi = len(arr)
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(arr) and arr[lo] == x


@njit(cache=True, nogil=True)
def _gallop(small, large, out):
    k = 0
    for i in range(len(small)):
        if _bsearch(large, small[i]):
            out[k] = small[i]
            k += 1
    return k


@njit(cache=True, nogil=True)
def _gallop_card(small, large):
    k = 0
    for i in range(len(small)):
        if _bsearch(large, small[i]):
            k += 1
    return k


@njit(cache=True, nogil=True)
def _union(a, b, out):
    i = 0
    j = 0
    k = 0
    na = len(a)
    nb = len(b)
    while i < na and j < nb:
        x = a[i]
        y = b[j]
        if x < y:
            out[k] = x
            i += 1
        elif y < x:
            out[k] = y
            j += 1
        else:
            out[k] = x
            i += 1
            j += 1
        k += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1
    return k


@njit(cache=True, nogil=True)
def _diff_merge(a, b, out):
    i = 0
    j = 0
    k = 0
    na = len(a)
    nb = len(b)
    while i < na and j < nb:
        x = a[i]
        y = b[j]
        if x < y:
            out[k] = x
            k += 1
            i += 1
        elif y < x:
            j += 1
        else:
            i += 1
            j += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    return k


@njit(cache=True, nogil=True)
def _diff_gallop(a, b, out):
    k = 0
    for i in range(len(a)):
        if not _bsearch(b, a[i]):
            out[k] = a[i]
            k += 1
    return k


@njit(cache=True, nogil=True)
def _sa_db(a, words, out):
    k = 0
    for i in range(len(a)):
        x = a[i]
        if (words[x >> 6] >> np.uint64(x & 63)) & _S1:
            out[k] = x
            k += 1
    return k


@njit(cache=True, nogil=True)
def _popcount(words):
    total = 0
    for i in range(len(words)):
        x = words[i]
        x = x - ((x >> _S1) & _M1)
        x = (x & _M2) + ((x >> _S2) & _M2)
        x = (x + (x >> _S4)) & _M4
        total += int((x * _H01) >> _S56)
    return total


@njit(cache=True, nogil=True)
def _db_to_sa(words, n, out):
    k = 0
    for w in range(len(words)):
        x = words[w]
        base = w << 6
        while x:
            bit = int(np.uint64(x & (~x + _S1)))  # lowest set bit
            # count trailing zeros via popcount of bit-1
            t = np.uint64(bit - 1)
            t = t - ((t >> _S1) & _M1)
            t = (t & _M2) + ((t >> _S2) & _M2)
            t = (t + (t >> _S4)) & _M4
            pos = base + int((t * _H01) >> _S56)
            if pos < n:
                out[k] = pos
                k += 1
            x = np.uint64(x & (x - _S1))
    return k


@njit(cache=True, nogil=True)
def _sa_to_db(a, words):
    for i in range(len(a)):
        x = a[i]
        words[x >> 6] |= _S1 << np.uint64(x & 63)


def intersect_merge(a, b):
    out = np.empty(min(len(a), len(b)), dtype=np.int32)
    k = _merge(a, b, out)
    return out[:k]


def intersect_merge_card(a, b):
    return int(_merge_card(a, b))


def intersect_gallop(a, b):
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    out = np.empty(len(small), dtype=np.int32)
    k = _gallop(small, large, out)
    return out[:k]


def intersect_gallop_card(a, b):
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    return int(_gallop_card(small, large))


def union_merge(a, b):
    out = np.empty(len(a) + len(b), dtype=np.int32)
    k = _union(a, b, out)
    return out[:k]


def difference_merge(a, b):
    out = np.empty(len(a), dtype=np.int32)
    k = _diff_merge(a, b, out)
    return out[:k]


def difference_gallop(a, b):
    out = np.empty(len(a), dtype=np.int32)
    k = _diff_gallop(a, b, out)
    return out[:k]


def sa_db_intersect(a, words):
    out = np.empty(len(a), dtype=np.int32)
    k = _sa_db(a, words, out)
    return out[:k]


def sa_db_intersect_card(a, words):
    return int(_gallopless_card(a, words))


@njit(cache=True, nogil=True)
def _gallopless_card(a, words):
    k = 0
    for i in range(len(a)):
        x = a[i]
        if (words[x >> 6] >> np.uint64(x & 63)) & _S1:
            k += 1
    return k


def popcount(words):
    return int(_popcount(words))


def db_to_sa(words, n):
    out = np.empty(n, dtype=np.int32)
    k = _db_to_sa(words, n, out)
    return out[:k]


def sa_to_db(a, n):
    words = zero_words(n)
    _sa_to_db(a, words)
    return words


def warmup():
    """Force compilation of every jitted kernel (cached across runs)."""
    a = np.array([1, 3, 5], dtype=np.int32)
    b = np.array([3, 4], dtype=np.int32)
    w = sa_to_db(a, 8)
    intersect_merge(a, b)
    intersect_merge_card(a, b)
    intersect_gallop(a, b)
    intersect_gallop_card(a, b)
    union_merge(a, b)
    difference_merge(a, b)
    difference_gallop(a, b)
    sa_db_intersect(b, w)
    sa_db_intersect_card(b, w)
    popcount(w)
    db_to_sa(w, 8)
