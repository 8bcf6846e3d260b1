"""Word-level bitvector helpers shared by both kernel backends.

Bitvectors are little-endian arrays of uint64 words; bit i of the set lives
at word i >> 6, position i & 63.  Bits at positions >= n (the universe size)
must stay zero; every helper that could set them masks the tail.
"""
import numpy as np

WORD_BITS = 64


def word_count(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def zero_words(n: int) -> np.ndarray:
    return np.zeros(word_count(n), dtype=np.uint64)


def tail_mask(n: int) -> np.ndarray:
    """All-ones word array for universe n, with bits >= n cleared."""
    words = np.full(word_count(n), np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    rem = n % WORD_BITS
    if rem and len(words):
        words[-1] = np.uint64((1 << rem) - 1)
    return words


def db_and(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.bitwise_and(a, b)


def db_or(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.bitwise_or(a, b)


def db_andnot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a AND (NOT b); safe because b's tail bits are zero, so the complement's
    tail is discarded by the AND with a (whose tail is also zero)."""
    return np.bitwise_and(a, np.bitwise_not(b))


def db_complement(a: np.ndarray, n: int) -> np.ndarray:
    return np.bitwise_and(np.bitwise_not(a), tail_mask(n))


def db_get_bit(words: np.ndarray, x: int) -> bool:
    return bool((int(words[x >> 6]) >> (x & 63)) & 1)


def db_set_bit(words: np.ndarray, x: int) -> None:
    words[x >> 6] |= np.uint64(1 << (x & 63))


def db_clear_bit(words: np.ndarray, x: int) -> None:
    words[x >> 6] &= np.uint64(~(1 << (x & 63)) & 0xFFFFFFFFFFFFFFFF)
