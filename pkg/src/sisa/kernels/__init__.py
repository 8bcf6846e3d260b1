"""Kernel backend selection.

The numba backend is the default; set SISA_KERNELS=numpy to force the
pure-numpy fallback (or SISA_KERNELS=numba to fail loudly if numba is
missing).  Both backends expose the same functions and produce identical
results; tests assert the equivalence.
"""
import os

_choice = os.environ.get("SISA_KERNELS", "").strip().lower()

if _choice == "numpy":
    from . import numpy_backend as backend
elif _choice == "numba":
    from . import numba_backend as backend
else:
    try:
        from . import numba_backend as backend
    except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
        from . import numpy_backend as backend

BACKEND = backend.NAME

intersect_merge = backend.intersect_merge
intersect_merge_card = backend.intersect_merge_card
intersect_gallop = backend.intersect_gallop
intersect_gallop_card = backend.intersect_gallop_card
union_merge = backend.union_merge
difference_merge = backend.difference_merge
difference_gallop = backend.difference_gallop
sa_db_intersect = backend.sa_db_intersect
sa_db_intersect_card = backend.sa_db_intersect_card
popcount = backend.popcount
db_to_sa = backend.db_to_sa
sa_to_db = backend.sa_to_db
sa_contains = backend.sa_contains
sa_insert = backend.sa_insert
sa_remove = backend.sa_remove
db_and = backend.db_and
db_or = backend.db_or
db_andnot = backend.db_andnot
db_complement = backend.db_complement
db_get_bit = backend.db_get_bit
db_set_bit = backend.db_set_bit
db_clear_bit = backend.db_clear_bit
tail_mask = backend.tail_mask
word_count = backend.word_count
zero_words = backend.zero_words
