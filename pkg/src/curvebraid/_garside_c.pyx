# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for left-greedy normalization of permutation factors.

Twin of ``_garside_py``; see that module for the storage and product
conventions.  The entry points and their results are identical, only the
inner loops differ (flat C arrays instead of Python lists).
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memmove

BACKEND = "c"


def mul(p, q):
    """Diagram-order product: p first, then q."""
    return [q[v] for v in p]


def inverse(p):
    cdef Py_ssize_t i, n = len(p)
    out = [0] * n
    for i in range(n):
        out[p[i]] = i
    return out


def tau(p):
    """Conjugation by Delta (an involution on permutation tables)."""
    cdef Py_ssize_t i, n = len(p)
    return [n - 1 - p[n - 1 - i] for i in range(n)]


cdef bint _is_identity(int k, int *f) noexcept:
    cdef int j
    for j in range(k):
        if f[j] != j:
            return 0
    return 1


cdef bint _is_delta(int k, int *f) noexcept:
    cdef int j
    for j in range(k):
        if f[j] != k - 1 - j:
            return 0
    return 1


cdef bint _rebalance(int k, int *A, int *B, int *invA) noexcept:
    """Make the pair (A, B) left-weighted in place; 1 if anything moved."""
    cdef bint moved = 0, scanning = 1
    cdef int s, ia, ib, t
    for s in range(k):
        invA[A[s]] = s
    while scanning:
        scanning = 0
        for s in range(k - 1):
            # s starts B and does not finish A: transfer it.
            if B[s] > B[s + 1] and invA[s] < invA[s + 1]:
                ia = invA[s]
                ib = invA[s + 1]
                t = A[ia]; A[ia] = A[ib]; A[ib] = t
                invA[s] = ib
                invA[s + 1] = ia
                t = B[s]; B[s] = B[s + 1]; B[s + 1] = t
                moved = 1
                scanning = 1
    return moved


def normalize(int k, factors):
    """Left-greedy normal form of a positive factor sequence.

    Returns ``(delta_count, normal_factors)`` with every adjacent pair
    left-weighted, no leading Delta and no trailing identity factors.
    """
    cdef Py_ssize_t n_in = len(factors)
    cdef Py_ssize_t count = 0, i, start
    cdef int j, v, n_delta
    cdef bint ident
    cdef int *work = <int *> malloc(sizeof(int) * (n_in * k if n_in else 1))
    cdef int *inv_scratch = <int *> malloc(sizeof(int) * (k if k else 1))
    if work == NULL or inv_scratch == NULL:
        free(work)
        free(inv_scratch)
        raise MemoryError()
    try:
        for f in factors:
            ident = 1
            for j in range(k):
                v = f[j]
                work[count * k + j] = v
                if v != j:
                    ident = 0
            if not ident:
                count += 1
        # Bubble passes: rebalance adjacent pairs until stable; a transfer
        # at i can disturb the pair at i - 1, so step back after a change.
        i = 0
        while i + 1 < count:
            if _rebalance(k, work + i * k, work + (i + 1) * k, inv_scratch):
                if _is_identity(k, work + (i + 1) * k):
                    if i + 2 < count:
                        memmove(work + (i + 1) * k, work + (i + 2) * k,
                                sizeof(int) * (count - i - 2) * k)
                    count -= 1
                if i > 0:
                    i -= 1
            else:
                i += 1
        # Strip leading Deltas into the power, trailing identities entirely.
        n_delta = 0
        start = 0
        while start < count and _is_delta(k, work + start * k):
            n_delta += 1
            start += 1
        while count > start and _is_identity(k, work + (count - 1) * k):
            count -= 1
        out = []
        for i in range(start, count):
            out.append([work[i * k + j] for j in range(k)])
        return n_delta, out
    finally:
        free(work)
        free(inv_scratch)
