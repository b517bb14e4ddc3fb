# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p hot kernels: row reduction and truncated 2D products.

Contracts match kleinwiman.kernels._ref exactly; tests cross-check the two.
Row reduction uses delayed reduction: non-pivot rows accumulate unreduced
int64 values (safe for p < 2**20 with a periodic cleanup), and only pivot
rows and multipliers are reduced, keeping the inner loop division-free.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline long long _mod(long long a, long long p):
    a = a % p
    if a < 0:
        a += p
    return a


cdef long long _inv_mod(long long a, long long p):
    # extended euclid; a nonzero mod p
    cdef long long lm = 1, hm = 0, low = _mod(a, p), high = p, r, nm, nw
    while low > 1:
        r = high / low
        nm = hm - lm * r
        nw = high - low * r
        hm = lm; lm = nm; high = low; low = nw
    return _mod(lm, p)


def rref_mod(cnp.ndarray[cnp.int64_t, ndim=2] a, long long p):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v
    cdef int since_cleanup = 0
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if _mod(a[i, c], p) != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                f = a[r, j]; a[r, j] = a[piv, j]; a[piv, j] = f
        for j in range(cols):
            a[r, j] = _mod(a[r, j], p)
        inv = _inv_mod(a[r, c], p)
        for j in range(cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = _mod(a[i, c], p)
            if f != 0:
                for j in range(cols):
                    a[i, j] -= f * a[r, j]
        pivots.append(c)
        r += 1
        since_cleanup += 1
        if since_cleanup >= 1024:
            # keep accumulated magnitudes below 1024 * p**2 < 2**62
            since_cleanup = 0
            for i in range(rows):
                for j in range(cols):
                    a[i, j] = _mod(a[i, j], p)
    for i in range(rows):
        for j in range(cols):
            a[i, j] = _mod(a[i, j], p)
    return pivots


def trunc_mul_mod(cnp.ndarray[cnp.int64_t, ndim=2] a,
                  cnp.ndarray[cnp.int64_t, ndim=2] b, long long p):
    cdef Py_ssize_t m = a.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((m, m), dtype=np.int64)
    cdef Py_ssize_t i, j, k, l
    cdef long long aij
    for i in range(m):
        for j in range(m - i):
            aij = a[i, j]
            if aij == 0:
                continue
            for k in range(m - i):
                for l in range(m - i - j - k):
                    out[i + k, j + l] += aij * b[k, l]
    for i in range(m):
        for j in range(m - i):
            out[i, j] = _mod(out[i, j], p)
    return out
