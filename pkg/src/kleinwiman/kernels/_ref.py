"""Pure-numpy reference implementations of the mod-p hot kernels.

Same contracts as the compiled module kleinwiman.kernels._speed; this module
is the fallback selected at import time when the extension is unavailable.
"""

import numpy as np


def rref_mod(a, p):
    """Reduce `a` (int64 2D array) to reduced row echelon form mod p, in place.

    Returns the list of pivot column indices; the rank is its length.
    Non-pivot rows accumulate unreduced values between periodic cleanups
    (sound for p < 2**20: magnitudes stay below 1024 * p**2 < 2**62).
    """
    rows, cols = a.shape
    pivots = []
    r = 0
    since_cleanup = 0
    for c in range(cols):
        if r >= rows:
            break
        col = a[r:, c] % p
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] %= p
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        mult = a[:, c] % p
        mult[r] = 0
        other = np.nonzero(mult)[0]
        if other.size:
            a[other] -= np.outer(mult[other], a[r])
        pivots.append(c)
        r += 1
        since_cleanup += 1
        if since_cleanup >= 1024:
            since_cleanup = 0
            a %= p
    a %= p
    return pivots


def trunc_mul_mod(a, b, p):
    """Multiply truncated bivariate polynomials mod p.

    a, b are (m, m) int64 arrays; entry [i, j] is the coefficient of x^i y^j,
    zero whenever i + j >= m.  Returns the product truncated the same way.
    Accumulates full int64 products, so p**2 * m**2 must stay below 2**63.
    """
    m = a.shape[0]
    out = np.zeros((m, m), dtype=np.int64)
    for i, j in zip(*np.nonzero(a)):
        out[i:, j:] += a[i, j] * b[: m - i, : m - j]
    out %= p
    for i in range(m):
        out[i, m - i:] = 0
    return out
