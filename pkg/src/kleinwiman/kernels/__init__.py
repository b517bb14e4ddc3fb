"""Mod-p linear algebra and truncated polynomial kernels.

The hot loops live either in the compiled extension (_speed, built from
Cython) or the numpy reference module (_ref).  Selection happens once at
import; set KLEINWIMAN_KERNELS=python to force the fallback.
"""

import os

import numpy as np

if os.environ.get("KLEINWIMAN_KERNELS", "").lower() in ("python", "ref"):
    from kleinwiman.kernels import _ref as _impl
    BACKEND = "python"
else:
    try:
        from kleinwiman.kernels import _speed as _impl
        BACKEND = "compiled"
    except ImportError:
        from kleinwiman.kernels import _ref as _impl
        BACKEND = "python"

# p**2 * (matrix dimension or m**2) must stay below 2**63 for the int64
# accumulation in both backends; every preset prime is tiny compared to this.
MAX_PRIME = 1 << 20


def _as_matrix(rows, cols, data):
    a = np.array(data, dtype=np.int64)
    a.shape = (rows, cols)
    return a


def rref_mod(a, p):
    """RREF of a copy of `a` mod p. Returns (rref matrix, pivot columns)."""
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} too large for the mod-p kernels")
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    if a.size == 0:
        return a, []
    pivots = _impl.rref_mod(a, p)
    return a, list(pivots)


def rank_mod(a, p):
    return len(rref_mod(a, p)[1])


def kernel_mod(a, p):
    """Basis of the right kernel of `a` mod p, as rows of a (k, cols) array.

    The basis is canonical: for each free column f the vector has 1 at f,
    the solved pivot entries elsewhere, and free columns are taken in
    increasing order.
    """
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    r, pivots = rref_mod(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-r[i, f]) % p
    return basis


def reduce_mod(rref, pivots, v, p):
    """Reduce row vector v against an RREF row basis; returns the residual."""
    v = np.asarray(v, dtype=np.int64) % p
    for i, c in enumerate(pivots):
        if v[c]:
            v = (v - v[c] * rref[i]) % p
    return v


def in_rowspace_mod(rref, pivots, v, p):
    return not np.any(reduce_mod(rref, pivots, v, p))


def trunc_mul_mod(a, b, p):
    """Product of truncated bivariate polynomials (see _ref docstring)."""
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} too large for the mod-p kernels")
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64))
    b = np.ascontiguousarray(np.asarray(b, dtype=np.int64))
    return _impl.trunc_mul_mod(a, b, p)
