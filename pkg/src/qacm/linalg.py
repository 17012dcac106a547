"""Dense linear algebra over GF(p), vectorized with numpy int64.

Only used for rank-style questions (Gram nondegeneracy, surjectivity of
multiplication maps).  p < 2^15 keeps all intermediate products in int64.
"""

from __future__ import annotations

import numpy as np


def row_reduce_mod_p(matrix, p: int):
    """Row echelon form mod p.  Returns (echelon ndarray, pivot column list)."""
    a = np.array(matrix, dtype=np.int64) % p
    if a.ndim != 2 or a.size == 0:
        return a.reshape(a.shape if a.ndim == 2 else (0, 0)), []
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        a -= np.outer(col, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(matrix, p: int) -> int:
    if len(matrix) == 0:
        return 0
    _, pivots = row_reduce_mod_p(matrix, p)
    return len(pivots)
