"""Pure numpy elimination kernels (fallback when the extension is not built)."""

import numpy as np


def rref_mod_p(A, p):
    """Reduce ``A`` in place to reduced row echelon form mod ``p``.

    Entries must already lie in ``[0, p)``.  Returns the pivot columns.
    """
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        if inv != 1:
            A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def rref_exact(A):
    """Reduced row echelon form in place over an exact field (object array)."""
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        k = next((k for k in range(r, nrows) if A[k, c] != 0), None)
        if k is None:
            continue
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r, c:] = A[r, c:] / A[r, c]
        for i in range(nrows):
            if i != r and A[i, c] != 0:
                A[i, c:] = A[i, c:] - A[i, c] * A[r, c:]
        pivots.append(c)
        r += 1
    return pivots
