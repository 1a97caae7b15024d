# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel over F_p."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(cnp.ndarray[i64, ndim=2] A, i64 p):
    """Reduce ``A`` in place to reduced row echelon form mod ``p``.

    Entries must already lie in ``[0, p)``.  Returns the pivot columns.
    """
    cdef Py_ssize_t nrows = A.shape[0], ncols = A.shape[1]
    cdef Py_ssize_t r = 0, c, k, j, piv
    cdef i64 inv, f, v
    cdef i64[:, ::1] M = np.ascontiguousarray(A)
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for k in range(r, nrows):
            if M[k, c] != 0:
                piv = k
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                v = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = v
        inv = _inv(M[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                M[r, j] = (M[r, j] * inv) % p
        for k in range(nrows):
            if k == r:
                continue
            f = M[k, c]
            if f == 0:
                continue
            for j in range(c, ncols):
                if M[r, j] != 0:
                    M[k, j] = (M[k, j] - f * M[r, j]) % p
                    if M[k, j] < 0:
                        M[k, j] += p
        pivots.append(c)
        r += 1
    if not A.flags['C_CONTIGUOUS']:
        A[...] = np.asarray(M)
    return pivots
