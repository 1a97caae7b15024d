"""Exact linear algebra over F_p or Q.

Matrices over F_p are ``int64`` arrays with entries in ``[0, p)``; matrices
over Q are object arrays of :class:`fractions.Fraction`.  The F_p elimination
kernel is compiled when the extension is available and falls back to numpy
otherwise; ``BACKEND`` names the one in use.
"""

from fractions import Fraction
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("MGREG_PURE_PYTHON"):
        raise ImportError
    from . import _ckernels as _fast

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    _fast = _pykernels
    BACKEND = "python"

DEFAULT_PRIME = 32003


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """A prime field F_p (``p`` an int) or the rationals (``p is None``)."""

    __slots__ = ("p",)

    def __init__(self, p=DEFAULT_PRIME):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls):
        return cls(None)

    @property
    def is_prime(self):
        return self.p is not None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- elements -------------------------------------------------------
    def elem(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    def zeros(self, rows, cols):
        if self.p is not None:
            return np.zeros((rows, cols), dtype=np.int64)
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out

    def identity(self, n):
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.elem(1)
        return out

    def matrix(self, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        out = self.zeros(len(rows), ncols)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                out[i, j] = self.elem(x)
        return out

    def normalize(self, A):
        if self.p is not None:
            return np.asarray(A, dtype=np.int64) % self.p
        return A

    def matmul(self, A, B):
        if A.shape[1] == 0 or B.shape[0] == 0:
            return self.zeros(A.shape[0], B.shape[1])
        if self.p is not None:
            if (self.p - 1) ** 2 * A.shape[1] >= 2**62:
                return (A.astype(object).dot(B.astype(object)) % self.p).astype(np.int64)
            return (A @ B) % self.p
        return A.dot(B)

    def scale(self, A, c):
        if self.p is not None:
            return (A * (int(c) % self.p)) % self.p
        return A * Fraction(c)

    def add(self, A, B):
        if self.p is not None:
            return (A + B) % self.p
        return A + B

    def sub(self, A, B):
        if self.p is not None:
            return (A - B) % self.p
        return A - B

    # -- elimination ----------------------------------------------------
    def rref(self, A):
        """Return ``(R, pivots)`` with ``R`` the reduced row echelon form."""
        R = np.array(A, dtype=self.dtype, copy=True)
        if R.size == 0:
            return R, []
        if self.p is not None:
            R = np.ascontiguousarray(R % self.p)
            pivots = _fast.rref_mod_p(R, self.p)
        else:
            pivots = _pykernels.rref_exact(R)
        return R, list(pivots)

    def rank(self, A):
        if A.shape[0] == 0 or A.shape[1] == 0:
            return 0
        # eliminate along the shorter side
        if A.shape[0] > A.shape[1]:
            A = A.T
        return len(self.rref(A)[1])

    def nullspace(self, A):
        """Columns spanning ``ker A`` (a ``ncols x d`` matrix)."""
        ncols = A.shape[1]
        if A.shape[0] == 0:
            return self.identity(ncols)
        R, pivots = self.rref(A)
        free = [c for c in range(ncols) if c not in set(pivots)]
        K = self.zeros(ncols, len(free))
        one = self.elem(1)
        for k, f in enumerate(free):
            K[f, k] = one
            for r, pc in enumerate(pivots):
                v = R[r, f]
                if v != 0:
                    K[pc, k] = (-v) % self.p if self.p is not None else -v
        return K

    def hstack(self, blocks, rows):
        blocks = [b for b in blocks if b.shape[1] > 0]
        if not blocks:
            return self.zeros(rows, 0)
        return np.hstack(blocks)
