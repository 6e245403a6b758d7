# cython: language_level=3
"""Hot sweep kernels: batched small complex linear solves.

2-D response maps reduce to solving M x = e_k for ~1e5 independent
matrices of dimension 2-5. LAPACK call overhead dominates at that size,
so the elimination is done inline with partial pivoting.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


@cython.boundscheck(False)
@cython.wraparound(False)
@cython.cdivision(True)
def solve_unit_column(cnp.ndarray[cnp.complex128_t, ndim=3] mats, int col):
    """Solve mats[b] @ x = e_col for every batch entry.

    Returns an array of shape (B, N). Singular systems yield NaN rows
    rather than raising, so sweeps can mask isolated bad cells.
    """
    cdef Py_ssize_t B = mats.shape[0]
    cdef Py_ssize_t N = mats.shape[1]
    if mats.shape[2] != N:
        raise ValueError("matrix stack must be square")
    if col < 0 or col >= N:
        raise ValueError("column index out of range")

    cdef cnp.ndarray[cnp.complex128_t, ndim=3] work = np.ascontiguousarray(mats).copy()
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((B, N), dtype=np.complex128)

    cdef Py_ssize_t b, i, j, k, piv
    cdef double complex factor, tmp
    cdef double best, mag
    cdef double complex[:, :, :] M = work
    cdef double complex[:, :] x = out
    cdef int singular

    for b in range(B):
        for i in range(N):
            x[b, i] = 0.0
        x[b, col] = 1.0
        singular = 0

        for k in range(N):
            piv = k
            best = abs(M[b, k, k].real) + abs(M[b, k, k].imag)
            for i in range(k + 1, N):
                mag = abs(M[b, i, k].real) + abs(M[b, i, k].imag)
                if mag > best:
                    best = mag
                    piv = i
            if best == 0.0:
                singular = 1
                break
            if piv != k:
                for j in range(k, N):
                    tmp = M[b, k, j]
                    M[b, k, j] = M[b, piv, j]
                    M[b, piv, j] = tmp
                tmp = x[b, k]
                x[b, k] = x[b, piv]
                x[b, piv] = tmp
            for i in range(k + 1, N):
                factor = M[b, i, k] / M[b, k, k]
                if factor != 0.0:
                    for j in range(k + 1, N):
                        M[b, i, j] = M[b, i, j] - factor * M[b, k, j]
                    x[b, i] = x[b, i] - factor * x[b, k]

        if singular:
            for i in range(N):
                x[b, i] = complex(float("nan"), float("nan"))
            continue

        for k in range(N - 1, -1, -1):
            tmp = x[b, k]
            for j in range(k + 1, N):
                tmp = tmp - M[b, k, j] * x[b, j]
            x[b, k] = tmp / M[b, k, k]

    return out
