# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact row reduction.

Same contract as ``_echelon_py.echelon``.  Works in overflow-checked 64-bit
integers; any overflow (or an input entry that does not fit) hands the whole
problem to the pure-Python kernel, so results are always exact.
"""
from libc.stdlib cimport malloc, free

from . import _echelon_py

cdef extern from *:
    """
    static inline int gm_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int gm_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int gm_mul(long long a, long long b, long long *r) nogil
    int gm_sub(long long a, long long b, long long *r) nogil

cdef long long LIMIT = 4611686018427387904  # 2**62

cdef inline long long _abs(long long a) nogil:
    return -a if a < 0 else a

cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    a = _abs(a)
    b = _abs(b)
    while b:
        t = a % b
        a = b
        b = t
    return a

cdef int _make_primitive(long long *row, int ncols) nogil:
    """Divide out the content. Returns 1 if the row is zero."""
    cdef long long g = 0
    cdef int j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return 0
    if g == 0:
        return 1
    if g > 1:
        for j in range(ncols):
            row[j] //= g
    return 0

cdef int _eliminate(long long *row, long long *prow, int col, long long p,
                    int *nz, int nnz, int ncols) nogil:
    """row <- (p/g) row - (a/g) prow.  Returns -1 on overflow, 1 if zero."""
    cdef long long a = row[col]
    cdef long long g = _gcd(p, a)
    cdef long long s = p // g
    cdef long long t = a // g
    cdef long long tmp
    cdef int j, k
    if s != 1:
        for j in range(ncols):
            if row[j]:
                if gm_mul(row[j], s, &tmp):
                    return -1
                row[j] = tmp
    for k in range(nnz):
        j = nz[k]
        if gm_mul(t, prow[j], &tmp):
            return -1
        if gm_sub(row[j], tmp, &tmp):
            return -1
        if tmp >= LIMIT or tmp <= -LIMIT:
            return -1
        row[j] = tmp
    return _make_primitive(row, ncols)

cdef object _echelon_i64(list rows, int ncols):
    cdef int nrows = len(rows)
    cdef long long *mat = NULL
    cdef int *state = NULL     # 0 active, 1 reduced (pivot row), 2 dead
    cdef int *order = NULL     # reduced rows in pivot order
    cdef int *nz = NULL
    cdef int npiv = 0
    cdef int i, j, r, best, nnz, col, rc
    cdef long long v, bestabs, p
    cdef long long *prow
    cdef long long *row
    pivots = []
    if nrows == 0:
        return [], []
    mat = <long long *> malloc(nrows * ncols * sizeof(long long))
    state = <int *> malloc(nrows * sizeof(int))
    order = <int *> malloc(nrows * sizeof(int))
    nz = <int *> malloc((ncols + 1) * sizeof(int))
    if mat == NULL or state == NULL or order == NULL or nz == NULL:
        free(mat); free(state); free(order); free(nz)
        raise MemoryError()
    try:
        for i in range(nrows):
            pyrow = rows[i]
            if len(pyrow) != ncols:
                raise ValueError(f"row of length {len(pyrow)}, expected {ncols}")
            for j in range(ncols):
                x = pyrow[j]
                if x >= LIMIT or x <= -LIMIT:
                    return None
                mat[i * ncols + j] = x
            state[i] = 2 if _make_primitive(mat + i * ncols, ncols) else 0
        for col in range(ncols):
            best = -1
            bestabs = 0
            for r in range(nrows):
                if state[r] != 0:
                    continue
                v = _abs(mat[r * ncols + col])
                if v and (best < 0 or v < bestabs):
                    best = r
                    bestabs = v
                    if v == 1:
                        break
            if best < 0:
                continue
            prow = mat + best * ncols
            if prow[col] < 0:
                for j in range(ncols):
                    prow[j] = -prow[j]
            p = prow[col]
            nnz = 0
            for j in range(col, ncols):
                if prow[j]:
                    nz[nnz] = j
                    nnz += 1
            state[best] = 1
            for r in range(nrows):
                if r == best or state[r] == 2:
                    continue
                row = mat + r * ncols
                if row[col] == 0:
                    continue
                rc = _eliminate(row, prow, col, p, nz, nnz, ncols)
                if rc < 0:
                    return None
                if rc == 1:
                    state[r] = 2
            order[npiv] = best
            npiv += 1
            pivots.append(col)
        reduced = []
        for i in range(npiv):
            row = mat + order[i] * ncols
            reduced.append([row[j] for j in range(ncols)])
        return pivots, reduced
    finally:
        free(mat)
        free(state)
        free(order)
        free(nz)


def echelon(rows, int ncols):
    rows = list(rows)
    out = _echelon_i64(rows, ncols)
    if out is None:
        return _echelon_py.echelon(rows, ncols)
    return out
