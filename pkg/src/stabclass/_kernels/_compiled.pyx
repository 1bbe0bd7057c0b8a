# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pure``."""
import numpy as np

from libc.stdint cimport int64_t


def rref_inplace(A, p):
    """Reduced row echelon form of an int64 matrix over Z/p, in place.

    Returns the list of pivot columns.  Entries must already lie in [0, p).
    """
    cdef int64_t[:, ::1] a
    if not (A.dtype == np.int64 and A.flags.c_contiguous):
        raise TypeError("rref_inplace needs a C-contiguous int64 array")
    a = A
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t P = p, inv, f, t
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = a[r, j] * inv % P
        for i in range(rows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            f = P - f
            for j in range(c, cols):
                if a[r, j]:
                    a[i, j] = (a[i, j] + f * a[r, j]) % P
        pivots.append(c)
        r += 1
    return pivots


cdef inline bint _divides(tuple lead, tuple e):
    cdef Py_ssize_t k, n = len(lead)
    cdef long li, ei
    for k in range(n):
        li = lead[k]
        ei = e[k]
        if (li > 0 and ei < li) or (li < 0 and ei > li):
            return False
    return True


def reduce_vector(dict terms, dict basis, key, long p):
    """Fully reduce a sparse module vector against a Groebner basis.

    Same contract as the pure-Python version.
    """
    cdef dict rem = {}
    cdef tuple lt, e, lead, shift, texp, k
    cdef long c, tc, v
    cdef Py_ssize_t n, i
    cdef object pos, tpos
    cdef list tail
    while terms:
        lt = max(terms, key=key)
        c = terms.pop(lt)
        pos, e = lt
        n = len(e)
        for lead, tail in basis.get(pos, ()):
            if _divides(lead, e):
                shift = tuple([<long>e[i] - <long>lead[i] for i in range(n)])
                for tpos, texp, tc in tail:
                    k = (tpos, tuple([<long>texp[i] + <long>shift[i] for i in range(n)]))
                    v = (terms.get(k, 0) - c * tc) % p
                    if v:
                        terms[k] = v
                    else:
                        terms.pop(k, None)
                break
        else:
            rem[lt] = c
    return rem
