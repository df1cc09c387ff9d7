# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled coefficient kernels; same API as ``_pykernels``.

Coefficients that fit in 64 bits are handled in C with overflow-checked
arithmetic. Any overflow, or any input coefficient that does not fit,
sends the call to the arbitrary-precision Python fallback.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

from . import _pykernels

BACKEND = "cython"


cdef extern from *:
    """
    static inline int qvl_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int qvl_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int qvl_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int qvl_mul_ovf(long long a, long long b, long long *r) nogil
    int qvl_add_ovf(long long a, long long b, long long *r) nogil
    int qvl_sub_ovf(long long a, long long b, long long *r) nogil


cdef long long LIMIT = 1LL << 62


cdef int _load(object seq, long long *buf, Py_ssize_t n):
    """Copy ``seq`` into ``buf``; return 0 if some entry is too large."""
    cdef Py_ssize_t i
    for i in range(n):
        v = seq[i]
        if not (-LIMIT < v < LIMIT):
            return 0
        buf[i] = v
    return 1


cdef int _conv(long long *a, Py_ssize_t n, long long *b, Py_ssize_t m, long long *out) nogil:
    cdef Py_ssize_t i, j
    cdef long long p
    for i in range(n + m - 1):
        out[i] = 0
    for j in range(m):
        if b[j] == 0:
            continue
        for i in range(n):
            if a[i] == 0:
                continue
            if qvl_mul_ovf(a[i], b[j], &p):
                return 0
            if qvl_add_ovf(out[i + j], p, &out[i + j]):
                return 0
    return 1


def poly_mul(a, b):
    """Dense convolution of two coefficient vectors."""
    cdef Py_ssize_t n = len(a), m = len(b), i
    cdef long long *buf = <long long *> malloc((2 * (n + m) - 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef long long *pa = buf
    cdef long long *pb = buf + n
    cdef long long *po = buf + n + m
    cdef int ok = 0
    try:
        if _load(a, pa, n) and _load(b, pb, m):
            with nogil:
                ok = _conv(pa, n, pb, m, po)
        if ok:
            return tuple([po[i] for i in range(n + m - 1)])
    finally:
        free(buf)
    return _pykernels.poly_mul(a, b)


cdef int _divmod(long long *rem, Py_ssize_t n, long long *b, Py_ssize_t m,
                 long long *quot, int *integral) nogil:
    """Top-down long division in place; returns 0 on overflow."""
    cdef Py_ssize_t i, j
    cdef long long lead = b[m - 1], top, c, p
    integral[0] = 1
    for i in range(n - m, -1, -1):
        top = rem[i + m - 1]
        if top == 0:
            quot[i] = 0
            continue
        if top % lead != 0:
            integral[0] = 0
            return 1
        c = top // lead
        quot[i] = c
        for j in range(m):
            if b[j] == 0:
                continue
            if qvl_mul_ovf(c, b[j], &p):
                return 0
            if qvl_sub_ovf(rem[i + j], p, &rem[i + j]):
                return 0
    return 1


def poly_divmod(a, b):
    """Long division of ``a`` by ``b``; returns ``(quotient, remainder, integral)``.

    Matches ``_pykernels.poly_divmod`` exactly, including the partial result
    returned when a quotient coefficient is not an integer.
    """
    cdef Py_ssize_t n = len(a), m = len(b), i
    if n < m:
        return (), tuple(a), True
    cdef long long *buf = <long long *> malloc((2 * n + m + 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef long long *rem = buf
    cdef long long *pb = buf + n
    cdef long long *quot = buf + n + m
    cdef int ok = 0, integral = 1
    try:
        if _load(a, rem, n) and _load(b, pb, m):
            for i in range(n - m + 1):
                quot[i] = 0
            with nogil:
                ok = _divmod(rem, n, pb, m, quot, &integral)
        if ok:
            return (
                tuple([quot[i] for i in range(n - m + 1)]),
                tuple([rem[i] for i in range(n)]),
                bool(integral),
            )
    finally:
        free(buf)
    return _pykernels.poly_divmod(a, b)
