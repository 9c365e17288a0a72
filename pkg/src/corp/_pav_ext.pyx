# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled PAV kernels on aggregated (count, event) data.

Block order is decided with exact integer cross-multiplication, so two
blocks merge whenever ``e_a / w_a >= e_b / w_b``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef Py_ssize_t _pav(const int64_t[::1] counts, const int64_t[::1] events,
                     int64_t[::1] start, int64_t[::1] w, int64_t[::1] e) noexcept nogil:
    cdef Py_ssize_t k = counts.shape[0]
    cdef Py_ssize_t top = -1
    cdef Py_ssize_t j
    for j in range(k):
        top += 1
        start[top] = j
        w[top] = counts[j]
        e[top] = events[j]
        while top > 0 and e[top - 1] * w[top] >= e[top] * w[top - 1]:
            w[top - 1] += w[top]
            e[top - 1] += e[top]
            top -= 1
    return top + 1


def pav_blocks(counts, events):
    cdef const int64_t[::1] c = np.ascontiguousarray(counts, dtype=np.int64)
    cdef const int64_t[::1] o = np.ascontiguousarray(events, dtype=np.int64)
    cdef Py_ssize_t k = c.shape[0]
    start_arr = np.empty(k, dtype=np.int64)
    w_arr = np.empty(k, dtype=np.int64)
    e_arr = np.empty(k, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    cdef int64_t[::1] w = w_arr
    cdef int64_t[::1] e = e_arr
    cdef Py_ssize_t m
    with nogil:
        m = _pav(c, o, start, w, e)
    first = start_arr[:m].copy()
    last = np.empty(m, dtype=np.int64)
    last[:-1] = first[1:] - 1
    if m:
        last[m - 1] = k - 1
    return first, last, w_arr[:m].copy(), e_arr[:m].copy()


def pav_fitted_batch(counts, events):
    """Fitted value per unique position for every row of ``events``."""
    cdef const int64_t[::1] c = np.ascontiguousarray(counts, dtype=np.int64)
    cdef const int64_t[:, ::1] o = np.ascontiguousarray(events, dtype=np.int64)
    cdef Py_ssize_t k = c.shape[0]
    cdef Py_ssize_t rows = o.shape[0]
    if o.shape[1] != k:
        raise ValueError("events must have one column per unique value")
    out = np.empty((rows, k), dtype=np.float64)
    cdef double[:, ::1] fit = out
    cdef int64_t[::1] start = np.empty(k, dtype=np.int64)
    cdef int64_t[::1] w = np.empty(k, dtype=np.int64)
    cdef int64_t[::1] e = np.empty(k, dtype=np.int64)
    cdef Py_ssize_t r, b, j, m, stop
    cdef double v
    with nogil:
        for r in range(rows):
            m = _pav(c, o[r], start, w, e)
            for b in range(m):
                v = <double>e[b] / <double>w[b]
                stop = start[b + 1] if b + 1 < m else k
                for j in range(start[b], stop):
                    fit[r, j] = v
    return out
