# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fincke-Pohst traversal; same contract as ``_enum_py.fincke_pohst``."""
from libc.math cimport ceil, floor, sqrt
import numpy as np

from .errors import NodeLimitExceeded


def fincke_pohst(qf, center, double r2, long max_nodes):
    cdef double[:, ::1] q = np.ascontiguousarray(qf, dtype=np.float64)
    cdef double[::1] c = np.ascontiguousarray(center, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0]
    if n == 0:
        return []
    cdef long[::1] y = np.zeros(n, dtype=np.int64)
    cdef long[::1] hi = np.zeros(n, dtype=np.int64)
    cdef double[::1] shift = np.zeros(n, dtype=np.float64)
    cdef double[::1] budget = np.zeros(n + 1, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double s, h, d
    cdef long nodes = 0
    out = []
    budget[n] = r2
    i = n - 1
    h = sqrt(r2 / q[i, i]) if r2 >= 0 else -1.0
    if h < 0:
        return []
    shift[i] = c[i]
    hi[i] = <long>floor(c[i] + h)
    y[i] = <long>ceil(c[i] - h) - 1
    while i < n:
        y[i] += 1
        if y[i] > hi[i]:
            i += 1
            continue
        nodes += 1
        if nodes > max_nodes:
            raise NodeLimitExceeded(f"more than {max_nodes} nodes")
        d = y[i] - shift[i]
        budget[i] = budget[i + 1] - q[i, i] * d * d
        if budget[i] < 0:
            continue
        if i == 0:
            out.append(tuple([y[j] for j in range(n)]))
            continue
        i -= 1
        s = c[i]
        for j in range(i + 1, n):
            s -= q[i, j] * (y[j] - c[j])
        shift[i] = s
        h = sqrt(budget[i + 1] / q[i, i])
        hi[i] = <long>floor(s + h)
        y[i] = <long>ceil(s - h) - 1
    return out
