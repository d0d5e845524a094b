# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
from libc.stdint cimport uint64_t, int64_t

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef int STRIDE = 5
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t _word(uint64_t key, uint64_t i) noexcept nogil:
    return _mix(key + (i + 1) * GAMMA)


def words(uint64_t key, Py_ssize_t start, Py_ssize_t count):
    out = np.empty(count, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(count):
            o[i] = _word(key, <uint64_t>(start + i))
    return out


def state_counts(uint64_t key, Py_ssize_t start, Py_ssize_t stop):
    out = np.zeros(4, dtype=np.int64)
    cdef int64_t[::1] c = out
    cdef int64_t acc[4]
    cdef Py_ssize_t i
    acc[0] = acc[1] = acc[2] = acc[3] = 0
    with nogil:
        for i in range(start, stop):
            acc[_word(key, <uint64_t>i) >> 62] += 1
    for i in range(4):
        c[i] = acc[i]
    return out


def coincidence_counts(uint64_t key, Py_ssize_t start, Py_ssize_t stop, probs):
    cdef double[:, ::1] p = np.ascontiguousarray(probs, dtype=np.float64).reshape(4, 4)
    trials_out = np.zeros(4, dtype=np.int64)
    hits_out = np.zeros(4, dtype=np.int64)
    cdef int64_t[::1] trials = trials_out
    cdef int64_t[::1] hits = hits_out
    cdef Py_ssize_t i
    cdef int j
    cdef uint64_t base, s
    cdef double u
    cdef bint fired
    with nogil:
        for i in range(start, stop):
            base = <uint64_t>i * STRIDE
            s = _word(key, base) >> 62
            trials[s] += 1
            fired = True
            for j in range(4):
                u = <double>(_word(key, base + 1 + j) >> 11) * INV_2_53
                if not (u < p[s, j]):
                    fired = False
                    break
            if fired:
                hits[s] += 1
    return trials_out, hits_out
