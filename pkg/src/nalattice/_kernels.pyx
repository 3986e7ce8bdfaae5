# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for sampling and brute-force subgroup enumeration."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, calloc

cdef extern from *:
    ctypedef long long i128 "__int128"

ctypedef long long i64


def valuation_counts(B, Z, long long p, int N):
    """t[s, i] = min(N, val_p((B Z[s])_i mod p^N)); needs p^N < 2^62."""
    cdef i64 mod = 1
    cdef int k
    for k in range(N):
        mod *= p
    cdef i64[:, ::1] Bv = np.ascontiguousarray(np.asarray(B, dtype=np.int64) % mod)
    cdef i64[:, ::1] Zv = np.ascontiguousarray(np.asarray(Z, dtype=np.int64) % mod)
    cdef Py_ssize_t n = Zv.shape[0]
    cdef Py_ssize_t d = Bv.shape[0]
    cdef Py_ssize_t m = Bv.shape[1]
    out = np.empty((n, d), dtype=np.int64)
    cdef i64[:, ::1] ov = out
    cdef Py_ssize_t s, i, j
    cdef i128 acc
    cdef i64 r
    cdef int t
    with nogil:
        for s in range(n):
            for i in range(d):
                acc = 0
                for j in range(m):
                    acc = (acc + <i128>Bv[i, j] * <i128>Zv[s, j]) % mod
                r = <i64>acc
                if r == 0:
                    t = N
                else:
                    t = 0
                    while r % p == 0:
                        r = r // p
                        t += 1
                ov[s, i] = t
    return out


def subgroup_elements(gens, long long modulus, int d):
    """Codes sum_i x_i * modulus**i of the subgroup of (Z/modulus)^d spanned by ``gens``."""
    cdef i64[:, ::1] G = np.ascontiguousarray(np.asarray(gens, dtype=np.int64) % modulus)
    cdef Py_ssize_t ng = G.shape[0]
    cdef i64 size = 1
    cdef int i
    for i in range(d):
        size *= modulus
    cdef unsigned char *seen = <unsigned char *> calloc(size, 1)
    cdef i64 *queue = <i64 *> malloc(size * sizeof(i64))
    if seen == NULL or queue == NULL:
        free(seen); free(queue)
        raise MemoryError()
    cdef i64 head = 0, tail = 0, x, y, c, stride, xi, gi, digit
    cdef Py_ssize_t g
    try:
        with nogil:
            seen[0] = 1
            queue[tail] = 0
            tail += 1
            while head < tail:
                x = queue[head]
                head += 1
                for g in range(ng):
                    y = 0
                    stride = 1
                    c = x
                    for i in range(d):
                        xi = c % modulus
                        c = c // modulus
                        digit = xi + G[g, i]
                        if digit >= modulus:
                            digit -= modulus
                        y += digit * stride
                        stride *= modulus
                    if not seen[y]:
                        seen[y] = 1
                        queue[tail] = y
                        tail += 1
        out = np.empty(tail, dtype=np.int64)
        for x in range(tail):
            out[x] = queue[x]
        out.sort()
        return out
    finally:
        free(seen)
        free(queue)
