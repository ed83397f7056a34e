# cython: boundscheck=False, wraparound=False, cdivision=False, language_level=3
"""Compiled GKM degree kernel. Mirrors ``_kernels_py`` exactly."""

import numpy as np

cdef long long OVERFLOW_LIMIT = 1LL << 40


cdef inline void _weight(const long long[:, ::1] C, const long long[::1] word,
                         const long long[::1] bits, Py_ssize_t m,
                         long long[::1] lam) noexcept nogil:
    cdef Py_ssize_t n = C.shape[0]
    cdef Py_ssize_t a, p, i
    cdef long long k
    for a in range(n):
        lam[a] = 0
    lam[word[m]] = 1
    for p in range(m, -1, -1):
        if bits[p]:
            i = word[p]
            k = lam[i]
            if k:
                for a in range(n):
                    lam[a] -= k * C[a, i]


def curve_degree_table(cartan, word):
    """Tangent weights and basis-class degrees of every model curve.

    See ``torusnef._kernels_py.curve_degree_table``.
    """
    cdef long long[:, ::1] C = np.ascontiguousarray(np.asarray(cartan, dtype=np.int64))
    cdef long long[::1] w = np.ascontiguousarray(np.asarray(word, dtype=np.int64).reshape(-1))
    cdef Py_ssize_t n = C.shape[0]
    cdef Py_ssize_t r = w.shape[0]
    if r == 0:
        return [], []
    cdef Py_ssize_t half = 1 << (r - 1)
    cdef Py_ssize_t ncurves = r * half
    tang_arr = np.zeros((ncurves, n), dtype=np.int64)
    deg_arr = np.zeros((ncurves, r), dtype=np.int64)
    cdef long long[:, ::1] T = tang_arr
    cdef long long[:, ::1] D = deg_arr
    cdef long long[::1] bits = np.zeros(r, dtype=np.int64)
    cdef long long[::1] bits1 = np.zeros(r, dtype=np.int64)
    cdef long long[::1] t = np.zeros(n, dtype=np.int64)
    cdef long long[::1] tw = np.zeros(n, dtype=np.int64)
    cdef long long[::1] mu0 = np.zeros(n, dtype=np.int64)
    cdef long long[::1] mu1 = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t c, j, mask, p, q, i, a, b, m, pivot
    cdef long long s, k, d
    cdef bint bad, overflow
    for c in range(ncurves):
        j = c // half
        mask = c % half
        q = 0
        for p in range(r):
            if p == j:
                bits[p] = 0
                bits1[p] = 1
                continue
            bits[p] = (mask >> (r - 2 - q)) & 1
            bits1[p] = bits[p]
            q += 1
        for a in range(n):
            t[a] = 0
        t[w[j]] = 1
        for p in range(j - 1, -1, -1):
            if bits[p]:
                i = w[p]
                s = 0
                for b in range(n):
                    s += C[i, b] * t[b]
                t[i] -= s
        pivot = -1
        for a in range(n):
            s = 0
            for b in range(n):
                s += C[a, b] * t[b]
            tw[a] = s
            T[c, a] = t[a]
            if pivot < 0 and s != 0:
                pivot = a
        for m in range(r):
            _weight(C, w, bits, m, mu0)
            _weight(C, w, bits1, m, mu1)
            overflow = False
            for a in range(n):
                if mu0[a] >= OVERFLOW_LIMIT or mu0[a] <= -OVERFLOW_LIMIT \
                        or mu1[a] >= OVERFLOW_LIMIT or mu1[a] <= -OVERFLOW_LIMIT:
                    overflow = True
            if overflow:
                raise OverflowError("weight coordinate exceeds kernel limit")
            d = mu0[pivot] - mu1[pivot]
            bad = (d % tw[pivot]) != 0
            k = d // tw[pivot]
            if not bad:
                for a in range(n):
                    if mu0[a] - mu1[a] != k * tw[a]:
                        bad = True
            if bad:
                raise ArithmeticError(
                    f"curve {c}, class {m + 1}: weight difference "
                    f"{[mu0[a] - mu1[a] for a in range(n)]} is not an integer "
                    f"multiple of tangent {[tw[a] for a in range(n)]}"
                )
            D[c, m] = k if k >= 0 else -k
    return tang_arr.tolist(), deg_arr.tolist()
