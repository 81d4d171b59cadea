# cython: language_level=3
"""Compiled mod-p matrix kernels (matmul, rref).

Mirrors barmatch._gfpure exactly; see that module for the contract.
"""

from cpython.array cimport array
from cython cimport boundscheck, wraparound

BACKEND = "compiled"


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, new_t = 1, r = p, new_r = a % p, q, tmp
    while new_r:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    t %= p
    if t < 0:
        t += p
    return t


@boundscheck(False)
@wraparound(False)
def matmul(int m, int k, int n, a, b, long long p):
    """(m x k) @ (k x n) over GF(p), flat row-major lists."""
    cdef array aa = array('q', a)
    cdef array bb = array('q', b)
    cdef array oo = array('q', bytes(8 * m * n))
    cdef long long[::1] av = aa
    cdef long long[::1] bv = bb
    cdef long long[::1] ov = oo
    cdef int i, j, t
    cdef long long x
    for i in range(m):
        for t in range(k):
            x = av[i * k + t]
            if x == 0:
                continue
            for j in range(n):
                ov[i * n + j] = (ov[i * n + j] + x * bv[t * n + j]) % p
    return oo.tolist()


@boundscheck(False)
@wraparound(False)
def rref(int rows, int cols, data, long long p):
    """Reduced row echelon form over GF(p); same pivoting as the pure twin."""
    cdef array aa = array('q', data)
    cdef long long[::1] a = aa
    cdef list pivots = []
    cdef int prow = 0, col, r, j, sel
    cdef long long inv, factor, tmp
    for col in range(cols):
        if prow >= rows:
            break
        sel = -1
        for r in range(prow, rows):
            if a[r * cols + col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        if sel != prow:
            for j in range(cols):
                tmp = a[prow * cols + j]
                a[prow * cols + j] = a[sel * cols + j]
                a[sel * cols + j] = tmp
        inv = _inv_mod(a[prow * cols + col], p)
        if inv != 1:
            for j in range(col, cols):
                a[prow * cols + j] = (a[prow * cols + j] * inv) % p
        for r in range(rows):
            if r == prow:
                continue
            factor = a[r * cols + col]
            if factor == 0:
                continue
            for j in range(col, cols):
                tmp = (a[r * cols + j] - factor * a[prow * cols + j]) % p
                if tmp < 0:
                    tmp += p
                a[r * cols + j] = tmp
        pivots.append(col)
        prow += 1
    return aa.tolist(), pivots
