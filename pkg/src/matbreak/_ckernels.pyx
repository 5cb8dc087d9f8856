# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: dense mat-mul and RREF over Z/m with m < 2**63.

Same signatures and results as matbreak._pykernels. Products use a 128-bit
intermediate, so any modulus below 2**63 is exact.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

BACKEND = "compiled"


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) noexcept nogil:
    return <uint64_t>((<u128>a * <u128>b) % <u128>m)


cdef uint64_t invmod(uint64_t a, uint64_t m) noexcept nogil:
    # extended Euclid; caller guarantees gcd(a, m) == 1
    cdef long long t0 = 0, t1 = 1, q, tmp
    cdef uint64_t r0 = m, r1 = a, rt
    while r1 != 0:
        q = <long long>(r0 / r1)
        rt = r0 - <uint64_t>q * r1
        r0 = r1
        r1 = rt
        tmp = t0 - q * t1
        t0 = t1
        t1 = tmp
    if t0 < 0:
        return <uint64_t>(t0 + <long long>m)
    return <uint64_t>t0


cdef uint64_t* _load(seq, Py_ssize_t size) except NULL:
    cdef uint64_t* buf = <uint64_t*>malloc(size * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(size):
            buf[i] = seq[i]
    except BaseException:
        free(buf)
        raise
    return buf


def matmul(a, b, Py_ssize_t n, uint64_t m):
    cdef Py_ssize_t size = n * n, i, j, k
    cdef uint64_t* pa = _load(a, size)
    cdef uint64_t* pb = NULL
    cdef uint64_t* pc = NULL
    cdef u128 acc
    cdef list out
    try:
        pb = _load(b, size)
        pc = <uint64_t*>malloc(size * sizeof(uint64_t))
        if pc == NULL:
            raise MemoryError()
        with nogil:
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for k in range(n):
                        # reduce each term: n terms of < 2**126 could overflow 128 bits
                        acc += mulmod(pa[i * n + k], pb[k * n + j], m)
                    pc[i * n + j] = <uint64_t>(acc % m)
        out = [pc[i] for i in range(size)]
    finally:
        free(pa)
        free(pb)
        free(pc)
    return out


def rref(mat, Py_ssize_t rows, Py_ssize_t cols, uint64_t p, ncoef=None):
    cdef Py_ssize_t nc = cols if ncoef is None else ncoef
    cdef Py_ssize_t size = rows * cols
    cdef uint64_t* a = _load(mat, size)
    cdef uint64_t* tmp
    cdef Py_ssize_t r = 0, c, pr, i, j
    cdef uint64_t inv, f, x
    cdef list pivots = []
    try:
        for c in range(nc):
            if r == rows:
                break
            pr = r
            while pr < rows and a[pr * cols + c] == 0:
                pr += 1
            if pr == rows:
                continue
            with nogil:
                if pr != r:
                    for j in range(c, cols):
                        x = a[r * cols + j]
                        a[r * cols + j] = a[pr * cols + j]
                        a[pr * cols + j] = x
                inv = invmod(a[r * cols + c], p)
                if inv != 1:
                    for j in range(c, cols):
                        a[r * cols + j] = mulmod(a[r * cols + j], inv, p)
                for i in range(rows):
                    if i == r:
                        continue
                    f = a[i * cols + c]
                    if f == 0:
                        continue
                    f = p - f
                    for j in range(c, cols):
                        x = a[i * cols + j] + mulmod(f, a[r * cols + j], p)
                        if x >= p:
                            x -= p
                        a[i * cols + j] = x
            pivots.append(c)
            r += 1
        out = [a[i] for i in range(size)]
    finally:
        free(a)
    return out, pivots
