# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels.

Same contract as _kernel_py: coefficient dicts map v-exponents to nonzero
integers, torus terms map exponent tuples to coefficient dicts.  Integer
values stay Python objects (arbitrary precision); Cython removes the
interpreter overhead of the nested loops.
"""

BACKEND = "c"


def coeff_add(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, c, s
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def coeff_neg(dict a):
    cdef dict out = {}
    cdef object k, c
    for k, c in a.items():
        out[k] = -c
    return out


def coeff_mul(dict a, dict b):
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef object ka, ca, kb, cb, k, s
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def coeff_shift(dict a, k):
    if not k:
        return dict(a)
    cdef dict out = {}
    cdef object ke, c
    for ke, c in a.items():
        out[ke + k] = c
    return out


def torus_mul(dict xterms, dict yterms, tuple lam):
    cdef dict out = {}
    cdef dict prod, shifted, cur
    cdef tuple alpha, beta, gamma, row
    cdef object ca, cb, k, c, s2
    cdef Py_ssize_t n = len(lam), i, j
    cdef list lamb
    cdef long long s
    for beta, cb in yterms.items():
        lamb = [0] * n
        for i in range(n):
            row = lam[i]
            s = 0
            for j in range(n):
                if beta[j]:
                    s += <long long> row[j] * <long long> beta[j]
            lamb[i] = s
        for alpha, ca in xterms.items():
            s = 0
            for i in range(n):
                if alpha[i]:
                    s += <long long> alpha[i] * <long long> lamb[i]
            gamma = tuple(alpha[i] + beta[i] for i in range(n))
            prod = coeff_mul(ca, cb)
            if s:
                shifted = {}
                for k, c in prod.items():
                    shifted[k + s] = c
                prod = shifted
            cur = <dict> out.get(gamma)
            if cur is None:
                out[gamma] = prod
            else:
                for k, c in prod.items():
                    s2 = cur.get(k, 0) + c
                    if s2:
                        cur[k] = s2
                    else:
                        del cur[k]
    cdef dict cleaned = {}
    for gamma, cur in out.items():
        if cur:
            cleaned[gamma] = cur
    return cleaned
