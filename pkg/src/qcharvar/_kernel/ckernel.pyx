# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel; API mirrors pykernel exactly.

Coefficients stay Python objects (arbitrary precision ints or Fractions);
the gain comes from removing interpreter overhead in the dict/list loops.
"""

IMPL = "cython"


def terms_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def terms_sub(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = -c
        else:
            s = s - c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def terms_neg(dict a):
    cdef dict out = {}
    for e, c in a.items():
        out[e] = -c
    return out


def terms_mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    cdef dict out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e)
            if s is None:
                out[e] = c1 * c2
            else:
                s = s + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def terms_scale(dict a, c, shift=0):
    if not c:
        return {}
    cdef dict out = {}
    for e, x in a.items():
        out[e + shift] = c * x
    return out


def vec_conv(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef list out = [0] * (na + nb - 1)
    for i in range(na):
        ca = a[i]
        if not ca:
            continue
        for j in range(nb):
            cb = b[j]
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out


def vec_reduce(list vec, Py_ssize_t n, list red_rows):
    cdef list out = list(vec[:n])
    cdef Py_ssize_t k, i
    while len(out) < n:
        out.append(0)
    for k in range(len(vec) - n):
        c = vec[n + k]
        if not c:
            continue
        row = red_rows[k]
        for i in range(n):
            r = row[i]
            if r:
                out[i] = out[i] + c * r
    return out
