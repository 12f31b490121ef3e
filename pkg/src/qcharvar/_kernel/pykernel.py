"""Pure Python arithmetic kernel.

These functions carry the inner loops of every exact computation in the
package: merging and convolving sparse Laurent term maps, and dense
polynomial convolution for cyclotomic arithmetic.  A compiled Cython twin
(ckernel.pyx) provides the same API; qcharvar._kernel picks one at import.

Term maps are plain dicts {exponent: coefficient} with no zero values.
Coefficients are ints (Laurent case) or fractions.Fraction (cyclotomic
case); the functions are agnostic.
"""

IMPL = "python"


def terms_add(a, b):
    """Sum of two term maps."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
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


def terms_sub(a, b):
    out = dict(a)
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


def terms_neg(a):
    return {e: -c for e, c in a.items()}


def terms_mul(a, b):
    """Product of two term maps (exponents add)."""
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out = {}
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


def terms_scale(a, c, shift=0):
    """c * x^shift * a for a scalar coefficient c and integer shift."""
    if not c:
        return {}
    return {e + shift: c * x for e, x in a.items()}


def vec_conv(a, b):
    """Dense polynomial convolution of two coefficient lists."""
    na, nb = len(a), len(b)
    out = [0] * (na + nb - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out


def vec_reduce(vec, n, red_rows):
    """Fold a convolution result back below degree n.

    red_rows[k] is the coefficient list (length n) of x^(n+k) reduced
    modulo the defining polynomial.
    """
    out = list(vec[:n])
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
