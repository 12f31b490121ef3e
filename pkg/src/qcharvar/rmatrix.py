"""Fixed R-matrix data on V2 (x) V2 and helpers for matrix-form relations.

The 4x4 matrices act on the ordered basis (--, -+, +-, ++) of V2 (x) V2;
rows index outputs and columns inputs.  Matrix entries of relations are
elements (dicts word -> scalar), so the same machinery expands RTT-type,
reflection-type and exchange-type identities componentwise.
"""

from __future__ import annotations

from .rewrite import elem_iadd

__all__ = [
    "mat4",
    "r_spec",
    "r21_spec",
    "r_inv_spec",
    "r21_inv_spec",
    "mat4_mul",
    "mat4_from_scalar",
    "slot_embed",
    "matrix_relation",
]


def mat4(ring, rows):
    """4x4 scalar matrix from half-exponent monomial specs."""
    out = [[ring.zero()] * 4 for _ in range(4)]
    for i, row in enumerate(rows):
        for j, spec in enumerate(row):
            if spec is None:
                continue
            acc = ring.zero()
            for m, c in spec:
                acc = acc + ring.q_half(m, c)
            out[i][j] = acc
    return out


def r_spec():
    """R-matrix of U_q2 on V2 (x) V2: q^-1 diag-blocks (q^2 | 1, q^2-q^-2 / 0, 1 | q^2)."""
    return [
        [[(2, 1)], None, None, None],
        [None, [(-2, 1)], [(2, 1), (-6, -1)], None],
        [None, None, [(-2, 1)], None],
        [None, None, None, [(2, 1)]],
    ]


def r21_spec():
    return [
        [[(2, 1)], None, None, None],
        [None, [(-2, 1)], None, None],
        [None, [(2, 1), (-6, -1)], [(-2, 1)], None],
        [None, None, None, [(2, 1)]],
    ]


def r_inv_spec():
    return [
        [[(-2, 1)], None, None, None],
        [None, [(2, 1)], [(-2, 1), (6, -1)], None],
        [None, None, [(2, 1)], None],
        [None, None, None, [(-2, 1)]],
    ]


def r21_inv_spec():
    return [
        [[(-2, 1)], None, None, None],
        [None, [(2, 1)], None, None],
        [None, [(-2, 1), (6, -1)], [(2, 1)], None],
        [None, None, None, [(-2, 1)]],
    ]


def mat4_mul(A, B):
    """Product of 4x4 matrices with element-dict entries."""
    out = [[{} for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for k in range(4):
            a = A[i][k]
            if not a:
                continue
            for j in range(4):
                b = B[k][j]
                if not b:
                    continue
                tgt = out[i][j]
                for w1, c1 in a.items():
                    for w2, c2 in b.items():
                        w = w1 + w2
                        c = c1 * c2
                        cur = tgt.get(w)
                        if cur is None:
                            if c:
                                tgt[w] = c
                        else:
                            cur = cur + c
                            if cur:
                                tgt[w] = cur
                            else:
                                del tgt[w]
    return out


def mat4_from_scalar(M):
    return [[({(): M[i][j]} if not M[i][j].is_zero() else {}) for j in range(4)] for i in range(4)]


def slot_embed(sym_of_entry, pos, ring):
    """X1 or X2 embedding of a 2x2 symbol matrix into V2 (x) V2."""
    one = ring.one()
    out = [[{} for _ in range(4)] for _ in range(4)]
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    i, j = 2 * a + b, 2 * c + d
                    if pos == 1 and b == d:
                        out[i][j] = {(sym_of_entry[(a, c)],): one}
                    elif pos == 2 and a == c:
                        out[i][j] = {(sym_of_entry[(b, d)],): one}
    return out


def matrix_relation(lhs_factors, rhs_factors, ring, include_zero=False):
    """Componentwise left-minus-right of two matrix products."""
    L = lhs_factors[0]
    for f in lhs_factors[1:]:
        L = mat4_mul(L, f)
    R = rhs_factors[0]
    for f in rhs_factors[1:]:
        R = mat4_mul(R, f)
    rels = []
    for i in range(4):
        for j in range(4):
            rel = dict(L[i][j])
            elem_iadd(rel, R[i][j], ring.from_int(-1))
            if rel or include_zero:
                rels.append(rel)
    return rels
