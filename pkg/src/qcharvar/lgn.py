"""The quantized character variety algebra on a genus-g, n-punctured surface.

Generators are matrix coefficients X(i)^s_t where X runs over the handle
matrices B(i), A(i) (1 <= i <= g) and M(j) (g+1 <= j <= g+n); the defining
relations are the reflection equation and quantum determinant for each
matrix, the mixed exchange relation inside each genus handle, and the
exchange relations between distinct handles.

Words are normal-ordered for the global slot order
A(1) < ... < A(g) < B(1) < ... < B(g) < M(g+1) < ... < M(g+n), with the
per-slot PBW order X^-_+ < X^-_- < X^+_+ < X^+_- and the mixed monomial
X^-_- X^+_+ eliminated by the quantum determinant.  Putting the A's
leftmost makes the vacuum projection a prefix operation.

Two coefficient modes exist: generic (integer Laurent polynomials in
q^(1/2)) and restricted(p) (exact cyclotomic numbers at a 4p-th root of
unity).  The restricted quotient additionally imposes
(X^-_+)^p = (X^+_-)^p = 0 and (X^+_+)^(2p) = 1, which lets X^-_- be
eliminated entirely: each handle has the finite basis
(X^-_+)^a (X^+_+)^k (X^+_-)^c with a, c < p and k < 2p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError, RingMismatchError, SurfaceMismatchError
from .oq2 import oq_algebra
from .rewrite import (
    RewriteTable,
    build_rules,
    close_overlaps,
    deglex_key,
    elem_iadd,
    invert_2x2,
)
from .rmatrix import (
    mat4,
    mat4_from_scalar,
    matrix_relation,
    r21_inv_spec,
    r21_spec,
    r_inv_spec,
    r_spec,
    slot_embed,
)
from .scalars import LAURENT, CycloRing, render_term, specialize, tokenize

__all__ = [
    "GeneratorId",
    "LgnAlgebra",
    "LgnElement",
    "algebra",
    "normal_form",
    "defining_relations",
    "mul",
    "fusion_matrix",
    "matrix_inverse",
    "coaction",
    "is_invariant",
    "quantum_trace",
    "basis_enumerate",
    "parse_element",
]

# per-slot entry ranks, PBW order: X^-_+ < X^-_- < X^+_+ < X^+_-
RANK_B, RANK_A, RANK_D, RANK_C = 0, 1, 2, 3
_ENTRY_TO_RANK = {("-", "+"): RANK_B, ("-", "-"): RANK_A, ("+", "+"): RANK_D, ("+", "-"): RANK_C}
_RANK_TO_ENTRY = {v: k for k, v in _ENTRY_TO_RANK.items()}
_IDX_TO_RANK = {(0, 1): RANK_B, (0, 0): RANK_A, (1, 1): RANK_D, (1, 0): RANK_C}


@dataclass(frozen=True)
class GeneratorId:
    """One matrix coefficient X(handle)^row_col."""

    family: str  # 'A' | 'B' | 'M'
    handle: int  # A,B: 1..g ; M: g+1..g+n
    row: str  # '-' | '+'
    col: str

    def __str__(self):
        return f"{self.family}{self.handle}[{self.row},{self.col}]"


class LgnAlgebra:
    """Context object: surface, mode, straightening table, caches."""

    def __init__(self, g, n, mode="generic", p=None):
        if g < 0 or n < 0 or g + n < 1:
            raise SurfaceMismatchError(f"degenerate surface ({g},{n})")
        if mode not in ("generic", "restricted"):
            raise ValueError("mode must be 'generic' or 'restricted'")
        if mode == "restricted":
            if p is None or p < 2:
                raise ValueError("restricted mode needs p >= 2")
        else:
            p = None
        self.g, self.n, self.mode, self.p = g, n, mode, p
        self.ring = LAURENT if mode == "generic" else CycloRing(p)
        # slot order: A(1)..A(g), B(1)..B(g), M(g+1)..M(g+n)
        self.slots = (
            [("A", i + 1) for i in range(g)]
            + [("B", i + 1) for i in range(g)]
            + [("M", g + j + 1) for j in range(n)]
        )
        self.slot_index = {fs: k for k, fs in enumerate(self.slots)}
        self.nsym = 4 * len(self.slots)
        if mode == "generic":
            self.table = build_rules(self._generic_relations(self.ring), self.ring)
        else:
            self.table = self._restricted_table()
        self._coaction_cache = {}
        self._gen_coaction = None
        self._inverse_cache = {}

    # -- symbols ---------------------------------------------------------
    def sym(self, family, handle, row, col):
        slot = self.slot_index.get((family, handle))
        if slot is None:
            raise SurfaceMismatchError(
                f"generator {family}({handle}) does not exist on ({self.g},{self.n})"
            )
        return 4 * slot + _ENTRY_TO_RANK[(row, col)]

    def sym_to_gen(self, s):
        family, handle = self.slots[s // 4]
        row, col = _RANK_TO_ENTRY[s % 4]
        return GeneratorId(family, handle, row, col)

    def _slot_syms(self, slot):
        base = 4 * slot
        return {(r, c): base + _IDX_TO_RANK[(r, c)] for r in range(2) for c in range(2)}

    # -- defining relations ------------------------------------------------
    def _generic_relations(self, ring, include_zero=False):
        """All scalar defining relations over the given ring, raw words."""
        R = mat4_from_scalar(mat4(ring, r_spec()))
        R21 = mat4_from_scalar(mat4(ring, r21_spec()))
        Rinv = mat4_from_scalar(mat4(ring, r_inv_spec()))
        rels = []
        g = self.g
        nslots = len(self.slots)
        # reflection equation + qdet per slot
        for slot in range(nslots):
            syms = self._slot_syms(slot)
            X1 = slot_embed(syms, 1, ring)
            X2 = slot_embed(syms, 2, ring)
            rels += matrix_relation([R, X1, R21, X2], [X2, R, X1, R21], ring, include_zero)
            a, b = syms[(0, 0)], syms[(0, 1)]
            c, d = syms[(1, 0)], syms[(1, 1)]
            rels.append({(a, d): ring.one(), (b, c): ring.q_half(8, -1), (): ring.from_int(-1)})
        # same-handle exchange: R B(i)_1 R21 A(i)_2 = A(i)_2 R B(i)_1 Rinv
        for i in range(g):
            Bs = self._slot_syms(self.slot_index[("B", i + 1)])
            As = self._slot_syms(self.slot_index[("A", i + 1)])
            B1 = slot_embed(Bs, 1, ring)
            A2 = slot_embed(As, 2, ring)
            rels += matrix_relation([R, B1, R21, A2], [A2, R, B1, Rinv], ring, include_zero)
        # cross-handle exchange: R X(i)_1 Rinv Y(j)_2 = Y(j)_2 R X(i)_1 Rinv, i < j
        for i in range(1, g + self.n + 1):
            for j in range(i + 1, g + self.n + 1):
                for famx in (("A", "B") if i <= g else ("M",)):
                    for famy in (("A", "B") if j <= g else ("M",)):
                        Xs = self._slot_syms(self.slot_index[(famx, i)])
                        Ys = self._slot_syms(self.slot_index[(famy, j)])
                        X1 = slot_embed(Xs, 1, ring)
                        Y2 = slot_embed(Ys, 2, ring)
                        rels += matrix_relation(
                            [R, X1, Rinv, Y2], [Y2, R, X1, Rinv], ring, include_zero
                        )
        return rels

    def _power_relations(self, ring):
        """Root-of-unity extras: (X^-_+)^p = (X^+_-)^p = 0, (X^+_+)^2p = 1."""
        p = self.p
        rels = []
        for slot in range(len(self.slots)):
            syms = self._slot_syms(slot)
            b, c, d = syms[(0, 1)], syms[(1, 0)], syms[(1, 1)]
            rels.append({(b,) * p: ring.one()})
            rels.append({(c,) * p: ring.one()})
            rels.append({(d,) * (2 * p): ring.one(), (): ring.from_int(-1)})
        return rels

    def _restricted_table(self):
        """Specialize the generic rules at the root of unity, add power rules."""
        ring = self.ring
        p = self.p
        generic = algebra(self.g, self.n, "generic").table
        table = RewriteTable(ring)
        for lhs, rhs in generic.rules.items():
            table.add_rule(lhs, {w: specialize(c, p) for w, c in rhs.items()})
        for slot in range(len(self.slots)):
            syms = self._slot_syms(slot)
            b, c, d = syms[(0, 1)], syms[(1, 0)], syms[(1, 1)]
            table.add_rule((b,) * p, {})
            table.add_rule((c,) * p, {})
            table.add_rule((d,) * (2 * p), {(): ring.one()})
        close_overlaps(table, ring)
        # per-slot elimination of X^-_-:
        #   a d = 1 + q^4 b c  and  d^(2p) = 1  give  a = d^(2p-1) + b d^(2p-1) c
        self._a_elim = {}
        for slot in range(len(self.slots)):
            syms = self._slot_syms(slot)
            b, c, d = syms[(0, 1)], syms[(1, 0)], syms[(1, 1)]
            self._a_elim[4 * slot + RANK_A] = {
                (d,) * (2 * p - 1): ring.one(),
                (b,) + (d,) * (2 * p - 1) + (c,): ring.one(),
            }
        return table

    # -- normal forms ------------------------------------------------------
    def reduce_raw(self, raw):
        """Straighten a raw word dict into the normal-form dict."""
        out = self.table.reduce_elem(raw)
        if self.mode == "restricted":
            out = self._eliminate_a(out)
        return out

    def _eliminate_a(self, elem):
        table = self.table
        out = {}
        for word, coeff in elem.items():
            if not any(s % 4 == RANK_A for s in word):
                elem_iadd(out, {word: coeff})
                continue
            pieces = [{(): self.ring.one()}]
            i = 0
            nw = len(word)
            while i < nw:
                s = word[i]
                if s % 4 != RANK_A:
                    pieces.append({(s,): self.ring.one()})
                    i += 1
                    continue
                j = i
                while j < nw and word[j] == s:
                    j += 1
                block = self._a_elim[s]
                acc = {(): self.ring.one()}
                for _ in range(j - i):
                    nxt = {}
                    for w1, c1 in acc.items():
                        for w2, c2 in block.items():
                            elem_iadd(nxt, table.reduce_word(w1 + w2), c1 * c2)
                    acc = nxt
                pieces.append(acc)
                i = j
            prod = pieces[0]
            for piece in pieces[1:]:
                nxt = {}
                for w1, c1 in prod.items():
                    for w2, c2 in piece.items():
                        elem_iadd(nxt, table.reduce_word(w1 + w2), c1 * c2)
                prod = nxt
            elem_iadd(out, prod, coeff)
        return out

    # -- element constructors ----------------------------------------------
    def element(self, raw=None):
        return LgnElement(self, self.reduce_raw(raw or {}))

    def zero(self):
        return LgnElement(self, {})

    def one(self):
        return LgnElement(self, {(): self.ring.one()})

    def scalar(self, s):
        s = self.ring.coerce(s)
        return LgnElement(self, {(): s} if s else {})

    def generator(self, family, handle, row, col):
        raw = {(self.sym(family, handle, row, col),): self.ring.one()}
        return LgnElement(self, self.reduce_raw(raw))

    def gen_matrix(self, family, handle):
        return [[self.generator(family, handle, r, c) for c in "-+"] for r in "-+"]

    def word(self, gens):
        """Element from a sequence of GeneratorId (normal-formed)."""
        w = tuple(self.sym(g.family, g.handle, g.row, g.col) for g in gens)
        return LgnElement(self, self.reduce_raw({w: self.ring.one()}))

    def defining_relations(self):
        """Raw left-minus-right of every scalar defining relation.

        Zero components of the matrix identities are kept, so the count
        is 17 per handle matrix, 16 per same-handle pair and 16 per
        cross-handle family pair (plus the power relations when
        restricted).
        """
        rels = self._generic_relations(self.ring, include_zero=True)
        if self.mode == "restricted":
            rels += self._power_relations(self.ring)
        return rels

    # -- structural operations ----------------------------------------------
    def quantum_trace(self, mat):
        """Sum of (g . mat)^s_s with the pivotal g = diag(-q^2, -q^-2)."""
        gm = self.ring.q_half(4, -1)
        gp = self.ring.q_half(-4, -1)
        return mat[0][0].scale(gm) + mat[1][1].scale(gp)

    def fusion_matrix(self, family, handle, m):
        """Iterated fusion of the generator matrix onto m strands.

        Returns a 2^m x 2^m matrix of elements; index bits read left
        strand first.
        """
        if m < 1:
            raise ValueError("strand count must be >= 1")
        gm = self.gen_matrix(family, handle)
        F = [[gm[i][j].sum for j in range(2)] for i in range(2)]
        size = 2
        cur_m = 1
        while cur_m < m:
            width = cur_m + 1
            # R' on V^(x cur_m) (x) V: product of two-site flips R'_{k, width}
            rp = None
            rpinv = None
            for k in range(cur_m, 0, -1):
                emb = _embed_pair(mat4(self.ring, r21_spec()), width, k, width)
                rp = emb if rp is None else _matn_mul(rp, emb)
            for k in range(1, cur_m + 1):
                emb = _embed_pair(mat4(self.ring, r21_inv_spec()), width, k, width)
                rpinv = emb if rpinv is None else _matn_mul(rpinv, emb)
            big = 2 * size
            X1 = [[{} for _ in range(big)] for _ in range(big)]
            for i in range(size):
                for j in range(size):
                    if F[i][j]:
                        for t in range(2):
                            X1[2 * i + t][2 * j + t] = F[i][j]
            X2 = [[{} for _ in range(big)] for _ in range(big)]
            for i in range(size):
                for s in range(2):
                    for t in range(2):
                        X2[2 * i + s][2 * i + t] = gm[s][t].sum
            F = _matn_mul(_matn_mul(_matn_mul(X1, rp), X2), rpinv)
            F = [[self.reduce_raw(e) for e in row] for row in F]
            size = big
            cur_m += 1
        return [[LgnElement(self, e) for e in row] for row in F]

    def matrix_inverse(self, family, handle):
        """Unique Y with X(i) Y = Y X(i) = identity, entrywise."""
        key = (family, handle)
        if key in self._inverse_cache:
            return self._inverse_cache[key]
        syms = self._slot_syms(self.slot_index[key])
        Tm = [[{(syms[(r, c)],): self.ring.one()} for c in range(2)] for r in range(2)]
        gens = [syms[(0, 1)], syms[(0, 0)], syms[(1, 1)], syms[(1, 0)]]
        basis = [()]
        basis += [(s,) for s in gens]
        basis += [
            (s1, s2)
            for s1 in gens
            for s2 in gens
            if self.table.is_normal_word((s1, s2))
        ]
        S = invert_2x2(Tm, basis, self.table, self.ring)
        out = [[LgnElement(self, self.reduce_raw(S[r][c])) for c in range(2)] for r in range(2)]
        self._inverse_cache[key] = out
        return out

    # -- coaction -------------------------------------------------------------
    def _gen_coaction_table(self):
        """Coaction of each generator: X^j_k |-> T^j_l S(T^m_k) (x) X^l_m."""
        if self._gen_coaction is not None:
            return self._gen_coaction
        oq = oq_algebra(self.ring)
        S = oq.antipode_matrix()
        signs = "-+"
        tab = {}
        for s in range(self.nsym):
            gid = self.sym_to_gen(s)
            j = signs.index(gid.row)
            k = signs.index(gid.col)
            pairs = {}
            for l in range(2):
                for m_ in range(2):
                    ocoef = oq.generator(signs[j], signs[l]) * S[m_][k]
                    lsym = self.sym(gid.family, gid.handle, signs[l], signs[m_])
                    for ow, oc in ocoef.sum.items():
                        cur = pairs.get((ow, (lsym,)))
                        pairs[(ow, (lsym,))] = cur + oc if cur is not None else oc
            tab[s] = {k2: v for k2, v in pairs.items() if v}
        self._gen_coaction = tab
        return tab

    def coaction_word(self, word):
        """Coaction of a normal word, memoized, as {(oq word, lgn word): c}."""
        cached = self._coaction_cache.get(word)
        if cached is not None:
            return cached
        oq = oq_algebra(self.ring)
        tab = self._gen_coaction_table()
        acc = {((), ()): self.ring.one()}
        for s in word:
            nxt = {}
            for (ow1, lw1), c1 in acc.items():
                for (ow2, lw2), c2 in tab[s].items():
                    c = c1 * c2
                    for ow, oc in oq.table.reduce_word(ow1 + ow2).items():
                        for lw, lc in self.reduce_raw({lw1 + lw2: self.ring.one()}).items():
                            key = (ow, lw)
                            cur = nxt.get(key)
                            val = cur + c * oc * lc if cur is not None else c * oc * lc
                            if val:
                                nxt[key] = val
                            elif cur is not None:
                                del nxt[key]
            acc = nxt
        self._coaction_cache[word] = acc
        return acc


def _embed_pair(M4, width, s1, s2):
    """Scalar two-site operator on strands (s1, s2) of V2^(x)width.

    Strand 1 is the leftmost; index bit of strand t sits at position
    width - t from the least significant end.
    """
    size = 1 << width
    sh1, sh2 = width - s1, width - s2
    out = [[{} for _ in range(size)] for _ in range(size)]
    for j in range(size):
        a_in = (j >> sh1) & 1
        b_in = (j >> sh2) & 1
        base = j & ~(1 << sh1) & ~(1 << sh2)
        for a_out in range(2):
            for b_out in range(2):
                v = M4[(a_out << 1) | b_out][(a_in << 1) | b_in]
                if not v.is_zero():
                    i = base | (a_out << sh1) | (b_out << sh2)
                    out[i][j] = {(): v}
    return out


def _matn_mul(A, B):
    n = len(A)
    out = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(n):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(n):
                b = Bk[j]
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


class LgnElement:
    """Linear combination of normal-ordered generator words."""

    __slots__ = ("algebra", "sum")

    def __init__(self, algebra, sum_):
        self.algebra = algebra
        self.sum = {w: c for w, c in sum_.items() if c}

    def _check(self, other):
        if isinstance(other, int):
            other = self.algebra.scalar(other)
        if not isinstance(other, LgnElement):
            return NotImplemented
        if other.algebra is not self.algebra:
            a, b = self.algebra, other.algebra
            if (a.g, a.n, a.mode, a.p) != (b.g, b.n, b.mode, b.p):
                raise SurfaceMismatchError(
                    f"elements on ({a.g},{a.n},{a.mode}) vs ({b.g},{b.n},{b.mode})"
                )
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.sum)
        elem_iadd(out, other.sum)
        return LgnElement(self.algebra, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.sum)
        elem_iadd(out, other.sum, self.algebra.ring.from_int(-1))
        return LgnElement(self.algebra, out)

    def __neg__(self):
        return LgnElement(self.algebra, {w: -c for w, c in self.sum.items()})

    def __mul__(self, other):
        if not isinstance(other, (LgnElement, int)) and self.algebra.ring.contains(other):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        raw = {}
        for w1, c1 in self.sum.items():
            for w2, c2 in other.sum.items():
                c = c1 * c2
                cur = raw.get(w1 + w2)
                raw[w1 + w2] = cur + c if cur is not None else c
        return LgnElement(self.algebra, self.algebra.reduce_raw(raw))

    def scale(self, scalar):
        scalar = self.algebra.ring.coerce(scalar)
        return LgnElement(self.algebra, {w: scalar * c for w, c in self.sum.items()})

    def is_zero(self):
        return not self.sum

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.algebra.scalar(other)
        if not isinstance(other, LgnElement):
            return NotImplemented
        return self.sum == other.sum

    def __hash__(self):
        return hash(tuple(sorted(self.sum.items(), key=lambda kv: deglex_key(kv[0]))))

    def __str__(self):
        if not self.sum:
            return "0"
        alg = self.algebra
        parts = []
        for w in sorted(self.sum, key=deglex_key):
            gens = " ".join(str(alg.sym_to_gen(s)) for s in w)
            parts.append(render_term(self.sum[w], gens, not parts))
        return " ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# module-level API
# ---------------------------------------------------------------------------

_ALGEBRAS = {}


def algebra(g, n, mode="generic", p=None):
    key = (g, n, mode, p)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = LgnAlgebra(g, n, mode, p)
    return _ALGEBRAS[key]


def normal_form(word, g, n, mode="generic", p=None):
    """Normal form of a word given as a sequence of GeneratorId."""
    return algebra(g, n, mode, p).word(word)


def defining_relations(g, n, mode="generic", p=None):
    """Raw relation elements (word dicts); all must normal-form to zero."""
    return algebra(g, n, mode, p).defining_relations()


def mul(x, y):
    return x * y


def fusion_matrix(family, handle, m, g, n, mode="generic", p=None):
    return algebra(g, n, mode, p).fusion_matrix(family, handle, m)


def matrix_inverse(family, handle, g, n, mode="generic", p=None):
    return algebra(g, n, mode, p).matrix_inverse(family, handle)


class LgnCoaction:
    """Element of O_q2 (x) L_{g,n}: dict {(oq word, lgn word): scalar}."""

    def __init__(self, algebra_, pairs):
        self.algebra = algebra_
        self.pairs = {k: v for k, v in pairs.items() if v}

    def __eq__(self, other):
        return isinstance(other, LgnCoaction) and self.pairs == other.pairs

    def oq_legs(self):
        oq = oq_algebra(self.algebra.ring)
        out = {}
        for (ow, lw), c in self.pairs.items():
            out.setdefault(lw, {})
            elem_iadd(out[lw], {ow: c})
        return {lw: oq.element(d) for lw, d in out.items()}


def coaction(x):
    """Left O_q2-coaction extending X(i) |-> T X(i) S(T)."""
    alg = x.algebra
    pairs = {}
    for w, c in x.sum.items():
        for key, d in alg.coaction_word(w).items():
            cur = pairs.get(key)
            val = cur + c * d if cur is not None else c * d
            if val:
                pairs[key] = val
            elif cur is not None:
                del pairs[key]
    return LgnCoaction(alg, pairs)


def is_invariant(x):
    """True iff the coaction of x is (unit of O_q2) (x) x."""
    want = {((), w): c for w, c in x.sum.items()}
    return coaction(x).pairs == want


def quantum_trace(mat):
    """Quantum trace of a 2x2 matrix of elements."""
    return mat[0][0].algebra.quantum_trace(mat)


def basis_enumerate(g, n, p, budget=2_000_000):
    """Normal-order monomial basis of the restricted quotient.

    Returns (words, count) where words is the list of basis words as
    tuples of GeneratorId and count = (2 p^3)^(2g+n).
    """
    alg = algebra(g, n, "restricted", p)
    per_slot = 2 * p**3
    count = per_slot ** len(alg.slots)
    if count > budget:
        raise BudgetError(f"basis size {count} exceeds budget {budget}")
    slot_words = []
    for slot in range(len(alg.slots)):
        syms = alg._slot_syms(slot)
        b, c, d = syms[(0, 1)], syms[(1, 0)], syms[(1, 1)]
        words = []
        for i in range(p):
            for k in range(2 * p):
                for l in range(p):
                    words.append((b,) * i + (d,) * k + (c,) * l)
        slot_words.append(words)
    acc = [()]
    for words in slot_words:
        acc = [w1 + w2 for w1 in acc for w2 in words]
    assert len(acc) == count
    out = [tuple(alg.sym_to_gen(s) for s in w) for w in acc]
    return out, count


# ---------------------------------------------------------------------------
# element grammar
# ---------------------------------------------------------------------------


def parse_element(text, alg):
    """Parse the element grammar, e.g. '-q^2 * M1[-,-] - q^-2 * M1[+,+]'."""
    from .scalars import _ScalarParser

    class _P(_ScalarParser):
        def parse_atom(self):
            kind, val = self.peek()
            if kind == "name" and val != "q":
                fam = val[0]
                if fam in "ABM" and val[1:].isdigit():
                    self.take()
                    self.take("[")
                    row = self.take()[0]
                    if row not in "+-":
                        raise ValueError("expected state '-' or '+'")
                    self.take(",")
                    col = self.take()[0]
                    if col not in "+-":
                        raise ValueError("expected state '-' or '+'")
                    self.take("]")
                    return alg.generator(fam, int(val[1:]), row, col)
                raise ValueError(f"unknown generator {val!r}")
            sc = _ScalarParser.parse_atom(self)
            return alg.scalar(sc)

    class _Ring:
        # scalar atoms parsed through the algebra's ring
        @staticmethod
        def from_int(v):
            return alg.ring.from_int(v)

        @staticmethod
        def q_half(m, coeff=1):
            return alg.ring.q_half(m, coeff)

    p = _P(tokenize(text), _Ring())
    out = p.parse_sum()
    p.take("end")
    if not isinstance(out, LgnElement):
        out = alg.scalar(out)
    return out
