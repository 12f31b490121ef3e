"""The quantum coordinate algebra O_q2 (stated skein algebra of the bigon).

Generated by the four matrix coefficients T^s_t (s, t in {-,+}) of the
fundamental representation, subject to the RTT relation R T1 T2 = T2 T1 R
and the quantum determinant T^-_- T^+_+ - q^(-2) T^-_+ T^+_- = 1.  Words
are kept in PBW normal form for the generator order
T^-_+ < T^-_- < T^+_+ < T^+_-, with the mixed monomial T^-_- T^+_+
eliminated by the determinant relation.  Straightening rules are generated
at startup by orienting the 17 scalar relations under degree-lex.
"""

from __future__ import annotations

from .errors import RingMismatchError
from .rewrite import build_rules, deglex_key, elem_iadd, invert_2x2
from .rmatrix import mat4, mat4_from_scalar, matrix_relation, r_spec, slot_embed
from .scalars import LAURENT, render_term

__all__ = [
    "OqAlgebra",
    "OqElement",
    "oq_algebra",
    "oq_mul",
    "antipode_matrix",
    "oq_coproduct",
    "counit",
    "OqTensor",
]

# symbol ids for the four generators, in PBW order
SYM_B, SYM_A, SYM_D, SYM_C = 0, 1, 2, 3  # T^-_+, T^-_-, T^+_+, T^+_-
_ENTRY_TO_SYM = {("-", "+"): SYM_B, ("-", "-"): SYM_A, ("+", "+"): SYM_D, ("+", "-"): SYM_C}
_SYM_TO_ENTRY = {v: k for k, v in _ENTRY_TO_SYM.items()}

# index pairs (row, col) with 0 = '-', 1 = '+'
_IDX_TO_SYM = {(0, 1): SYM_B, (0, 0): SYM_A, (1, 1): SYM_D, (1, 0): SYM_C}
_SYM_TO_IDX = {v: k for k, v in _IDX_TO_SYM.items()}


def rtt_relations(ring):
    """16 RTT components plus the quantum determinant relation."""
    R = mat4_from_scalar(mat4(ring, r_spec()))
    T1 = slot_embed(_IDX_TO_SYM, 1, ring)
    T2 = slot_embed(_IDX_TO_SYM, 2, ring)
    rels = matrix_relation([R, T1, T2], [T2, T1, R], ring)
    qdet = {
        (SYM_A, SYM_D): ring.one(),
        (SYM_B, SYM_C): ring.q_half(-4, -1),
        (): ring.from_int(-1),
    }
    rels.append(qdet)
    return rels


class OqAlgebra:
    """O_q2 over a coefficient ring (generic Laurent by default)."""

    def __init__(self, ring=LAURENT):
        self.ring = ring
        self.table = build_rules(rtt_relations(ring), ring)
        self._antipode = None

    def element(self, sum_=None):
        return OqElement(self, self.table.reduce_elem(sum_ or {}))

    def one(self):
        return OqElement(self, {(): self.ring.one()})

    def zero(self):
        return OqElement(self, {})

    def generator(self, row, col):
        """T^row_col with row, col in '-', '+'."""
        sym = _ENTRY_TO_SYM[(row, col)]
        return OqElement(self, {(sym,): self.ring.one()})

    def gen_matrix(self):
        return [[self.generator(r, c) for c in "-+"] for r in "-+"]

    def antipode_matrix(self):
        """The unique S with T.S = S.T = identity, entrywise in O_q2."""
        if self._antipode is not None:
            return self._antipode
        Tm = [[{(_IDX_TO_SYM[(r, c)],): self.ring.one()} for c in range(2)] for r in range(2)]
        basis = [(), (SYM_B,), (SYM_A,), (SYM_D,), (SYM_C,)]
        S = invert_2x2(Tm, basis, self.table, self.ring)
        self._antipode = [[OqElement(self, S[r][c]) for c in range(2)] for r in range(2)]
        return self._antipode


class OqElement:
    """Linear combination of PBW-normal words in the T^s_t."""

    __slots__ = ("algebra", "sum")

    def __init__(self, algebra, sum_):
        self.algebra = algebra
        self.sum = {w: c for w, c in sum_.items() if c}

    def _check(self, other):
        if isinstance(other, int):
            other = OqElement(self.algebra, {(): self.algebra.ring.from_int(other)})
        if not isinstance(other, OqElement):
            return NotImplemented
        if other.algebra.ring != self.algebra.ring:
            raise RingMismatchError("OqElements over different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.sum)
        elem_iadd(out, other.sum)
        return OqElement(self.algebra, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.sum)
        elem_iadd(out, other.sum, self.algebra.ring.from_int(-1))
        return OqElement(self.algebra, out)

    def __neg__(self):
        return OqElement(self.algebra, {w: -c for w, c in self.sum.items()})

    def __mul__(self, other):
        if not isinstance(other, (OqElement, int)) and self.algebra.ring.contains(other):
            return OqElement(self.algebra, {w: c * other for w, c in self.sum.items()})
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        raw = {}
        for w1, c1 in self.sum.items():
            for w2, c2 in other.sum.items():
                cur = raw.get(w1 + w2)
                c = c1 * c2
                raw[w1 + w2] = cur + c if cur is not None else c
        return OqElement(self.algebra, self.algebra.table.reduce_elem(raw))

    def scale(self, scalar):
        return OqElement(self.algebra, {w: scalar * c for w, c in self.sum.items()})

    def is_zero(self):
        return not self.sum

    def __eq__(self, other):
        if isinstance(other, int):
            other = OqElement(self.algebra, {(): self.algebra.ring.from_int(other)} if other else {})
        if not isinstance(other, OqElement):
            return NotImplemented
        return self.sum == other.sum

    def __hash__(self):
        return hash(tuple(sorted(self.sum.items(), key=lambda kv: deglex_key(kv[0]))))

    def __str__(self):
        if not self.sum:
            return "0"
        parts = []
        for w in sorted(self.sum, key=deglex_key):
            c = self.sum[w]
            gens = " ".join("T[%s,%s]" % _SYM_TO_ENTRY[s] for s in w)
            parts.append(render_term(c, gens, not parts))
        return " ".join(parts)

    __repr__ = __str__


_ALGEBRAS = {}


def oq_algebra(ring=LAURENT):
    """Cached O_q2 algebra over a ring."""
    if ring not in _ALGEBRAS:
        _ALGEBRAS[ring] = OqAlgebra(ring)
    return _ALGEBRAS[ring]


def oq_mul(x, y):
    return x * y


def antipode_matrix(ring=LAURENT):
    return oq_algebra(ring).antipode_matrix()


class OqTensor:
    """Element of O_q2 (x) O_q2 (for the coproduct)."""

    def __init__(self, algebra, pairs=None):
        self.algebra = algebra
        self.pairs = {k: v for k, v in (pairs or {}).items() if v}

    def add_term(self, w1, w2, coeff):
        key = (w1, w2)
        cur = self.pairs.get(key)
        val = cur + coeff if cur is not None else coeff
        if val:
            self.pairs[key] = val
        elif cur is not None:
            del self.pairs[key]

    def __add__(self, other):
        out = OqTensor(self.algebra, dict(self.pairs))
        for (w1, w2), c in other.pairs.items():
            out.add_term(w1, w2, c)
        return out

    def __mul__(self, other):
        table = self.algebra.table
        out = OqTensor(self.algebra)
        for (a1, a2), c1 in self.pairs.items():
            for (b1, b2), c2 in other.pairs.items():
                left = table.reduce_word(a1 + b1)
                right = table.reduce_word(a2 + b2)
                c = c1 * c2
                for w1, d1 in left.items():
                    for w2, d2 in right.items():
                        out.add_term(w1, w2, c * d1 * d2)
        return out

    def __eq__(self, other):
        return isinstance(other, OqTensor) and self.pairs == other.pairs

    def is_zero(self):
        return not self.pairs


def oq_coproduct(x):
    """Algebra-map extension of Delta(T^s_t) = sum_k T^s_k (x) T^k_t."""
    alg = x.algebra
    ring = alg.ring
    gen_cop = {}
    for sym in range(4):
        r, c = _SYM_TO_IDX[sym]
        t = OqTensor(alg)
        for k in range(2):
            t.add_term((_IDX_TO_SYM[(r, k)],), (_IDX_TO_SYM[(k, c)],), ring.one())
        gen_cop[sym] = t
    out = OqTensor(alg)
    for w, coeff in x.sum.items():
        acc = OqTensor(alg, {((), ()): ring.one()})
        for sym in w:
            acc = acc * gen_cop[sym]
        for key, c in acc.pairs.items():
            out.add_term(key[0], key[1], coeff * c)
    return out


def counit(x):
    """epsilon(T^s_t) = delta^s_t extended as an algebra map."""
    ring = x.algebra.ring
    acc = ring.zero()
    for w, c in x.sum.items():
        if all(s in (SYM_A, SYM_D) for s in w):
            acc = acc + c
    return acc
