"""Noncommutative straightening engine.

Words are tuples of integer symbol ids; a total order on symbols induces
the degree-lexicographic order on words.  Elements are dicts mapping words
to ring scalars.  A rule table maps a reducible word (length 2 for the
quadratic relations, longer for root-of-unity power rules) to an element
all of whose words are strictly deglex-smaller, so rewriting terminates.

Rules are generated at startup by orienting the defining scalar relations:
relations are reduced against the current table, the deglex-leading word is
isolated (after removing polynomial content so the pivot is a unit) and the
relation is turned into a rule.  Confluence is not proven; a critical-pair
pass checks all overlaps of the generated rules and promotes any nonzero
S-word difference to a new rule, and the associativity and
relation-vanishing test suites guard the result empirically.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import RewriteLimitError, StructuralError
from .scalars import LaurentScalar

__all__ = [
    "deglex_key",
    "elem_iadd",
    "elem_scale",
    "RewriteTable",
    "build_rules",
    "close_overlaps",
    "solve_linear",
    "invert_2x2",
]


def deglex_key(word):
    return (len(word), word)


def elem_iadd(acc, other, scale=None):
    """In-place acc += scale * other for element dicts."""
    for w, c in other.items():
        if scale is not None:
            c = scale * c
        cur = acc.get(w)
        if cur is None:
            if c:
                acc[w] = c
        else:
            cur = cur + c
            if cur:
                acc[w] = cur
            else:
                del acc[w]
    return acc


def elem_scale(elem, scale):
    out = {}
    for w, c in elem.items():
        v = scale * c
        if v:
            out[w] = v
    return out


# ---------------------------------------------------------------------------
# Laurent content removal (rule generation only)
# ---------------------------------------------------------------------------


def _laurent_to_frac_poly(x):
    """(shift, dense Fraction list) with list[0] the lowest stored term."""
    lo = min(x.terms)
    hi = max(x.terms)
    out = [Fraction(0)] * (hi - lo + 1)
    for e, c in x.terms.items():
        out[e - lo] = Fraction(c)
    return lo, out


def _trim(a):
    i = len(a)
    while i and not a[i - 1]:
        i -= 1
    return a[:i]


def _poly_divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a = _trim(a)
    return q, a


def _poly_gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def remove_content(rel):
    """Divide a Laurent-coefficient relation by the gcd of its coefficients.

    Returns an equivalent relation whose coefficients are again integer
    Laurent polynomials with no common polynomial factor.
    """
    polys = [_laurent_to_frac_poly(c) for c in rel.values()]
    g = polys[0][1]
    for _, pl in polys[1:]:
        if len(g) == 1:
            break
        g = _poly_gcd(g, pl)
    if len(g) <= 1:
        return rel
    out = {}
    for w, c in rel.items():
        lo, pl = _laurent_to_frac_poly(c)
        quo, r = _poly_divmod(pl, g)
        if r:
            return rel  # not an exact common factor after all
        den = 1
        for f in quo:
            den = den * f.denominator // _gcd_int(den, f.denominator) if f else den
        terms = {}
        for i, f in enumerate(quo):
            if f:
                v = f * den
                if v.denominator != 1:
                    return rel
                terms[lo + i] = int(v)
        out[w] = LaurentScalar(terms)
    return out


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Rewrite table
# ---------------------------------------------------------------------------


class RewriteTable:
    """Terminating rewriting system over one symbol alphabet."""

    def __init__(self, ring, step_limit=5_000_000):
        self.ring = ring
        self.rules = {}
        self._by_first = {}
        self._cache = {}
        self.step_limit = step_limit

    def add_rule(self, lhs, rhs):
        lk = deglex_key(lhs)
        for w in rhs:
            if deglex_key(w) >= lk:
                raise StructuralError(f"rule does not decrease order: {lhs} -> {w}")
        self.rules[lhs] = dict(rhs)
        self._by_first.setdefault(lhs[0], []).append(lhs)
        self._by_first[lhs[0]].sort(key=len)
        self._cache.clear()

    def _find(self, word):
        by_first = self._by_first
        n = len(word)
        for i in range(n):
            cands = by_first.get(word[i])
            if not cands:
                continue
            for lhs in cands:
                ln = len(lhs)
                if i + ln <= n and word[i : i + ln] == lhs:
                    return i, lhs
        return None

    def reduce_word(self, word):
        """Full normal form of a single word, memoized."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        one = self.ring.one()
        out = {}
        stack = [(word, one)]
        steps = 0
        cache = self._cache
        while stack:
            w, coeff = stack.pop()
            steps += 1
            if steps > self.step_limit:
                raise RewriteLimitError(f"step bound exceeded while reducing {word}")
            got = cache.get(w)
            if got is not None:
                elem_iadd(out, got, coeff)
                continue
            hit = self._find(w)
            if hit is None:
                elem_iadd(out, {w: coeff})
                continue
            i, lhs = hit
            pre, post = w[:i], w[i + len(lhs) :]
            for rw, rc in self.rules[lhs].items():
                stack.append((pre + rw + post, coeff * rc))
        self._cache[word] = out
        return out

    def reduce_elem(self, elem):
        out = {}
        for w, c in elem.items():
            elem_iadd(out, self.reduce_word(w), c)
        return out

    def is_normal_word(self, word):
        return self._find(word) is None

    # -- critical pairs ------------------------------------------------
    def overlap_words(self):
        """All words uvw arising from rule LHS pairs overlapping in v."""
        out = set()
        lhss = list(self.rules)
        by_first = self._by_first
        for l1 in lhss:
            for k in range(1, len(l1)):
                suffix = l1[k:]
                cands = by_first.get(suffix[0], ())
                for l2 in cands:
                    if l2[: len(suffix)] == suffix and len(l2) > len(suffix):
                        out.add(l1 + l2[len(suffix) :])
                    elif suffix[: len(l2)] == l2 and len(suffix) >= len(l2):
                        # l2 inside l1's suffix: inclusion overlap
                        out.add(l1)
        return out

    def spolynomial(self, word):
        """Difference of the two reductions of an overlap word.

        Zero means this critical pair is confluent already.
        """
        hit = self._find(word)
        if hit is None:
            return {}
        i, lhs = hit
        base = self.reduce_word(word)
        diff = {}
        found_alt = False
        n = len(word)
        for j in range(n):
            cands = self._by_first.get(word[j])
            if not cands:
                continue
            for lhs2 in cands:
                ln = len(lhs2)
                if j + ln <= n and word[j : j + ln] == lhs2 and (j, lhs2) != (i, lhs):
                    found_alt = True
                    alt = {}
                    pre, post = word[:j], word[j + ln :]
                    for rw, rc in self.rules[lhs2].items():
                        elem_iadd(alt, self.reduce_word(pre + rw + post), rc)
                    d = dict(base)
                    elem_iadd(d, alt, self.ring.from_int(-1))
                    elem_iadd(diff, d)
        if not found_alt:
            return {}
        return diff


def orient_relation(rel, ring):
    """Turn a (reduced, nonzero) relation into (lhs, rhs) with unit pivot."""
    lead = max(rel, key=deglex_key)
    lc = rel[lead]
    inv = getattr(lc, "unit_inverse", lambda: None)()
    if inv is None and isinstance(lc, LaurentScalar):
        rel = remove_content(rel)
        lead = max(rel, key=deglex_key)
        lc = rel[lead]
        inv = lc.unit_inverse()
    if inv is None:
        raise StructuralError(f"cannot orient relation, non-unit pivot {lc}")
    rhs = {}
    neg = ring.from_int(-1)
    for w, c in rel.items():
        if w != lead:
            rhs[w] = neg * inv * c
    return lead, rhs


def build_rules(relations, ring, complete_rounds=4):
    """Inter-reduce relations into a rewrite table, then close overlaps."""
    table = RewriteTable(ring)
    pending = [dict(r) for r in relations if r]
    max_passes = 8 * len(pending) + 40
    for _ in range(max_passes):
        reduced = [r for r in (table.reduce_elem(rel) for rel in pending) if r]
        if not reduced:
            break
        reduced.sort(key=lambda r: deglex_key(max(r, key=deglex_key)), reverse=True)
        top_lead = max(reduced[0], key=deglex_key)
        group = [r for r in reduced if max(r, key=deglex_key) == top_lead]
        rest = [r for r in reduced if max(r, key=deglex_key) != top_lead]
        pick = pick_src = None
        for rel in group:
            cand = rel
            if cand[top_lead].unit_inverse() is None and isinstance(cand[top_lead], LaurentScalar):
                cand = remove_content(cand)
            if cand[max(cand, key=deglex_key)].unit_inverse() is not None:
                pick, pick_src = cand, rel
                break
        if pick is None:
            raise StructuralError(f"cannot orient relations at {top_lead}: non-unit pivots")
        lhs, rhs = orient_relation(pick, ring)
        table.add_rule(lhs, rhs)
        pending = [r for r in group if r is not pick_src] + rest
    else:
        raise StructuralError("rule generation did not terminate")
    # verify every input relation now vanishes
    for rel in relations:
        if table.reduce_elem(rel):
            raise StructuralError("relation did not reduce to zero after rule generation")
    close_overlaps(table, ring, complete_rounds)
    return table


def close_overlaps(table, ring, rounds=4):
    """Critical-pair closure: promote nonzero S-word differences to rules."""
    for _ in range(rounds):
        new_rules = []
        for word in sorted(table.overlap_words(), key=deglex_key):
            diff = table.spolynomial(word)
            if diff:
                new_rules.append(diff)
        if not new_rules:
            break
        for rel in new_rules:
            red = table.reduce_elem(rel)
            if not red:
                continue
            lhs, rhs = orient_relation(red, ring)
            table.add_rule(lhs, rhs)
    else:
        raise StructuralError("critical pair closure did not stabilize")
    # inter-reduce rule right-hand sides
    for lhs in list(table.rules):
        table.rules[lhs] = table.reduce_elem(table.rules[lhs])
    table._cache.clear()
    return table


# ---------------------------------------------------------------------------
# Exact linear solves inside an algebra
# ---------------------------------------------------------------------------


def _exact_div(a, b, ring):
    """a / b in the coefficient ring, erroring if not exact."""
    inv = b.unit_inverse()
    if inv is not None:
        return inv * a
    if isinstance(a, LaurentScalar) and isinstance(b, LaurentScalar):
        if a.is_zero():
            return ring.zero()
        la, pa = _laurent_to_frac_poly(a)
        lb, pb = _laurent_to_frac_poly(b)
        quo, rem = _poly_divmod(pa, pb)
        if rem:
            raise StructuralError("non-exact division in linear solve")
        terms = {}
        for i, f in enumerate(quo):
            if f:
                if f.denominator != 1:
                    raise StructuralError("non-integer quotient in linear solve")
                terms[la - lb + i] = int(f)
        return LaurentScalar(terms)
    raise StructuralError("division unavailable in this ring")


def solve_linear(columns, target, ring):
    """Solve sum_k x_k * columns[k] = target for ring scalars x_k.

    ``columns`` and ``target`` are elements (word -> scalar dicts).  Used
    for the small structural solves (antipode matrix, generator matrix
    inverse).  Raises StructuralError when the system is inconsistent or
    underdetermined on the involved words.
    """
    words = set(target)
    for col in columns:
        words.update(col)
    words = sorted(words, key=deglex_key)
    zero = ring.zero()
    rows = [[col.get(w, zero) for col in columns] + [target.get(w, zero)] for w in words]
    n = len(columns)
    piv_rows = []
    piv_cols = []
    used = set()
    for k in range(n):
        best = None
        for ri, row in enumerate(rows):
            if ri in used:
                continue
            for ci in range(n):
                if ci in piv_cols or row[ci].is_zero():
                    continue
                unit = row[ci].unit_inverse() is not None
                if best is None or (unit and not best[2]):
                    best = (ri, ci, unit)
                if unit:
                    break
            if best and best[2]:
                break
        if best is None:
            break
        ri, ci, _unit = best
        used.add(ri)
        piv_rows.append(ri)
        piv_cols.append(ci)
        prow = rows[ri]
        for rj, row in enumerate(rows):
            if rj == ri or row[ci].is_zero():
                continue
            # row <- prow[ci]*row - row[ci]*prow  (fraction-free)
            f1, f2 = prow[ci], row[ci]
            rows[rj] = [f1 * row[t] - f2 * prow[t] for t in range(n + 1)]
    xs = [None] * n
    for ri, ci in zip(piv_rows, piv_cols):
        row = rows[ri]
        acc = row[n]
        for t in range(n):
            if t != ci and not row[t].is_zero():
                raise StructuralError("elimination left coupled unknowns")
        xs[ci] = _exact_div(acc, row[ci], ring)
    for ri, row in enumerate(rows):
        if ri in used:
            continue
        if not row[n].is_zero() or any(not c.is_zero() for c in row[:n]):
            # consistency check: residual row must vanish under solution
            resid = row[n]
            for t in range(n):
                if xs[t] is not None and not row[t].is_zero():
                    resid = resid - row[t] * xs[t]
            if not resid.is_zero():
                raise StructuralError("inconsistent linear system")
    return [x if x is not None else zero for x in xs]


def invert_2x2(Tm, basis, table, ring):
    """Invert a 2x2 matrix of algebra elements inside the algebra.

    Tm[i][j] are element dicts; the inverse entries are sought as linear
    combinations of the given basis words.  Returns 2x2 element dicts S
    with T.S = S.T = identity, verified exactly.
    """
    unknowns = [((r, c), w) for r in range(2) for c in range(2) for w in basis]
    columns = []
    for (r, c), w in unknowns:
        flat = {}
        for i in range(2):
            red = table.reduce_elem({k + w: v for k, v in Tm[i][r].items()})
            for wrd, cf in red.items():
                key = (("ts", i, c), wrd)
                cur = flat.get(key)
                flat[key] = cur + cf if cur is not None else cf
            red2 = table.reduce_elem({w + k: v for k, v in Tm[c][i].items()})
            for wrd, cf in red2.items():
                key = (("st", r, i), wrd)
                cur = flat.get(key)
                flat[key] = cur + cf if cur is not None else cf
        columns.append({k: v for k, v in flat.items() if v})
    target = {}
    for side in ("ts", "st"):
        for i in range(2):
            target[((side, i, i), ())] = ring.one()
    xs = solve_linear(columns, target, ring)
    S = [[{} for _ in range(2)] for _ in range(2)]
    for ui, ((r, c), w) in enumerate(unknowns):
        if not xs[ui].is_zero():
            elem_iadd(S[r][c], {w: xs[ui]})
    # exact verification of both inverse laws
    for i in range(2):
        for j in range(2):
            ts, st = {}, {}
            for k in range(2):
                for w1, c1 in Tm[i][k].items():
                    for w2, c2 in S[k][j].items():
                        elem_iadd(ts, {w1 + w2: c1 * c2})
                for w1, c1 in S[i][k].items():
                    for w2, c2 in Tm[k][j].items():
                        elem_iadd(st, {w1 + w2: c1 * c2})
            want = {(): ring.one()} if i == j else {}
            if table.reduce_elem(ts) != want or table.reduce_elem(st) != want:
                raise StructuralError("2x2 inverse failed verification")
    return S
