"""Exact coefficient rings.

Two rings are implemented:

* ``LaurentScalar``: Laurent polynomials in q^(1/2) with integer
  coefficients.  Exponents are stored as integers counting half-units,
  so the monomial q^(m/2) is stored under key m.  This keeps the hot
  path free of rational arithmetic.

* ``CycloScalar``: exact elements of the cyclotomic field Q(zeta) where
  zeta = e^(i*pi/4p) is a primitive 8p-th root of unity, represented as
  vectors of rationals modulo the 8p-th cyclotomic polynomial.  Working
  with 8p (rather than 4p) roots gives every half-integer power of q an
  exact image: q^(1/2) |-> zeta, hence q |-> zeta^2 and the 4p-th root
  epsilon = e^(i*pi/2p) is zeta^2... note epsilon^2 = q^2's image.

Both value types are immutable and hashable; all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction

from . import _kernel as K
from .errors import RingMismatchError

__all__ = [
    "LaurentScalar",
    "CycloScalar",
    "LaurentRing",
    "CycloRing",
    "LAURENT",
    "cyclo_ring",
    "ring_op",
    "quantum_integer",
    "specialize",
    "parse_scalar",
]


class LaurentScalar:
    """Integer Laurent polynomial in q^(1/2); immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_int(n):
        return LaurentScalar({0: n} if n else {})

    @staticmethod
    def q_half(m, coeff=1):
        """coeff * q^(m/2) with m an integer number of half-units."""
        return LaurentScalar({m: coeff} if coeff else {})

    @staticmethod
    def q_power(e, coeff=1):
        """coeff * q^e with e an integer."""
        return LaurentScalar.q_half(2 * e, coeff)

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentScalar(K.terms_add(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentScalar(K.terms_sub(self.terms, other.terms))

    def __rsub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentScalar(K.terms_sub(other.terms, self.terms))

    def __neg__(self):
        return LaurentScalar(K.terms_neg(self.terms))

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentScalar(K.terms_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) == 1:
                ((e, c),) = self.terms.items()
                if c in (1, -1):
                    return LaurentScalar({n * e: c if n % 2 else 1})
            raise ValueError("negative powers only for unit monomials")
        out = LaurentScalar.from_int(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def unit_inverse(self):
        """Inverse of a monomial with coefficient +-1; None otherwise."""
        if len(self.terms) != 1:
            return None
        ((e, c),) = self.terms.items()
        if c in (1, -1):
            return LaurentScalar({-e: c})
        return None

    # -- text ------------------------------------------------------------
    def __str__(self):
        return render_laurent(self.terms)

    def __repr__(self):
        return f"LaurentScalar({self})"


def _coerce_laurent(x):
    if isinstance(x, LaurentScalar):
        return x
    if isinstance(x, int):
        return LaurentScalar.from_int(x)
    return NotImplemented


def render_laurent(terms):
    """Canonical text form: terms by decreasing exponent.

    Integer exponents print bare (q^2, q^-2); half-integer exponents are
    braced (q^{3/2}, q^{-5/2}).  Integer constants print bare.
    """
    if not terms:
        return "0"
    parts = []
    for m in sorted(terms, reverse=True):
        c = terms[m]
        mag = abs(c)
        if m == 0:
            body = str(mag)
        else:
            if m % 2 == 0:
                e = m // 2
                qp = "q" if e == 1 else f"q^{e}"
            else:
                qp = "q^{%d/2}" % m
            body = qp if mag == 1 else f"{mag}*{qp}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def render_term(coeff, gens, first):
    """One term of an algebra element: coefficient times generator word."""
    neg = False
    if isinstance(coeff, LaurentScalar) and len(coeff.terms) == 1:
        ((m, c),) = coeff.terms.items()
        if c < 0:
            neg = True
            coeff = LaurentScalar({m: -c})
        body = render_laurent(coeff.terms)
    else:
        s = str(coeff)
        body = s if (" " not in s) else f"({s})"
        if body.startswith("-") and " " not in body:
            neg = True
            body = body[1:]
    if gens:
        piece = gens if body == "1" else f"{body} * {gens}"
    else:
        piece = body
    if first:
        return ("-" if neg else "") + piece
    return ("- " if neg else "+ ") + piece


# ---------------------------------------------------------------------------
# Cyclotomic arithmetic
# ---------------------------------------------------------------------------


def _poly_divmod_int(num, den):
    """Exact division of integer polynomial lists (monic-ish den)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        f = c // lead
        out[i - dn] = f
        if f:
            for j, d in enumerate(den):
                num[i - dn + j] -= f * d
    if any(num[:dn]) or any(num[dn:]):
        pass
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


def cyclotomic_polynomial(n):
    """Coefficient list of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_int(poly, cyclotomic_polynomial(d))
    return poly


_CYCLO_CACHE = {}


def _cyclo_data(p):
    """Reduction data for Q(zeta_{8p}): (degree, reduction rows, zeta powers)."""
    if p in _CYCLO_CACHE:
        return _CYCLO_CACHE[p]
    n = 8 * p
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    # x^(deg+k) mod phi, k = 0 .. deg-2, as Fraction rows of length deg
    rows = []
    first = [Fraction(-phi[i]) for i in range(deg)]
    rows.append(first)
    for _ in range(deg - 2):
        prev = rows[-1]
        shifted = [Fraction(0)] + prev[:-1]
        top = prev[-1]
        if top:
            for i in range(deg):
                shifted[i] += top * first[i]
        rows.append(shifted)
    # zeta^t for t = 0 .. n-1
    powers = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(n):
        powers.append(tuple(cur))
        nxt = [Fraction(0)] + cur[:-1]
        top = cur[-1]
        if top:
            for i in range(deg):
                nxt[i] += top * first[i]
        cur = nxt
    data = (deg, rows, powers, [Fraction(c) for c in phi])
    _CYCLO_CACHE[p] = data
    return data


class CycloScalar:
    """Element of Q(zeta_{8p}), zeta = primitive 8p-th root of unity."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p, coeffs):
        deg = _cyclo_data(p)[0]
        cs = list(coeffs)
        if len(cs) != deg:
            raise ValueError(f"coefficient vector must have length {deg}")
        self.p = p
        self.coeffs = tuple(Fraction(c) for c in cs)
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_int(p, n):
        deg = _cyclo_data(p)[0]
        v = [Fraction(0)] * deg
        v[0] = Fraction(n)
        return CycloScalar(p, v)

    @staticmethod
    def zeta_power(p, t):
        """zeta^t, exact."""
        deg, _rows, powers, _phi = _cyclo_data(p)
        return CycloScalar(p, list(powers[t % (8 * p)]))

    @staticmethod
    def q_half(p, m, coeff=1):
        """Image of coeff * q^(m/2), i.e. coeff * zeta^m."""
        z = CycloScalar.zeta_power(p, m)
        if coeff == 1:
            return z
        return z * coeff

    @staticmethod
    def epsilon_power(p, k):
        """epsilon^k where epsilon = e^(i*pi/2p) = zeta^2."""
        return CycloScalar.zeta_power(p, 2 * k)

    # -- ring operations ----------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            other = CycloScalar.from_int(self.p, other)
        if not isinstance(other, CycloScalar):
            return NotImplemented
        if other.p != self.p:
            raise RingMismatchError(f"cyclotomic rings differ: p={self.p} vs p={other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloScalar(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloScalar(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloScalar(self.p, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Fraction):
            return CycloScalar(self.p, [a * other for a in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        deg, rows, _powers, _phi = _cyclo_data(self.p)
        conv = K.vec_conv(list(self.coeffs), list(other.coeffs))
        return CycloScalar(self.p, K.vec_reduce(conv, deg, rows))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycloScalar.from_int(self.p, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        """Field inverse via extended Euclid against the minimal polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        deg, _rows, _powers, phi = _cyclo_data(self.p)
        #   a*self + b*phi = gcd  over Q[x]
        r0, r1 = list(phi), list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q_, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q_, s1))
        # r0 is the gcd; it must be a nonzero constant for a field element
        r0 = _poly_trim(r0)
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible (zero divisor?)")
        inv_c = 1 / r0[0]
        s0 = [c * inv_c for c in s0]
        s0 = (s0 + [Fraction(0)] * deg)[:deg]
        return CycloScalar(self.p, s0)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    # -- predicates ----------------------------------------------------
    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloScalar.from_int(self.p, other)
        if not isinstance(other, CycloScalar):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs))
        return self._hash

    def unit_inverse(self):
        """Inverse if invertible (always, in a field, for nonzero)."""
        if self.is_zero():
            return None
        return self.inverse()

    # -- text ------------------------------------------------------------
    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                zp = "z" if i == 1 else f"z^{i}"
                body = zp if mag == 1 else f"{mag}*{zp}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CycloScalar(p={self.p}, {self})"


def _poly_trim(a):
    i = len(a)
    while i > 0 and not a[i - 1]:
        i -= 1
    return a[:i]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul(a, b):
    if not a or not b:
        return []
    return K.vec_conv(a, b)


def _poly_divmod_frac(a, b):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    q_ = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q_[k] = f
        a = _poly_sub(a, [Fraction(0)] * k + [f * c for c in b])
        a = _poly_trim(a)
    return q_, a


# ---------------------------------------------------------------------------
# Ring handles
# ---------------------------------------------------------------------------


class LaurentRing:
    """Handle for the generic ring Z[q^(1/2), q^(-1/2)]."""

    name = "laurent"

    def one(self):
        return LaurentScalar.from_int(1)

    def zero(self):
        return LaurentScalar.from_int(0)

    def from_int(self, n):
        return LaurentScalar.from_int(n)

    def q_half(self, m, coeff=1):
        return LaurentScalar.q_half(m, coeff)

    def contains(self, x):
        return isinstance(x, LaurentScalar)

    def coerce(self, x):
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, int):
            return LaurentScalar.from_int(x)
        raise RingMismatchError(f"cannot coerce {x!r} into the Laurent ring")

    def __repr__(self):
        return "LaurentRing()"

    def __eq__(self, other):
        return isinstance(other, LaurentRing)

    def __hash__(self):
        return hash("laurent")


class CycloRing:
    """Handle for Q(zeta_{8p}) at a fixed p >= 2."""

    name = "cyclo"

    def __init__(self, p):
        if p < 2:
            raise ValueError("p must be >= 2")
        self.p = p

    def one(self):
        return CycloScalar.from_int(self.p, 1)

    def zero(self):
        return CycloScalar.from_int(self.p, 0)

    def from_int(self, n):
        return CycloScalar.from_int(self.p, n)

    def q_half(self, m, coeff=1):
        return CycloScalar.q_half(self.p, m, coeff)

    def contains(self, x):
        return isinstance(x, CycloScalar) and x.p == self.p

    def coerce(self, x):
        if self.contains(x):
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, LaurentScalar):
            return specialize(x, self.p)
        raise RingMismatchError(f"cannot coerce {x!r} into Q(zeta_{8 * self.p})")

    def __repr__(self):
        return f"CycloRing(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, CycloRing) and other.p == self.p

    def __hash__(self):
        return hash(("cyclo", self.p))


LAURENT = LaurentRing()


def cyclo_ring(p):
    return CycloRing(p)


# ---------------------------------------------------------------------------
# Spec-level operations
# ---------------------------------------------------------------------------


def ring_op(a, b, op):
    """Exact add | sub | mul on two scalars of the same ring."""
    same = (isinstance(a, LaurentScalar) and isinstance(b, LaurentScalar)) or (
        isinstance(a, CycloScalar) and isinstance(b, CycloScalar) and a.p == b.p
    )
    if not same:
        raise RingMismatchError(f"mixed-ring operands: {type(a).__name__} vs {type(b).__name__}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def quantum_integer(k, ring=LAURENT):
    """[k] = q^(2(k-1)) + q^(2(k-3)) + ... + q^(-2(k-1)), division-free."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = ring.zero()
    for j in range(k):
        out = out + ring.q_half(4 * (k - 1 - 2 * j))
    return out


def specialize(x, p):
    """Ring homomorphism Z[q^(1/2)] -> Q(zeta_{8p}), q^(1/2) |-> zeta."""
    if not isinstance(x, LaurentScalar):
        raise RingMismatchError("specialize expects a LaurentScalar")
    deg = _cyclo_data(p)[0]
    acc = [Fraction(0)] * deg
    _d, _rows, powers, _phi = _cyclo_data(p)
    n = 8 * p
    for m, c in x.terms.items():
        row = powers[m % n]
        for i in range(deg):
            if row[i]:
                acc[i] += c * row[i]
    return CycloScalar(p, acc)


# ---------------------------------------------------------------------------
# Scalar parser
# ---------------------------------------------------------------------------


def tokenize(text):
    """Shared tokenizer for scalars and algebra elements."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j])))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif ch in "+-*^{}()/[],":
            toks.append((ch, ch))
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} at position {i}")
    toks.append(("end", None))
    return toks


class _ScalarParser:
    def __init__(self, toks, ring):
        self.toks = toks
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            raise ValueError(f"expected {kind}, got {t[0]}")
        self.i += 1
        return t

    def parse_sum(self):
        sign = 1
        if self.peek()[0] in "+-":
            if self.take()[0] == "-":
                sign = -1
        acc = self.parse_product()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in "+-":
            op = self.take()[0]
            term = self.parse_product()
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse_product(self):
        acc = self.parse_atom()
        while True:
            k = self.peek()[0]
            if k == "*":
                self.take()
                acc = acc * self.parse_atom()
            elif k in ("num", "name", "("):
                acc = acc * self.parse_atom()
            else:
                return acc

    def parse_atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.ring.from_int(val)
        if kind == "(":
            self.take()
            inner = self.parse_sum()
            self.take(")")
            return inner
        if kind == "name" and val == "q":
            self.take()
            m = 2  # exponent in half units; bare q means q^1
            if self.peek()[0] == "^":
                self.take()
                m = self.parse_exponent()
            return self.ring.q_half(m)
        raise ValueError(f"unexpected token {val!r} in scalar")

    def parse_exponent(self):
        """Exponent in half-units: 2, -2, {3/2}, {-5/2}, {3}."""
        if self.peek()[0] == "{":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            num = self.take("num")[1]
            if self.peek()[0] == "/":
                self.take()
                den = self.take("num")[1]
                if den != 2:
                    raise ValueError("only halves are allowed in exponents")
                m = sign * num
            else:
                m = sign * 2 * num
            self.take("}")
            return m
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        num = self.take("num")[1]
        return sign * 2 * num


def parse_scalar(text, ring=LAURENT):
    """Parse the canonical scalar grammar; inverse of str() on scalars."""
    p = _ScalarParser(tokenize(text), ring)
    out = p.parse_sum()
    p.take("end")
    return out
