"""Exact coefficient arithmetic.

Three coefficient domains are provided:

* ``LaurentPoly`` -- multivariate Laurent polynomials over Q in variables
  t1, t2, t3 (arity 1, 2 or 3 fixed per element),
* ``RationalFunction`` -- the fraction field of the Laurent ring, stored in
  a canonical gcd-reduced form so equality is decidable,
* ``CyclotomicNumber`` -- Q[zeta_p], residues modulo the p-th cyclotomic
  polynomial (a field, so 1 - zeta^k is invertible).

All values are immutable; all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy


class DomainError(ValueError):
    """Mixed arities or incompatible coefficient domains."""


class ZeroDivisionInField(ZeroDivisionError):
    """Inversion of zero."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("exact coefficient expected, got %r" % (x,))


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial with Fraction coefficients.

    ``terms`` maps exponent tuples (fixed length = arity) to nonzero
    Fractions.  The zero polynomial has an empty term dict.
    """

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity, terms=None):
        self.arity = int(arity)
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = _as_fraction(c)
                if len(exps) != self.arity:
                    raise DomainError("exponent arity mismatch")
                if c != 0:
                    exps = tuple(int(e) for e in exps)
                    clean[exps] = clean.get(exps, Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c != 0}
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity):
        return cls(arity, {})

    @classmethod
    def one(cls, arity):
        return cls(arity, {(0,) * arity: Fraction(1)})

    @classmethod
    def const(cls, arity, c):
        return cls(arity, {(0,) * arity: _as_fraction(c)})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): _as_fraction(coeff)})

    @classmethod
    def var(cls, arity, i):
        """The generator t_{i+1} (0-based index i)."""
        e = [0] * arity
        e[i] = 1
        return cls(arity, {tuple(e): Fraction(1)})

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.arity: Fraction(1)}

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0,) * self.arity}

    def constant_value(self):
        if not self.is_constant():
            raise DomainError("not a constant")
        return self.terms.get((0,) * self.arity, Fraction(0))

    def monomial_parts(self):
        """(exponent tuple, coefficient) of a single-term polynomial."""
        if not self.is_monomial():
            raise DomainError("not a monomial")
        ((e, c),) = self.terms.items()
        return e, c

    def min_term(self):
        """Lexicographically least exponent tuple among the terms."""
        return min(self.terms)

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            raise DomainError("LaurentPoly expected")
        if other.arity != self.arity:
            raise DomainError("arity mismatch: %d vs %d" % (self.arity, other.arity))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.arity, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return LaurentPoly(self.arity, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.arity, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return LaurentPoly(self.arity, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return LaurentPoly(self.arity, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            # only units (monomials) are invertible in the Laurent ring
            e, c = self.monomial_parts()
            return LaurentPoly.monomial(tuple(x * n for x in e), Fraction(1) / c ** (-n))
        out = LaurentPoly.one(self.arity)
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def involute(self):
        """t^z -> t^(-z), extended linearly."""
        return LaurentPoly(self.arity, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def subs_ones(self):
        """Augmentation: evaluate all variables at 1."""
        return sum(self.terms.values(), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.arity, other)
        if not isinstance(other, LaurentPoly) or other.arity != self.arity:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return "LaurentPoly(%r)" % (format_poly(self),)


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of the polynomial parts, content-free, via sympy (exact over Q)."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    arity = a.arity
    syms = sympy.symbols("t1:%d" % (arity + 1))
    if arity == 1:
        syms = (syms[0],)

    def to_sympy(p):
        expr = sympy.Integer(0)
        for e, c in p.terms.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for s, k in zip(syms, e):
                term *= s ** k
            expr += term
        return expr

    g = sympy.gcd(sympy.Poly(to_sympy(a), *syms, domain="QQ"),
                  sympy.Poly(to_sympy(b), *syms, domain="QQ"))
    terms = {}
    for mono, coeff in g.terms():
        terms[tuple(int(x) for x in mono)] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return LaurentPoly(arity, terms)


def _shift_to_poly(p: LaurentPoly):
    """Factor p = t^shift * q with q an honest polynomial with min exps 0."""
    if p.is_zero():
        return (0,) * p.arity, p
    shift = tuple(min(e[i] for e in p.terms) for i in range(p.arity))
    q = LaurentPoly(p.arity, {tuple(a - b for a, b in zip(e, shift)): c
                              for e, c in p.terms.items()})
    return shift, q


def _poly_divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division a/b, both honest polynomials, b | a guaranteed."""
    if a.is_zero():
        return a
    arity = a.arity
    # multivariate exact division by leading-term elimination (grevlex-ish:
    # plain lex on exponent tuples is fine for termination on polynomials)
    rem = a
    quot = {}
    b_lead = max(b.terms)
    b_c = b.terms[b_lead]
    while not rem.is_zero():
        lead = max(rem.terms)
        c = rem.terms[lead]
        e = tuple(x - y for x, y in zip(lead, b_lead))
        if any(x < 0 for x in e):
            raise ArithmeticError("non-exact polynomial division")
        q = LaurentPoly.monomial(e, c / b_c)
        quot[e] = quot.get(e, Fraction(0)) + c / b_c
        rem = rem - q * b
    return LaurentPoly(arity, quot)


# ---------------------------------------------------------------------------
# Rational functions (fraction field of the Laurent ring)
# ---------------------------------------------------------------------------

class RationalFunction:
    """Element of Q(t1,...,tk), canonical reduced form.

    Canonical form: denominator is an honest polynomial (min exponent 0 in
    each variable) whose lexicographically-least term has coefficient 1;
    numerator/denominator are gcd-reduced.  Equality is dict equality.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _canonical=False):
        if den.is_zero():
            raise ZeroDivisionInField("zero denominator")
        if num.arity != den.arity:
            raise DomainError("arity mismatch")
        if not _canonical:
            num, den = _reduce_fraction(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def arity(self):
        return self.num.arity

    @classmethod
    def from_poly(cls, p: LaurentPoly):
        return cls(p, LaurentPoly.one(p.arity))

    @classmethod
    def zero(cls, arity):
        return cls.from_poly(LaurentPoly.zero(arity))

    @classmethod
    def one(cls, arity):
        return cls.from_poly(LaurentPoly.one(arity))

    @classmethod
    def const(cls, arity, c):
        return cls.from_poly(LaurentPoly.const(arity, c))

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_poly(self):
        """True when the denominator is a monomial (element of the Laurent ring)."""
        return self.den.is_monomial()

    def as_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise DomainError("not a Laurent polynomial: %s" % format_ratfun(self))
        e, c = self.den.monomial_parts()
        inv = LaurentPoly.monomial(tuple(-x for x in e), Fraction(1) / c)
        return self.num * inv

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.arity != self.arity:
                raise DomainError("arity mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.const(self.arity, other)
        raise DomainError("cannot mix %r with RationalFunction" % (other,))

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionInField("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def involute(self):
        return RationalFunction(self.num.involute(), self.den.involute())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return "RationalFunction(%r)" % (format_ratfun(self),)


def _reduce_fraction(num, den):
    if num.is_zero():
        return num, LaurentPoly.one(num.arity)
    nshift, npoly = _shift_to_poly(num)
    dshift, dpoly = _shift_to_poly(den)
    g = _poly_gcd(npoly, dpoly)
    if not g.is_one() and not g.is_constant():
        npoly = _poly_divide_exact(npoly, g)
        dpoly = _poly_divide_exact(dpoly, g)
    elif g.is_constant() and g.constant_value() != 1:
        c = g.constant_value()
        npoly = npoly * (Fraction(1) / c)
        dpoly = dpoly * (Fraction(1) / c)
    # net monomial goes to the numerator
    net = tuple(a - b for a, b in zip(nshift, dshift))
    npoly = npoly * LaurentPoly.monomial(net)
    # normalize: lex-least denominator coefficient = 1
    lc = dpoly.terms[dpoly.min_term()]
    if lc != 1:
        inv = Fraction(1) / lc
        npoly = npoly * inv
        dpoly = dpoly * inv
    return npoly, dpoly


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(p):
    """Coefficient tuple (low to high) of the p-th cyclotomic polynomial."""
    if p < 1:
        raise ValueError("p must be positive")
    # x^p - 1 divided by prod of Phi_d for proper divisors d
    poly = [Fraction(-1)] + [Fraction(0)] * (p - 1) + [Fraction(1)]
    for d in range(1, p):
        if p % d == 0:
            poly = _upoly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _upoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_divmod(a, b):
    a = list(a)
    b = _upoly_trim(list(b))
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = Fraction(1) / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c != 0:
            q[i] = c
            for j, bc in enumerate(b):
                a[i + j] -= c * bc
    return q, _upoly_trim(a)


def _upoly_divide_exact(a, b):
    q, r = _upoly_divmod(a, b)
    if r:
        raise ArithmeticError("non-exact division")
    return q


def _upoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _upoly_trim(out)


class CyclotomicNumber:
    """Residue in Q[x]/(Phi_p(x)), x = zeta_p = e^(2 pi i / p)."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p, coeffs):
        self.p = int(p)
        deg = len(cyclotomic_polynomial(self.p)) - 1
        coeffs = [_as_fraction(c) for c in coeffs]
        if len(coeffs) > deg:
            coeffs = self._reduce(coeffs)
        coeffs = coeffs + [Fraction(0)] * (deg - len(coeffs))
        self.coeffs = tuple(coeffs[:deg])
        self._hash = None

    def _reduce(self, coeffs):
        _, r = _upoly_divmod(coeffs, list(cyclotomic_polynomial(self.p)))
        return r

    @classmethod
    def zero(cls, p):
        return cls(p, [])

    @classmethod
    def one(cls, p):
        return cls(p, [Fraction(1)])

    @classmethod
    def const(cls, p, c):
        return cls(p, [_as_fraction(c)])

    @classmethod
    def zeta_power(cls, p, m):
        m = m % p
        return cls(p, [Fraction(0)] * m + [Fraction(1)])

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_one(self):
        return self == CyclotomicNumber.one(self.p)

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p:
                raise DomainError("cyclotomic modulus mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.const(self.p, other)
        raise DomainError("cannot mix %r with CyclotomicNumber" % (other,))

    def __add__(self, other):
        other = self._coerce(other)
        return CyclotomicNumber(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        prod = _upoly_mul(list(self.coeffs), list(other.coeffs))
        return CyclotomicNumber(self.p, self._reduce(prod))

    __rmul__ = __mul__

    def inverse(self):
        """Extended Euclid in Q[x] against Phi_p."""
        if self.is_zero():
            raise ZeroDivisionInField("inverse of zero")
        # invariant: a == s * self (mod Phi_p), b == t * self (mod Phi_p)
        a = _upoly_trim(list(self.coeffs))
        b = list(cyclotomic_polynomial(self.p))
        s, t = [Fraction(1)], []
        while b:
            q, r = _upoly_divmod(a, b)
            qt = _upoly_mul(q, t)
            n = max(len(s), len(qt))
            new_t = _upoly_trim([(s[i] if i < len(s) else Fraction(0)) -
                                 (qt[i] if i < len(qt) else Fraction(0))
                                 for i in range(n)])
            a, b = b, r
            s, t = t, new_t
        # a is now gcd(self, Phi_p), a nonzero constant since Phi_p is
        # squarefree and self is a nonzero residue
        if len(a) != 1:
            raise ArithmeticError("element not invertible mod Phi_p")
        inv_c = Fraction(1) / a[0]
        return CyclotomicNumber(self.p, self._reduce([c * inv_c for c in s]))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs))
        return self._hash

    def involute(self):
        """zeta^m -> zeta^(-m)."""
        lifted = [Fraction(0)] * self.p
        for k, c in enumerate(self.coeffs):
            lifted[(-k) % self.p] += c
        return CyclotomicNumber(self.p, self._reduce(lifted))

    def __repr__(self):
        return "CyclotomicNumber(p=%d, %r)" % (self.p, format_cyclotomic(self))


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------
#
# rationals        "3", "-1/2"
# monomials        "t1^2*t2^-1", "z^3"
# sums             "t1 - 2*t2 + 1/2"
# fractions        "(1 - t1)/(1 - t2)"
#
# Printing is canonical (terms sorted by descending exponent tuple) and
# round-trips bit-exactly through the parsers.


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def _format_monomial(names, exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts)


def _format_terms(items, names):
    """items: list of (exps, coeff), already ordered."""
    if not items:
        return "0"
    out = []
    for i, (exps, c) in enumerate(items):
        mono = _format_monomial(names, exps)
        neg = c < 0
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = "%s*%s" % (_format_fraction(mag), mono)
        else:
            body = _format_fraction(mag)
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def format_poly(p: LaurentPoly) -> str:
    names = ["t%d" % (i + 1) for i in range(p.arity)]
    items = sorted(p.terms.items(), key=lambda kv: kv[0], reverse=True)
    return _format_terms(items, names)


def format_cyclotomic(a: CyclotomicNumber) -> str:
    items = [((k,), c) for k, c in enumerate(a.coeffs) if c != 0]
    items.sort(key=lambda kv: kv[0], reverse=True)
    return _format_terms(items, ["z"])


def format_ratfun(f: RationalFunction) -> str:
    if f.den.is_one():
        return format_poly(f.num)
    return "(%s)/(%s)" % (format_poly(f.num), format_poly(f.den))


class ParseError(ValueError):
    pass


def _tokenize(s):
    tokens = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()/":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(s[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(s) and (s[j].isalnum()):
                j += 1
            tokens.append(s[i:j])
            i = j
        else:
            raise ParseError("unexpected character %r in %r" % (ch, s))
    return tokens


class _TermParser:
    """Parses sums of terms over named generators into {exps: Fraction}."""

    def __init__(self, s, var_index, arity):
        self.tokens = _tokenize(s)
        self.pos = 0
        self.var_index = var_index  # name -> position in exponent tuple
        self.arity = arity

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return t

    def parse_int(self):
        sign = 1
        t = self.next()
        if t == "-":
            sign = -1
            t = self.next()
        if not t.isdigit():
            raise ParseError("integer expected, got %r" % t)
        return sign * int(t)

    def parse_factor(self):
        """Returns (Fraction, exps) for one factor."""
        t = self.next()
        if t.isdigit():
            num = int(t)
            if self.peek() == "/":
                self.next()
                den = self.next()
                if not den.isdigit():
                    raise ParseError("denominator expected")
                return Fraction(num, int(den)), (0,) * self.arity
            return Fraction(num), (0,) * self.arity
        if t in self.var_index:
            idx = self.var_index[t]
            e = 1
            if self.peek() == "^":
                self.next()
                e = self.parse_int()
            exps = [0] * self.arity
            exps[idx] = e
            return Fraction(1), tuple(exps)
        raise ParseError("unexpected token %r" % t)

    def parse_term(self):
        coeff, exps = self.parse_factor()
        while self.peek() == "*":
            self.next()
            c2, e2 = self.parse_factor()
            coeff *= c2
            exps = tuple(a + b for a, b in zip(exps, e2))
        return coeff, exps

    def parse_sum(self):
        terms = {}
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next() == "-" else 1
        while True:
            c, e = self.parse_term()
            c *= sign
            terms[e] = terms.get(e, Fraction(0)) + c
            t = self.peek()
            if t is None:
                break
            if t == "+":
                sign = 1
            elif t == "-":
                sign = -1
            else:
                raise ParseError("unexpected token %r" % t)
            self.next()
        return {e: c for e, c in terms.items() if c != 0}


def parse_poly(s, arity) -> LaurentPoly:
    var_index = {"t%d" % (i + 1): i for i in range(arity)}
    p = _TermParser(s, var_index, arity)
    return LaurentPoly(arity, p.parse_sum())


def parse_cyclotomic(s, p) -> CyclotomicNumber:
    parser = _TermParser(s, {"z": 0}, 1)
    terms = parser.parse_sum()
    out = CyclotomicNumber.zero(p)
    for (e,), c in terms.items():
        out = out + CyclotomicNumber.zeta_power(p, e) * c
    return out


def _split_fraction_string(s):
    """Splits "(P)/(Q)" into (P, Q); returns None for plain sums."""
    s = s.strip()
    if not s.startswith("("):
        return None
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                rest = s[i + 1:].strip()
                if not rest.startswith("/"):
                    return None
                rest = rest[1:].strip()
                if not (rest.startswith("(") and rest.endswith(")")):
                    raise ParseError("malformed fraction %r" % s)
                return s[1:i], rest[1:-1]
    raise ParseError("unbalanced parentheses in %r" % s)


def parse_ratfun(s, arity) -> RationalFunction:
    split = _split_fraction_string(s)
    if split is None:
        return RationalFunction.from_poly(parse_poly(s, arity))
    num, den = split
    return RationalFunction(parse_poly(num, arity), parse_poly(den, arity))


# ---------------------------------------------------------------------------
# Field / ring domain adapters
# ---------------------------------------------------------------------------

class Domain:
    """Common interface over the coefficient domains.

    Instances are lightweight descriptors used by the chain-complex and
    trace layers to construct, parse and invert elements uniformly.
    """

    is_field = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_fraction(self, c):
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def fmt(self, a):
        raise NotImplementedError

    def involute(self, a):
        return a.involute()

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a):
        return a.is_zero()


class LaurentRing(Domain):
    """The group ring Lambda = Q[t1^/-1, ..., tk^/-1] (not a field)."""

    def __init__(self, arity):
        self.arity = arity

    def zero(self):
        return LaurentPoly.zero(self.arity)

    def one(self):
        return LaurentPoly.one(self.arity)

    def from_fraction(self, c):
        return LaurentPoly.const(self.arity, c)

    def parse(self, s):
        return parse_poly(s, self.arity)

    def fmt(self, a):
        return format_poly(a)

    def inv(self, a):
        # units only
        e, c = a.monomial_parts()
        return LaurentPoly.monomial(tuple(-x for x in e), Fraction(1) / c)

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and other.arity == self.arity

    def __hash__(self):
        return hash(("LaurentRing", self.arity))

    def __repr__(self):
        return "LaurentRing(%d)" % self.arity


class RatFunField(Domain):
    """The fraction field Q(Lambda)."""

    is_field = True

    def __init__(self, arity):
        self.arity = arity

    def zero(self):
        return RationalFunction.zero(self.arity)

    def one(self):
        return RationalFunction.one(self.arity)

    def from_fraction(self, c):
        return RationalFunction.const(self.arity, c)

    def from_poly(self, p):
        return RationalFunction.from_poly(p)

    def parse(self, s):
        return parse_ratfun(s, self.arity)

    def fmt(self, a):
        return format_ratfun(a)

    def inv(self, a):
        return a.inverse()

    def __eq__(self, other):
        return isinstance(other, RatFunField) and other.arity == self.arity

    def __hash__(self):
        return hash(("RatFunField", self.arity))

    def __repr__(self):
        return "RatFunField(%d)" % self.arity


class CyclotomicField(Domain):
    """Q[zeta_p] = Q[x]/(Phi_p)."""

    is_field = True

    def __init__(self, p):
        self.p = int(p)

    def zero(self):
        return CyclotomicNumber.zero(self.p)

    def one(self):
        return CyclotomicNumber.one(self.p)

    def from_fraction(self, c):
        return CyclotomicNumber.const(self.p, c)

    def zeta(self, m=1):
        return CyclotomicNumber.zeta_power(self.p, m)

    def parse(self, s):
        return parse_cyclotomic(s, self.p)

    def fmt(self, a):
        return format_cyclotomic(a)

    def inv(self, a):
        return a.inverse()

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.p == self.p

    def __hash__(self):
        return hash(("CyclotomicField", self.p))

    def __repr__(self):
        return "CyclotomicField(%d)" % self.p
