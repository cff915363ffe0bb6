"""Decoration groups for graph edges: trivial, Z, Z_p, Z^3.

Group elements are integer tuples (empty tuple for the trivial group, a
single residue for Z_p, exponent vectors for free abelian groups).  A
group-ring element is a dict {element: Fraction}.  The bar involution
sends an element to its inverse.
"""

from __future__ import annotations

from fractions import Fraction

from .ring import _TermParser, _format_terms, _as_fraction


class GroupError(ValueError):
    pass


class Group:
    rank = 0  # length of element tuples

    def identity(self):
        return (0,) * self.rank

    def mul(self, a, b):
        return self.normalize(tuple(x + y for x, y in zip(a, b)))

    def inv(self, a):
        return self.normalize(tuple(-x for x in a))

    def normalize(self, a):
        return tuple(a)

    def generators(self):
        """Generating set used by the holonomy relation."""
        out = []
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            out.append(self.normalize(tuple(e)))
        return out

    def support(self, B):
        """All elements representable with exponents in [-B, B]."""
        raise NotImplementedError

    def in_support(self, a, B):
        return a in set(self.support(B))

    def var_names(self):
        return ["t%d" % (i + 1) for i in range(self.rank)]

    # -- group-ring element text form --------------------------------------

    def format_ring(self, elem):
        items = sorted(elem.items(), key=lambda kv: kv[0], reverse=True)
        return _format_terms(items, self.var_names())

    def parse_ring(self, s):
        names = self.var_names()
        parser = _TermParser(s, {n: i for i, n in enumerate(names)}, self.rank)
        raw = parser.parse_sum()
        out = {}
        for e, c in raw.items():
            e = self.normalize(e)
            out[e] = out.get(e, Fraction(0)) + c
        return {e: c for e, c in out.items() if c != 0}


class TrivialGroup(Group):
    rank = 0
    tag = "trivial"

    def support(self, B):
        return [()]

    def __repr__(self):
        return "TrivialGroup()"

    def __eq__(self, other):
        return isinstance(other, TrivialGroup)

    def __hash__(self):
        return hash("trivial")


class FreeAbelian(Group):
    """Z^rank; rank 1 is pi_1(S^2 x S^1), rank 3 is pi_1(T^3)."""

    def __init__(self, rank):
        self.rank = int(rank)
        self.tag = "Z" if self.rank == 1 else "Z%d" % self.rank

    def support(self, B):
        B = int(B)
        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for x in range(-B, B + 1):
                    yield rest + (x,)
        return sorted(rec(self.rank))

    def in_support(self, a, B):
        return all(-B <= x <= B for x in a)

    def __repr__(self):
        return "FreeAbelian(%d)" % self.rank

    def __eq__(self, other):
        return isinstance(other, FreeAbelian) and other.rank == self.rank

    def __hash__(self):
        return hash(("FreeAbelian", self.rank))


class CyclicGroup(Group):
    """Z_p, elements stored as residues (m,) with 0 <= m < p."""

    rank = 1

    def __init__(self, p):
        self.p = int(p)
        if self.p < 1:
            raise GroupError("p must be positive")
        self.tag = "Zp:%d" % self.p

    def normalize(self, a):
        return (a[0] % self.p,)

    def support(self, B):
        B = int(B)
        return sorted({(e % self.p,) for e in range(-B, B + 1)})

    def in_support(self, a, B):
        return self.normalize(a) in set(self.support(B))

    def var_names(self):
        return ["z"]

    def __repr__(self):
        return "CyclicGroup(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, CyclicGroup) and other.p == self.p

    def __hash__(self):
        return hash(("CyclicGroup", self.p))


def group_from_tag(tag):
    if tag == "trivial":
        return TrivialGroup()
    if tag == "Z":
        return FreeAbelian(1)
    if tag == "Z3":
        return FreeAbelian(3)
    if tag.startswith("Zp:"):
        return CyclicGroup(int(tag.split(":", 1)[1]))
    raise GroupError("unknown group tag %r" % (tag,))


def ring_one(group):
    return {group.identity(): Fraction(1)}


def ring_monomial(group, el, coeff=1):
    c = _as_fraction(coeff)
    return {group.normalize(el): c} if c != 0 else {}


def ring_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def ring_scale(a, c):
    c = _as_fraction(c)
    if c == 0:
        return {}
    return {e: x * c for e, x in a.items()}


def ring_mul(group, a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = group.mul(e1, e2)
            s = out.get(e, Fraction(0)) + c1 * c2
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def ring_involute(group, a):
    out = {}
    for e, c in a.items():
        k = group.inv(e)
        out[k] = out.get(k, Fraction(0)) + c
    return {e: c for e, c in out.items() if c != 0}


def ring_augment(a):
    """Sum of coefficients (evaluation at the trivial representation)."""
    return sum(a.values(), Fraction(0))
