"""Alexander polynomials from planar diagrams and the Casson surgery bridge.

The Alexander polynomial is computed from the Wirtinger presentation via
free-differential calculus: each crossing relation x_out = x_over^e
x_in x_over^-e abelianizes to a row over Q[t, t^-1]; any maximal minor
of the resulting matrix (one column deleted) is the polynomial up to a
unit, which normalization fixes (symmetric, value 1 at t = 1).

For 1/n surgery on a knot the Casson invariant of the resulting homology
sphere is (n/2) * second derivative of the normalized polynomial at 1,
always an integer; scaled by half it multiplies the identity-decorated
theta class.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .ring import LaurentPoly


class DiagramError(ValueError):
    pass


class KnotDiagram:
    """Planar diagram code: crossings are 4-tuples of arc labels listed
    counterclockwise starting from the incoming under-strand, plus one
    sign (+1 right-handed) per crossing."""

    def __init__(self, crossings, signs=None):
        self.crossings = [tuple(c) for c in crossings]
        if any(len(c) != 4 for c in self.crossings):
            raise DiagramError("each crossing lists 4 arc labels")
        if signs is None:
            signs = self._derive_signs()
        self.signs = [int(s) for s in signs]
        if len(self.signs) != len(self.crossings) or \
                any(s not in (1, -1) for s in self.signs):
            raise DiagramError("one sign of +-1 per crossing")
        counts = {}
        for c in self.crossings:
            for label in c:
                counts[label] = counts.get(label, 0) + 1
        if self.crossings and any(v != 2 for v in counts.values()):
            raise DiagramError("each arc label must appear exactly twice")
        self.labels = sorted(counts)

    def _derive_signs(self):
        """Crossing signs from sequential edge numbering: the over-strand
        runs between the second and fourth labels, oriented toward the
        cyclic successor; a right-handed crossing has it entering at the
        second position."""
        if not self.crossings:
            return []
        labels = sorted({l for c in self.crossings for l in c})
        m = max(labels)

        def succ(x):
            return 1 if x == m else x + 1

        signs = []
        for a, b, c, d in self.crossings:
            if succ(b) == d:
                signs.append(1)
            elif succ(d) == b:
                signs.append(-1)
            else:
                raise DiagramError(
                    "cannot orient over-strand of crossing %r from edge "
                    "numbering; pass explicit signs" % ((a, b, c, d),))
        return signs


class SurgeryPresentation:
    """1/n surgery on a knot."""

    def __init__(self, knot: KnotDiagram, n):
        self.knot = knot
        self.n = int(n)
        if self.n == 0:
            raise DiagramError("surgery coefficient 1/n needs n != 0")


def _wirtinger_arcs(diagram):
    """Merge diagram edges across over-strands: Wirtinger arcs break only
    at under-crossings.  Returns (find, arc representatives)."""
    parent = {l: l for l in diagram.labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in diagram.crossings:
        # the over-strand runs b--d; it is one arc
        rb, rd = find(b), find(d)
        if rb != rd:
            parent[rb] = rd
    return find, sorted({find(l) for l in diagram.labels})


def alexander_polynomial(diagram: KnotDiagram) -> LaurentPoly:
    """Normalized Alexander polynomial: symmetric and 1 at t = 1."""
    if not diagram.crossings:
        return LaurentPoly.one(1)
    find, arcs = _wirtinger_arcs(diagram)
    if len(arcs) != len(diagram.crossings):
        raise DiagramError("diagram is not a knot diagram "
                           "(%d arcs vs %d crossings)" % (len(arcs), len(diagram.crossings)))
    col = {a: i for i, a in enumerate(arcs)}
    t = sympy.Symbol("t")
    rows = []
    for (a, b, c, d), sign in zip(diagram.crossings, diagram.signs):
        over = find(b)
        under_in, under_out = find(a), find(c)
        row = [sympy.Integer(0)] * len(arcs)
        # relation x_out = x_over^e x_in x_over^-e, free derivatives
        # abelianized: e=+1 -> (over, in, out) = (1-t, t, -1);
        # e=-1 -> (t-1, 1, -t) after clearing the unit t
        if sign == 1:
            row[col[over]] += 1 - t
            row[col[under_in]] += t
            row[col[under_out]] += -1
        else:
            row[col[over]] += t - 1
            row[col[under_in]] += 1
            row[col[under_out]] += -t
        rows.append(row)
    minor = sympy.Matrix([r[:-1] for r in rows[:-1]])
    det = sympy.expand(minor.det() if minor.shape[0] else sympy.Integer(1))
    poly = sympy.Poly(sympy.together(det * t ** len(arcs)), t)
    coeffs = {}
    for (e,), c in poly.terms():
        coeffs[e] = Fraction(int(sympy.nsimplify(c)))
    if not coeffs:
        raise DiagramError("vanishing Alexander determinant (not a knot?)")
    exps = sorted(coeffs)
    span = exps[0] + exps[-1]
    if span % 2 != 0:
        raise DiagramError("asymmetric exponent span; inconsistent diagram")
    shift = span // 2
    shifted = {e - shift: c for e, c in coeffs.items()}
    at_one = sum(shifted.values())
    if at_one not in (1, -1):
        raise DiagramError("determinant at t=1 is %s, not a unit" % (at_one,))
    out = LaurentPoly(1, {(e,): c * at_one for e, c in shifted.items()})
    if out.involute() != out:
        raise DiagramError("normalized polynomial is not symmetric")
    return out


def alexander_second_derivative_at_one(delta: LaurentPoly) -> Fraction:
    return sum((c * e[0] * (e[0] - 1) for e, c in delta.terms.items()),
               Fraction(0))


def casson_surgery(s: SurgeryPresentation) -> Fraction:
    """Casson invariant of the 1/n surgery: (n/2) * Delta''(1), an integer."""
    delta = alexander_polynomial(s.knot)
    dd = alexander_second_derivative_at_one(delta)
    val = Fraction(s.n, 2) * dd
    if val.denominator != 1:
        raise DiagramError("surgery formula produced a non-integer: %s" % (val,))
    return val


def lambda_pi(lambda_value, basis):
    """(lambda/2) times the class of the identity-decorated theta graph."""
    from .diagrams import theta_graph
    if basis.degree != 2:
        raise DiagramError("lambda_pi needs a degree-2 basis")
    theta = theta_graph(basis.group)
    coords = basis.reduce_graph(theta)
    lam = Fraction(lambda_value)
    return [Fraction(lam, 2) * c for c in coords]
