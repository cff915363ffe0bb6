"""Contraction of C-graphs against propagators and series assembly.

A C-graph is a trivalent graph some of whose edges are "separated": such
an edge names a generator pair (p, q) of an auxiliary based complex, and
contracting it multiplies the edge decoration by minus the propagator
entry g_{qp}.  Moduli counts (per-edge group-ring factors) are inputs,
supplied by a producer such as the surgery module; they are never
computed from smooth data here.  Opaque correction constants (anomaly /
local counts) are carried through linearly as formal symbols and
reported separately — they cancel in the differences the acceptance
suite takes.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from . import groups as G
from .diagrams import expand_decorated, vec_add, vec_scale, vector_of
from .ring import CyclotomicField, LaurentRing, RatFunField


class TraceError(ValueError):
    pass


def ring_from_field(group, field, x):
    """Convert a coefficient-field element to a group-ring element.

    Cyclotomic residues map to the cyclic group ring by exponent; Laurent
    polynomials map to the free-abelian group ring term by term.  Honest
    rational functions have no group-ring image and are rejected.
    """
    if isinstance(field, CyclotomicField):
        if group.tag != "Zp:%d" % field.p:
            raise TraceError("field Q[zeta_%d] needs the Z_%d group" % (field.p, field.p))
        return {(k,): c for k, c in enumerate(x.coeffs) if c != 0}
    if isinstance(field, (LaurentRing, RatFunField)):
        if isinstance(field, RatFunField):
            if not x.is_poly():
                raise TraceError("propagator entry is not polynomial: %s" % field.fmt(x))
            x = x.as_poly()
        if group.rank != field.arity:
            raise TraceError("group rank %d vs field arity %d" % (group.rank, field.arity))
        return dict(x.terms)
    raise TraceError("unsupported coefficient field %r" % (field,))


COMPACT = ("compact",)


def separated(complex_label, p_label, q_label, deg=1):
    """Edge state naming the propagator entry g_{qp} of a complex."""
    return ("separated", complex_label, p_label, q_label, int(deg))


class CGraph:
    """Trivalent graph with per-edge states (compact or separated)."""

    def __init__(self, base, states=None):
        self.base = base
        if states is None:
            states = [COMPACT] * base.n_edges
        self.states = tuple(tuple(s) for s in states)
        if len(self.states) != base.n_edges:
            raise TraceError("one state per edge required")
        for s in self.states:
            if s[0] not in ("compact", "separated"):
                raise TraceError("unknown edge state %r" % (s,))

    def degree_vector(self):
        return tuple(1 if s[0] == "compact" else s[4] for s in self.states)

    def is_primitive(self):
        return self.base.is_connected()

    def has_separated_edge(self):
        return any(s[0] == "separated" for s in self.states)


class ModuliCount:
    """Per-edge group-ring factors of a counted moduli contribution.

    ``local_symbol`` optionally names an opaque companion count used by
    the hatted correction of compact-only components.
    """

    def __init__(self, edge_factors, local_symbol=None):
        self.edge_factors = [dict(f) for f in edge_factors]
        self.local_symbol = local_symbol


class CorrectionData:
    """Opaque correction constants for the hatted series.

    sign_X: signature of the bounding 4-manifold; a_coeffs: rational
    coefficient per canonical graph (the combination of these classes is
    recorded formally as the degree-2n constant, never evaluated);
    formal: extra opaque symbols passed through to the output.
    """

    def __init__(self, sign_X=0, a_coeffs=None, formal=None):
        self.sign_X = int(sign_X)
        self.a_coeffs = dict(a_coeffs or {})
        self.formal = dict(formal or {})


class ZResult:
    """Coordinates in the graph-space basis plus opaque formal symbols."""

    def __init__(self, coordinates, formal=None):
        self.coordinates = list(coordinates)
        self.formal = {k: v for k, v in (formal or {}).items() if v != 0}

    def __eq__(self, other):
        return isinstance(other, ZResult) and \
            self.coordinates == other.coordinates and self.formal == other.formal

    def __repr__(self):
        return "ZResult(%r, %r)" % (self.coordinates, self.formal)


def _contracted_vector(cg, count, propagators, group):
    """Graph vector of one (CGraph, ModuliCount) term after contraction."""
    base = cg.base
    if len(count.edge_factors) != base.n_edges:
        raise TraceError("one moduli factor per edge required")
    ring_edges = []
    for i, (t, h, d) in enumerate(base.edges):
        dec = G.ring_mul(group, G.ring_monomial(group, d), count.edge_factors[i])
        state = cg.states[i]
        if state[0] == "separated":
            _, label, p_label, q_label, _deg = state
            if label not in propagators:
                raise TraceError("no propagator for complex label %r" % (label,))
            C, g = propagators[label]
            d_src = next((dd for dd in range(C.top_degree + 1)
                          if p_label in C.basis[dd]), None)
            if d_src is None or d_src + 1 > C.top_degree or \
                    q_label not in C.basis[d_src + 1]:
                raise TraceError("generators %r -> %r not found in complex %r"
                                 % (p_label, q_label, label))
            entry = g.entry(C, d_src, q_label, p_label)
            factor = G.ring_scale(ring_from_field(group, C.field, entry), -1)
            dec = G.ring_mul(group, factor, dec)
        ring_edges.append((t, h, dec))
    return expand_decorated(group, base.cyclic, ring_edges)


def trace_contract(terms, propagators, basis):
    """Reduce the contracted sum of (CGraph, ModuliCount) terms.

    Each separated edge contributes the factor -g_{qp}; white vertices
    are implicitly merged since the C-graph stores its underlying
    trivalent graph.  Returns coordinates in the basis.
    """
    group = basis.group
    total = {}
    for cg, count in terms:
        total = vec_add(total, _contracted_vector(cg, count, propagators, group))
    return basis.reduce(total)


def assemble_z(terms, propagators, basis):
    """The primitive (connected, degree-(1,...,1)) part of the series."""
    for cg, _ in terms:
        if not cg.is_primitive():
            raise TraceError("assemble_z accepts primitive C-graphs only")
        if any(d != 1 for d in cg.degree_vector()):
            raise TraceError("assemble_z needs degree vector (1,...,1)")
    return trace_contract(terms, propagators, basis)


def assemble_Z(terms, propagators, correction, basis):
    """Prefactored assembly with the hatted correction.

    The exact prefactor 1/(2^{6n}(2n)!(3n)!) multiplies the contracted
    sum.  Components with no separated edge receive I - local + a*sign_X:
    the a-part adds sign_X * a_coeff(base graph) times the graph class,
    the local part is subtracted as an opaque formal symbol.
    """
    nv = basis.degree
    n = nv // 2
    prefactor = Fraction(1, 2 ** (6 * n) * factorial(2 * n) * factorial(3 * n))
    group = basis.group
    total = {}
    formal = dict(correction.formal)
    for cg, count in terms:
        total = vec_add(total, _contracted_vector(cg, count, propagators, group))
        if not cg.has_separated_edge():
            if correction.sign_X and correction.a_coeffs:
                a = correction.a_coeffs.get(cg.base, Fraction(0))
                if a:
                    total = vec_add(total, vector_of(cg.base, a * correction.sign_X))
            if count.local_symbol is not None:
                formal[count.local_symbol] = \
                    formal.get(count.local_symbol, Fraction(0)) - prefactor
    coords = basis.reduce(vec_scale(total, prefactor))
    return ZResult(coords, formal)


def sum_over_signs(evaluator, n):
    """Exact sum of evaluator(eps) over all sign vectors eps in {+-1}^{3n}.

    The evaluator returns either a coordinate list or a ZResult; results
    are summed componentwise.
    """
    total_coords = None
    total_formal = {}
    saw_result = False
    for eps in itertools.product((1, -1), repeat=3 * n):
        out = evaluator(eps)
        if isinstance(out, ZResult):
            saw_result = True
            coords, formal = out.coordinates, out.formal
        else:
            coords, formal = list(out), {}
        if total_coords is None:
            total_coords = list(coords)
        else:
            if len(coords) != len(total_coords):
                raise TraceError("evaluator returned inconsistent lengths")
            total_coords = [x + y for x, y in zip(total_coords, coords)]
        for k, v in formal.items():
            total_formal[k] = total_formal.get(k, Fraction(0)) + v
    if saw_result:
        return ZResult(total_coords, total_formal)
    return total_coords
