"""Lattice links in the 3-torus: holonomy, linking numbers, pairings.

Loops are closed lattice paths (unit axis steps between integer points).
The ordinary linking number of disjoint closed loops in R^3 is computed
exactly: one loop is coned to a rationally perturbed apex and the signed
transversal intersections of the other loop with the cone triangles are
counted in Fraction arithmetic.  A floating-point Gauss-integral oracle
(solid angles of segment pairs) is included for cross-checking only.

The equivariant linking number of nullhomotopic loops sums the ordinary
linking numbers of one fixed lift against all lattice translates of the
other, weighted by the translation monomial.  Lift normalization: each
loop's lexicographically least vertex is translated to the origin cell;
changing the lift multiplies the result by a monomial, which is exposed
rather than hidden.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from . import groups as G


class LinkingError(ValueError):
    pass


class _Degenerate(Exception):
    pass


# ---------------------------------------------------------------------------
# small exact vector helpers
# ---------------------------------------------------------------------------

def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


# ---------------------------------------------------------------------------
# lattice loops
# ---------------------------------------------------------------------------

def _validate_loop(points):
    """A loop is a vertex list [p0, ..., pm] of integer points with unit
    axis steps and p_m - p_0 integral (the displacement; zero for
    nullhomotopic loops).  The closing vertex must be explicit."""
    pts = [tuple(int(x) for x in p) for p in points]
    if len(pts) < 2:
        raise LinkingError("loop needs at least one segment")
    for a, b in zip(pts, pts[1:]):
        step = _sub(b, a)
        if sorted(abs(x) for x in step) != [0, 0, 1]:
            raise LinkingError("non-unit lattice step %r -> %r" % (a, b))
    return pts


def displacement(points):
    pts = _validate_loop(points)
    return _sub(pts[-1], pts[0])


class LatticeLink:
    """Framed lattice link in the torus R^3 / (L Z)^3.

    The period L is the side length of the fundamental domain; the deck
    group is generated by the three translations by L, and t_i denotes
    the deck translation by L along axis i.  Unit-step integer loops can
    only be pairwise disjoint in the quotient when L > 1, so the period
    is part of the link data.  Loops are stored with explicit closure
    (last vertex = first vertex + displacement).
    """

    def __init__(self, loops, framings=None, period=4):
        self.period = int(period)
        if self.period < 1:
            raise LinkingError("period must be a positive integer")
        self.loops = [_validate_loop(l) for l in loops]
        if framings is None:
            framings = [0] * len(self.loops)
        self.framings = [int(f) for f in framings]
        if len(self.framings) != len(self.loops):
            raise LinkingError("one framing per loop required")
        self._check_disjoint_in_torus()

    def _check_disjoint_in_torus(self):
        # pairwise disjointness tested on half-integer refined points
        # reduced mod the period
        L = self.period
        occupied = []
        for pts in self.loops:
            cells = set()
            for a, b in zip(pts, pts[1:]):
                mid = tuple(Fraction(x + y, 2) % L for x, y in zip(a, b))
                cells.add(tuple(Fraction(x) % L for x in a))
                cells.add(mid)
            occupied.append(cells)
        for i in range(len(occupied)):
            for j in range(i + 1, len(occupied)):
                if occupied[i] & occupied[j]:
                    raise LinkingError("loops %d and %d meet in the torus" % (i, j))

    def n_components(self):
        return len(self.loops)


def holonomy_of_path(points, period=1):
    """Exponent vector (n1, n2, n3) of Hol: signed crossings of the dual
    planes {x_i = 1/2 mod L} for torus period L.

    The planes avoid all lattice vertices, and a unit step along axis i
    from x_i = a crosses one exactly when a = 0 mod L (for period 1,
    every step crosses, so the exponents equal the net displacement)."""
    L = int(period)
    pts = [tuple(int(x) for x in p) for p in points]
    counts = [0, 0, 0]
    for a, b in zip(pts, pts[1:]):
        step = _sub(b, a)
        for i in range(3):
            if step[i]:
                lo = min(a[i], b[i])
                if lo % L == 0:
                    counts[i] += step[i]
    return tuple(counts)


# ---------------------------------------------------------------------------
# exact linking number by cone-and-count
# ---------------------------------------------------------------------------

_PERTURBATIONS = [
    (Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(1, 97), Fraction(1, 89), Fraction(1, 83)),
    (Fraction(3, 101), Fraction(-2, 103), Fraction(5, 107)),
    (Fraction(-7, 109), Fraction(4, 113), Fraction(-3, 127)),
    (Fraction(11, 131), Fraction(9, 137), Fraction(13, 139)),
    (Fraction(-5, 149), Fraction(-8, 151), Fraction(7, 157)),
]


def _segments(pts):
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)
            if pts[i] != pts[i + 1]]


def _segment_triangle_sign(p0, p1, t0, t1, t2):
    """Signed transversal crossing of segment p0p1 through triangle
    t0t1t2 (+1 along the normal), 0 if none; _Degenerate on any
    boundary/tangency case."""
    e1 = _sub(t1, t0)
    e2 = _sub(t2, t0)
    n = _cross(e1, e2)
    if n == (0, 0, 0):
        raise _Degenerate("flat triangle")
    d = _sub(p1, p0)
    dn = _dot(n, d)
    offset = _dot(n, _sub(t0, p0))
    if dn == 0:
        if offset == 0:
            # In-plane segment.  The one case no apex perturbation can fix
            # is a segment collinear with the base edge t1t2 (that line is
            # apex-independent); if the segment misses the closed edge it
            # misses the whole triangle and contributes nothing.
            e = _sub(t2, t1)
            if _cross(d, e) == (0, 0, 0) and _cross(_sub(p0, t1), e) == (0, 0, 0):
                ee = _dot(e, e)
                s0 = Fraction(_dot(_sub(p0, t1), e), ee)
                s1 = Fraction(_dot(_sub(p1, t1), e), ee)
                if max(s0, s1) < 0 or min(s0, s1) > 1:
                    return 0
            raise _Degenerate("segment in triangle plane")
        return 0
    t = Fraction(offset, dn)
    if t < 0 or t > 1:
        return 0
    x = tuple(p + t * dd for p, dd in zip(p0, d))
    w = _sub(x, t0)
    nn = _dot(n, n)
    u = Fraction(_dot(_cross(w, e2), n), nn)
    v = Fraction(_dot(_cross(e1, w), n), nn)
    inside_closed = u >= 0 and v >= 0 and u + v <= 1
    if not inside_closed:
        return 0
    if t == 0 or t == 1 or u == 0 or v == 0 or u + v == 1:
        raise _Degenerate("boundary intersection")
    return 1 if dn > 0 else -1


def _check_disjoint_r3(a_pts, b_pts):
    def refined(pts):
        out = set()
        for p, q in zip(pts, pts[1:]):
            out.add(tuple(Fraction(x) for x in p))
            out.add(tuple(Fraction(x + y, 2) for x, y in zip(p, q)))
        out.add(tuple(Fraction(x) for x in pts[-1]))
        return out
    if refined(a_pts) & refined(b_pts):
        raise LinkingError("loops intersect in R^3")


def lk_integer(loop_a, loop_b):
    """Exact Gauss linking number of disjoint closed lattice loops in R^3.

    Cones loop_b to a perturbed interior apex and counts the signed
    crossings of loop_a through the cone; retries with fresh rational
    apex perturbations on any degeneracy.
    """
    a_pts = _validate_loop(loop_a)
    b_pts = _validate_loop(loop_b)
    if _sub(a_pts[-1], a_pts[0]) != (0, 0, 0) or _sub(b_pts[-1], b_pts[0]) != (0, 0, 0):
        raise LinkingError("lk_integer needs closed loops in R^3")
    _check_disjoint_r3(a_pts, b_pts)
    b_cycle = b_pts[:-1]
    m = len(b_cycle)
    centroid = tuple(Fraction(sum(p[i] for p in b_cycle), m) for i in range(3))
    segs = _segments(a_pts)
    for pert in _PERTURBATIONS:
        apex = _add(centroid, pert)
        total = 0
        try:
            for k in range(m):
                t1 = b_cycle[k]
                t2 = b_cycle[(k + 1) % m]
                for p0, p1 in segs:
                    total += _segment_triangle_sign(p0, p1, apex, t1, t2)
            return total
        except _Degenerate:
            continue
    raise LinkingError("degenerate configuration after perturbation retries")


def gauss_linking_float(loop_a, loop_b):
    """Floating-point Gauss linking integral (sum of solid angles of
    segment pairs).  Cross-check oracle only — never used for results."""

    def tri(a, b, c):
        num = _dot(a, _cross(b, c))
        den = 1.0 + _dot(a, b) + _dot(b, c) + _dot(c, a)
        return 2.0 * math.atan2(num, den)

    def unit(v):
        r = math.sqrt(_dot(v, v))
        return (v[0] / r, v[1] / r, v[2] / r)

    a_pts = [tuple(float(x) for x in p) for p in loop_a]
    b_pts = [tuple(float(x) for x in p) for p in loop_b]
    total = 0.0
    for p0, p1 in zip(a_pts, a_pts[1:]):
        if p0 == p1:
            continue
        for q0, q1 in zip(b_pts, b_pts[1:]):
            if q0 == q1:
                continue
            r1 = unit(_sub(q0, p0))
            r2 = unit(_sub(q0, p1))
            r3 = unit(_sub(q1, p1))
            r4 = unit(_sub(q1, p0))
            total += tri(r1, r2, r3) + tri(r1, r3, r4)
    return total / (4.0 * math.pi)


# ---------------------------------------------------------------------------
# equivariant linking
# ---------------------------------------------------------------------------

def normalized_lift(points, period):
    """Translate the loop so its lexicographically least vertex lands in
    the fundamental cell [0, L)^3; returns (lifted loop, deck shift)."""
    pts = _validate_loop(points)
    base = min(pts)
    shift = tuple((x % period) - x for x in base)
    return [_add(p, shift) for p in pts], shift


def lk_equivariant(link: LatticeLink, i, j, group=None, normalize_lifts=False):
    """Group-ring-valued linking number of components i and j.

    The loops as given are taken as the chosen lifts (the residual
    deck-translation ambiguity is thereby the caller's, made explicit);
    pass normalize_lifts=True to base both lifts in the fundamental
    cell first.  The coefficient of the monomial z is the ordinary
    linking number of lift_i with lift_j translated by -Lz, so
    pre-translating component j by one deck vector multiplies the
    result by that deck monomial.
    """
    group = group or G.FreeAbelian(3)
    if i == j:
        raise LinkingError("equivariant self-linking is not defined here")
    L = link.period
    a_pts = link.loops[i]
    b_pts = link.loops[j]
    for name, pts in (("first", a_pts), ("second", b_pts)):
        if _sub(pts[-1], pts[0]) != (0, 0, 0):
            raise LinkingError("%s component is not nullhomotopic" % name)
    if normalize_lifts:
        a_pts, _ = normalized_lift(a_pts, L)
        b_pts, _ = normalized_lift(b_pts, L)
    lo_a = [min(p[k] for p in a_pts) for k in range(3)]
    hi_a = [max(p[k] for p in a_pts) for k in range(3)]
    lo_b = [min(p[k] for p in b_pts) for k in range(3)]
    hi_b = [max(p[k] for p in b_pts) for k in range(3)]
    ranges = [range(-((hi_a[k] - lo_b[k]) // L + 1), (hi_b[k] - lo_a[k]) // L + 2)
              for k in range(3)]
    out = {}
    for z in itertools.product(*ranges):
        shifted = [_add(p, tuple(-L * x for x in z)) for p in b_pts]
        try:
            val = lk_integer(a_pts, shifted)
        except LinkingError:
            raise LinkingError("components %d and %d intersect for translate %r"
                               % (i, j, z))
        if val:
            out[group.normalize(z)] = Fraction(val)
    return out


def augmented_gauss_float(link: LatticeLink, i, j):
    """Floating-point diagnostic: Gauss-integral linking of component i
    with every overlapping deck translate of component j, summed.  This
    is the float counterpart of the augmentation of lk_equivariant."""
    L = link.period
    a_pts = link.loops[i]
    b_pts = link.loops[j]
    lo_a = [min(p[k] for p in a_pts) for k in range(3)]
    hi_a = [max(p[k] for p in a_pts) for k in range(3)]
    lo_b = [min(p[k] for p in b_pts) for k in range(3)]
    hi_b = [max(p[k] for p in b_pts) for k in range(3)]
    ranges = [range(-((hi_a[k] - lo_b[k]) // L + 1), (hi_b[k] - lo_a[k]) // L + 2)
              for k in range(3)]
    total = 0.0
    for z in itertools.product(*ranges):
        shifted = [_add(p, tuple(-L * x for x in z)) for p in b_pts]
        total += gauss_linking_float(a_pts, shifted)
    return total


def linking_matrix(link: LatticeLink, group=None):
    """Matrix of group-ring linking numbers; diagonal = framings."""
    group = group or G.FreeAbelian(3)
    n = link.n_components()
    mat = [[None] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = G.ring_monomial(group, group.identity(), link.framings[i])
    for i in range(n):
        for j in range(i + 1, n):
            val = lk_equivariant(link, i, j, group)
            mat[i][j] = val
            mat[j][i] = G.ring_involute(group, val)
    return mat


def is_pi_algebraically_split(link: LatticeLink, group=None):
    """True iff the linking matrix is diagonal with entries +-1."""
    group = group or G.FreeAbelian(3)
    mat = linking_matrix(link, group)
    n = link.n_components()
    one = G.ring_one(group)
    minus_one = G.ring_scale(one, -1)
    for i in range(n):
        for j in range(n):
            if i == j:
                if mat[i][j] != one and mat[i][j] != minus_one:
                    return False
            elif mat[i][j]:
                return False
    return True


# ---------------------------------------------------------------------------
# symbolic intersection pairings
# ---------------------------------------------------------------------------

class IntersectionTable:
    """Transversal intersection records with holonomy weights.

    Binary records are (label1, label2, weight); ternary records are
    (label1, label2, label3, weight); weights are group-ring elements.
    """

    def __init__(self, group, records):
        self.group = group
        self.binary = []
        self.ternary = []
        for rec in records:
            if len(rec) == 3:
                l1, l2, w = rec
                if not w:
                    raise LinkingError("zero weight record")
                self.binary.append((l1, l2, dict(w)))
            elif len(rec) == 4:
                l1, l2, l3, w = rec
                if not w:
                    raise LinkingError("zero weight record")
                self.ternary.append((l1, l2, l3, dict(w)))
            else:
                raise LinkingError("records have 2 or 3 labels plus a weight")

    def is_bar_closed(self):
        """True iff the binary records contain their own bar-transposes."""
        seen = {}
        for l1, l2, w in self.binary:
            key = (l1, l2)
            seen[key] = G.ring_add(seen.get(key, {}), w)
        for (l1, l2), w in seen.items():
            if seen.get((l2, l1), {}) != G.ring_involute(self.group, w):
                return False
        return True


def pairing(table: IntersectionTable, coeffs1, coeffs2, coeffs3=None):
    """Bilinear (or trilinear) extension of the intersection form.

    Coefficient vectors map cell labels to group-ring elements.  The
    binary form is sesquilinear in its first slot (bar on the first
    coefficient), which makes swap-plus-transpose equal the involution.
    """
    group = table.group
    out = {}
    if coeffs3 is None:
        for l1, l2, w in table.binary:
            c1 = coeffs1.get(l1)
            c2 = coeffs2.get(l2)
            if not c1 or not c2:
                continue
            term = G.ring_mul(group, G.ring_involute(group, c1),
                              G.ring_mul(group, c2, w))
            out = G.ring_add(out, term)
        return out
    for l1, l2, l3, w in table.ternary:
        c1 = coeffs1.get(l1)
        c2 = coeffs2.get(l2)
        c3 = coeffs3.get(l3)
        if not c1 or not c2 or not c3:
            continue
        term = G.ring_mul(group, G.ring_involute(group, c1),
                          G.ring_mul(group, c2, G.ring_mul(group, c3, w)))
        out = G.ring_add(out, term)
    return out


def lkhat_from_propagator(table: IntersectionTable, C, g, c_label, cprime_label):
    """Propagator-corrected linking: pair the chain g(c) against c'.

    Precondition (checked): the boundary of g(c) is c itself, i.e. the
    degree-1 generator survives the propagator round trip.
    """
    from . import trace as _trace
    field = C.field
    d_src = next((d for d in range(C.top_degree + 1) if c_label in C.basis[d]), None)
    if d_src is None:
        raise LinkingError("unknown generator %r" % (c_label,))
    j = C.basis[d_src].index(c_label)
    gm = g.matrix(C, d_src)
    chain = [gm[i][j] for i in range(C.dim(d_src + 1))]
    bd = C.matrix(d_src + 1)
    back = [sum((bd[i][k] * chain[k] for k in range(len(chain))), field.zero())
            for i in range(C.dim(d_src))]
    expect = [field.one() if i == j else field.zero() for i in range(C.dim(d_src))]
    if any(not field.is_zero(x - y) for x, y in zip(back, expect)):
        raise LinkingError("boundary of g(%s) is not %s" % (c_label, c_label))
    coeffs1 = {}
    for i, label in enumerate(C.basis[d_src + 1]):
        if not field.is_zero(chain[i]):
            coeffs1[label] = _trace.ring_from_field(table.group, field, chain[i])
    coeffs2 = {cprime_label: G.ring_one(table.group)}
    return pairing(table, coeffs1, coeffs2)
