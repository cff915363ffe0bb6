"""Decorated trivalent graphs and the quotient space they span.

A graph is vertex-oriented (cyclic order of the three half-edges at each
vertex), edge-oriented, with a group element decorating each edge.  The
quotient space of degree-n graphs modulo the antisymmetry (AS), IHX,
orientation-reversal and holonomy relations is computed by exact Gaussian
elimination over Q; linearity is structural (decorations are expanded to
monomial combinations before reduction).

Half-edge convention: half-edge ids are 0 .. 3*nv - 1; ``cyclic[v]`` lists
the three half-edges owned by vertex v in cyclic order; each edge is a
(tail_halfedge, head_halfedge, decoration) triple.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from . import groups as G


class GraphError(ValueError):
    pass


class OutOfSupport(ValueError):
    pass


class ResourceGuard(RuntimeError):
    """Enumeration exceeded its configured budget."""


class MonomialGraph:
    """Trivalent graph with one group element per edge.  Immutable."""

    __slots__ = ("group", "cyclic", "edges", "_key", "_hash")

    def __init__(self, group, cyclic, edges):
        self.group = group
        self.cyclic = tuple(tuple(int(h) for h in trip) for trip in cyclic)
        self.edges = tuple((int(t), int(h), group.normalize(d)) for t, h, d in edges)
        nv = len(self.cyclic)
        if nv % 2 != 0:
            raise GraphError("trivalent graphs have an even number of vertices")
        owned = [h for trip in self.cyclic for h in trip]
        if any(len(t) != 3 for t in self.cyclic):
            raise GraphError("each vertex owns exactly 3 half-edges")
        if sorted(owned) != list(range(3 * nv)):
            raise GraphError("half-edge ids must partition 0..%d" % (3 * nv - 1))
        ends = [h for t, h2, _ in self.edges for h in (t, h2)]
        if sorted(ends) != list(range(3 * nv)):
            raise GraphError("edges must form a perfect matching of half-edges")
        self._key = (self.cyclic, self.edges)
        self._hash = hash((self.group, self._key))

    @property
    def degree(self):
        return len(self.cyclic)

    @property
    def n_edges(self):
        return len(self.edges)

    def vertex_of(self, halfedge):
        return halfedge // 3 if self.cyclic == _standard_cyclic(self.degree) \
            else self._vertex_lookup()[halfedge]

    def _vertex_lookup(self):
        return {h: v for v, trip in enumerate(self.cyclic) for h in trip}

    def decorations(self):
        return tuple(d for _, _, d in self.edges)

    def with_decorations(self, decs):
        return MonomialGraph(self.group, self.cyclic,
                             [(t, h, d) for (t, h, _), d in zip(self.edges, decs)])

    def has_loop(self):
        look = self._vertex_lookup()
        return any(look[t] == look[h] for t, h, _ in self.edges)

    def is_connected(self):
        look = self._vertex_lookup()
        nv = self.degree
        adj = {v: set() for v in range(nv)}
        for t, h, _ in self.edges:
            adj[look[t]].add(look[h])
            adj[look[h]].add(look[t])
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == nv

    def __eq__(self, other):
        return isinstance(other, MonomialGraph) and \
            self.group == other.group and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "MonomialGraph(%r, %r)" % (self.cyclic, self.edges)


def _standard_cyclic(nv):
    return tuple((3 * v, 3 * v + 1, 3 * v + 2) for v in range(nv))


def _orderings_with_parity(trip):
    a, b, c = trip
    return [((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
            ((a, c, b), -1), ((c, b, a), -1), ((b, a, c), -1)]


_CANON_CACHE = {}


def canonical_form(g: MonomialGraph):
    """Canonical representative and AS sign.

    Returns (rep, s) with [g] = s * [rep]: s is the parity of the vertex
    half-edge reorderings applied (edge reversals bar the decoration and
    carry no sign).  Among relabelings reaching the minimal encoding, a
    parity +1 relabeling is preferred; a graph reaching its own canonical
    form with both parities has an odd automorphism (it dies by AS, which
    the relation rows detect).
    """
    cache_key = (g.group, g._key)
    hit = _CANON_CACHE.get(cache_key)
    if hit is not None:
        return hit
    nv = g.degree
    group = g.group
    per_vertex = [_orderings_with_parity(trip) for trip in g.cyclic]
    best = None
    best_signs = set()
    for sigma in itertools.permutations(range(nv)):
        for choice in itertools.product(*per_vertex):
            hemap = {}
            parity = 1
            for v, (ordering, par) in enumerate(choice):
                parity *= par
                base = 3 * sigma[v]
                for pos, h in enumerate(ordering):
                    hemap[h] = base + pos
            enc = []
            for t, h, d in g.edges:
                nt, nh = hemap[t], hemap[h]
                if nt <= nh:
                    enc.append((nt, nh, d))
                else:
                    enc.append((nh, nt, group.inv(d)))
            enc = tuple(sorted(enc))
            if best is None or enc < best:
                best = enc
                best_signs = {parity}
            elif enc == best:
                best_signs.add(parity)
    sign = 1 if 1 in best_signs else -1
    rep = MonomialGraph(group, _standard_cyclic(nv), best)
    result = (rep, sign)
    _CANON_CACHE[cache_key] = result
    if rep._key != g._key:
        # seed the cache for the representative itself
        _CANON_CACHE[(group, rep._key)] = (rep, 1)
    return result


# ---------------------------------------------------------------------------
# Linear combinations of canonical monomial graphs
# ---------------------------------------------------------------------------

def vector_of(g: MonomialGraph, coeff=1):
    rep, s = canonical_form(g)
    c = Fraction(coeff) * s
    return {rep: c} if c else {}


def vec_add(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, Fraction(0)) + c
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(a, c):
    c = Fraction(c)
    if c == 0:
        return {}
    return {k: x * c for k, x in a.items()}


def expand_decorated(group, cyclic, edges_with_ring_decorations):
    """Multilinear expansion of group-ring decorations into monomial graphs."""
    edges = list(edges_with_ring_decorations)
    out = {}
    choices = []
    for t, h, ring_el in edges:
        if not ring_el:
            return {}
        choices.append([(t, h, el, c) for el, c in sorted(ring_el.items())])
    for combo in itertools.product(*choices):
        coeff = Fraction(1)
        mono_edges = []
        for t, h, el, c in combo:
            coeff *= c
            mono_edges.append((t, h, el))
        g = MonomialGraph(group, cyclic, mono_edges)
        out = vec_add(out, vector_of(g, coeff))
    return out


# ---------------------------------------------------------------------------
# Elementary moves (used to generate relation rows)
# ---------------------------------------------------------------------------

def flip_vertex(g: MonomialGraph, v):
    """Transpose two half-edges at v: reverses the vertex orientation."""
    cyclic = list(g.cyclic)
    a, b, c = cyclic[v]
    cyclic[v] = (a, c, b)
    return MonomialGraph(g.group, cyclic, g.edges)


def reverse_edge(g: MonomialGraph, i):
    """Reverse edge i and bar its decoration."""
    edges = list(g.edges)
    t, h, d = edges[i]
    edges[i] = (h, t, g.group.inv(d))
    return MonomialGraph(g.group, g.cyclic, edges)


def holonomy_relabel(g: MonomialGraph, v, gen):
    """Basepoint-lift change at v: outgoing edges pick up gen^-1 on the
    left, incoming edges pick up gen on the right."""
    group = g.group
    look = g._vertex_lookup()
    inv = group.inv(gen)
    edges = []
    for t, h, d in g.edges:
        if look[t] == v:
            d = group.mul(inv, d)
        if look[h] == v:
            d = group.mul(d, gen)
        edges.append((t, h, d))
    return MonomialGraph(group, g.cyclic, edges)


def ihx_triple(g: MonomialGraph, i):
    """The I, H, X graphs at non-loop edge i (decoration must be identity).

    With the edge oriented u -> v, half-edges (e, a1, a2) at u and
    (f, b1, b2) at v in cyclic order:

        I: u = (e, a1, a2), v = (f, b1, b2)
        H: u = (e, a1, b1), v = (f, a2, b2)
        X: u = (e, a1, b2), v = (f, a2, b1)

    Returns None when the edge is a loop or carries a nontrivial decoration.
    """
    t, h, d = g.edges[i]
    if d != g.group.identity():
        return None
    look = g._vertex_lookup()
    u, v = look[t], look[h]
    if u == v:
        return None

    def rotated(trip, first):
        k = trip.index(first)
        return (trip[k], trip[(k + 1) % 3], trip[(k + 2) % 3])

    e, a1, a2 = rotated(g.cyclic[u], t)
    f, b1, b2 = rotated(g.cyclic[v], h)

    def rebuild(u_trip, v_trip):
        cyclic = list(g.cyclic)
        cyclic[u] = u_trip
        cyclic[v] = v_trip
        return MonomialGraph(g.group, cyclic, g.edges)

    gi = rebuild((e, a1, a2), (f, b1, b2))
    gh = rebuild((e, a1, b1), (f, a2, b2))
    gx = rebuild((e, a1, b2), (f, a2, b1))
    return gi, gh, gx


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

def automorphism_counts(g: MonomialGraph):
    """(|Aut|, |Aut_e|, |Aut_v|) of the underlying multigraph.

    Brute force over vertex permutations; half-edge bijections compatible
    with a vertex permutation are counted exactly (parallel edges permute,
    loops additionally flip).
    """
    look = g._vertex_lookup()
    nv = g.degree
    nonloop = {}
    loops = {}
    for t, h, _ in g.edges:
        u, v = look[t], look[h]
        if u == v:
            loops[u] = loops.get(u, 0) + 1
        else:
            key = (min(u, v), max(u, v))
            nonloop[key] = nonloop.get(key, 0) + 1

    def compatible_count(sigma):
        count = 1
        for (u, v), m in nonloop.items():
            su, sv = sigma[u], sigma[v]
            key = (min(su, sv), max(su, sv))
            if nonloop.get(key, 0) != m:
                return 0
            count *= factorial(m)
        for u, m in loops.items():
            if loops.get(sigma[u], 0) != m:
                return 0
            count *= factorial(m) * 2 ** m
        return count

    aut_total = 0
    aut_v = 0
    aut_e = 0
    for sigma in itertools.permutations(range(nv)):
        c = compatible_count(sigma)
        if c:
            aut_total += c
            aut_v += 1
            if all(sigma[i] == i for i in range(nv)):
                aut_e = c
    return aut_total, aut_e, aut_v


def labeling_count(g: MonomialGraph):
    """2^(3n) (2n)! (3n)! / |Aut|, the number of edge-oriented labellings."""
    nv = g.degree
    n = nv // 2
    total = 2 ** (3 * n) * factorial(2 * n) * factorial(3 * n)
    aut, _, _ = automorphism_counts(g)
    if total % aut != 0:
        raise GraphError("automorphism count %d does not divide %d" % (aut, total))
    return total // aut


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _perfect_matchings(items):
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in _perfect_matchings(rest):
            yield [(first, items[k])] + m


def trivalent_graphs(degree, group=None, connected=None):
    """Canonical representatives of all trivalent multigraphs on `degree`
    vertices (identity decorations)."""
    if degree % 2 != 0 or degree <= 0:
        raise GraphError("degree must be a positive even integer")
    group = group or G.TrivialGroup()
    # With identity decorations the canonical form depends only on the
    # underlying multigraph, so dedupe matchings by a cheap multigraph
    # invariant before running the expensive canonicalization.
    classes = {}
    for matching in _perfect_matchings(list(range(3 * degree))):
        pairs = [(t // 3, h // 3) for t, h in matching]
        inv = min(
            tuple(sorted((min(s[u], s[v]), max(s[u], s[v])) for u, v in pairs))
            for s in itertools.permutations(range(degree)))
        classes.setdefault(inv, matching)
    seen = {}
    e = group.identity()
    for matching in classes.values():
        g = MonomialGraph(group, _standard_cyclic(degree),
                          [(t, h, e) for t, h in matching])
        rep, _ = canonical_form(g)
        seen.setdefault(rep._key, rep)
    out = [seen[k] for k in sorted(seen)]
    if connected is True:
        out = [g for g in out if g.is_connected()]
    elif connected is False:
        out = [g for g in out if not g.is_connected()]
    return out


def decorated_generators(degree, group, support_B, connected=None,
                         max_generators=None):
    """Canonical monomial graphs of the given degree with decorations in
    the support box, deduplicated up to isomorphism."""
    bases = trivalent_graphs(degree, group, connected=connected)
    support = group.support(support_B)
    seen = {}
    for base in bases:
        m = base.n_edges
        for decs in itertools.product(support, repeat=m):
            g = base.with_decorations(decs)
            rep, _ = canonical_form(g)
            seen.setdefault(rep._key, rep)
            if max_generators is not None and len(seen) > max_generators:
                raise ResourceGuard("generator cap %d exceeded" % max_generators)
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# Relations and quotient basis
# ---------------------------------------------------------------------------

def relation_generators(gens, group, support_B, diagnostics=None):
    """Relation rows (as graph vectors) spanned over the generator list.

    Emits AS at every vertex, IHX at every identity-decorated non-loop
    edge, orientation reversal at every edge, and holonomy at every
    (vertex, group generator) pair.  Holonomy rows whose relabeled
    decorations leave the support box are skipped and counted.
    """
    rows = []
    skipped = 0
    for g in gens:
        for v in range(g.degree):
            rows.append(vec_add(vector_of(g), vector_of(flip_vertex(g, v))))
        for i in range(g.n_edges):
            rows.append(vec_add(vector_of(g), vec_scale(vector_of(reverse_edge(g, i)), -1)))
            triple = ihx_triple(g, i)
            if triple is not None:
                gi, gh, gx = triple
                row = vec_add(vector_of(gi), vec_scale(vector_of(gh), -1))
                row = vec_add(row, vector_of(gx))
                rows.append(row)
        for v in range(g.degree):
            for gen in group.generators():
                g2 = holonomy_relabel(g, v, gen)
                if all(group.in_support(d, support_B) for d in g2.decorations()):
                    rows.append(vec_add(vector_of(g), vec_scale(vector_of(g2), -1)))
                else:
                    skipped += 1
    if diagnostics is not None:
        diagnostics["relations_emitted"] = len(rows)
        diagnostics["holonomy_rows_skipped"] = skipped
    return rows


class GraphSpaceBasis:
    """Reduced basis of the quotient of the free space on `gens` by the
    row span of the relations."""

    def __init__(self, degree, group, support_B, gens, pivots, diagnostics):
        self.degree = degree
        self.group = group
        self.support_B = support_B
        self.gens = gens
        self.gen_index = {g: i for i, g in enumerate(gens)}
        self.pivots = pivots  # {col: sparse row dict, min col = pivot, coeff 1}
        self.basis = [g for i, g in enumerate(gens) if i not in pivots]
        self.basis_cols = [i for i in range(len(gens)) if i not in pivots]
        self.diagnostics = diagnostics

    @property
    def dimension(self):
        return len(self.basis)

    def _to_coords(self, vec):
        out = {}
        for g, c in vec.items():
            i = self.gen_index.get(g)
            if i is None:
                raise OutOfSupport("graph outside the basis support: %r" % (g,))
            out[i] = out.get(i, Fraction(0)) + c
        return {i: c for i, c in out.items() if c != 0}

    def reduce(self, vec):
        """Coordinates of a graph vector in the quotient basis."""
        coords = self._to_coords(vec)
        while True:
            piv_cols = sorted(c for c in coords if c in self.pivots)
            if not piv_cols:
                break
            c = piv_cols[0]
            f = coords.pop(c)
            for col, x in self.pivots[c].items():
                if col == c:
                    continue
                s = coords.get(col, Fraction(0)) - f * x
                if s == 0:
                    coords.pop(col, None)
                else:
                    coords[col] = s
        return [coords.get(i, Fraction(0)) for i in self.basis_cols]

    def reduce_graph(self, g, coeff=1):
        return self.reduce(vector_of(g, coeff))

    def class_is_zero(self, vec):
        return all(c == 0 for c in self.reduce(vec))


def _eliminate(rows, gen_index):
    pivots = {}
    for row_vec in rows:
        row = {}
        for g, c in row_vec.items():
            i = gen_index[g]
            row[i] = row.get(i, Fraction(0)) + c
        row = {i: c for i, c in row.items() if c != 0}
        while row:
            c = min(row)
            if c in pivots:
                f = row.pop(c)
                for col, x in pivots[c].items():
                    if col == c:
                        continue
                    s = row.get(col, Fraction(0)) - f * x
                    if s == 0:
                        row.pop(col, None)
                    else:
                        row[col] = s
            else:
                inv = Fraction(1) / row[c]
                pivots[c] = {col: x * inv for col, x in row.items()}
                break
    return pivots


def quotient_basis(degree, group, support_B, connected=None,
                   generator_order="sorted", max_generators=None):
    """Exact elimination of the relation span; deterministic under a fixed
    generator order.  `generator_order` in {"sorted", "reversed"} exists so
    stability of the dimension across orderings can be tested."""
    gens = decorated_generators(degree, group, support_B, connected=connected,
                                max_generators=max_generators)
    if generator_order == "reversed":
        gens = list(reversed(gens))
    elif generator_order != "sorted":
        raise GraphError("unknown generator order %r" % (generator_order,))
    diagnostics = {"n_generators": len(gens)}
    rows = relation_generators(gens, group, support_B, diagnostics)
    gen_index = {g: i for i, g in enumerate(gens)}
    pivots = _eliminate(rows, gen_index)
    diagnostics["dimension"] = len(gens) - len(pivots)
    return GraphSpaceBasis(degree, group, support_B, gens, pivots, diagnostics)


# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------

def theta_graph(group=None, decorations=None):
    """Two vertices joined by three parallel edges."""
    group = group or G.TrivialGroup()
    e = group.identity()
    decs = list(decorations) if decorations is not None else [e, e, e]
    if len(decs) != 3:
        raise GraphError("theta graph has 3 edges")
    edges = [(0, 3, decs[0]), (1, 4, decs[1]), (2, 5, decs[2])]
    return MonomialGraph(group, _standard_cyclic(2), edges)


def dumbbell_graph(group=None, decorations=None):
    """Two vertices, a loop at each, joined by a middle edge."""
    group = group or G.TrivialGroup()
    e = group.identity()
    decs = list(decorations) if decorations is not None else [e, e, e]
    if len(decs) != 3:
        raise GraphError("dumbbell graph has 3 edges")
    edges = [(0, 1, decs[0]), (2, 3, decs[1]), (4, 5, decs[2])]
    return MonomialGraph(group, _standard_cyclic(2), edges)


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------

def graph_to_json(g: MonomialGraph) -> dict:
    return {
        "group": g.group.tag,
        "vertices": g.degree,
        "cyclic": [list(t) for t in g.cyclic],
        "edges": [[t, h] for t, h, _ in g.edges],
        "decorations": [g.group.format_ring({d: Fraction(1)}) for d in g.decorations()],
    }


def graph_from_json(data) -> MonomialGraph:
    group = G.group_from_tag(data["group"])
    decs = []
    for s in data["decorations"]:
        el = group.parse_ring(s)
        if len(el) != 1 or list(el.values())[0] != 1:
            raise GraphError("monomial decoration expected, got %r" % (s,))
        decs.append(next(iter(el)))
    edges = [(t, h, d) for (t, h), d in zip(data["edges"], decs)]
    return MonomialGraph(group, data["cyclic"], edges)


def vector_from_json(data):
    """{"terms": [{"coeff": str, "graph": {...}}, ...]} -> graph vector."""
    out = {}
    for term in data["terms"]:
        g = graph_from_json(term["graph"])
        out = vec_add(out, vector_of(g, Fraction(term.get("coeff", "1"))))
    return out
