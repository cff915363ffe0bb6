"""Based free chain complexes over a coefficient field.

A complex is a finite list of based free modules C_0, ..., C_D with
boundary matrices d_d : C_d -> C_{d-1}.  A combinatorial propagator is a
degree +1 endomorphism g with d g + g d = 1; for an acyclic complex over a
field one always exists, and we pick a canonical one deterministically
(reduced-row-echelon solve, free variables zero).

Builders are included for the lens-space complex over Q[zeta_p]

    L^{x} --(1 - zeta^qbar)--> L^{y} --0--> L^{z} --(1 - zeta)--> L^{w}

and for the Koszul complex of (t1 - 1, t2 - 1, t3 - 1) over Q(Lambda),
the desk model of the acyclic twisted complex of the 3-torus.
"""

from __future__ import annotations

import json
from math import gcd

from . import linalg
from .ring import CyclotomicField, RatFunField


class ComplexError(ValueError):
    pass


class NotAcyclic(ArithmeticError):
    pass


class BasedChainComplex:
    """Finite based free complex over a coefficient field.

    basis[d]   ordered list of generator labels in degree d (0 <= d <= D)
    boundary[d] matrix of d_d : C_d -> C_{d-1}, shape dim(d-1) x dim(d),
                for 1 <= d <= D.
    """

    def __init__(self, field, basis, boundary):
        self.field = field
        self.basis = [list(b) for b in basis]
        self.boundary = {int(d): [row[:] for row in m] for d, m in boundary.items()}
        labels = [l for b in self.basis for l in b]
        if len(set(labels)) != len(labels):
            raise ComplexError("duplicate generator labels")
        for d in range(1, len(self.basis)):
            m = self.boundary.get(d, [])
            if self.dim(d) and self.dim(d - 1):
                if len(m) != self.dim(d - 1) or any(len(r) != self.dim(d) for r in m):
                    raise ComplexError("boundary matrix shape mismatch in degree %d" % d)

    @property
    def top_degree(self):
        return len(self.basis) - 1

    def dim(self, d):
        if 0 <= d <= self.top_degree:
            return len(self.basis[d])
        return 0

    def matrix(self, d):
        """d_d as a dense matrix (empty-dimension safe)."""
        if d < 1 or d > self.top_degree:
            return []
        m = self.boundary.get(d)
        if m is None:
            m = linalg.zeros(self.field, self.dim(d - 1), self.dim(d))
        return m


def verify_boundary(C: BasedChainComplex) -> bool:
    """True iff d o d = 0 in every degree."""
    f = C.field
    for d in range(2, C.top_degree + 1):
        if C.dim(d) == 0 or C.dim(d - 2) == 0:
            continue
        prod = linalg.mat_mul(f, C.matrix(d - 1), C.matrix(d))
        if not linalg.mat_eq(f, prod, linalg.zeros(f, C.dim(d - 2), C.dim(d))):
            return False
    return True


def is_acyclic(C: BasedChainComplex) -> bool:
    """Rank test: rank d_d + rank d_{d+1} = dim C_d for all d."""
    f = C.field
    for d in range(0, C.top_degree + 1):
        r_out = linalg.rank(f, C.matrix(d)) if d >= 1 else 0
        r_in = linalg.rank(f, C.matrix(d + 1)) if d + 1 <= C.top_degree else 0
        if r_out + r_in != C.dim(d):
            return False
    return True


class Propagator:
    """Degree +1 map g with maps[d] : C_d -> C_{d+1} (shape dim(d+1) x dim(d))."""

    def __init__(self, maps):
        self.maps = {int(d): [row[:] for row in m] for d, m in maps.items()}

    def matrix(self, C, d):
        m = self.maps.get(d)
        if m is None:
            m = linalg.zeros(C.field, C.dim(d + 1), C.dim(d))
        return m

    def entry(self, C, d, target_label, source_label):
        """Coefficient of target (degree d+1) in g(source) (degree d)."""
        i = C.basis[d + 1].index(target_label)
        j = C.basis[d].index(source_label)
        return self.matrix(C, d)[i][j]


def verify_propagator(C: BasedChainComplex, g: Propagator) -> bool:
    f = C.field
    for d in range(0, C.top_degree + 1):
        n = C.dim(d)
        if n == 0:
            continue
        acc = linalg.zeros(f, n, n)
        if d + 1 <= C.top_degree and C.dim(d + 1):
            acc = linalg.mat_add(acc, linalg.mat_mul(f, C.matrix(d + 1), g.matrix(C, d)))
        if d >= 1 and C.dim(d - 1):
            acc = linalg.mat_add(acc, linalg.mat_mul(f, g.matrix(C, d - 1), C.matrix(d)))
        if not linalg.mat_eq(f, acc, linalg.identity(f, n)):
            return False
    return True


def _flatten_unknowns(C, shapes):
    """Index map for a block of unknown matrices; shapes: {key: (rows, cols)}."""
    index = {}
    n = 0
    for key in sorted(shapes):
        r, c = shapes[key]
        for i in range(r):
            for j in range(c):
                index[(key, i, j)] = n
                n += 1
    return index, n


def solve_propagator(C: BasedChainComplex) -> Propagator:
    """Canonical propagator: global linear solve, free variables zero."""
    f = C.field
    shapes = {d: (C.dim(d + 1), C.dim(d)) for d in range(C.top_degree)}
    index, nvars = _flatten_unknowns(C, shapes)
    rows = []
    rhs = []
    for d in range(0, C.top_degree + 1):
        n = C.dim(d)
        dn = C.matrix(d + 1) if d + 1 <= C.top_degree else []
        dd = C.matrix(d) if d >= 1 else []
        for i in range(n):
            for j in range(n):
                row = [f.zero()] * nvars
                # (d_{d+1} g_d)_{ij} = sum_k dn[i][k] g_d[k][j]
                if d in shapes:
                    for k in range(C.dim(d + 1)):
                        if dn and not f.is_zero(dn[i][k]):
                            row[index[(d, k, j)]] = row[index[(d, k, j)]] + dn[i][k]
                # (g_{d-1} d_d)_{ij} = sum_k g_{d-1}[i][k] dd[k][j]
                if d - 1 in shapes:
                    for k in range(C.dim(d - 1)):
                        if dd and not f.is_zero(dd[k][j]):
                            row[index[(d - 1, i, k)]] = row[index[(d - 1, i, k)]] + dd[k][j]
                rows.append(row)
                rhs.append(f.one() if i == j else f.zero())
    try:
        x = linalg.solve(f, rows, rhs)
    except linalg.NoSolution:
        raise NotAcyclic("no combinatorial propagator exists (complex not acyclic)")
    maps = {}
    for d, (r, c) in shapes.items():
        maps[d] = [[x[index[(d, i, j)]] for j in range(c)] for i in range(r)]
    g = Propagator(maps)
    assert verify_propagator(C, g)
    return g


class Homotopy:
    """Degree +2 map h with maps[d] : C_d -> C_{d+2}."""

    def __init__(self, maps):
        self.maps = {int(d): [row[:] for row in m] for d, m in maps.items()}

    def matrix(self, C, d):
        m = self.maps.get(d)
        if m is None:
            m = linalg.zeros(C.field, C.dim(d + 2), C.dim(d))
        return m


def propagator_homotopy(C: BasedChainComplex, g: Propagator, g2: Propagator) -> Homotopy:
    """Solves g2 - g = d h - h d for a degree-2 map h.

    Failure signals H_1(End(C)) != 0.
    """
    f = C.field
    shapes = {d: (C.dim(d + 2), C.dim(d)) for d in range(C.top_degree - 1)}
    index, nvars = _flatten_unknowns(C, shapes)
    rows = []
    rhs = []
    for d in range(0, C.top_degree + 1):
        # target block: C_d -> C_{d+1}
        nr, nc = C.dim(d + 1), C.dim(d)
        if nr == 0 or nc == 0:
            continue
        diff = linalg.mat_sub(g2.matrix(C, d), g.matrix(C, d))
        dn = C.matrix(d + 2) if d + 2 <= C.top_degree else []
        dd = C.matrix(d) if d >= 1 else []
        for i in range(nr):
            for j in range(nc):
                row = [f.zero()] * nvars
                # (d_{d+2} h_d)_{ij}
                if d in shapes:
                    for k in range(C.dim(d + 2)):
                        if dn and not f.is_zero(dn[i][k]):
                            row[index[(d, k, j)]] = row[index[(d, k, j)]] + dn[i][k]
                # -(h_{d-1} d_d)_{ij}
                if d - 1 in shapes:
                    for k in range(C.dim(d - 1)):
                        if dd and not f.is_zero(dd[k][j]):
                            row[index[(d - 1, i, k)]] = row[index[(d - 1, i, k)]] - dd[k][j]
                rows.append(row)
                rhs.append(diff[i][j])
    try:
        x = linalg.solve(f, rows, rhs)
    except linalg.NoSolution:
        raise linalg.NoSolution("no homotopy: H_1(End(C)) is nonzero")
    maps = {}
    for d, (r, c) in shapes.items():
        maps[d] = [[x[index[(d, i, j)]] for j in range(c)] for i in range(r)]
    return Homotopy(maps)


def verify_homotopy(C, g, g2, h) -> bool:
    f = C.field
    for d in range(0, C.top_degree + 1):
        nr, nc = C.dim(d + 1), C.dim(d)
        if nr == 0 or nc == 0:
            continue
        acc = linalg.zeros(f, nr, nc)
        if d + 2 <= C.top_degree and C.dim(d + 2):
            acc = linalg.mat_add(acc, linalg.mat_mul(f, C.matrix(d + 2), h.matrix(C, d)))
        if d >= 1 and C.dim(d - 1):
            acc = linalg.mat_sub(acc, linalg.mat_mul(f, h.matrix(C, d - 1), C.matrix(d)))
        diff = linalg.mat_sub(g2.matrix(C, d), g.matrix(C, d))
        if not linalg.mat_eq(f, acc, diff):
            return False
    return True


def end_complex_acyclic(C: BasedChainComplex) -> bool:
    """H_i(End(C)) = 0 for i = 0, 1, by exact rank computation.

    End(C)_k has basis {(d, i, j) : f maps generator j of C_d to generator
    i of C_{d+k}}; D(f) = d f - (-1)^k f d.
    """
    f = C.field
    D = C.top_degree

    def end_basis(k):
        out = []
        for d in range(0, D + 1):
            if 0 <= d + k <= D:
                for i in range(C.dim(d + k)):
                    for j in range(C.dim(d)):
                        out.append((d, i, j))
        return out

    def differential(k):
        """Matrix of D : End_k -> End_{k-1}."""
        src = end_basis(k)
        tgt = end_basis(k - 1)
        tgt_index = {b: n for n, b in enumerate(tgt)}
        sign = -f.one() if k % 2 else f.one()
        m = linalg.zeros(f, len(tgt), len(src))
        for col, (d, i, j) in enumerate(src):
            # d_{d+k} o f : C_d -> C_{d+k-1}
            if d + k >= 1 and d + k <= D:
                bd = C.matrix(d + k)
                for i2 in range(C.dim(d + k - 1)):
                    if not f.is_zero(bd[i2][i]):
                        r = tgt_index[(d, i2, j)]
                        m[r][col] = m[r][col] + bd[i2][i]
            # -(-1)^k f o d_{d+1} : C_{d+1} -> C_{d+k}
            if d + 1 <= D:
                bd = C.matrix(d + 1)
                for j2 in range(C.dim(d + 1)):
                    if not f.is_zero(bd[j][j2]):
                        r = tgt_index[(d + 1, i, j2)]
                        m[r][col] = m[r][col] - sign * bd[j][j2]
        return m, len(src)

    for k in (0, 1):
        d_k, dim_k = differential(k)
        d_k1, _ = differential(k + 1)
        rank_out = linalg.rank(f, d_k) if d_k else 0
        rank_in = linalg.rank(f, d_k1) if d_k1 else 0
        if dim_k - rank_out != rank_in:
            return False
    return True


class AdjointPropagator:
    """Entrywise bar-involuted transposes of a propagator's matrices.

    g*_d = bar(g_d)^T, a degree -1 map on the adjoint complex; satisfies
    d* g* + g* d* = 1 with d*_d = bar(d_d)^T.
    """

    def __init__(self, maps):
        self.maps = {int(d): [row[:] for row in m] for d, m in maps.items()}


def adjoint_propagator(C: BasedChainComplex, g: Propagator) -> AdjointPropagator:
    f = C.field
    maps = {}
    for d in range(C.top_degree):
        maps[d] = linalg.involute_matrix(f, linalg.transpose(g.matrix(C, d)))
    return AdjointPropagator(maps)


def adjoint_of_adjoint(C, gstar: AdjointPropagator) -> Propagator:
    f = C.field
    maps = {d: linalg.involute_matrix(f, linalg.transpose(m))
            for d, m in gstar.maps.items()}
    return Propagator(maps)


def verify_adjoint_propagator(C: BasedChainComplex, gstar: AdjointPropagator) -> bool:
    """Checks d* g* + g* d* = 1 degreewise (adjoint matrices throughout)."""
    f = C.field
    dstar = {d: linalg.involute_matrix(f, linalg.transpose(C.matrix(d)))
             for d in range(1, C.top_degree + 1)}
    for d in range(0, C.top_degree + 1):
        n = C.dim(d)
        if n == 0:
            continue
        acc = linalg.zeros(f, n, n)
        # g*_d : C_{d+1} -> C_d, d*_{d+1} : C_d -> C_{d+1}
        if d + 1 <= C.top_degree and C.dim(d + 1):
            acc = linalg.mat_add(acc, linalg.mat_mul(f, gstar.maps.get(d, []), dstar[d + 1]))
        if d >= 1 and C.dim(d - 1):
            acc = linalg.mat_add(acc, linalg.mat_mul(f, dstar[d], gstar.maps.get(d - 1, [])))
        if not linalg.mat_eq(f, acc, linalg.identity(f, n)):
            return False
    return True


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_lens_complex(p, q) -> BasedChainComplex:
    """Twisted complex of the lens space L(p, q) over Q[zeta_p]."""
    p, q = int(p), int(q)
    if p <= 1:
        raise ComplexError("p must exceed 1")
    if gcd(p, q) != 1:
        raise ComplexError("q must be coprime to p")
    K = CyclotomicField(p)
    qbar = pow(q, -1, p)
    one = K.one()
    return BasedChainComplex(
        K,
        basis=[["w"], ["z"], ["y"], ["x"]],
        boundary={
            1: [[one - K.zeta(1)]],
            2: [[K.zero()]],
            3: [[one - K.zeta(qbar)]],
        },
    )


def known_lens_propagator(p, q) -> Propagator:
    """g(x) = 0, g(y) = (1 - zeta^qbar)^{-1} x, g(z) = 0, g(w) = (1 - zeta)^{-1} z."""
    p, q = int(p), int(q)
    if p <= 1:
        raise ComplexError("p must exceed 1")
    if gcd(p, q) != 1:
        raise ComplexError("q must be coprime to p")
    K = CyclotomicField(p)
    qbar = pow(q, -1, p)
    return Propagator({
        0: [[(K.one() - K.zeta(1)).inverse()]],   # g(w) = (1-zeta)^-1 z
        1: [[K.zero()]],                           # g(z) = 0
        2: [[(K.one() - K.zeta(qbar)).inverse()]], # g(y) = (1-zeta^qbar)^-1 x
    })


def build_torus_koszul() -> BasedChainComplex:
    """Koszul complex of (t1 - 1, t2 - 1, t3 - 1) over Q(Lambda), ranks 1,3,3,1."""
    F = RatFunField(3)
    from .ring import LaurentPoly
    a = [F.from_poly(LaurentPoly.var(3, i) - 1) for i in range(3)]
    z, _ = F.zero(), F.one()
    # degree 1 basis e1,e2,e3; degree 2 basis e12,e13,e23; degree 3 basis e123
    d1 = [[a[0], a[1], a[2]]]
    # d(e_i ^ e_j) = a_i e_j - a_j e_i; columns ordered (e12, e13, e23)
    d2 = [
        [-a[1], -a[2], z],
        [a[0], z, -a[2]],
        [z, a[0], a[1]],
    ]
    # d(e123) = a1 e23 - a2 e13 + a3 e12
    d3 = [[a[2]], [-a[1]], [a[0]]]
    return BasedChainComplex(
        F,
        basis=[["c"], ["e1", "e2", "e3"], ["e12", "e13", "e23"], ["e123"]],
        boundary={1: d1, 2: d2, 3: d3},
    )


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def field_from_header(header):
    kind = header.get("field")
    if kind == "ratfun":
        return RatFunField(int(header.get("vars", 3)))
    if kind == "cyclotomic":
        return CyclotomicField(int(header["p"]))
    raise ComplexError("unknown field kind %r" % (kind,))


def field_header(field):
    if isinstance(field, RatFunField):
        return {"field": "ratfun", "vars": field.arity}
    if isinstance(field, CyclotomicField):
        return {"field": "cyclotomic", "p": field.p}
    raise ComplexError("unsupported field %r" % (field,))


def complex_to_json(C: BasedChainComplex) -> dict:
    out = field_header(C.field)
    out["basis"] = [list(b) for b in C.basis]
    bnd = []
    for d in range(1, C.top_degree + 1):
        trips = []
        m = C.matrix(d)
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if not C.field.is_zero(x):
                    trips.append([i, j, C.field.fmt(x)])
        bnd.append(trips)
    out["boundary"] = bnd
    return out


def complex_from_json(data) -> BasedChainComplex:
    field = field_from_header(data)
    basis = data["basis"]
    boundary = {}
    for d0, trips in enumerate(data.get("boundary", [])):
        d = d0 + 1
        m = linalg.zeros(field, len(basis[d - 1]), len(basis[d]))
        for i, j, s in trips:
            m[int(i)][int(j)] = field.parse(s)
        boundary[d] = m
    return BasedChainComplex(field, basis, boundary)


def propagator_to_json(C: BasedChainComplex, g: Propagator) -> dict:
    out = field_header(C.field)
    maps = []
    for d in range(0, C.top_degree):
        trips = []
        for i, row in enumerate(g.matrix(C, d)):
            for j, x in enumerate(row):
                if not C.field.is_zero(x):
                    trips.append([i, j, C.field.fmt(x)])
        maps.append(trips)
    out["maps"] = maps
    return out


def propagator_from_json(C: BasedChainComplex, data) -> Propagator:
    field = C.field
    maps = {}
    for d, trips in enumerate(data["maps"]):
        m = linalg.zeros(field, C.dim(d + 1), C.dim(d))
        for i, j, s in trips:
            m[int(i)][int(j)] = field.parse(s)
        maps[d] = m
    return Propagator(maps)


def load_complex(path) -> BasedChainComplex:
    with open(path) as fh:
        return complex_from_json(json.load(fh))
