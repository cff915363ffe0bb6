"""Acceptance gate: one test per criterion, one PASS/FAIL line each.

Every numerical check is exact (Fraction arithmetic); the only floats are
the linking-number cross-check oracle, which is rounded before comparison.
Set EQUIVZ_FULL_N2=1 to run the degree-4 surgery evaluation under full
enumeration instead of skipping it at the resource guard.
"""

import itertools
import math
import os
import random
import time
from fractions import Fraction

import pytest

from equivz import casson as CS
from equivz import complexes as CX
from equivz import diagrams as D
from equivz import groups as G
from equivz import linking as LK
from equivz import surgery as SG
from equivz import trace as TR


TRIV = G.TrivialGroup()
Z3 = G.FreeAbelian(3)


def report(num, label, ok):
    print("ACCEPTANCE %d (%s): %s" % (num, label, "PASS" if ok else "FAIL"))
    assert ok, "criterion %d (%s) failed" % (num, label)


class Stopwatch:
    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.monotonic() - self.t0


# ---------------------------------------------------------------------------
# 1. lens-space propagators
# ---------------------------------------------------------------------------

def test_criterion_1_lens_propagators():
    ok = True
    with Stopwatch() as sw:
        for p in range(2, 26):
            for q in range(1, p):
                if math.gcd(p, q) != 1:
                    continue
                C = CX.build_lens_complex(p, q)
                ok = ok and CX.verify_boundary(C) and CX.is_acyclic(C)
                g_known = CX.known_lens_propagator(p, q)
                ok = ok and CX.verify_propagator(C, g_known)
                g_solved = CX.solve_propagator(C)
                h = CX.propagator_homotopy(C, g_known, g_solved)
                ok = ok and CX.verify_homotopy(C, g_known, g_solved, h)
    report(1, "lens propagators 2<=p<=25, %.1fs" % sw.elapsed,
           ok and sw.elapsed < 10.0)


# ---------------------------------------------------------------------------
# 2. torus desk model
# ---------------------------------------------------------------------------

def test_criterion_2_torus_koszul():
    with Stopwatch() as sw:
        C = CX.build_torus_koszul()
        ok = CX.verify_boundary(C) and CX.is_acyclic(C)
        g = CX.solve_propagator(C)
        ok = ok and CX.verify_propagator(C, g)
        ok = ok and CX.end_complex_acyclic(C)
    report(2, "torus model, %.1fs" % sw.elapsed, ok and sw.elapsed < 5.0)


# ---------------------------------------------------------------------------
# 3. diagram space
# ---------------------------------------------------------------------------

def test_criterion_3_diagram_space(basis_z3):
    with Stopwatch() as sw:
        basis = D.quotient_basis(2, TRIV, 0)
        ok = basis.dimension == 1
        ok = ok and basis.basis == [D.canonical_form(D.theta_graph())[0]]
        rows = D.relation_generators(basis.gens, TRIV, 0)
        ok = ok and all(basis.class_is_zero(r) for r in rows)
        ok = ok and basis.reduce_graph(D.dumbbell_graph()) == [Fraction(0)]
    trivial_ok = ok and sw.elapsed < 30.0

    rows = D.relation_generators(basis_z3.gens, Z3, 1)
    z3_ok = all(basis_z3.class_is_zero(r) for r in rows)
    reversed_basis = D.quotient_basis(2, Z3, 1, generator_order="reversed")
    z3_ok = z3_ok and reversed_basis.dimension == basis_z3.dimension
    report(3, "diagram space (trivial %.1fs, Z^3 stable dim %d)"
           % (sw.elapsed, basis_z3.dimension), trivial_ok and z3_ok)


# ---------------------------------------------------------------------------
# 4. automorphism identities
# ---------------------------------------------------------------------------

def test_criterion_4_automorphism_identities():
    with Stopwatch() as sw:
        ok = True
        for degree in (2, 4):
            n = degree // 2
            total = 2 ** (3 * n) * math.factorial(2 * n) * math.factorial(3 * n)
            for g in D.trivalent_graphs(degree):
                aut, aut_e, aut_v = D.automorphism_counts(g)
                ok = ok and aut == aut_e * aut_v
                ok = ok and D.labeling_count(g) * aut == total
    report(4, "automorphism identities <=4 vertices, %.1fs" % sw.elapsed,
           ok and sw.elapsed < 60.0)


# ---------------------------------------------------------------------------
# 5. surgery evaluation
# ---------------------------------------------------------------------------

DECOS = {
    "1": (0, 0, 0),
    "t1": (1, 0, 0),
    "t2": (0, 1, 0),
    "t3": (0, 0, 1),
    "t1*t2^-1": (1, -1, 0),
}


def test_criterion_5_surgery_brackets(basis_z3):
    ok = True
    worst = 0.0
    triples = [(d, d, d) for d in DECOS.values()]
    triples += [((1, 0, 0), (0, 1, 0), (0, 0, 1)),
                ((1, -1, 0), (0, 0, 1), (0, 0, 0)),
                ((1, 0, 0), (1, -1, 0), (0, 1, 0))]
    for decs in triples:
        with Stopwatch() as sw:
            gamma = D.theta_graph(Z3, list(decs))
            expected = basis_z3.reduce_graph(gamma)
            data = SG.realize_ylink(gamma)
            coords, _ = SG.eval_Z_bracket(data, basis_z3)
            ok = ok and coords == [Fraction(1, 8) * c for c in expected]
            tcoords, _ = SG.eval_Ztilde_bracket(data, basis_z3)
            ok = ok and tcoords == expected
        worst = max(worst, sw.elapsed)
        ok = ok and sw.elapsed < 60.0
    for decs in [((0, 0, 0),) * 3, ((1, 0, 0), (0, 0, 0), (0, 1, 0))]:
        dumbbell = D.dumbbell_graph(Z3, list(decs))
        expected = basis_z3.reduce_graph(dumbbell)
        coords, _ = SG.eval_Z_bracket(SG.realize_ylink(dumbbell), basis_z3)
        ok = ok and coords == [Fraction(1, 8) * c for c in expected]
        tcoords, _ = SG.eval_Ztilde_bracket(SG.realize_ylink(dumbbell), basis_z3)
        ok = ok and tcoords == expected
    # the identity-decorated dumbbell class itself vanishes, so its
    # bracket does too
    ok = ok and all(
        c == 0 for c in basis_z3.reduce_graph(D.dumbbell_graph(Z3)))
    report(5, "surgery brackets (worst decoration %.1fs)" % worst, ok)


def k4_graph():
    """Complete graph on 4 vertices (connected, loop-free, degree 4)."""
    edges = [(0, 3, ()), (1, 6, ()), (2, 9, ()),
             (4, 7, ()), (5, 10, ()), (8, 11, ())]
    return D.MonomialGraph(TRIV, D._standard_cyclic(4), edges)


def test_criterion_5_degree4_full_enumeration():
    full = os.environ.get("EQUIVZ_FULL_N2") == "1"
    gamma = k4_graph()
    data = SG.realize_ylink(gamma)
    if not full:
        # the guard trips during enumeration, long before the basis is
        # consulted, so a cheap degree-2 basis stands in for the real one
        stand_in = D.quotient_basis(2, TRIV, 0)
        try:
            SG.eval_Z_bracket(data, stand_in, budget=500)
        except D.ResourceGuard:
            print("ACCEPTANCE 5 (degree-4 full enumeration): "
                  "SKIP (resource guard)")
            pytest.skip("skipped-by-resource-guard; set EQUIVZ_FULL_N2=1")
        raise AssertionError("expected the resource guard to trip")
    with Stopwatch() as sw:
        basis4 = D.quotient_basis(4, TRIV, 0)
        expected = basis4.reduce_graph(gamma)
        coords, diag = SG.eval_Z_bracket(data, basis4)
    ok = coords == [Fraction(1, 64) * c for c in expected]
    report(5, "degree-4 full enumeration, %.0fs" % sw.elapsed,
           ok and sw.elapsed < 1800.0)


# ---------------------------------------------------------------------------
# 6. equivariant linking
# ---------------------------------------------------------------------------

def square_loop(axis, level, a0, a1, b0, b1):
    u, v = [k for k in range(3) if k != axis]

    def pt(av, bv):
        p = [0, 0, 0]
        p[axis] = level
        p[u] = av
        p[v] = bv
        return tuple(p)

    pts = [pt(x, b0) for x in range(a0, a1)]
    pts += [pt(a1, y) for y in range(b0, b1)]
    pts += [pt(x, b1) for x in range(a1, a0, -1)]
    pts += [pt(a0, y) for y in range(b1, b0, -1)]
    pts.append(pt(a0, b0))
    return pts


def random_lattice_link(rng, period=8):
    while True:
        loops = []
        for _ in range(2):
            pts = square_loop(rng.randrange(3), rng.randrange(period),
                              *(lambda a, w: (a, a + w))(rng.randrange(4), rng.randrange(1, 4)),
                              *(lambda a, w: (a, a + w))(rng.randrange(4), rng.randrange(1, 4)))
            if rng.random() < 0.5:
                pts = list(reversed(pts))
            loops.append(pts)
        try:
            return LK.LatticeLink(loops, period=period)
        except LK.LinkingError:
            continue


def hopf_loops():
    a = square_loop(2, 0, 0, 2, 0, 2)
    b = [(1, 1, -1), (1, 1, 0), (1, 1, 1), (1, 2, 1), (1, 3, 1),
         (1, 3, 0), (1, 3, -1), (1, 2, -1), (1, 1, -1)]
    return a, b


def test_criterion_6_equivariant_linking():
    with Stopwatch() as sw:
        a, b = hopf_loops()
        link = LK.LatticeLink([a, b], period=8)
        val = LK.lk_equivariant(link, 0, 1, Z3)
        ok = list(val) == [(0, 0, 0)] and abs(val[(0, 0, 0)]) == 1

        shifted = [(p[0] + 8, p[1], p[2]) for p in b]
        link2 = LK.LatticeLink([a, shifted], period=8)
        val2 = LK.lk_equivariant(link2, 0, 1, Z3)
        ok = ok and list(val2) == [(1, 0, 0)] and abs(val2[(1, 0, 0)]) == 1

        rng = random.Random(20260824)
        for _ in range(50):
            rand = random_lattice_link(rng)
            v01 = LK.lk_equivariant(rand, 0, 1, Z3)
            v10 = LK.lk_equivariant(rand, 1, 0, Z3)
            ok = ok and v10 == G.ring_involute(Z3, v01)
            aug = G.ring_augment(v01)
            ok = ok and round(LK.augmented_gauss_float(rand, 0, 1)) == aug
            exact = LK.lk_integer(rand.loops[0], rand.loops[1])
            ok = ok and round(LK.gauss_linking_float(
                rand.loops[0], rand.loops[1])) == exact
    report(6, "equivariant linking, 50 random links, %.1fs" % sw.elapsed,
           ok and sw.elapsed < 120.0)


# ---------------------------------------------------------------------------
# 7. Casson bridge
# ---------------------------------------------------------------------------

def test_criterion_7_casson_bridge(basis_triv2):
    with Stopwatch() as sw:
        unknot = CS.KnotDiagram([])
        lam0 = CS.casson_surgery(CS.SurgeryPresentation(unknot, 1))
        ok = lam0 == 0 and CS.lambda_pi(lam0, basis_triv2) == [Fraction(0)]

        trefoil = CS.KnotDiagram([[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
        lam_t = CS.casson_surgery(CS.SurgeryPresentation(trefoil, 1))
        ok = ok and abs(lam_t) == 1
        ok = ok and CS.lambda_pi(lam_t, basis_triv2) in \
            ([Fraction(1, 2)], [Fraction(-1, 2)])

        fig8 = CS.KnotDiagram([[4, 2, 5, 1], [8, 6, 1, 5],
                               [6, 3, 7, 4], [2, 7, 3, 8]])
        lam_f = CS.casson_surgery(CS.SurgeryPresentation(fig8, 1))
        ok = ok and lam_f == -lam_t
    report(7, "Casson bridge, %.1fs" % sw.elapsed, ok and sw.elapsed < 5.0)


# ---------------------------------------------------------------------------
# 8. adjoint / sign-sum consistency
# ---------------------------------------------------------------------------

def test_criterion_8_sign_sum_consistency(basis_z3):
    with Stopwatch() as sw:
        gamma = D.theta_graph(Z3, [(1, 0, 0), (0, 1, 0), (0, 0, 0)])
        data = SG.realize_ylink(gamma)
        single, _ = SG.eval_Z_bracket(data, basis_z3)
        ok = any(c != 0 for c in single)
        for eps in itertools.product((1, -1), repeat=3):
            coords, _ = SG.eval_Z_bracket(data, basis_z3, sign_vector=eps)
            ok = ok and coords == single
        summed = TR.sum_over_signs(
            lambda eps: SG.eval_Z_bracket(data, basis_z3, sign_vector=eps)[0], 1)
        ok = ok and summed == [8 * c for c in single]
    report(8, "adjoint/sign-sum consistency, %.1fs" % sw.elapsed,
           ok and sw.elapsed < 10.0)
