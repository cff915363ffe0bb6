"""Alexander polynomials, the surgery invariant, and the theta bridge."""

from fractions import Fraction

import pytest

from equivz import casson as CS
from equivz.ring import LaurentPoly, format_poly


TREFOIL = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]
FIG8 = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]
# the trefoil with one extra kink (a single curl), two chiralities
TREFOIL_KINK_A = [[1, 4, 2, 5], [3, 8, 4, 1], [5, 2, 6, 3], [6, 7, 7, 8]]
TREFOIL_KINK_B = [[1, 4, 2, 5], [3, 8, 4, 1], [5, 2, 6, 3], [6, 8, 7, 7]]


def poly(s):
    from equivz.ring import parse_poly
    return parse_poly(s, 1)


class TestDiagramValidation:
    def test_arc_labels_twice(self):
        with pytest.raises(CS.DiagramError):
            CS.KnotDiagram([[1, 2, 3, 4]])

    def test_sign_derivation(self):
        assert CS.KnotDiagram(TREFOIL).signs == [1, 1, 1]
        assert CS.KnotDiagram(FIG8).signs == [-1, -1, 1, 1]

    def test_explicit_signs_checked(self):
        with pytest.raises(CS.DiagramError):
            CS.KnotDiagram(TREFOIL, signs=[1, 1])
        with pytest.raises(CS.DiagramError):
            CS.KnotDiagram(TREFOIL, signs=[1, 2, 1])

    def test_underivable_signs_need_explicit_input(self):
        bad = [[1, 2, 3, 4], [2, 1, 4, 3]]
        with pytest.raises(CS.DiagramError):
            CS.KnotDiagram(bad)

    def test_surgery_coefficient_nonzero(self):
        with pytest.raises(CS.DiagramError):
            CS.SurgeryPresentation(CS.KnotDiagram(TREFOIL), 0)


class TestAlexander:
    def test_unknot(self):
        assert CS.alexander_polynomial(CS.KnotDiagram([])) == LaurentPoly.one(1)

    def test_trefoil(self):
        delta = CS.alexander_polynomial(CS.KnotDiagram(TREFOIL))
        assert delta == poly("t1 - 1 + t1^-1")

    def test_figure_eight(self):
        delta = CS.alexander_polynomial(CS.KnotDiagram(FIG8))
        assert delta == poly("-t1 + 3 - t1^-1")

    def test_symmetry_and_value_at_one(self):
        for pd in (TREFOIL, FIG8, TREFOIL_KINK_A):
            delta = CS.alexander_polynomial(CS.KnotDiagram(pd))
            assert delta.involute() == delta
            assert sum(delta.terms.values()) == 1

    def test_kinked_diagrams_agree_with_trefoil(self):
        base = CS.alexander_polynomial(CS.KnotDiagram(TREFOIL))
        for pd in (TREFOIL_KINK_A, TREFOIL_KINK_B):
            assert CS.alexander_polynomial(CS.KnotDiagram(pd)) == base

    def test_non_knot_rejected(self):
        # two-component link: arcs do not merge into one per crossing
        hopf = [[1, 3, 2, 4], [3, 1, 4, 2]]
        with pytest.raises(CS.DiagramError):
            CS.alexander_polynomial(CS.KnotDiagram(hopf, signs=[1, 1]))


class TestSecondDerivative:
    def test_oracle_values(self):
        assert CS.alexander_second_derivative_at_one(poly("t1 - 1 + t1^-1")) == 2
        assert CS.alexander_second_derivative_at_one(poly("-t1 + 3 - t1^-1")) == -2
        assert CS.alexander_second_derivative_at_one(LaurentPoly.one(1)) == 0


class TestSurgeryInvariant:
    def test_unknot_zero(self):
        s = CS.SurgeryPresentation(CS.KnotDiagram([]), 5)
        assert CS.casson_surgery(s) == 0

    def test_trefoil_and_figure_eight_opposite(self):
        lam_t = CS.casson_surgery(CS.SurgeryPresentation(CS.KnotDiagram(TREFOIL), 1))
        lam_f = CS.casson_surgery(CS.SurgeryPresentation(CS.KnotDiagram(FIG8), 1))
        assert abs(lam_t) == 1
        assert lam_f == -lam_t

    def test_linear_in_n(self):
        knot = CS.KnotDiagram(TREFOIL)
        vals = [CS.casson_surgery(CS.SurgeryPresentation(knot, n))
                for n in (1, 2, 3, -1)]
        assert vals == [vals[0] * n for n in (1, 2, 3, -1)]

    def test_always_integer(self):
        for pd in (TREFOIL, FIG8, TREFOIL_KINK_A):
            val = CS.casson_surgery(CS.SurgeryPresentation(CS.KnotDiagram(pd), 3))
            assert val.denominator == 1


class TestLambdaPi:
    def test_zero(self, basis_triv2):
        assert CS.lambda_pi(0, basis_triv2) == [Fraction(0)]

    def test_unit_gives_half_theta(self, basis_triv2):
        assert CS.lambda_pi(1, basis_triv2) == [Fraction(1, 2)]

    def test_linearity(self, basis_triv2):
        assert CS.lambda_pi(-2, basis_triv2) == [Fraction(-1)]

    def test_degree_checked(self):
        class FakeBasis:
            degree = 4
        with pytest.raises(CS.DiagramError):
            CS.lambda_pi(1, FakeBasis())
