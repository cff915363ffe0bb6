"""Decoration groups and their group-ring helpers."""

from fractions import Fraction

import pytest

from equivz import groups as G


class TestGroupLaw:
    @pytest.mark.parametrize("group", [
        G.TrivialGroup(), G.FreeAbelian(3), G.CyclicGroup(7)])
    def test_axioms_on_support(self, group):
        elems = group.support(1)
        e = group.identity()
        for a in elems:
            assert group.mul(a, group.inv(a)) == e
            assert group.mul(a, e) == a
            for b in elems:
                assert group.mul(a, b) == group.mul(b, a)

    def test_cyclic_wraps(self):
        g = G.CyclicGroup(5)
        assert g.mul((3,), (4,)) == (2,)
        assert g.inv((2,)) == (3,)

    def test_free_abelian_support_box(self):
        g = G.FreeAbelian(2)
        assert len(g.support(1)) == 9
        assert g.in_support((1, -1), 1)
        assert not g.in_support((2, 0), 1)

    def test_cyclic_support_full(self):
        g = G.CyclicGroup(5)
        assert len(g.support(4)) == 5
        assert len(g.support(1)) == 3  # identity and z^+-1

    def test_generators(self):
        assert len(list(G.FreeAbelian(3).generators())) == 3
        assert len(list(G.CyclicGroup(5).generators())) == 1
        assert not list(G.TrivialGroup().generators())


class TestTags:
    @pytest.mark.parametrize("group", [
        G.TrivialGroup(), G.FreeAbelian(3), G.FreeAbelian(1), G.CyclicGroup(7)])
    def test_round_trip(self, group):
        assert G.group_from_tag(group.tag) == group

    def test_unknown_tag(self):
        with pytest.raises(G.GroupError):
            G.group_from_tag("nonsense")


class TestRingHelpers:
    def test_mul_is_convolution(self):
        g = G.FreeAbelian(1)
        a = {(0,): Fraction(1), (1,): Fraction(1)}       # 1 + t
        b = {(0,): Fraction(1), (-1,): Fraction(-1)}     # 1 - t^-1
        prod = G.ring_mul(g, a, b)
        # (1+t)(1-t^-1) = 1 - t^-1 + t - 1 = t - t^-1
        assert prod == {(1,): Fraction(1), (-1,): Fraction(-1)}

    def test_involute(self):
        g = G.FreeAbelian(2)
        a = {(1, -2): Fraction(3)}
        assert G.ring_involute(g, a) == {(-1, 2): Fraction(3)}

    def test_augment(self):
        a = {(1,): Fraction(2), (-3,): Fraction(1, 2)}
        assert G.ring_augment(a) == Fraction(5, 2)

    def test_add_cancels(self):
        a = {(0,): Fraction(1)}
        b = {(0,): Fraction(-1)}
        assert G.ring_add(a, b) == {}

    @pytest.mark.parametrize("group,texts", [
        (G.FreeAbelian(3), ["1", "t1*t3^-1", "2*t2 - 1/2"]),
        (G.CyclicGroup(5), ["1", "z^3", "z - z^4"]),
        (G.TrivialGroup(), ["1", "-3/2"]),
    ])
    def test_format_parse_round_trip(self, group, texts):
        for s in texts:
            el = group.parse_ring(s)
            assert group.parse_ring(group.format_ring(el)) == el
