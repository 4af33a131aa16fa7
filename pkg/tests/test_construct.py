"""Diagram generators and the shipped corpus."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from khcover import tables
from khcover.construct import (
    braid_closure,
    medial_diagram,
    montesinos_diagram,
    pretzel_diagram,
    prism_graph,
    rational_diagram,
)
from khcover.diagram import crossing_signs, parse_pd
from khcover.errors import MalformedCode
from khcover.goeritz import (
    black_graph,
    build_lattice,
    det_matrix_tree,
    goeritz_determinant,
    is_alternating,
)
from khcover.khovanov import determinant_specialization, kauffman_oracle
from khcover.linalg import smith_normal_form


def det(d):
    return goeritz_determinant(d)


class TestBraidClosure:
    def test_hopf_code_pinned(self):
        d = braid_closure([1, 1])
        assert d.to_code() == "X[2,1,3,4];X[4,3,1,2]"
        assert crossing_signs(d) == (2, 0)

    def test_sign_convention(self):
        assert crossing_signs(braid_closure([1, 1, 1])) == (3, 0)
        assert crossing_signs(braid_closure([-1, -1, -1])) == (0, 3)

    def test_torus_two_strand_determinants(self):
        for n in range(2, 8):
            assert det(braid_closure([1] * n)) == n

    def test_untouched_strands_become_loops(self):
        d = braid_closure([1, 1], n_strands=4)
        assert d.free_loops == 2
        assert d.n_components == 4

    def test_letter_validation(self):
        with pytest.raises(MalformedCode):
            braid_closure([0])
        with pytest.raises(MalformedCode):
            braid_closure([1, "a"])  # type: ignore[list-item]

    def test_t35(self):
        d = braid_closure([1, 2] * 5)
        assert d.n_crossings == 10
        assert d.n_components == 1
        assert not is_alternating(d)
        assert det(d) == 1


class TestRational:
    def test_small_pins(self):
        assert det(rational_diagram(Fraction(3, 1))) == 3
        assert det(rational_diagram(Fraction(5, 2))) == 5

    def test_rejects_nonpositive(self):
        with pytest.raises(MalformedCode):
            rational_diagram(Fraction(0, 1))
        with pytest.raises(MalformedCode):
            rational_diagram(Fraction(-3, 2))

    @settings(deadline=None, max_examples=40)
    @given(st.integers(2, 60), st.integers(1, 59))
    def test_determinant_is_numerator(self, p, q):
        f = Fraction(p, q)
        if f.numerator < 2:
            return
        d = rational_diagram(f)
        assert is_alternating(d)
        assert det(d) == f.numerator

    def test_crossing_count_is_digit_sum(self):
        # continued-fraction digits of 11/4 are [2,1,3]
        d = rational_diagram(Fraction(11, 4))
        assert d.n_crossings == 6


class TestMontesinos:
    def test_three_tangle_pins(self):
        for fracs, want in (
            ((Fraction(1, 3), Fraction(1, 3), Fraction(1, 2)), 21),
            ((Fraction(1, 3), Fraction(2, 3), Fraction(1, 2)), 27),
            ((Fraction(2, 3), Fraction(2, 3), Fraction(1, 2)), 33),
        ):
            d = montesinos_diagram(list(fracs))
            assert d.n_crossings == 8
            assert is_alternating(d)
            assert det(d) == want

    def test_matches_tangle_sum_formula(self):
        fracs = [Fraction(1, 2), Fraction(2, 5), Fraction(1, 3)]
        d = montesinos_diagram(fracs)
        alpha = 2 * 5 * 3
        total = alpha * sum(fracs)
        assert det(d) == abs(int(total))


class TestPretzel:
    def test_alternating_pretzels(self):
        for entries, want in (([2, 3, 7], 41), ([3, 3, 2], 21), ([2, 3], 5)):
            d = pretzel_diagram(entries)
            assert is_alternating(d)
            assert det(d) == want

    def test_mixed_signs(self):
        d = pretzel_diagram([2, 3, -7])
        assert not is_alternating(d)
        assert d.n_components == 1
        assert det(d) == 29

    def test_pairwise_product_formula(self):
        for a, b, c in ((2, 5, 3), (1, 4, 5), (3, 2, -5)):
            d = pretzel_diagram([a, b, c])
            assert det(d) == abs(a * b + b * c + c * a)

    def test_rejects_zero_entry(self):
        with pytest.raises(MalformedCode):
            pretzel_diagram([2, 0, 3])
        with pytest.raises(MalformedCode):
            pretzel_diagram([])


class TestMedial:
    def test_prism(self):
        g = prism_graph()
        assert g.spanning_tree_count() == 75
        d = medial_diagram(g, marked=True)
        assert d.n_crossings == 9
        assert d.n_components == 1
        assert is_alternating(d)
        assert det(d) == 75

    def test_prism_lattice_invariants(self):
        d = medial_diagram(prism_graph())
        lat = build_lattice(black_graph(d))
        assert lat.b == 4
        assert lat.det() == 75
        _, s, _ = smith_normal_form(lat.q)
        assert [abs(s.rows[i][i]) for i in range(4)] == [1, 1, 5, 15]

    def test_medial_black_graph_returns_input(self):
        # the black graph of the medial diagram is the graph we started from
        g = prism_graph()
        bg = black_graph(medial_diagram(g))
        assert bg.n_vertices == 6
        assert sorted((u, v) for u, v, _ in bg.edges) == sorted(
            (min(e), max(e)) for e in g.edges
        )

    def test_theta_graph(self):
        # two vertices, three parallel edges: the medial is T(2,3)-like
        from khcover.construct import PlaneGraph

        g = PlaneGraph(
            edges=[(0, 1), (0, 1), (0, 1)],
            rot={0: [(0, 0), (1, 0), (2, 0)], 1: [(2, 1), (1, 1), (0, 1)]},
        )
        d = medial_diagram(g)
        assert d.n_crossings == 3
        assert det(d) == 3 == g.spanning_tree_count()


class TestCorpus:
    def test_names(self):
        ns = tables.names()
        assert len(ns) == 37
        for needed in ("unknot", "hopf", "3_1", "4_1", "8_18",
                       "nine40", "nine47", "t35"):
            assert needed in ns

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            tables.load("9_99")

    def test_all_parse_connected_and_marked(self):
        for name in tables.names():
            d = tables.load(name)
            assert d.is_connected(), name
            assert d.name == name
            if d.n_crossings:
                assert d.mark is not None, name

    def test_headline_determinants(self):
        for name, want in (("unknot", 1), ("hopf", 2), ("3_1", 3),
                           ("4_1", 5), ("8_12", 29), ("8_18", 45),
                           ("nine40", 75), ("nine47", 29), ("t35", 1)):
            assert det(tables.load(name)) == want, name

    def test_alternating_split(self):
        non_alt = {"nine47", "t35"}
        for name in tables.names():
            d = tables.load(name)
            assert is_alternating(d) == (name not in non_alt), name

    def test_matrix_tree_agrees_on_alternating(self):
        for name in tables.names():
            d = tables.load(name)
            if is_alternating(d) and d.n_crossings:
                assert det_matrix_tree(black_graph(d)) == det(d), name

    def test_source_notes_present(self):
        for name in tables.names():
            text = tables.source_text(name)
            assert text.startswith("#"), name
            assert "determinant" in text, name
