import random

import pytest
from hypothesis import given

from _oracles import normal_by_definition, random_erasure, signature_by_scan
from _strategies import regular_pairs
from symdim.crystal import (
    a_crystal,
    crystal_graph,
    e_tilde,
    epsilon,
    epsilons,
    f_tilde,
    is_js,
    normal_report,
    reduce_signature,
    restriction_factors,
)
from symdim.errors import EmptyPartition, NotRegular
from symdim.partitions import Partition, is_p_regular, remove_node, removable_nodes


class TestNormalReport:
    def test_21_p2(self):
        r = normal_report((2, 1), 1, 2)
        assert (r.signature_string, r.reduced_string, r.epsilon) == ("--", "--", 2)
        assert r.good_node == (2, 1)

    def test_51_residue2(self):
        r = normal_report((5, 1), 2, 3)
        assert (r.signature_string, r.reduced_string, r.epsilon, r.good_node) == ("-+", "", 0, None)

    def test_51_residue1(self):
        r = normal_report((5, 1), 1, 3)
        assert (r.signature_string, r.reduced_string, r.epsilon) == ("+-", "+-", 1)
        assert r.good_node == (1, 5) and r.cogood_node == (3, 1)

    def test_refuses_irregular(self):
        with pytest.raises(NotRegular):
            normal_report((1, 1, 1), 0, 3)

    def test_json_shape(self):
        d = normal_report((5, 1), 1, 3).to_dict()
        assert d["good_node"] == [1, 5] and d["signature"] == "+-"

    @given(regular_pairs())
    def test_reduced_shape(self, pair):
        lam, p = pair
        for i in range(p):
            s = normal_report(lam, i, p).reduced_string
            assert "-+" not in s
            assert s == "+" * s.count("+") + "-" * s.count("-")

    @given(regular_pairs())
    def test_signature_matches_direct_scan(self, pair):
        lam, p = pair
        for i in range(p):
            sig = [(tuple(n), s) for n, s in normal_report(lam, i, p).signature]
            assert sig == signature_by_scan(lam.parts, i, p)

    @given(regular_pairs())
    def test_normal_nodes_match_definition(self, pair):
        lam, p = pair
        for i in range(p):
            got = [tuple(n) for n in normal_report(lam, i, p).normal_nodes]
            assert got == normal_by_definition(lam.parts, i, p)

    @given(regular_pairs())
    def test_erasure_order_is_irrelevant(self, pair):
        lam, p = pair
        rng = random.Random(str(lam) + str(p))
        for i in range(p):
            r = normal_report(lam, i, p)
            for _ in range(3):
                assert random_erasure(r.signature_string, rng) == r.reduced_string


def test_stack_reduction_on_plain_signs():
    sig = [((k, 0), s) for k, s in enumerate("+-+--++-")]
    assert "".join(s for _, s in reduce_signature(sig)) == "+-"


class TestOperators:
    def test_examples(self):
        assert e_tilde((5, 1), 1, 3) == Partition((4, 1))
        assert e_tilde((2, 1), 1, 2) == Partition((2,))
        assert e_tilde((5, 1), 0, 3) is None
        assert f_tilde((3, 1), 0, 3) == Partition((4, 1))
        assert f_tilde((4, 1), 0, 3) == Partition((4, 2))
        assert f_tilde(e_tilde((5, 1), 1, 3), 1, 3) == Partition((5, 1))

    @given(regular_pairs())
    def test_crystal_section(self, pair):
        lam, p = pair
        for i in range(p):
            eps = epsilon(lam, i, p)
            if eps:
                mu = e_tilde(lam, i, p)
                assert is_p_regular(mu, p)
                assert f_tilde(mu, i, p) == lam
                assert epsilon(mu, i, p) == eps - 1

    @given(regular_pairs())
    def test_f_then_e(self, pair):
        lam, p = pair
        for i in range(p):
            mu = f_tilde(lam, i, p)
            if mu is not None and is_p_regular(mu, p):
                assert e_tilde(mu, i, p) == lam

    @given(regular_pairs(nonempty=True))
    def test_some_residue_has_a_normal_node(self, pair):
        lam, p = pair
        assert sum(epsilons(lam, p)) >= 1


class TestBranching:
    def test_examples(self):
        assert restriction_factors((2, 1), 2).as_dict() == {Partition((2,)): 2}
        assert restriction_factors((5, 1), 3).as_dict() == {Partition((4, 1)): 1}
        assert restriction_factors((8, 5), 3).as_dict() == {Partition((7, 5)): 1, Partition((8, 4)): 1}
        assert restriction_factors((2, 1), 2).to_json() == [["2", 2]]

    def test_js_examples(self):
        assert not is_js((8, 5), 3)
        assert is_js((5, 1), 3)
        for n in range(1, 8):
            assert is_js((n,), 5)
        with pytest.raises(EmptyPartition):
            is_js((), 3)

    @given(regular_pairs(nonempty=True))
    def test_js_iff_single_factor(self, pair):
        lam, p = pair
        factors = restriction_factors(lam, p)
        top = remove_node(lam, removable_nodes(lam)[0])
        single = len(factors) == 1 and factors.entries[0] == (top, 1)
        assert is_js(lam, p) == single

    @given(regular_pairs(nonempty=True))
    def test_factor_count_bounded_by_normal_nodes(self, pair):
        lam, p = pair
        factors = restriction_factors(lam, p)
        assert all(is_p_regular(mu, p) and mu.n == lam.n - 1 for mu, _ in factors)
        assert sum(c for _, c in factors) <= sum(k * (k + 1) // 2 for k in epsilons(lam, p))


class TestCrystalDepth:
    def test_examples(self):
        assert a_crystal((5, 1), 3) == 2
        assert a_crystal((2, 1), 2) == 1
        for n in range(1, 7):
            assert a_crystal((n,), 3) == 1

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_hook_at_multiples(self, p):
        # n = p is excluded: (p-1,1) is then one-dimensional when p = 3
        for n in range(2 * p, 5 * p + 1, p):
            assert a_crystal((n - 1, 1), p) == 2


class TestGraph:
    def test_small_graphs(self):
        g = crystal_graph(1, 2)
        assert [str(v) for v in g.vertices] == ["", "1"]
        assert [(str(a), str(b), i) for a, b, i in g.edges] == [("1", "", 0)]
        g = crystal_graph(2, 2)
        assert [(str(a), str(b), i) for a, b, i in g.edges] == [("1", "", 0), ("2", "1", 1)]
        g = crystal_graph(0, 5)
        assert len(g.vertices) == 1 and not g.edges

    def test_formats(self):
        g = crystal_graph(3, 3)
        dot = g.to_dot()
        assert dot.startswith("digraph") and '"2,1" -> "1,1" [label="1"];' in dot
        obj = g.to_json_obj()
        assert obj["adjacency"]["3"] == [{"to": "2", "residue": 2}]
