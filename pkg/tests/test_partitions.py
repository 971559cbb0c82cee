import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import partition_count, regular_count
from _strategies import partitions, primes
from symdim.errors import FirstPartTooSmall, InvalidPartition, NotAddable, NotPrime, NotRemovable
from symdim.partitions import (
    Node,
    Partition,
    PrimeChar,
    addable_nodes,
    attach,
    boundary_nodes,
    is_p_regular,
    partitions_of,
    regular_partitions,
    regular_partitions_upto,
    removable_nodes,
    remove_node,
    add_node,
    residue,
)


def rim(lam, p):
    return [(tuple(b.node), b.sign, b.residue) for b in boundary_nodes(lam, p)]


class TestPartition:
    def test_parse_and_str_roundtrip(self):
        lam = Partition.parse("8,2,1,1")
        assert lam.parts == (8, 2, 1, 1)
        assert lam.n == 12
        assert str(lam) == "8,2,1,1"
        assert Partition.parse("") == Partition(())

    @pytest.mark.parametrize("bad", [(1, 2), (3, 0), (-1,)])
    def test_rejects_malformed(self, bad):
        with pytest.raises(InvalidPartition):
            Partition(bad)

    def test_rejects_garbage_text(self):
        with pytest.raises(InvalidPartition):
            Partition.parse("3,x")

    def test_part_is_zero_below_diagram(self):
        lam = Partition((3, 1))
        assert (lam.part(1), lam.part(2), lam.part(3)) == (3, 1, 0)

    def test_prime_char(self):
        assert PrimeChar(2).delta == 1
        assert PrimeChar(3).delta == 0
        for bad in (0, 1, 4, 9):
            with pytest.raises(NotPrime):
                PrimeChar(bad)


class TestRegularity:
    @pytest.mark.parametrize(
        "parts,p,expected",
        [((2, 1, 1, 1), 3, False), ((8, 5), 3, True), ((1, 1), 2, False), ((), 2, True)],
    )
    def test_examples(self, parts, p, expected):
        assert is_p_regular(parts, p) is expected

    def test_removal_does_not_preserve_regularity(self):
        assert is_p_regular((2, 1), 2)
        assert not is_p_regular(remove_node((2, 1), (1, 2)), 2)

    @pytest.mark.parametrize("n", range(0, 16))
    def test_partition_counts_match_pentagonal_recurrence(self, n):
        assert len(list(partitions_of(n))) == partition_count(n)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    @pytest.mark.parametrize("n", range(0, 15))
    def test_regular_counts_match_glaisher(self, n, p):
        assert len(regular_partitions(n, p)) == regular_count(n, p)

    def test_upto_is_sorted_by_size_then_parts(self):
        items = regular_partitions_upto(6, 3)
        assert items == sorted(items, key=Partition.sort_key)
        assert items[0] == Partition(())


class TestNodes:
    @pytest.mark.parametrize("node,p,expected", [((1, 1), 5, 0), ((2, 1), 3, 2), ((1, 5), 3, 1)])
    def test_residue(self, node, p, expected):
        assert residue(node, p) == expected

    def test_boundary_51(self):
        assert rim((5, 1), 3) == [
            ((3, 1), "+", 1),
            ((2, 1), "-", 2),
            ((2, 2), "+", 0),
            ((1, 5), "-", 1),
            ((1, 6), "+", 2),
        ]

    def test_boundary_empty(self):
        assert rim((), 7) == [((1, 1), "+", 0)]

    def test_boundary_21_p2(self):
        # (2,2) has content 0, so its residue is 0
        assert rim((2, 1), 2) == [
            ((3, 1), "+", 0),
            ((2, 1), "-", 1),
            ((2, 2), "+", 0),
            ((1, 2), "-", 1),
            ((1, 3), "+", 0),
        ]

    def test_remove_examples(self):
        assert remove_node((5, 1), (1, 5)) == Partition((4, 1))
        assert remove_node((5, 1), (2, 1)) == Partition((5,))
        with pytest.raises(NotRemovable):
            remove_node((5, 1), (1, 3))
        with pytest.raises(NotAddable):
            add_node((5, 1), (2, 3))

    def test_attach(self):
        assert attach(12, (2, 1, 1)) == Partition((8, 2, 1, 1))
        assert attach(13, (5,)) == Partition((8, 5))
        with pytest.raises(FirstPartTooSmall):
            attach(6, (4,))

    @given(partitions())
    def test_add_undoes_remove(self, lam):
        for node in removable_nodes(lam):
            assert add_node(remove_node(lam, node), node) == lam

    @given(partitions())
    def test_remove_undoes_add(self, lam):
        for node in addable_nodes(lam):
            assert remove_node(add_node(lam, node), node) == lam

    @given(st.integers(1, 20), st.integers(1, 20), st.integers(-5, 5), primes)
    def test_residue_diagonal_shift(self, r, c, k, p):
        if r + k >= 1 and c + k >= 1:
            assert residue((r + k, c + k), p) == residue((r, c), p)
        assert residue((r + p, c), p) == residue((r, c + p), p) == residue((r, c), p)

    @given(partitions(), primes)
    def test_rim_alternates(self, lam, p):
        kinds = [b.sign for b in boundary_nodes(lam, p)]
        assert kinds[0] == "+" and kinds[-1] == "+"
        assert all(a != b for a, b in zip(kinds, kinds[1:]))
        assert len(kinds) == 2 * len(removable_nodes(lam)) + 1

    @given(partitions())
    def test_node_membership(self, lam):
        assert all(node in lam for node in removable_nodes(lam))
        assert not any(node in lam for node in addable_nodes(lam))
        assert sum(1 for _ in lam.nodes()) == lam.n
        assert all(isinstance(x, Node) for x in lam.nodes())
