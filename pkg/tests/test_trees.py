"""
Tests for suitable trees.
"""

import pytest

from pybhw.exceptions import MaterializationLimit, NotSuitable, TreeError, TreeSyntaxError
from pybhw.ordinals import OMEGA, ONE, ZERO, from_int, nf_sum, succ
from pybhw.trees import (
    LEAF,
    OMEGA_STAR,
    Finite,
    NStar,
    PartitionRefinement,
    alpha_tree,
    codes_natural,
    enumerate_trees,
    eq_star,
    height,
    hf_code,
    is_ranking,
    iso,
    materialize,
    mem_star,
    merge_family,
    nstar_nodes,
    oplus,
    parse_tree,
    subtree,
)

TWO = Finite.of([(), (5,), (7,), (7, 3)])


class TestCanonicalTrees:
    """Tests for n* and omega*."""

    def test_nstar_nodes(self):
        """2* = {<>, <0>, <1>, <1, 0>}; n* has 2**n nodes."""
        assert nstar_nodes(2) == {(), (0,), (1,), (1, 0)}
        assert len(nstar_nodes(5)) == 32

    def test_subtree_of_omega_star(self):
        """omega*^<n> = n*."""
        assert subtree(OMEGA_STAR, (4,)) == NStar(4)
        assert subtree(NStar(5), (3, 1)) == NStar(1)

    def test_subtree_outside(self):
        """Nodes must exist."""
        with pytest.raises(TreeError):
            subtree(NStar(2), (2,))
        with pytest.raises(TreeError):
            subtree(TWO, (6,))

    def test_negative_n(self):
        """n* needs a natural number."""
        with pytest.raises(TreeError):
            NStar(-1)

    def test_height(self):
        """Height of the root."""
        assert height(LEAF) == ZERO
        assert height(NStar(3)) == from_int(3)
        assert height(OMEGA_STAR) == OMEGA

    def test_materialize_limit(self):
        """omega* and large n* are never expanded."""
        with pytest.raises(MaterializationLimit):
            materialize(OMEGA_STAR)
        with pytest.raises(MaterializationLimit):
            materialize(NStar(20), limit=1000)


class TestSuitable:
    """Tests for Finite.of."""

    @pytest.mark.parametrize("nodes", [[], [(0,)], [(), (0, 1)], [(), (-1,)]])
    def test_rejected(self, nodes):
        """Empty, rootless, not prefix closed, negative."""
        with pytest.raises(NotSuitable):
            Finite.of(nodes)


class TestBisimulation:
    """Tests for iso, eq_star and mem_star."""

    def test_relabelled_two(self):
        """Labels do not matter."""
        assert eq_star(NStar(2), TWO)
        assert codes_natural(TWO) == 2

    def test_duplicates_collapse(self):
        """{0, 0} =* {0}."""
        assert eq_star(Finite.of([(), (0,), (1,)]), NStar(1))

    def test_different_sets(self):
        """2* and {{0}} differ."""
        assert not eq_star(NStar(2), Finite.of([(), (0,), (0, 0)]))
        assert not eq_star(NStar(2), OMEGA_STAR)
        assert eq_star(OMEGA_STAR, OMEGA_STAR)

    def test_membership(self):
        """k in* n* iff k < n; naturals in* omega*."""
        assert mem_star(NStar(2), NStar(5))
        assert not mem_star(NStar(5), NStar(5))
        assert mem_star(TWO, OMEGA_STAR)
        assert not mem_star(Finite.of([(), (0,), (0, 0)]), OMEGA_STAR)
        assert mem_star(LEAF, TWO)

    def test_tall_thin_tree(self):
        """A path of height 13 codes no natural and is refused before expanding 13*."""
        path = Finite.of([(0,) * k for k in range(14)])
        assert codes_natural(path) is None
        assert not mem_star(path, OMEGA_STAR)
        assert not mem_star(path, NStar(20))

    def test_iso_classes(self):
        """The bisimulation of 2* has one class per natural below 3."""
        x = iso(NStar(2))
        assert x.classes == 3
        assert ((0,), (1, 0)) in x
        assert x.related((), ())
        assert ((), (0,)) not in x

    def test_oplus(self):
        """S + T puts S under <0> and T under <1>."""
        s = oplus(LEAF, NStar(1))
        assert s.nodes == {(), (0,), (1,), (1, 0)}

    def test_partition_refinement(self):
        """A splitter cuts each block it meets."""
        p = PartitionRefinement([(0,), (1,), (2,)])
        assert len(p.refine([(1,)])) == 1
        assert sorted(len(b) for b in p.blocks()) == [1, 2]
        assert p.refine([(0,), (2,)]) == []


class TestAlphaTrees:
    """Tests for alpha_tree, is_ranking and merge_family."""

    def test_height_ranking(self):
        """n* is an (n+1)-tree but not an n-tree."""
        f = alpha_tree(NStar(2), from_int(3))
        assert f is not None and f.root == from_int(2)
        assert alpha_tree(NStar(2), from_int(2)) is None

    @pytest.mark.parametrize("tree", [NStar(3), TWO, Finite.of([(), (0,), (0, 0), (1,)])])
    def test_methods_agree(self, tree):
        """Height and stage recursion give the same least ranking."""
        h = alpha_tree(tree, OMEGA, method="height")
        s = alpha_tree(tree, OMEGA, method="stages")
        assert h.table == s.table
        assert is_ranking(tree, h, OMEGA)

    def test_unknown_method(self):
        """Only height and stages."""
        with pytest.raises(ValueError):
            alpha_tree(LEAF, ONE, method="guess")

    def test_omega_star(self):
        """omega* is an (omega+1)-tree with the canonical ranking."""
        f = alpha_tree(OMEGA_STAR, from_int(1000))
        assert f is None
        f = alpha_tree(OMEGA_STAR, succ(OMEGA))
        assert f.root == OMEGA and f((3,)) == from_int(3)

    def test_merge(self):
        """Children hang below 2**n * 3**k; the root is alpha + l0."""
        merged, f = merge_family({(0, 0): NStar(1), (1, 1): NStar(2)}, OMEGA, 1)
        assert (1,) in merged.nodes and (6, 1, 0) in merged.nodes
        assert f.root == succ(OMEGA)
        assert is_ranking(merged, f, nf_sum(OMEGA, from_int(2)))

    def test_merge_rejects_tall_child(self):
        """Every child must be an (alpha + l0)-tree."""
        with pytest.raises(NotSuitable):
            merge_family({(0, 0): NStar(3)}, from_int(1), 1)


class TestEnumeration:
    """Tests for enumerate_trees and hf_code."""

    def test_counts(self):
        """One tree per shape."""
        trees = list(enumerate_trees(2, 2))
        assert len(trees) == 3
        assert all(len(t.nodes) <= 2 for t in trees)

    def test_hf_code_respects_eq_star(self):
        """=* trees have one code."""
        assert hf_code(TWO) == hf_code(NStar(2))
        assert hf_code(LEAF) == frozenset()


class TestParseTree:
    """Tests for parse_tree."""

    def test_literals(self):
        """n*:k, omega* and JSON node lists."""
        assert parse_tree("n*:4") == NStar(4)
        assert parse_tree(" omega* ") == OMEGA_STAR
        assert parse_tree("[[], [3]]") == Finite.of([(), (3,)])

    @pytest.mark.parametrize("text", ["n*:x", "[[], [0]", '[["a"]]', "tree"])
    def test_malformed(self, text):
        """TreeSyntaxError for anything else."""
        with pytest.raises(TreeSyntaxError):
            parse_tree(text)
