"""
Tests for proof representation and the input file readers.
"""

import json

import pytest

from pybhw.exceptions import (
    InputFileNotFoundError,
    InputJSONDecodeError,
    NotSuitable,
    ProofFormatError,
    TreeSyntaxError,
)
from pybhw.formulas import Or
from pybhw.loader import (
    ProofFileLoader,
    family_from_data,
    proof_from_data,
    read_assignment,
    read_family,
    read_tree,
    read_tree_file,
    tree_from_lines,
)
from pybhw.ordinals import OMEGA
from pybhw.proof import Justification, TaitProof, TaitStep
from pybhw.sexpr import read_formula
from pybhw.trees import OMEGA_STAR, Finite, NStar, nstar_nodes

from .conftest import data_path


class TestJustification:
    """Tests for the "by" field."""

    def test_axiom_and_rule(self):
        """axiom:<name> and rule:<name>."""
        j = Justification.parse("axiom:TnD")
        assert j.is_axiom and j.name == "TnD" and j.rule is None
        r = Justification.parse("rule:cut")
        assert not r.is_axiom and r.rule is not None and str(r) == "rule:cut"

    @pytest.mark.parametrize("text", ["TnD", "axiom:", "lemma:x"])
    def test_malformed(self, text):
        """Anything else is a format error."""
        with pytest.raises(ProofFormatError):
            Justification.parse(text, 3)


class TestTaitProof:
    """Tests for building and serializing proofs."""

    def test_build_in_code(self):
        """Steps appended in order; the last one is the conclusion."""
        f = read_formula("(in a b)")
        g = read_formula("(nin a b)")
        proof = TaitProof()
        proof.add_step(TaitStep.axiom([g, f], "TnD", {"formula": "(in a b)"}))
        proof.add_step(TaitStep.rule([Or(g, f)], "or", [0]))
        assert len(proof) == 2
        assert list(proof.conclusion) == [Or(g, f)]
        assert proof.max_formula_length() == 1

    def test_json_round_trip(self, rules_proof):
        """to_json produces what the loader reads."""
        again = proof_from_data(json.loads(rules_proof.to_json()))
        assert len(again) == len(rules_proof)
        assert [s.seq for s in again] == [s.seq for s in rules_proof]
        assert [s.eigen for s in again] == [s.eigen for s in rules_proof]

    def test_empty_proof(self):
        """An empty proof has the empty conclusion."""
        proof = TaitProof()
        assert not proof
        assert len(proof.conclusion) == 0


class TestProofFileLoader:
    """Tests for ProofFileLoader."""

    def test_file_path_kept(self):
        """Nothing is opened on construction."""
        assert ProofFileLoader("nowhere/proof.json").file_path == "nowhere/proof.json"

    def test_load_golden(self, tnd_proof):
        """Steps, premises and witnesses are read."""
        assert len(tnd_proof) == 2
        assert tnd_proof[0].witness == {"formula": "(in a b)"}
        assert tnd_proof[1].premises == (0,)

    def test_missing_file(self):
        """InputFileNotFoundError, chained."""
        with pytest.raises(InputFileNotFoundError) as info:
            ProofFileLoader("/nonexistent/proof.json").load()
        assert isinstance(info.value.__cause__, FileNotFoundError)

    def test_malformed_json(self):
        """InputJSONDecodeError with a line number."""
        with pytest.raises(InputJSONDecodeError) as info:
            ProofFileLoader(data_path("malformed.json")).load()
        assert info.value.line_num == 1

    def test_empty_file(self, empty_file):
        """An empty file is not JSON."""
        with pytest.raises(InputJSONDecodeError):
            ProofFileLoader(empty_file).load()


class TestProofFromData:
    """Tests for step validation."""

    @pytest.mark.parametrize(
        "data",
        [
            {"seq": []},
            [{"seq": ["(in a b)"]}],
            [{"seq": "(in a b)", "by": "axiom:TnD"}],
            [{"seq": ["(in a b)"], "by": "axiom:TnD", "extra": 1}],
            [{"seq": ["(in a b)"], "by": "rule:or", "premises": ["0"]}],
            [{"seq": ["(in a b)"], "by": "rule:or", "premises": [True]}],
            [{"seq": ["(in a b)"], "by": "rule:all", "premises": [0], "eigen": 3}],
            [{"seq": ["(in a b)"], "by": "axiom:TnD", "witness": {"formula": 1}}],
            [{"seq": ["(in a"], "by": "axiom:TnD"}],
            ["step"],
        ],
    )
    def test_rejected(self, data):
        """Each is a ProofFormatError."""
        with pytest.raises(ProofFormatError):
            proof_from_data(data)

    def test_error_names_the_step(self):
        """The failing index is reported."""
        good = {"seq": ["(in a b)"], "by": "axiom:TnD"}
        with pytest.raises(ProofFormatError) as info:
            proof_from_data([good, good, {"seq": ["(in"], "by": "axiom:TnD"}])
        assert info.value.step == 2


class TestTreeReaders:
    """Tests for tree literals, tree files, assignments and families."""

    def test_literals(self):
        """n*:k, omega* and node lists."""
        assert read_tree("n*:3") == NStar(3)
        assert read_tree("omega*") == OMEGA_STAR
        assert read_tree("[[], [0]]") == Finite.of([(), (0,)])

    def test_tree_file(self, temp_tree_file):
        """A file holding 2* node by node, with a comment."""
        tree = read_tree(temp_tree_file)
        assert tree.nodes == nstar_nodes(2)
        assert read_tree_file(data_path("n2.tree")) == tree

    def test_tree_file_errors(self):
        """Bad lines and missing parents."""
        with pytest.raises(TreeSyntaxError):
            tree_from_lines("\nx\n")
        with pytest.raises(NotSuitable):
            tree_from_lines("\n0 1\n")

    def test_unknown_literal(self):
        """Neither literal nor file."""
        with pytest.raises(TreeSyntaxError):
            read_tree("/nonexistent/tree")

    def test_assignment(self):
        """Literals and node lists by name."""
        assign = read_assignment(data_path("assign.json"))
        assert assign["a"] == NStar(2)
        assert assign["U"] == OMEGA_STAR
        assert assign["c"].nodes == nstar_nodes(2)

    def test_family(self):
        """alpha, l0 and members indexed (n, k)."""
        family, alpha, l0 = read_family(data_path("family.json"))
        assert alpha == OMEGA and l0 == 1
        assert family == {(0, 0): NStar(1), (1, 0): NStar(2)}

    def test_family_errors(self):
        """Missing fields and negative l0."""
        with pytest.raises(TreeSyntaxError):
            family_from_data([])
        with pytest.raises(TreeSyntaxError):
            family_from_data({"alpha": "1", "l0": -1})
        with pytest.raises(TreeSyntaxError):
            family_from_data({"members": [{"n": 0, "tree": "n*:1"}]})
