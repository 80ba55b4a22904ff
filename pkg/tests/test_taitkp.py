"""
Tests for the Tait proof checker.
"""

import copy
import json
from typing import Any, Dict, Iterator, List, Tuple

import pytest

from pybhw.exceptions import (
    CutFormulaMissing,
    EigenvariableViolation,
    MissingWitness,
    NonDelta0Witness,
    ShapeMismatch,
    UnknownAxiom,
)
from pybhw.formulas import MemberOf, Var
from pybhw.loader import proof_from_data
from pybhw.sequent import Sequent
from pybhw.sexpr import read_formula as F
from pybhw.tags import TaitAxiom, TaitRule
from pybhw.taitkp import (
    axiom_instance,
    check_axiom,
    check_proof,
    check_rule,
    get_schema,
    register_schema,
    registered_schemas,
    unregister_schema,
)

from .conftest import GOLDEN, data_path, load_golden


def _raw(name: str) -> List[Dict[str, Any]]:
    with open(data_path(name), encoding="utf-8") as f:
        return json.load(f)


def mutants() -> Iterator[Tuple[str, int, str, List[Dict[str, Any]]]]:
    """Single-step corruptions of every golden proof."""
    for name in GOLDEN:
        steps = _raw(name)
        for i, step in enumerate(steps):
            bad = copy.deepcopy(steps)
            bad[i]["seq"] = ["(in q q)"]
            yield name, i, "unrelated-sequent", bad
            if step["by"].startswith("axiom:"):
                bad = copy.deepcopy(steps)
                bad[i]["by"] = "axiom:NoSuchSchema"
                yield name, i, "unknown-axiom", bad
                for key in step.get("witness", {}):
                    bad = copy.deepcopy(steps)
                    del bad[i]["witness"][key]
                    yield name, i, f"drop-{key}", bad
            else:
                bad = copy.deepcopy(steps)
                bad[i]["premises"] = [i]
                yield name, i, "self-premise", bad
                if "eigen" in step:
                    bad = copy.deepcopy(steps)
                    del bad[i]["eigen"]
                    yield name, i, "no-eigen", bad


MUTANTS = list(mutants())


class TestGoldenProofs:
    """Tests for the golden corpus."""

    @pytest.mark.parametrize("name", GOLDEN)
    def test_accepted(self, name):
        """Every golden proof checks."""
        report = check_proof(load_golden(name))
        assert report.ok, report.to_dict()
        assert report.failures == []

    def test_one_proof_per_axiom_family(self):
        """The corpus covers every built-in schema."""
        used = set()
        for name in GOLDEN:
            used |= {s.by.name for s in load_golden(name) if s.by.is_axiom}
        assert used == {ax.value for ax in TaitAxiom}

    def test_rules_exercised(self, rules_proof):
        """The rules proof uses every rule."""
        used = {s.by.name for s in rules_proof if not s.by.is_axiom}
        assert used == {r.value for r in TaitRule}

    def test_report_measures(self, tnd_proof):
        """Step count and longest formula."""
        report = check_proof(tnd_proof)
        assert report.length_k == 2
        assert report.max_formula_length == 1
        assert report.to_dict() == {"ok": True, "lengthK": 2, "maxFormulaLength": 1, "failures": []}

    def test_matches_recorded(self, rules_proof):
        """Rule matches carry witnesses, eigenvariables and cut formulas."""
        matches = check_proof(rules_proof).matches
        assert matches[1].term == Var("a")
        assert matches[3].eigen == "a"
        assert matches[7].cut_formula == F("(or (nin c d) (in c d))")
        assert matches[15].rel == "U"
        assert 0 not in matches


class TestMutants:
    """Every single-step corruption is rejected at the corrupted step."""

    def test_enough_mutants(self):
        """The corpus yields at least fifty mutants."""
        assert len(MUTANTS) >= 50

    @pytest.mark.parametrize(
        "name,index,kind,steps",
        MUTANTS,
        ids=[f"{n}-{i}-{k}" for n, i, k, _ in MUTANTS],
    )
    def test_rejected(self, name, index, kind, steps):
        """The report fails and locates the step."""
        report = check_proof(proof_from_data(steps))
        assert not report.ok
        assert index in {f.step for f in report.failures}

    def test_bad_step_file(self):
        """The shipped bad proof fails at its axiom step only."""
        report = check_proof(load_golden("bad_step.json"))
        assert [f.step for f in report.failures] == [0]
        assert report.failures[0].error == "ShapeMismatch"


class TestAxioms:
    """Tests for axiom schemas."""

    def test_tnd_instance(self):
        """not D, D."""
        assert axiom_instance("TnD", {"formula": "(in a b)"}) == [F("(nin a b)"), F("(in a b)")]

    def test_tnd_needs_delta0(self):
        """Unbounded witnesses are refused."""
        with pytest.raises(NonDelta0Witness):
            axiom_instance("TnD", {"formula": "(ex x (in x a))"})

    def test_eps_ind_accepts_unbounded(self):
        """Set induction takes any set-theoretic formula."""
        inst = axiom_instance("EpsInd", {"formula": "(ex y (in y x))", "var": "x"})
        assert len(inst) == 1

    def test_eps_ind_refuses_level_atoms(self):
        """But not RS* formulas."""
        with pytest.raises(NonDelta0Witness):
            axiom_instance("EpsInd", {"formula": "(M 1 x)", "var": "x"})

    def test_unknown(self):
        """Unregistered names raise UnknownAxiom."""
        with pytest.raises(UnknownAxiom):
            axiom_instance("Choice", {})

    def test_missing_witness(self):
        """The missing key is named."""
        with pytest.raises(MissingWitness) as info:
            axiom_instance("Pair", {"a": "a"})
        assert info.value.key == "b"

    def test_check_axiom_weakening(self):
        """Extra side formulas are allowed."""
        s = Sequent.of(F("(nin a b)"), F("(in a b)"), F("(in c d)"))
        assert check_axiom(s, TaitAxiom.TND, {"formula": "(in a b)"})
        assert not check_axiom(Sequent.of(F("(in a b)")), "TnD", {"formula": "(in a b)"})


class TestRegistry:
    """Tests for runtime schema registration."""

    def test_register_and_use(self):
        """A registered schema is checked like a built-in one."""
        register_schema("SelfMember", lambda w: [MemberOf(w.term("a"), w.term("a"))])
        try:
            assert "SelfMember" in registered_schemas()
            proof = proof_from_data(
                [{"seq": ["(in e e)"], "by": "axiom:SelfMember", "witness": {"a": "e"}}]
            )
            assert check_proof(proof).ok
        finally:
            unregister_schema("SelfMember")
        with pytest.raises(UnknownAxiom):
            get_schema("SelfMember")

    def test_builtins_cannot_be_removed(self):
        """unregister_schema refuses built-in names."""
        with pytest.raises(ValueError):
            unregister_schema("TnD")


class TestRules:
    """Tests for check_rule."""

    def test_or(self):
        """A or B from A, B."""
        m = check_rule(Sequent.of(F("(or (in a b) (nin a b))")), "or", [Sequent.of(F("(in a b)"))])
        assert m.rule is TaitRule.OR

    def test_arity(self):
        """(and) needs two premises."""
        with pytest.raises(ShapeMismatch):
            check_rule(Sequent.of(F("(and (in a b) (in b a))")), "and", [Sequent.of(F("(in a b)"))])

    def test_unknown_rule(self):
        """Unknown rule names are shape mismatches."""
        with pytest.raises(ShapeMismatch):
            check_rule(Sequent.of(F("(in a b)")), "mp", [])

    def test_ex_finds_witness(self):
        """The witness term is searched among free variables."""
        m = check_rule(Sequent.of(F("(ex x (in x b))")), "ex", [Sequent.of(F("(in c b)"))])
        assert m.term == Var("c")

    def test_eigenvariable_condition(self):
        """The eigenvariable must not be free in the conclusion."""
        concl = Sequent.of(F("(all x (in x b))"), F("(nin a c)"))
        with pytest.raises(EigenvariableViolation):
            check_rule(concl, "all", [Sequent.of(F("(in a b)"), F("(nin a c)"))], eigen="a")

    def test_eigenvariable_required(self):
        """Universal rules name their eigenvariable."""
        with pytest.raises(ShapeMismatch):
            check_rule(Sequent.of(F("(all x (in x b))")), "all", [Sequent.of(F("(in a b)"))])

    def test_cut_with_hint(self):
        """The witness names the cut formula."""
        c = F("(in a b)")
        m = check_rule(
            Sequent.of(F("(in c d)")),
            "cut",
            [Sequent.of(F("(in c d)"), c), Sequent.of(F("(in c d)"), F("(nin a b)"))],
            witness={"formula": "(in a b)"},
        )
        assert m.cut_formula == c

    def test_cut_without_complementary_pair(self):
        """CutFormulaMissing when the extras do not match."""
        with pytest.raises(CutFormulaMissing):
            check_rule(
                Sequent.of(F("(in c d)")),
                "cut",
                [Sequent.of(F("(in a b)")), Sequent.of(F("(in b a)"))],
            )

    def test_bounded_universal(self):
        """(ball) from not(u in a) or F[u]."""
        m = check_rule(
            Sequent.of(F("(ball x a (in x b))")),
            "ball",
            [Sequent.of(F("(or (nin u a) (in u b))"))],
            eigen="u",
        )
        assert m.eigen == "u"
