"""
Tests for the bhw command line.
"""

import json

import pytest

from pybhw.cli import build_parser, main
from pybhw.ordinals import OMEGA, parse, succ

from .conftest import data_path

pytestmark = pytest.mark.filterwarnings("ignore::pybhw.exceptions.BudgetExhaustedWarning")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


class TestOrd:
    """Tests for bhw ord."""

    def test_cmp(self, capsys):
        """psi(0) < Omega."""
        assert run(capsys, "ord", "cmp", "p(0)", "W")[:2] == (0, "LT")

    def test_nf(self, capsys):
        """Canonical spelling."""
        assert run(capsys, "ord", "nf", "2")[1] == "w^(0) + w^(0)"

    def test_natural_sum(self, capsys):
        """# is accepted on the command line."""
        code, out, _ = run(capsys, "ord", "nf", "1 # w")
        assert code == 0 and parse(out) == succ(OMEGA)

    def test_in_c(self, capsys):
        """Booleans print as true and false."""
        assert run(capsys, "ord", "inC", "p(0)", "1")[1] == "true"

    def test_arity(self, capsys):
        """cmp takes two terms."""
        code, _, err = run(capsys, "ord", "cmp", "W")
        assert code == 2 and "takes 2" in err

    def test_syntax_error(self, capsys):
        """Malformed ordinals are domain errors."""
        code, _, err = run(capsys, "ord", "nf", "w^(")
        assert code == 1 and "error: OrdinalSyntaxError" in err


class TestFml:
    """Tests for bhw fml."""

    def test_rank(self, capsys):
        """An unbounded existential has rank Omega."""
        assert run(capsys, "fml", "rank", "(ex x (in x a))")[1] == "W"

    def test_neg(self, capsys):
        """Negation prints as an s-expression."""
        assert run(capsys, "fml", "neg", "(in a b)")[1] == "(nin a b)"

    def test_bound_needs_argument(self, capsys):
        """bound takes an ordinal."""
        assert run(capsys, "fml", "bound", "(ex x (in x a))")[0] == 2


class TestProof:
    """Tests for bhw proof check."""

    def test_golden(self, capsys):
        """A correct proof exits 0."""
        code, out, _ = run(capsys, "proof", "check", data_path("tnd.json"))
        assert code == 0 and json.loads(out)["ok"] is True

    def test_bad_step(self, capsys):
        """A failed check exits 1 with the failing step."""
        code, out, _ = run(capsys, "proof", "check", data_path("bad_step.json"))
        assert code == 1
        assert json.loads(out)["failures"][0]["step"] == 0

    def test_malformed(self, capsys):
        """An unreadable proof is a domain error."""
        code, _, err = run(capsys, "proof", "check", data_path("malformed.json"))
        assert code == 1 and "error: InputJSONDecodeError" in err


class TestRs:
    """Tests for bhw rs."""

    def test_builders(self, capsys):
        """A builder certificate with its check."""
        code, out, _ = run(capsys, "rs", "builders", "pair", "--depth", "2", "--samples", "2")
        result = json.loads(out)
        assert code == 0 and result["check"]["ok"]
        assert result["rule"] == "cut"

    def test_pipeline(self, capsys):
        """The pipeline report of the tertium non datur proof."""
        code, out, _ = run(capsys, "rs", "pipeline", data_path("tnd.json"), "--depth", "2")
        report = json.loads(out)
        assert code == 0 and report["status"].startswith("verified")
        assert (report["m"], report["n"], report["cutIndex"]) == (1, 0, 0)

    def test_pipeline_seed_from_environment(self, capsys, monkeypatch):
        """BHW_SEED changes nothing but sampling."""
        first = json.loads(run(capsys, "rs", "pipeline", data_path("tnd.json"), "--depth", "2")[1])
        monkeypatch.setenv("BHW_SEED", "11")
        second = json.loads(run(capsys, "rs", "pipeline", data_path("tnd.json"), "--depth", "2")[1])
        assert first["finalBound"] == second["finalBound"]

    def test_bad_seed(self, capsys, monkeypatch):
        """A non-integer BHW_SEED is a usage error."""
        monkeypatch.setenv("BHW_SEED", "x")
        assert run(capsys, "rs", "pipeline", data_path("tnd.json"))[0] == 2

    def test_hypothesis_violation(self, capsys):
        """An unbounded universal end sequent is refused."""
        code, _, err = run(capsys, "rs", "pipeline", data_path("pair.json"), "--depth", "2")
        assert code == 1 and "HypothesisViolation" in err


class TestTree:
    """Tests for bhw tree."""

    def test_mem(self, capsys):
        """2 in* 5."""
        assert run(capsys, "tree", "mem", "n*:2", "n*:5")[1] == "true"

    def test_eq_file(self, capsys):
        """A tree file against a literal."""
        assert run(capsys, "tree", "eq", data_path("n2.tree"), "n*:2")[1] == "true"

    def test_suitable(self, capsys):
        """A rootless tree is not suitable."""
        assert run(capsys, "tree", "suitable", "[[0]]")[:2] == (0, "false")
        assert run(capsys, "tree", "suitable", "[[], [0]]")[1] == "true"

    def test_alpha(self, capsys):
        """omega* is an (omega+1)-tree."""
        result = json.loads(run(capsys, "tree", "alpha", "omega*", "w + 1")[1])
        assert result["alphaTree"] and parse(result["root"]) == OMEGA

    def test_merge(self, capsys):
        """The merged root is alpha + l0."""
        result = json.loads(run(capsys, "tree", "merge", data_path("family.json"))[1])
        assert parse(result["root"]) == succ(OMEGA)


class TestEvalAndSelftest:
    """Tests for bhw eval and bhw selftest."""

    def test_eval(self, capsys):
        """Truth under an assignment file."""
        out = run(capsys, "eval", "(in a b)", "--assign", data_path("assign.json"))[1]
        assert out == "true"

    def test_eval_unknown(self, capsys):
        """A universal over omega* without a counterexample is unknown."""
        assert run(capsys, "eval", "(ball x omega (in x omega))")[1] == "unknown"

    def test_eval_unbounded(self, capsys):
        """Unbounded formulas are refused."""
        code, _, err = run(capsys, "eval", "(ex x (in x a))")
        assert code == 1 and "EvaluationError" in err

    def test_selftest(self, capsys):
        """Selected suites at quick budgets."""
        code, out, _ = run(capsys, "selftest", "--quick", "--only", "psi_monotone")
        result = json.loads(out)
        assert code == 0 and result["ok"]
        assert [s["suite"] for s in result["suites"]] == ["psi_monotone"]


class TestParser:
    """Tests for build_parser and main."""

    def test_missing_command(self, capsys):
        """A command is required."""
        assert main([]) == 2

    def test_help(self, capsys):
        """--help exits 0."""
        assert main(["--help"]) == 0
        assert "selftest" in capsys.readouterr().out

    def test_builder_choices(self):
        """Every builder is a choice of rs builders."""
        args = build_parser().parse_args(["rs", "builders", "sep"])
        assert args.name == "sep" and args.level == "1"
