"""
pybhw Exceptions Module

This module defines the exceptions raised by the ordinal notation system, the
formula layer, the Tait checker, the RS* certificate machinery, the tree
encoding and the input file readers.

All exceptions inherit from the base BHWError class, so callers can catch a
specific failure or every domain failure with a single handler. The command
line front end maps any BHWError to exit code 1.

.. code-block:: text

    Exception Hierarchy:
        BHWError (base)
        ├── OrdinalError
        │   ├── NotNormalForm
        │   ├── NotInC
        │   └── OrdinalSyntaxError
        ├── FormulaError
        │   ├── FormulaSyntaxError
        │   ├── FormulaClassError
        │   └── OrdinalRangeError
        ├── TaitCheckError
        │   ├── UnknownAxiom
        │   ├── NonDelta0Witness
        │   ├── MissingWitness
        │   ├── EigenvariableViolation
        │   ├── ShapeMismatch
        │   └── CutFormulaMissing
        ├── CertificateError
        │   ├── SideConditionViolation
        │   ├── PreconditionError
        │   ├── HypothesisViolation
        │   └── EmbeddingError
        ├── TreeError
        │   ├── NotSuitable
        │   ├── MaterializationLimit
        │   └── TreeSyntaxError
        ├── EvaluationError
        └── InputError
            ├── InputFileNotFoundError
            ├── InputJSONDecodeError
            ├── InputIOError
            └── ProofFormatError

    Warnings:
        BudgetExhaustedWarning (UserWarning)

Example:
    Handling checker failures::

        from pybhw import ProofFileLoader, check_proof
        from pybhw.exceptions import InputFileNotFoundError, BHWError

        try:
            proof = ProofFileLoader("pair.json").load()
            report = check_proof(proof)
        except InputFileNotFoundError as e:
            print(f"No such proof: {e.file_path}")
        except BHWError as e:
            print(f"Failed: {e}")

    Locating a broken certificate node::

        from pybhw.exceptions import SideConditionViolation

        try:
            cert_check(cert)
        except SideConditionViolation as e:
            print(e.path, e.reason)

Notes:
    - Every exception carries its context as attributes as well as in the message
    - Messages are single lines so the CLI can print them verbatim
    - File errors keep the underlying exception in 'original_error'
"""

from typing import Any, Optional, Sequence


class BHWError(Exception):
    """
    Base exception for all pybhw domain errors.

    Example:
        >>> try:
        ...     psi(parse("p(W)"))
        ... except BHWError as e:
        ...     print(f"Rejected: {e}")
    """

    pass


class BudgetExhaustedWarning(UserWarning):
    """Issued when sampled checking stops at its depth budget."""

    pass


# Ordinals


class OrdinalError(BHWError):
    """Base class for errors in the ordinal notation system."""

    pass


class NotNormalForm(OrdinalError):
    """
    Raised when a term violates the normal-form discipline.

    Attributes:
        term (str): Rendering of the offending term.
        reason (str): Which normal-form clause failed.
    """

    def __init__(self, term: str, reason: str) -> None:
        self.term = term
        self.reason = reason
        super().__init__(f"not in normal form: {term} ({reason})")


class NotInC(OrdinalError):
    """
    Raised when psi is applied to an argument outside its own C-set.

    Attributes:
        argument (str): Rendering of the rejected argument.
        witness (str): The psi subterm that is not below the argument.
    """

    def __init__(self, argument: str, witness: str) -> None:
        self.argument = argument
        self.witness = witness
        super().__init__(f"psi argument {argument} is not in C({argument},0): contains {witness}")


class OrdinalSyntaxError(OrdinalError):
    """
    Raised when ordinal text cannot be parsed.

    Attributes:
        text (str): The input text.
        position (int): Zero-based offset where parsing stopped.
    """

    def __init__(self, text: str, position: int, expected: str) -> None:
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"bad ordinal {text!r} at offset {position}: expected {expected}")


# Formulas


class FormulaError(BHWError):
    """Base class for formula construction and transformation errors."""

    pass


class FormulaSyntaxError(FormulaError):
    """
    Raised by the s-expression reader.

    Attributes:
        text (str): The input text, or the offending fragment.
        reason (str): What went wrong.
    """

    def __init__(self, text: str, reason: str) -> None:
        self.text = text
        self.reason = reason
        snippet = text if len(text) <= 60 else text[:60] + "..."
        super().__init__(f"bad formula {snippet!r}: {reason}")


class FormulaClassError(FormulaError):
    """
    Raised when an operation needs a formula from a specific class.

    Attributes:
        formula (str): Rendering of the formula.
        required (str): Name of the class that was required.
    """

    def __init__(self, formula: str, required: str) -> None:
        self.formula = formula
        self.required = required
        super().__init__(f"formula {formula} is not in class {required}")


class OrdinalRangeError(FormulaError):
    """Raised when a level annotation is not below Omega."""

    def __init__(self, ordinal: str) -> None:
        self.ordinal = ordinal
        super().__init__(f"level annotation {ordinal} must be below W")


# Tait checker


class TaitCheckError(BHWError):
    """Base class for failures found by the Tait checker."""

    pass


class UnknownAxiom(TaitCheckError):
    """Raised for an axiom name with no registered schema."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown axiom schema: {name}")


class NonDelta0Witness(TaitCheckError):
    """
    Raised when a schema that needs a Delta0 formula gets something else.

    Attributes:
        axiom (str): Axiom schema name.
        formula (str): Rendering of the witness formula.
    """

    def __init__(self, axiom: str, formula: str) -> None:
        self.axiom = axiom
        self.formula = formula
        super().__init__(f"{axiom} needs a Delta0 witness, got {formula}")


class MissingWitness(TaitCheckError):
    """Raised when an axiom justification lacks a witness key."""

    def __init__(self, axiom: str, key: str) -> None:
        self.axiom = axiom
        self.key = key
        super().__init__(f"{axiom} justification is missing witness {key!r}")


class EigenvariableViolation(TaitCheckError):
    """
    Raised when an eigenvariable occurs free in the conclusion.

    Attributes:
        rule (str): The rule being checked.
        variable (str): The offending eigenvariable.
    """

    def __init__(self, rule: str, variable: str) -> None:
        self.rule = rule
        self.variable = variable
        super().__init__(f"eigenvariable {variable} of ({rule}) occurs in the conclusion")


class ShapeMismatch(TaitCheckError):
    """Raised when premises and conclusion do not fit the rule."""

    def __init__(self, rule: str, reason: str) -> None:
        self.rule = rule
        self.reason = reason
        super().__init__(f"({rule}) does not apply: {reason}")


class CutFormulaMissing(TaitCheckError):
    """Raised when two cut premises do not share a complementary pair."""

    def __init__(self, left: Sequence[str], right: Sequence[str]) -> None:
        self.left = list(left)
        self.right = list(right)
        super().__init__(
            f"no cut formula: extra formulas {self.left} and {self.right} are not complementary"
        )


# RS* certificates


class CertificateError(BHWError):
    """Base class for RS* certificate errors."""

    pass


class SideConditionViolation(CertificateError):
    """
    Raised by the certificate checker on the first failing node.

    Attributes:
        path (tuple): Premise keys leading from the root to the node.
        reason (str): The violated side condition.
    """

    def __init__(self, path: Sequence[Any], reason: str) -> None:
        self.path = tuple(path)
        self.reason = reason
        where = "/".join(str(step) for step in self.path) or "root"
        super().__init__(f"at {where}: {reason}")


class PreconditionError(CertificateError):
    """
    Raised when a certificate transformer is applied outside its domain.

    Attributes:
        operation (str): Name of the transformer.
        reason (str): The failed precondition.
    """

    def __init__(self, operation: str, reason: str) -> None:
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation}: {reason}")


class HypothesisViolation(CertificateError):
    """
    Raised when collapse is called on a certificate that misses a hypothesis.

    Attributes:
        hypothesis (str): Short name of the failed hypothesis.
        detail (str): Additional context.
    """

    def __init__(self, hypothesis: str, detail: str = "") -> None:
        self.hypothesis = hypothesis
        self.detail = detail
        suffix = f": {detail}" if detail else ""
        super().__init__(f"collapse hypothesis {hypothesis} fails{suffix}")


class EmbeddingError(CertificateError):
    """Raised when a Tait proof cannot be embedded."""

    def __init__(self, step: Optional[int], reason: str) -> None:
        self.step = step
        self.reason = reason
        where = f"step {step}" if step is not None else "proof"
        super().__init__(f"cannot embed {where}: {reason}")


# Trees


class TreeError(BHWError):
    """Base class for suitable-tree errors."""

    pass


class NotSuitable(TreeError):
    """Raised when a node set is empty or not prefix closed."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"not a suitable tree: {reason}")


class MaterializationLimit(TreeError):
    """Raised when a symbolic tree would exceed the node budget."""

    def __init__(self, tree: str, limit: int) -> None:
        self.tree = tree
        self.limit = limit
        super().__init__(f"cannot materialize {tree} within {limit} nodes")


class TreeSyntaxError(TreeError):
    """Raised for malformed tree literals or tree file lines."""

    def __init__(self, text: str, reason: str) -> None:
        self.text = text
        self.reason = reason
        super().__init__(f"bad tree {text!r}: {reason}")


class EvaluationError(BHWError):
    """Raised when a formula cannot be evaluated on trees."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"cannot evaluate: {reason}")


# Input files


class InputError(BHWError):
    """Base class for errors while reading input files."""

    pass


class InputFileNotFoundError(InputError):
    """
    Raised when an input file cannot be found.

    Attributes:
        file_path (str): The path that was not found.
    """

    def __init__(self, file_path: str) -> None:
        self.file_path = file_path
        super().__init__(f"input file not found: {file_path}")


class InputJSONDecodeError(InputError):
    """
    Raised when an input file is not valid JSON.

    Attributes:
        file_path (str): The file being decoded.
        line_num (int): 1-indexed line of the error.
        original_error (Exception): The underlying json error.
    """

    def __init__(self, file_path: str, line_num: int, original_error: Exception) -> None:
        self.file_path = file_path
        self.line_num = line_num
        self.original_error = original_error
        super().__init__(f"invalid JSON in {file_path} on line {line_num}: {original_error}")


class InputIOError(InputError):
    """Raised for I/O failures other than a missing file."""

    def __init__(self, file_path: str, original_error: Exception) -> None:
        self.file_path = file_path
        self.original_error = original_error
        super().__init__(f"error reading file {file_path}: {original_error}")


class ProofFormatError(InputError):
    """
    Raised when a proof step does not follow the step format.

    Attributes:
        step (int): 0-based step index.
        reason (str): What is wrong with the step.
    """

    def __init__(self, step: int, reason: str) -> None:
        self.step = step
        self.reason = reason
        super().__init__(f"step {step}: {reason}")
