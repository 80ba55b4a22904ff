"""
Input File Module

Readers for the files the command line consumes: Tait proofs, trees,
tree assignments and tree families.

Classes:
    ProofFileLoader: Reads a JSON array of proof steps into a ``TaitProof``.

Functions:
    proof_from_data: Build a proof from already decoded JSON.
    read_tree_file, read_tree: Trees from files or literals.
    read_assignment: Variable-to-tree assignments for the evaluator.
    read_family: Families for ``merge_family``.

Proof file format::

    [
      {"seq": ["(nin a b)", "(in a b)"], "by": "axiom:TnD",
       "witness": {"formula": "(in a b)"}},
      {"seq": ["(or (nin a b) (in a b))"], "by": "rule:or", "premises": [0]}
    ]

Tree file format: one node per line as space-separated naturals; the root is
the empty line. Lines starting with ``#`` are comments.

Example::

    from pybhw.loader import ProofFileLoader

    proof = ProofFileLoader("proofs/pair.json").load()
    print(len(proof), proof.conclusion)

Notes:
    - Missing files, undecodable JSON and I/O failures raise the matching
      ``InputError`` subclass, chained to the original exception.
"""

import json
import logging
import os
from typing import Any, Dict, List, Mapping, Tuple

from .exceptions import (
    FormulaError,
    InputFileNotFoundError,
    InputIOError,
    InputJSONDecodeError,
    ProofFormatError,
    TreeSyntaxError,
)
from .ordinals import OrdTerm, parse
from .proof import Justification, TaitProof, TaitStep
from .sequent import Sequent
from .sexpr import read_formula
from .trees import Finite, TreeSet, parse_tree

log = logging.getLogger(__name__)


def _read_text(file_path: str, encoding: str = "utf-8") -> str:
    try:
        with open(file_path, "r", encoding=encoding) as f:
            return f.read()
    except FileNotFoundError as e:
        raise InputFileNotFoundError(file_path) from e
    except IOError as e:
        raise InputIOError(file_path, e) from e


def _read_json(file_path: str, encoding: str = "utf-8") -> Any:
    text = _read_text(file_path, encoding)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputJSONDecodeError(file_path, e.lineno, e) from e


# Proofs


def _step_from_data(index: int, raw: Any) -> TaitStep:
    if not isinstance(raw, dict):
        raise ProofFormatError(index, "step must be a JSON object")
    unknown = set(raw) - {"seq", "by", "premises", "eigen", "witness"}
    if unknown:
        raise ProofFormatError(index, f"unknown keys {sorted(unknown)}")
    seq = raw.get("seq")
    if not isinstance(seq, list) or not all(isinstance(f, str) for f in seq):
        raise ProofFormatError(index, "'seq' must be a list of formula strings")
    by = raw.get("by")
    if not isinstance(by, str):
        raise ProofFormatError(index, "'by' must be a string")
    premises = raw.get("premises", [])
    if not isinstance(premises, list) or not all(
        isinstance(j, int) and not isinstance(j, bool) for j in premises
    ):
        raise ProofFormatError(index, "'premises' must be a list of integers")
    eigen = raw.get("eigen")
    if eigen is not None and not isinstance(eigen, str):
        raise ProofFormatError(index, "'eigen' must be a string")
    witness = raw.get("witness", {})
    if not isinstance(witness, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in witness.items()
    ):
        raise ProofFormatError(index, "'witness' must map names to strings")
    try:
        formulas = [read_formula(text) for text in seq]
    except FormulaError as e:
        raise ProofFormatError(index, str(e)) from e
    return TaitStep(
        seq=Sequent(formulas),
        by=Justification.parse(by, index),
        premises=tuple(premises),
        eigen=eigen,
        witness=dict(witness),
    )


def proof_from_data(data: Any) -> TaitProof:
    """
    Raises:
        ProofFormatError: If data is not a list of well-formed steps.
    """
    if not isinstance(data, list):
        raise ProofFormatError(0, "a proof must be a JSON array of steps")
    return TaitProof(_step_from_data(i, raw) for i, raw in enumerate(data))


class ProofFileLoader:
    """
    Reader for proof files.

    Attributes:
        file_path (str): The proof file. It is not opened until ``load``.
    """

    def __init__(self, file_path: str) -> None:
        self._file_path = file_path

    @property
    def file_path(self) -> str:
        return self._file_path

    def load(self, encoding: str = "utf-8") -> TaitProof:
        proof = proof_from_data(_read_json(self._file_path, encoding))
        log.info("loaded %d steps from %s", len(proof), self._file_path)
        return proof


# Trees


def tree_from_lines(text: str, source: str = "<tree>") -> Finite:
    """
    Raises:
        TreeSyntaxError: On a line that is not a list of naturals.
        NotSuitable: If the nodes do not form a suitable tree.
    """
    nodes: List[Tuple[int, ...]] = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        parts = stripped.split()
        if not all(p.isdigit() for p in parts):
            raise TreeSyntaxError(source, f"bad node line {line!r}")
        nodes.append(tuple(int(p) for p in parts))
    return Finite.of(nodes)


def read_tree_file(file_path: str, encoding: str = "utf-8") -> Finite:
    return tree_from_lines(_read_text(file_path, encoding), file_path)


def read_tree(text: str) -> TreeSet:
    """A tree literal (``n*:k``, ``omega*``, JSON node list) or a tree file path."""
    text = text.strip()
    if text == "omega*" or text.startswith("n*:") or text.startswith("["):
        return parse_tree(text)
    if os.path.exists(text):
        return read_tree_file(text)
    raise TreeSyntaxError(text, "neither a tree literal nor an existing tree file")


def _tree_value(value: Any, where: str) -> TreeSet:
    if isinstance(value, str):
        return read_tree(value)
    if isinstance(value, list):
        return parse_tree(json.dumps(value))
    raise TreeSyntaxError(where, f"expected a tree literal or node list, got {value!r}")


def read_assignment(file_path: str) -> Dict[str, TreeSet]:
    """
    A JSON object mapping variable and relation names to trees.

    Example file::

        {"a": "n*:3", "b": [[], [0], [1], [1, 0]], "U": "omega*"}
    """
    data = _read_json(file_path)
    if not isinstance(data, dict):
        raise TreeSyntaxError(file_path, "an assignment must be a JSON object")
    return {name: _tree_value(value, f"{file_path}:{name}") for name, value in data.items()}


Family = Tuple[Dict[Tuple[int, int], TreeSet], OrdTerm, int]


def family_from_data(data: Any, source: str = "<family>") -> Family:
    if not isinstance(data, dict) or not isinstance(data.get("members", []), list):
        raise TreeSyntaxError(source, "a family is an object with alpha, l0 and members")
    alpha = parse(str(data.get("alpha", "0")))
    l0 = data.get("l0", 0)
    if not isinstance(l0, int) or l0 < 0:
        raise TreeSyntaxError(source, "l0 must be a natural number")
    members: Dict[Tuple[int, int], TreeSet] = {}
    for i, member in enumerate(data.get("members", [])):
        if not isinstance(member, Mapping) or not {"n", "k", "tree"} <= set(member):
            raise TreeSyntaxError(source, f"member {i} needs n, k and tree")
        members[(int(member["n"]), int(member["k"]))] = _tree_value(member["tree"], f"{source}:{i}")
    return members, alpha, l0


def read_family(file_path: str) -> Family:
    """
    A family file for ``merge_family``.

    Example file::

        {"alpha": "w", "l0": 1,
         "members": [{"n": 0, "k": 0, "tree": "n*:1"}, {"n": 1, "k": 0, "tree": "n*:2"}]}
    """
    return family_from_data(_read_json(file_path), file_path)
