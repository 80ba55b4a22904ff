"""
Tait Proof Representation Module

A Tait proof is a finite sequence of sequents Theta_0, ..., Theta_k. Each step
names its justification: an axiom schema with the witnesses that instantiate
it, or an inference rule with the indices of its premises and, for the
universal rules, its eigenvariable.

Classes:
    Justification: The parsed ``"by"`` field of a step.
    TaitStep: One step of a proof.
    TaitProof: An ordered collection of steps.

Example:
    Building a proof in code::

        from pybhw.proof import TaitProof, TaitStep
        from pybhw.sexpr import read_formula

        f = read_formula("(in a b)")
        proof = TaitProof()
        proof.add_step(TaitStep.axiom([negate(f), f], "TnD", {"formula": "(in a b)"}))
        proof.add_step(TaitStep.rule([Or(negate(f), f)], "or", [0]))

    Serializing::

        proof.to_json()   # the same JSON array format the loader reads

Notes:
    - Sequents keep set semantics; duplicates in the input collapse.
    - Witness values stay as text until the axiom schema that consumes them
      parses them, so unknown schemas can still be loaded and reported.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .exceptions import ProofFormatError
from .formulas import Formula
from .sequent import Sequent
from .sexpr import render_formula
from .tags import TaitRule

AXIOM_PREFIX = "axiom:"
RULE_PREFIX = "rule:"


@dataclass(frozen=True)
class Justification:
    """
    Attributes:
        kind: ``"axiom"`` or ``"rule"``.
        name: Schema name or rule name as written in the file.
    """

    kind: str
    name: str

    @classmethod
    def parse(cls, text: str, step: int = 0) -> "Justification":
        for prefix in (AXIOM_PREFIX, RULE_PREFIX):
            if text.startswith(prefix) and len(text) > len(prefix):
                return cls(prefix[:-1], text[len(prefix) :])
        raise ProofFormatError(step, f"justification must be 'axiom:<name>' or 'rule:<name>', got {text!r}")

    @property
    def is_axiom(self) -> bool:
        return self.kind == "axiom"

    @property
    def rule(self) -> Optional[TaitRule]:
        if self.is_axiom:
            return None
        try:
            return TaitRule(self.name)
        except ValueError:
            return None

    def __str__(self) -> str:
        return f"{self.kind}:{self.name}"


@dataclass
class TaitStep:
    """
    One step of a Tait proof.

    Attributes:
        seq (Sequent): The sequent derived at this step.
        by (Justification): Axiom schema or rule.
        premises (Tuple[int, ...]): Indices of earlier steps.
        eigen (Optional[str]): Eigenvariable of (all), (ball) or (all2).
        witness (Dict[str, str]): Schema witnesses or rule hints, as text.
    """

    seq: Sequent
    by: Justification
    premises: Tuple[int, ...] = ()
    eigen: Optional[str] = None
    witness: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def axiom(
        cls, formulas: Iterable[Formula], name: str, witness: Optional[Mapping[str, str]] = None
    ) -> "TaitStep":
        return cls(Sequent(formulas), Justification("axiom", name), (), None, dict(witness or {}))

    @classmethod
    def rule(
        cls,
        formulas: Iterable[Formula],
        name: Union[str, TaitRule],
        premises: Iterable[int],
        eigen: Optional[str] = None,
        witness: Optional[Mapping[str, str]] = None,
    ) -> "TaitStep":
        name = name.value if isinstance(name, TaitRule) else name
        return cls(
            Sequent(formulas), Justification("rule", name), tuple(premises), eigen, dict(witness or {})
        )

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "seq": [render_formula(f) for f in self.seq],
            "by": str(self.by),
        }
        if not self.by.is_axiom:
            out["premises"] = list(self.premises)
        if self.eigen is not None:
            out["eigen"] = self.eigen
        if self.witness:
            out["witness"] = dict(self.witness)
        return out

    def __str__(self) -> str:
        prem = f" from {list(self.premises)}" if self.premises else ""
        return f"{self.seq}  [{self.by}{prem}]"


class TaitProof:
    """
    An ordered collection of Tait steps; the last step is the proved sequent.

    Supports ``len``, iteration and indexing like a list.
    """

    def __init__(self, steps: Iterable[TaitStep] = ()) -> None:
        self._steps: List[TaitStep] = list(steps)

    def add_step(self, step: TaitStep) -> None:
        self._steps.append(step)

    def __iter__(self) -> Iterator[TaitStep]:
        return iter(self._steps)

    def __len__(self) -> int:
        return len(self._steps)

    def __getitem__(self, index: int) -> TaitStep:
        return self._steps[index]

    def __bool__(self) -> bool:
        return bool(self._steps)

    @property
    def steps(self) -> List[TaitStep]:
        return list(self._steps)

    @property
    def conclusion(self) -> Sequent:
        if not self._steps:
            return Sequent()
        return self._steps[-1].seq

    def max_formula_length(self) -> int:
        return max((step.seq.max_length() for step in self._steps), default=0)

    def to_list(self) -> List[Dict[str, Any]]:
        return [step.to_dict() for step in self._steps]

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_list(), indent=indent)

    def __repr__(self) -> str:
        return f"TaitProof(steps={len(self._steps)})"
