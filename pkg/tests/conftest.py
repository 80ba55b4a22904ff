"""
Pytest configuration and shared fixtures for pybhw tests.
"""

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Generator, List

import pytest

from pybhw.loader import ProofFileLoader
from pybhw.ordinals import BIG_OMEGA, OMEGA, ONE, ZERO, omega_pow, parse, psi, succ
from pybhw.proof import TaitProof

DATA_DIR = Path(__file__).parent / "data"

GOLDEN = [
    "tnd.json",
    "pair.json",
    "union.json",
    "empty_set.json",
    "infinity.json",
    "equality.json",
    "sub_omega.json",
    "separation.json",
    "collection.json",
    "eps_ind.json",
    "comprehension.json",
    "rules.json",
    "or_cut.json",
    "omega_cut.json",
    "collection_cut.json",
]


def data_path(name: str) -> str:
    return str(DATA_DIR / name)


def load_golden(name: str) -> TaitProof:
    return ProofFileLoader(data_path(name)).load()


@pytest.fixture(autouse=True)
def _no_seed_override(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep a BHW_SEED from the calling shell out of the tests."""
    monkeypatch.delenv("BHW_SEED", raising=False)


@pytest.fixture
def ordinal_pool() -> List[Any]:
    """A small increasing list of notation terms."""
    return [
        ZERO,
        ONE,
        succ(ONE),
        OMEGA,
        succ(OMEGA),
        omega_pow(OMEGA),
        psi(ZERO),
        psi(ONE),
        BIG_OMEGA,
        succ(BIG_OMEGA),
        parse("W + w"),
        parse("w^(W+1)"),
    ]


@pytest.fixture
def tnd_proof() -> TaitProof:
    return load_golden("tnd.json")


@pytest.fixture
def rules_proof() -> TaitProof:
    return load_golden("rules.json")


def _write_temp(content: str, suffix: str) -> str:
    with tempfile.NamedTemporaryFile(mode="w", suffix=suffix, delete=False) as f:
        f.write(content)
        return f.name


@pytest.fixture
def make_proof_file() -> Generator[Any, None, None]:
    """Write proof data to a temporary JSON file; removed after the test."""
    paths: List[str] = []

    def make(steps: List[Dict[str, Any]]) -> str:
        path = _write_temp(json.dumps(steps), ".json")
        paths.append(path)
        return path

    yield make

    for path in paths:
        if os.path.exists(path):
            os.remove(path)


@pytest.fixture
def temp_tree_file() -> Generator[str, None, None]:
    """A tree file holding 2* with a comment line."""
    path = _write_temp("# two\n\n0\n1\n1 0\n", ".tree")

    yield path

    if os.path.exists(path):
        os.remove(path)


@pytest.fixture
def empty_file() -> Generator[str, None, None]:
    path = _write_temp("", ".json")

    yield path

    if os.path.exists(path):
        os.remove(path)
