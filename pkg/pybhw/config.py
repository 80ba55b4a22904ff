"""
Runtime settings.

``Settings`` gathers the budgets and defaults shared by the sampled
certificate checker, the tree evaluator and the command line. The
``BHW_SEED`` environment variable overrides any seed given explicitly, so a
whole test run can be re-seeded without touching command lines.

Example::

    from pybhw.config import Settings

    settings = Settings.from_env(samples=8)
    report = cert_check(cert, depth=settings.depth, samples=settings.samples,
                        seed=settings.seed)
"""

import os
from dataclasses import dataclass, replace
from typing import Any, Mapping, Optional

SEED_ENV_VAR = "BHW_SEED"


@dataclass(frozen=True)
class Settings:
    """
    Budgets and defaults.

    Attributes:
        seed: Seed for sampling premises of infinitary rules.
        depth: Depth budget of the certificate checker.
        samples: Parameter choices per infinitary rule.
        tree_size_max: Largest candidate tree the evaluator enumerates.
        witness_max: Number of immediate subtrees of omega* visited by
            bounded quantifiers, and the label range for relation candidates.
        materialize_max: Node budget for expanding symbolic trees.
        exact_rank: Ranked quantifiers over finite levels up to this rank
            range over every hereditarily finite set of smaller rank.
        tower_max: Highest omega tower ``tower_index`` searches.
        sigma: Default collapsing parameter, as ordinal text.
    """

    seed: int = 0
    depth: int = 4
    samples: int = 5
    tree_size_max: int = 12
    witness_max: int = 6
    materialize_max: int = 4096
    exact_rank: int = 4
    tower_max: int = 64
    sigma: str = "0"

    @classmethod
    def from_env(
        cls, environ: Optional[Mapping[str, str]] = None, **overrides: Any
    ) -> "Settings":
        """Build settings from keyword overrides, then apply ``BHW_SEED``."""
        environ = os.environ if environ is None else environ
        values = {k: v for k, v in overrides.items() if v is not None}
        settings = replace(cls(), **values)
        raw = environ.get(SEED_ENV_VAR)
        if raw is not None and raw.strip():
            try:
                settings = replace(settings, seed=int(raw))
            except ValueError as e:
                raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from e
        return settings
