"""
Pipeline Module

Runs a Tait proof through the whole ordinal analysis: embedding into RS*,
predicative cut elimination down to cut rank Omega+1, collapsing below
Omega, and a sampled check of the collapsed certificate.

Example::

    from pybhw.loader import ProofFileLoader
    from pybhw.pipeline import pipeline

    report = pipeline(ProofFileLoader("pair.json").load())
    print(report.to_dict()["finalBound"])
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional

from .certificate import Certificate, CertReport, cert_check
from .collapsing import collapse, hat
from .config import Settings
from .elimination import bound_cut_elim, cut_elim
from .embedding import embed, label_for
from .exceptions import PreconditionError
from .ordinals import BIG_OMEGA, ZERO, OrdTerm, compare, omega_offset, omega_tower, psi, render, succ
from .proof import TaitProof
from .tags import Comparison
from .transforms import weaken

log = logging.getLogger(__name__)

_DEFAULTS = Settings()


@dataclass
class PipelineReport:
    """
    Outcome of ``pipeline``.

    Attributes:
        m: Label exponent of the embedding, omega^(Omega+m).
        n: Cut rank of the embedding, Omega+n.
        p_len: Largest formula length of the proof.
        cut_index: Tower height used by cut elimination.
        final_bound: Label of the collapsed certificate.
        final_rank: Cut rank of the collapsed certificate.
        tower_index: Least n' with final_bound < psi(omega_n'(Omega+1)).
        check: Sampled check of the collapsed certificate.
        certificate: The collapsed certificate.
    """

    m: int
    n: int
    p_len: int
    cut_index: int
    final_bound: OrdTerm
    final_rank: OrdTerm
    tower_index: int
    check: CertReport
    certificate: Certificate

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "pLen": self.p_len,
            "cutIndex": self.cut_index,
            "finalBound": render(self.final_bound),
            "finalRank": render(self.final_rank),
            "towerIndex": self.tower_index,
            "status": self.check.status,
        }


def final_bound(sigma: OrdTerm, m: int, k: int) -> OrdTerm:
    """psi(hat(sigma, omega_k(omega^(Omega+m))))."""
    return psi(hat(sigma, bound_cut_elim(label_for(m), k)))


def tower_index(bound: OrdTerm, limit: int = _DEFAULTS.tower_max) -> int:
    """
    The least n with bound < psi(omega_n(Omega+1)).

    Raises:
        PreconditionError: If no tower below limit is large enough.
    """
    base = succ(BIG_OMEGA)
    for n in range(limit):
        if compare(bound, psi(omega_tower(n, base))) is Comparison.LESS:
            return n
    raise PreconditionError("pipeline", f"{render(bound)} is not below psi of an omega tower")


def pipeline(
    p: TaitProof,
    sigma: OrdTerm = ZERO,
    depth: int = _DEFAULTS.depth,
    samples: int = _DEFAULTS.samples,
    seed: int = _DEFAULTS.seed,
    levels: Optional[Mapping[str, OrdTerm]] = None,
    tower_max: int = _DEFAULTS.tower_max,
) -> PipelineReport:
    """
    Embed, eliminate cuts above Omega+1, collapse with sigma and check.

    Raises:
        EmbeddingError: If the proof does not check or cannot be embedded.
        HypothesisViolation: If the end sequent is outside S and B.
        SideConditionViolation: If the sampled check fails.
    """
    embedding = embed(p, levels)
    cert = embedding.certificate
    if omega_offset(cert.rho) == 0:
        cert = weaken(cert, rho=succ(BIG_OMEGA))
    cut_index = omega_offset(cert.rho) - 1
    reduced = cut_elim(cert)
    collapsed = collapse(reduced, sigma)
    expected = final_bound(sigma, embedding.m, cut_index)
    if collapsed.alpha != expected:
        raise PreconditionError(
            "pipeline", f"collapsed label {render(collapsed.alpha)} is not {render(expected)}"
        )
    check = cert_check(collapsed, depth=depth, samples=samples, seed=seed)
    report = PipelineReport(
        m=embedding.m,
        n=embedding.n,
        p_len=embedding.p_len,
        cut_index=cut_index,
        final_bound=collapsed.alpha,
        final_rank=collapsed.rho,
        tower_index=tower_index(collapsed.alpha, tower_max),
        check=check,
        certificate=collapsed,
    )
    log.info("pipeline: bound %s below tower %d", render(report.final_bound), report.tower_index)
    return report
