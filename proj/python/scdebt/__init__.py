"""Security technical debt assessment for smart contracts.

Thin Python surface over the C++ core: catalog queries, EVM bytecode
decoding, deployment gas estimation, weakness scoring and full portfolio
assessment.
"""

from scdebt._core import (  # noqa: F401
    Catalog,
    assess_portfolio,
    cls_score,
    decode,
    estimate_principal,
    interest,
    render_vector_suggestion,
    score_vector,
    severity,
)

__all__ = [
    "Catalog",
    "assess_portfolio",
    "cls_score",
    "decode",
    "estimate_principal",
    "interest",
    "render_vector_suggestion",
    "score_vector",
    "severity",
]
