"""Zero-knowledge identification from group actions.

Four interchangeable three-move schemes (graph isomorphism, induced subgraph
isomorphism, graph coloring, modular exponentiation) behind one engine, a
framed TCP protocol, a forgery harness and a CLI.
"""

from .errors import ZKAuthError
from .schemes import get_scheme, scheme_for
from .sigma import (
    DEFAULT_ROUNDS,
    RoundRecord,
    Scheme,
    SchemeId,
    Transcript,
    Verdict,
    extract_witness,
    run_session,
    simulate_transcript,
    verify_transcript,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_ROUNDS",
    "RoundRecord",
    "Scheme",
    "SchemeId",
    "Transcript",
    "Verdict",
    "ZKAuthError",
    "extract_witness",
    "get_scheme",
    "run_session",
    "scheme_for",
    "simulate_transcript",
    "verify_transcript",
]
