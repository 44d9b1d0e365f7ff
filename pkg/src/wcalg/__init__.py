"""wcalg: exact workbench for the Weyl-Clifford algebra, the angular
momentum algebra and the total angular momentum algebra, together with
their chord-diagram calculi."""

from .core import (
    AlgebraContext,
    Parity,
    WCElement,
    WCMonomial,
    beta_pairing,
    canonical_text,
    clifford_word,
    det_pairing,
    graded_commutator,
    kostant_pairing,
    multiply,
    quantize_c,
    quantize_w,
)
from .errors import (
    ContextMismatchError,
    DomainError,
    IndexRangeError,
    ParityError,
    ParseError,
    ResourceLimitError,
    RewriteError,
    WcalgError,
)

__all__ = [
    "AlgebraContext",
    "Parity",
    "WCElement",
    "WCMonomial",
    "beta_pairing",
    "canonical_text",
    "clifford_word",
    "det_pairing",
    "graded_commutator",
    "kostant_pairing",
    "multiply",
    "quantize_c",
    "quantize_w",
    "ContextMismatchError",
    "DomainError",
    "IndexRangeError",
    "ParityError",
    "ParseError",
    "ResourceLimitError",
    "RewriteError",
    "WcalgError",
]

__version__ = "0.1.0"
