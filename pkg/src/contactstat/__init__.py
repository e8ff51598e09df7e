"""Chart-level verification of statistical, Sasakian and contact CR structures.

The engine represents metrics, connections and almost-contact data as grids
of symbolic expressions over a single chart, derives the associated objects
(Levi-Civita and dual connections, second fundamental forms, tangential /
normal splittings) and reports per-identity residuals on sampled points.
"""

__version__ = "0.1.0"

from .exprlang import parse, Expr, ParseError, DomainError
from .report import Record, CheckReport
from .sampling import Samples, sample_box

__all__ = [
    "parse", "Expr", "ParseError", "DomainError",
    "Record", "CheckReport", "Samples", "sample_box",
    "__version__",
]
