"""Chaos-based image cipher: standard-map confusion with add-and-shift value
mixing, logistic-map XOR diffusion, and the metrics used to evaluate both.

The sequential per-pixel chains run on a compiled extension when it is
available and on a pure-Python fallback otherwise; see
:func:`chaoscipher.backend_name`.
"""

from ._backend import available_backends, backend_name, set_backend
from .cipher import CipherParams, decrypt, encrypt
from .confusion import BASELINE, PROPOSED
from .errors import ContractViolation, PgmFormatError
from .grid import Histogram, PixelGrid, histogram, scan_index
from .keyschedule import SeedKey, derive_round_keys
from .metrics import AnalysisReport, chi_square_uniformity, correlation, npcr, uaci
from .pgm import read_pgm, write_pgm

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BASELINE",
    "CipherParams",
    "ContractViolation",
    "Histogram",
    "PROPOSED",
    "PgmFormatError",
    "PixelGrid",
    "SeedKey",
    "available_backends",
    "backend_name",
    "chi_square_uniformity",
    "correlation",
    "decrypt",
    "derive_round_keys",
    "encrypt",
    "histogram",
    "npcr",
    "read_pgm",
    "scan_index",
    "set_backend",
    "uaci",
    "write_pgm",
    "__version__",
]
