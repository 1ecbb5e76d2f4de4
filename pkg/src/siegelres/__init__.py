"""Residues of Siegel Eisenstein series at the first critical point ``s = m/2``."""
from .errors import (ConvergenceError, DomainError, MissingInputError, PoleError,
                     SiegelResError)

__version__ = "0.1.0"

__all__ = ["ConvergenceError", "DomainError", "MissingInputError", "PoleError",
           "SiegelResError", "__version__"]
