"""Explicit reciprocity computations for Lubin-Tate formal groups.

Capped-precision p-adic arithmetic, truncated series, the phi/psi/norm
operators, Coleman power series and Coates-Wiles values, evaluation maps,
finite-level measures with Gauss sums, and residue pairings.
"""

from .errors import ConfigError, LubinTateError, PrecisionExhausted
from .formal_group import FormalGroup, build_formal_group
from .operators import OperatorContext
from .padic import EXACT, PadicElement, TowerField, base_field_make, rational_field, trace_norm
from .series import INF, TruncatedSeries, compose_small_constant

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "EXACT", "FormalGroup", "INF", "LubinTateError", "OperatorContext",
    "PadicElement", "PrecisionExhausted", "TowerField", "TruncatedSeries", "base_field_make",
    "build_formal_group", "compose_small_constant", "rational_field", "trace_norm",
]
