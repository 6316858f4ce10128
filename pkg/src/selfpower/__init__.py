"""Fixed points and two-cycles of the self-power map x -> x^(x^n) modulo p^e."""

from .arith import DomainError, ModulusContext, PolySpec
from .counts import CountBreakdown, FixedClassKey, TwoCycleClassKey, fp_count_total, tc_count_total
from .oracle import BudgetExceeded, RangeSpec, enumerate_fixed_points, enumerate_two_cycles
from .verify import CountReport, RatioReport, heuristic_ratio, sweep, verify_fixed, verify_two_cycles

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CountBreakdown",
    "CountReport",
    "DomainError",
    "FixedClassKey",
    "ModulusContext",
    "PolySpec",
    "RangeSpec",
    "RatioReport",
    "TwoCycleClassKey",
    "enumerate_fixed_points",
    "enumerate_two_cycles",
    "fp_count_total",
    "heuristic_ratio",
    "sweep",
    "tc_count_total",
    "verify_fixed",
    "verify_two_cycles",
]
