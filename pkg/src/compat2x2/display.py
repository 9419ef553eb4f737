"""Display rounding.

Reported values are conventionally rounded half-up (0.0625 -> 0.063), which
is not what Python's round-half-even gives. The library carries full
precision everywhere; only formatting goes through here.
"""

import math
from decimal import Decimal, ROUND_HALF_UP


def fmt(x: float, decimals: int) -> str:
    """Format ``x`` with ``decimals`` places, rounding halves up."""
    if math.isnan(x):
        return "undefined"
    if math.isinf(x):
        return "infinite" if x > 0 else "-infinite"
    q = Decimal(1).scaleb(-decimals) if decimals > 0 else Decimal(1)
    return str(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


def fmt_sig(x: float, sig: int) -> str:
    """Format ``x`` to ``sig`` significant figures, rounding halves up."""
    if x == 0:
        return "0"
    if math.isnan(x) or math.isinf(x):
        return fmt(x, 0)
    exponent = math.floor(math.log10(abs(x)))
    return fmt(x, max(0, sig - 1 - exponent))
