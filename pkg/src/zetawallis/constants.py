"""Reference constants stored as decimal literals.

Digits were checked against mpmath (``mp.euler``, ``mp.glaisher``, ``mp.pi``)
at 50 digits and against the DLMF/OEIS tables (A001620, A074962, A000796);
``tests/test_constants.py`` repeats the mpmath comparison.
"""

from __future__ import annotations

import math
from decimal import Decimal
from typing import Dict, Optional

PI_DIGITS = "3.14159265358979323846264338327950288419716939937510"
EULER_GAMMA_DIGITS = "0.57721566490153286060651209008240243104215933593992"
GLAISHER_A_DIGITS = "1.28242712910062263687534256886979172776768892732500"
LOG_2PI_DIGITS = "1.83787706640934548356065947281123527972279494727556"

PRECISION_DIGITS = 50

_TABLE: Dict[str, str] = {
    "pi": PI_DIGITS,
    "gamma": EULER_GAMMA_DIGITS,
    "A": GLAISHER_A_DIGITS,
    "log2pi": LOG_2PI_DIGITS,
}

# Laurent coefficients of zeta at s = 1; only gamma_0 is used anywhere.
STIELTJES: Dict[int, Optional[str]] = {0: EULER_GAMMA_DIGITS}


def get(name: str) -> float:
    """Return the stored constant ``name`` (one of pi, gamma, A, log2pi) as a float."""
    try:
        return float(_TABLE[name])
    except KeyError:
        raise KeyError(f"unknown constant {name!r}; expected one of {sorted(_TABLE)}") from None


def get_decimal(name: str) -> Decimal:
    try:
        return Decimal(_TABLE[name])
    except KeyError:
        raise KeyError(f"unknown constant {name!r}; expected one of {sorted(_TABLE)}") from None


PI = get("pi")
EULER_GAMMA = get("gamma")
GLAISHER_A = get("A")
LOG_2PI = get("log2pi")


def laurent_slope_closed_form(c: int) -> float:
    """log c * (gamma - log c / 2), the derivative of zeta_(c) at s = 1."""
    lc = math.log(c)
    return lc * (EULER_GAMMA - lc / 2)


def laurent_check(c: int, radius: float = 1e-3, tol: float = 1e-13) -> float:
    """Fit zeta_(c)(1 + h) at h in {+-radius, +-radius/2} to a line through log c.

    Returns the least-squares slope. The symmetric stencil cancels the quadratic
    Laurent term, leaving an O(radius**2) bias from the cubic one.
    """
    from zetawallis.diffcore import Modulus
    from zetawallis.zeta import zeta_c, plan_for

    c = int(Modulus(c))
    if not 0 < radius < 0.5:
        raise ValueError("radius must lie in (0, 1/2)")
    intercept = math.log(c)
    hs = (-radius, -radius / 2, radius / 2, radius)
    num = 0.0
    den = 0.0
    for h in hs:
        s = 1.0 + h
        val = zeta_c(s, plan_for(s, c, tol=tol)).value.real
        num += h * (val - intercept)
        den += h * h
    return num / den
