"""Wallis-type infinite products, accumulated in the log domain.

``exp(zeta_(c)'(s))`` equals ``prod_n n^(-a_{c,n} / n^s)`` for ``Re(s) > 0`` and,
after the depth-one continuation, a product over ``(n+i)^(a_{c,n} a_{c,i} / (c (n+i)^s))``
with a finite prefix for ``Re(s) > -1``.  Partial products are reported only at
block boundaries ``n = cB``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from zetawallis.constants import EULER_GAMMA, GLAISHER_A, PI
from zetawallis.diffcore import Modulus
from zetawallis.summation import block_sums, running_sum
from zetawallis.zeta import RegionError, zeta_c_derivative

TARGET_TOL = 1e-13


@dataclass
class ProductReport:
    identity_id: str
    c: int
    s: float
    blocks: int
    log_partial: np.ndarray = field(repr=False)
    target_log: float
    abs_gap: float
    series_target: Optional[float] = None
    observed_order: Optional[float] = None
    tail_estimate: Optional[float] = None

    def gaps(self) -> np.ndarray:
        return np.abs(self.log_partial - self.target_log)


def _target(c: int, s: float) -> float:
    return zeta_c_derivative(s, c, tol=TARGET_TOL).value.real


def _observed_order(gaps: np.ndarray) -> Optional[float]:
    """Empirical exponent p in gap ~ B^-p from blocks N/2 and N."""
    n = len(gaps)
    if n < 4 or gaps[-1] <= 0 or gaps[n // 2 - 1] <= 0:
        return None
    return math.log(gaps[n // 2 - 1] / gaps[-1]) / math.log(n / (n // 2))


def _report(identity_id, c, s, log_partial, target, series_target, tail) -> ProductReport:
    gaps = np.abs(log_partial - target)
    return ProductReport(
        identity_id, c, s, len(log_partial), log_partial, target, float(gaps[-1]),
        series_target, _observed_order(gaps), tail,
    )


def direct_tail_estimate(c: int, s: float, N: int) -> float:
    """Size of the remainder after ``N`` blocks of the direct product.

    A block is a first difference of ``x^-s log x``; its derivative is at most
    ``x^(-s-1) (1 + s log x)`` in size, summed by an integral comparison.
    """
    x = c * N
    grow = 1 + s * math.log(x + c)
    return (c - 1) / 2 * grow * (c * x ** (-s - 1) + x ** (-s) / s)


def continued_tail_estimate(c: int, s: float, N: int) -> float:
    """Remainder size for the continued product: blocks are second differences."""
    x = c * N
    grow = abs(s * (s + 1)) * math.log(x + 2 * c) + abs(2 * s + 1)
    return (c - 1) ** 2 / 4 * grow * (c * x ** (-s - 2) + x ** (-s - 1) / (s + 1))


def _default_id(c: int) -> str:
    return "huylebrouck_s" if c == 2 else "gen_c_s"


def product_log_stream(c: int, s: float, N: int, target: Optional[float] = None, identity_id: Optional[str] = None) -> ProductReport:
    """Log of ``prod_{n<=cB} n^(-a_{c,n} n^-s)`` for ``B = 1 .. N``; needs ``s > 0``."""
    c = int(Modulus(c))
    s = float(s)
    if s <= 0:
        raise RegionError("the direct product needs s > 0; use product_log_stream_continued")
    n = np.arange(1, c * N + 1, dtype=float)
    logn = np.log(n)
    a = np.where(np.arange(1, c * N + 1) % c == 0, 1.0 - c, 1.0)
    terms = -a * np.exp(-s * logn) * logn
    log_partial = running_sum(block_sums(terms, c))
    series = _target(c, s)
    return _report(identity_id or _default_id(c), c, s, log_partial, series if target is None else target, series,
                   direct_tail_estimate(c, s, N))


def continued_prefix(c: int, s: float) -> float:
    """Log of the finite prefix ``prod_{i=2}^{c-1} i^(-(c+i-1)/(c i^s)) * c^((c-1)^2 / c^(s+1))``."""
    total = -math.fsum((c + i - 1) / c * i ** (-s) * math.log(i) for i in range(2, c))
    return total + (c - 1) ** 2 / c ** (s + 1) * math.log(c)


def product_log_stream_continued(c: int, s: float, N: int, target: Optional[float] = None, identity_id: Optional[str] = None) -> ProductReport:
    """Log of the depth-one product: prefix times ``prod_{n<=cB} prod_i (n+i)^(a_n a_i / (c (n+i)^s))``.

    Valid for ``s > -1``.
    """
    c = int(Modulus(c))
    s = float(s)
    if s <= -1:
        raise RegionError("the continued product needs s > -1")
    n_terms = c * N
    n = np.arange(1, n_terms + 1, dtype=float)
    a = np.where(np.arange(1, n_terms + 1) % c == 0, 1.0 - c, 1.0)
    inner = np.zeros(n_terms)
    for i in range(1, c + 1):
        lm = np.log(n + i)
        inner = inner + (1 - c if i == c else 1) * np.exp(-s * lm) * lm
    log_partial = running_sum(block_sums(a * inner / c, c), start=continued_prefix(c, s))
    series = _target(c, s)
    return _report(identity_id or _default_id(c), c, s, log_partial, series if target is None else target, series,
                   continued_tail_estimate(c, s, N))


@dataclass(frozen=True)
class Identity:
    name: str
    c: int
    s: float
    route: str
    # log of the closed-form left-hand side as printed
    closed_form_log: Callable[[], float]
    # that left-hand side is exp(power * zeta_(c)'(s))
    power: int
    tol: float
    label: str

    def target_log(self) -> float:
        return self.closed_form_log() / self.power


def _log_wallis() -> float:
    return math.log(PI / 2)


def _log_first() -> float:
    return (2 * EULER_GAMMA - math.log(2)) * math.log(2)


def _log_second() -> float:
    return PI**2 / 6 * math.log(4 * PI * math.exp(EULER_GAMMA) / GLAISHER_A**12)


def _log_gen1() -> float:
    return math.log(2 * PI / 3**1.5)


def _log_gen2() -> float:
    return (EULER_GAMMA - math.log(3) / 2) * math.log(3)


def _log_gen3() -> float:
    return PI**2 / 18 * math.log(3 * (2 * PI * math.exp(EULER_GAMMA) / GLAISHER_A**12) ** 2)


def _log_gen4() -> float:
    return math.log((2 * PI) ** 1.5 / 16)


# Tolerances are on the log of the partial product at N = 1e5 blocks; the
# measured gaps (see README) sit one to six orders below them.
CATALOGUE: Dict[str, Identity] = {
    "wallis": Identity("wallis", 2, 0.0, "continued", _log_wallis, 2, 1e-3, "pi/2 = (2*2)/(1*3) (4*4)/(3*5) ..."),
    "first": Identity("first", 2, 1.0, "direct", _log_first, 2, 1e-3, "2^(2 gamma - log 2)"),
    "second": Identity("second", 2, 2.0, "direct", _log_second, 2, 1e-4, "(4 pi e^gamma / A^12)^(pi^2/6)"),
    "gen1": Identity("gen1", 3, 0.0, "continued", _log_gen1, 1, 1e-3, "2 pi / 3^(3/2)"),
    "gen2": Identity("gen2", 3, 1.0, "direct", _log_gen2, 1, 1e-3, "3^(gamma - log 3 / 2)"),
    "gen3": Identity("gen3", 3, 2.0, "direct", _log_gen3, 1, 1e-4, "(3 (2 pi e^gamma / A^12)^2)^(pi^2/18)"),
    "gen4": Identity("gen4", 4, 0.0, "continued", _log_gen4, 1, 1e-3, "(2 pi)^(3/2) / 16"),
}


def identity(name: str) -> Identity:
    try:
        return CATALOGUE[name]
    except KeyError:
        raise KeyError(f"unknown identity {name!r}; choose from {', '.join(CATALOGUE)}") from None


def verify_identity(name: str, N: int = 100_000, tol: Optional[float] = None) -> Tuple[bool, ProductReport]:
    """Check a catalogued product against its closed form.

    Passes when the final log gap is below ``tol`` and the gap shrinks strictly
    over each of the last ten blocks.
    """
    ident = identity(name)
    tol = ident.tol if tol is None else tol
    stream = product_log_stream if ident.route == "direct" else product_log_stream_continued
    report = stream(ident.c, ident.s, N, target=ident.target_log(), identity_id=ident.name)
    gaps = report.gaps()[-11:]
    shrinking = bool(np.all(np.diff(gaps) < 0)) if len(gaps) > 1 else True
    return (report.abs_gap < tol and shrinking), report
