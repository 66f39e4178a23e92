"""Evaluation of zeta_(c)(s) = (1 - c^(1-s)) zeta(s) and zeta(s) by the transformed series.

With ``b_n = n^-s`` the transformation at depth ``k`` converges absolutely for
``Re(s) > 1 - k`` and conditionally for ``-k < Re(s) <= 1 - k``.  Results in
the second strip are returned with ``conditional=True``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from zetawallis.diffcore import EPS, Modulus, delta_power_array, head_value, pochhammer
from zetawallis.summation import block_sums, csum_array

MAX_BLOCKS = 20_000_000
FACTOR_FLOOR = 1e-3
# |1 - c^(1-s)| below this is a zero of the factor up to rounding
FACTOR_ZERO = 64 * 2.0**-52


class RegionError(ValueError):
    """``s`` lies outside the half plane where the requested expansion converges."""


class PoleError(ValueError):
    """``zeta`` was asked for its value at the pole ``s = 1``."""


@dataclass(frozen=True)
class EvalPlan:
    c: int
    k: int
    N: int
    tol: float

    def __post_init__(self):
        Modulus(self.c)
        if self.k < 0:
            raise ValueError("depth k must be >= 0")
        if self.N < 1:
            raise ValueError("block count N must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class SeriesEvaluation:
    value: complex
    est_error: float
    plan: EvalPlan
    terms_used: int
    conditional: bool = False


def eta_factor(s: complex, c: int) -> complex:
    """``1 - c^(1-s)``."""
    return 1 - cmath.exp((1 - complex(s)) * math.log(c))


def truncation_bound(s: complex, c: int, k: int, N: int) -> float:
    """Bound on the transformed tail beyond block ``N``.

    Blocks telescope: ``sum_{n=cm+1}^{cm+c} a_n Delta^k n^-s = Delta^(k+1) (cm)^-s``,
    so the remainder is at most
    ``|(s)_{k+1}| (c(c-1)/2)^(k+1) c^-p (N^-p + N^(1-p)/(p-1))`` with ``p = Re(s)+k+1``,
    before the ``c^-k`` prefactor of the transformed series.
    """
    s = complex(s)
    p = s.real + k + 1
    if p <= 1:
        return math.inf
    poch = abs(pochhammer(s, k + 1))
    if poch == 0:
        return 0.0
    log_b = (
        math.log(poch)
        + (k + 1) * math.log(c * (c - 1) / 2)
        - p * math.log(c)
        + math.log(N ** (-p) + N ** (1 - p) / (p - 1))
    )
    return math.exp(log_b)


def _check_region(s: complex, k: int) -> bool:
    if s.real <= -k:
        raise RegionError(f"Re(s) = {s.real} must exceed -k = {-k} for depth k = {k}")
    return s.real <= 1 - k


def zeta_c(s: complex, plan: EvalPlan) -> SeriesEvaluation:
    """``zeta_(c)(s)`` from the depth-``k`` transformed series truncated after ``N`` blocks.

    ``zeta_(c)`` is entire, so ``s = 1`` is allowed (the value there is ``log c``).
    """
    s = complex(s)
    c, k, N = int(plan.c), plan.k, plan.N
    conditional = _check_region(s, k)
    n_terms = c * N
    if k == 0:
        n = np.arange(1, n_terms + 1, dtype=float)
        a = np.where(np.arange(1, n_terms + 1) % c == 0, 1.0 - c, 1.0)
        terms = a * np.exp(-s * np.log(n))
        head = 0j
    else:
        d = delta_power_array(c, k, s, n_terms)
        a = np.where(np.arange(1, n_terms + 1) % c == 0, 1.0 - c, 1.0)
        terms = ((-1) ** k / c**k) * (a * d)
        head = head_value(c, k, s)
    tail = csum_array(block_sums(terms, c))
    value = complex(head + tail)
    rounding = 8 * EPS * (abs(head) + float(np.sum(np.abs(terms))) + abs(value))
    if k == 0:
        trunc = _raw_tail_bound(s, c, N)
    else:
        trunc = truncation_bound(s, c, k, N) / c**k
    return SeriesEvaluation(value, trunc + rounding, plan, n_terms, conditional)


def _raw_tail_bound(s: complex, c: int, N: int) -> float:
    # block m of the raw series equals Delta_c (cm)^-s, bounded by |s| (c(c-1)/2) (cm)^-(Re s + 1)
    return truncation_bound(s, c, 0, N)


def choose_blocks(s: complex, c: int, k: int, tol: float) -> int:
    """Smallest ``N`` whose truncation bound is below ``tol``."""
    if truncation_bound(s, c, k, MAX_BLOCKS) / c**k >= tol:
        raise ValueError(
            f"tolerance {tol:g} not reachable within {MAX_BLOCKS} blocks at s={s}, c={c}, k={k}"
        )
    lo, hi = 0, 1
    while truncation_bound(s, c, k, hi) / c**k >= tol:
        lo, hi = hi, min(2 * hi, MAX_BLOCKS)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if truncation_bound(s, c, k, mid) / c**k >= tol:
            lo = mid
        else:
            hi = mid
    return hi


def default_depth(s: complex) -> int:
    return max(3, math.ceil(1 - complex(s).real) + 2)


def plan_for(s: complex, c: int, k: Optional[int] = None, tol: float = 1e-12) -> EvalPlan:
    """Plan for ``zeta_(c)(s)`` at fixed modulus, reaching truncation error ``tol / 2``."""
    s = complex(s)
    c = int(Modulus(c))
    k = default_depth(s) if k is None else k
    _check_region(s, k)
    return EvalPlan(c, k, choose_blocks(s, c, k, tol / 2), tol)


def plan_heuristic(s: complex, tol: float, c: Optional[int] = None, k: Optional[int] = None) -> EvalPlan:
    """Parameters for ``zeta(s)`` within ``tol``.

    Picks ``c = 2`` unless ``|1 - 2^(1-s)| < 1e-3`` (then ``c = 3``), depth
    ``max(3, ceil(1 - Re s) + 2)`` and the fewest blocks whose truncation bound,
    after division by the eta factor, is below ``tol / 2``.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("pole at s=1")
    if c is None:
        c = 2 if abs(eta_factor(s, 2)) >= FACTOR_FLOOR else 3
    factor = abs(eta_factor(s, c))
    if factor < FACTOR_ZERO:
        raise PoleError(f"1 - {c}^(1-s) vanishes at s={s}")
    plan = plan_for(s, c, k, tol * factor)
    return replace(plan, tol=tol)


def zeta(
    s: complex,
    tol: float = 1e-12,
    c: Optional[int] = None,
    k: Optional[int] = None,
    N: Optional[int] = None,
) -> SeriesEvaluation:
    """Riemann zeta via ``zeta_(c)(s) / (1 - c^(1-s))``.

    ``c``, ``k`` and ``N`` override the heuristic plan.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("pole at s=1")
    if N is None:
        plan = plan_heuristic(s, tol, c, k)
    else:
        cc = c if c is not None else (2 if abs(eta_factor(s, 2)) >= FACTOR_FLOOR else 3)
        plan = EvalPlan(int(Modulus(cc)), default_depth(s) if k is None else k, N, tol)
    factor = eta_factor(s, plan.c)
    if abs(factor) < FACTOR_ZERO:
        raise PoleError(f"1 - {plan.c}^(1-s) vanishes at s={s}")
    ev = zeta_c(s, plan)
    value = ev.value / factor
    est = ev.est_error / abs(factor) + 4 * EPS * abs(value)
    return SeriesEvaluation(value, est, plan, ev.terms_used, ev.conditional)


# --------------------------------------------------------------------------
# derivatives of zeta_(c)
# --------------------------------------------------------------------------


def _a_array(c: int, n_terms: int) -> np.ndarray:
    return np.where(np.arange(1, n_terms + 1) % c == 0, 1.0 - c, 1.0)


def zeta_c_derivative_series(s: complex, c: int, N: int) -> complex:
    """``-sum_{n<=cN} a_{c,n} n^-s log n`` (termwise derivative of the Dirichlet series)."""
    s = complex(s)
    c = int(Modulus(c))
    if s.real <= 0:
        raise RegionError("the differentiated Dirichlet series needs Re(s) > 0")
    n = np.arange(1, c * N + 1, dtype=float)
    logn = np.log(n)
    terms = -_a_array(c, c * N) * np.exp(-s * logn) * logn
    return complex(csum_array(block_sums(terms, c)))


def zeta_c_derivative_k1(s: complex, c: int, N: int) -> complex:
    """Derivative of the depth-one continuation, valid for ``Re(s) > -1``."""
    s = complex(s)
    c = int(Modulus(c))
    if s.real <= -1:
        raise RegionError("the depth-one continuation needs Re(s) > -1")
    prefix = -(
        sum((c + i - 1) * cmath.exp(-s * math.log(i)) * math.log(i) for i in range(2, c))
        - (c - 1) ** 2 * cmath.exp(-s * math.log(c)) * math.log(c)
    ) / c
    n_terms = c * N
    a = _a_array(c, n_terms)
    n = np.arange(1, n_terms + 1, dtype=float)
    inner = np.zeros(n_terms, dtype=complex)
    for i in range(1, c + 1):
        m = n + i
        lm = np.log(m)
        inner = inner + (1 - c if i == c else 1) * np.exp(-s * lm) * lm
    tail = csum_array(block_sums(a * inner, c)) / c
    return complex(prefix + tail)


def zeta_c_derivative(s: complex, c: int, tol: float = 1e-12, radius: float = 0.5, points: int = 32) -> SeriesEvaluation:
    """``zeta_(c)'(s)`` by the trapezoid rule for Cauchy's integral on a circle around ``s``.

    ``zeta_(c)`` is entire, so the rule converges geometrically in ``points``;
    each node is evaluated by the accelerated series to ``tol * radius``.
    """
    s = complex(s)
    c = int(Modulus(c))
    node_tol = tol * radius / 2
    real_axis = s.imag == 0
    total = 0j
    worst = 0.0
    plan = None
    used = 0
    half = points // 2
    for j in range(points):
        if real_axis and j > half:
            continue
        w = cmath.exp(2j * math.pi * j / points)
        z = s + radius * w
        ev = zeta_c(z, plan_for(z, c, tol=node_tol))
        contrib = ev.value / w
        if real_axis and 0 < j < half:
            contrib = 2 * contrib.real
        total += contrib
        worst = max(worst, ev.est_error)
        used += ev.terms_used
        plan = ev.plan
    value = total / (points * radius)
    if real_axis:
        value = complex(value.real, 0.0)
    return SeriesEvaluation(value, worst / radius, plan, used)
