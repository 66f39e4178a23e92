"""Exact rational values of zeta at non-positive integers.

At ``s = -m`` the Pochhammer factor ``(-m)_j`` vanishes for ``j > m``, so the
transformed tail drops out and only the finite head survives.  Every step here
is integer or ``Fraction`` arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List

from zetawallis.diffcore import Modulus, apply_delta

# Fractions are kept in lowest terms with a positive denominator.
ExactRational = Fraction


def _nonneg(m) -> int:
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ValueError(f"m must be a nonnegative integer, got {m!r}")
    return int(m)


def zeta_neg_int(m: int, c: int = 2) -> Fraction:
    """``zeta(-m)`` from the depth-``(m+1)`` head with modulus ``c``."""
    m = _nonneg(m)
    c = int(Modulus(c))

    def b(n: int) -> int:
        return n**m

    total = Fraction(0)
    for j in range(m + 1):
        inner = sum((c + i) * apply_delta(c, j, b, i + 1) for i in range(c - 1))
        inner -= (c - 1) ** 2 * apply_delta(c, j, b, c)
        total += Fraction((-1) ** j * inner, c ** (j + 1))
    return total / (1 - c ** (m + 1))


@lru_cache(maxsize=None)
def _bernoulli_upto(n: int) -> tuple:
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 with B_0 = 1, which gives B_1 = -1/2
    B: List[Fraction] = [Fraction(1)]
    for i in range(1, n + 1):
        B.append(-sum(comb(i + 1, j) * B[j] for j in range(i)) / (i + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    return _bernoulli_upto(_nonneg(n))[n]


def bernoulli_oracle(m: int) -> Fraction:
    """``zeta(-m)`` from Bernoulli numbers, independent of the difference operators.

    With ``B_1 = -1/2`` the identity reads ``zeta(-m) = (-1)^m B_{m+1} / (m+1)``;
    for ``m >= 1`` this is the familiar ``-B_{m+1} / (m+1)``.
    """
    m = _nonneg(m)
    return (-1) ** m * bernoulli(m + 1) / (m + 1)


def sondow_neg_int(m: int) -> Fraction:
    """``zeta(-m)`` from the classic alternating Euler transform.

    Uses ``Delta^j b_1 = sum_i (-1)^i C(j, i) b_{1+i}`` with ``b_n = n^m``.
    """
    m = _nonneg(m)
    total = Fraction(0)
    for j in range(m + 1):
        dj = sum((-1) ** i * comb(j, i) * (1 + i) ** m for i in range(j + 1))
        total += Fraction(dj, 2 ** (j + 1))
    return total / (1 - 2 ** (m + 1))
