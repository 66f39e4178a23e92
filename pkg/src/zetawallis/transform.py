"""Euler-type transformation of ``sum a_{c,n} b_n`` and the classic alternating version.

The generalized transformation splits the series into a finite head plus the
tail ``sum_n (-1)^k c^-k a_{c,n} Delta_c^k b_n``.  Tails are only ever summed
over whole blocks ``n = 1 .. cN``; partial blocks of a divergent raw series
carry no meaning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Optional, Sequence, Union

from zetawallis.diffcore import Modulus, apply_delta, coefficient_a, delta_power
from zetawallis.summation import csum

Accessor = Callable[[int], object]


class _Memo:
    """Pure accessor wrapper with a value cache and an optional domain limit."""

    def __init__(self, b: Union[Accessor, Sequence], limit: Optional[int] = None):
        if callable(b):
            self._f = b
            self.limit = limit
        else:
            seq = list(b)
            self._f = lambda n: seq[n - 1]
            self.limit = len(seq) if limit is None else min(limit, len(seq))
        self._cache: dict = {}

    def __call__(self, n: int):
        if n < 1 or (self.limit is not None and n > self.limit):
            raise IndexError(f"term b_{n} requested but the accessor is defined on 1..{self.limit}")
        try:
            return self._cache[n]
        except KeyError:
            v = self._cache[n] = self._f(n)
            return v


@dataclass
class TransformedSeries:
    """Head plus lazily generated transformed tail terms."""

    c: int
    k: int
    head: object
    term: Callable[[int], object] = field(repr=False)
    kind: str = "generalized"

    def tail_terms(self) -> Iterator:
        n = 1
        while True:
            yield self.term(n)
            n += 1


@dataclass(frozen=True)
class BlockedPartialSum:
    c: int
    N: int
    value: object
    last_block_delta: object


def transform(c: int, k: int, b: Union[Accessor, Sequence], limit: Optional[int] = None) -> TransformedSeries:
    """Generalized Euler transformation of ``sum a_{c,n} b_n`` at depth ``k >= 1``.

    The head uses ``b_1 .. b_{ck}``; tail term ``n`` uses ``b_{n+k} .. b_{n+ck}``.
    """
    c = Modulus(c)
    if k < 1:
        raise ValueError("transform depth must be >= 1")
    acc = _Memo(b, limit)
    if acc.limit is not None and acc.limit < c * k:
        raise IndexError(f"head needs b_1..b_{c * k} but the accessor stops at {acc.limit}")
    parts = []
    for j in range(k):
        inner = [(c + i) * apply_delta(c, j, acc, i + 1) for i in range(c - 1)]
        inner.append(-((c - 1) ** 2) * apply_delta(c, j, acc, c))
        parts.append(_scale(_sum(inner), (-1) ** j, c ** (j + 1)))
    head = _sum(parts)
    sign = (-1) ** k

    def term(n: int):
        return _scale(coefficient_a(c, n) * apply_delta(c, k, acc, n), sign, c**k)

    return TransformedSeries(int(c), k, head, term)


def _classic_delta(j: int, b: Accessor, n: int):
    # Delta^j b_n = sum_i (-1)^i C(j, i) b_{n+i}
    return _sum([(-1) ** i * comb(j, i) * b(n + i) for i in range(j + 1)])


def classic_transform(k: int, b: Union[Accessor, Sequence], limit: Optional[int] = None) -> TransformedSeries:
    """Classic Euler transformation of ``sum (-1)^(n+1) b_n`` with ``Delta b_n = b_n - b_{n+1}``."""
    if k < 1:
        raise ValueError("transform depth must be >= 1")
    acc = _Memo(b, limit)
    head = _sum([_scale(_classic_delta(j, acc, 1), 1, 2 ** (j + 1)) for j in range(k)])

    def term(n: int):
        return _scale((-1) ** (n + 1) * _classic_delta(k, acc, n), 1, 2**k)

    return TransformedSeries(2, k, head, term, kind="classic")


def sum_blocked(ts: TransformedSeries, N: int) -> BlockedPartialSum:
    """Head plus the compensated sum of tail terms ``n = 1 .. cN``."""
    if N < 1:
        raise ValueError("block count must be >= 1")
    terms = [ts.term(n) for n in range(1, ts.c * N + 1)]
    last = _sum(terms[-ts.c:])
    return BlockedPartialSum(ts.c, N, _sum([ts.head, _sum(terms)]), last)


def telescope_check(c: int, k: int, s: complex, N: int):
    """Both sides of the block telescoping identity.

    Returns ``(sum_{n=c+1}^{cN} a_{c,n} Delta_c^k n^-s, sum_{m=2}^{N} Delta_c^{k+1} (cm-c)^-s)``.
    """
    c = Modulus(c)
    if N < 2:
        raise ValueError("telescope check needs N >= 2")
    left = csum([complex(coefficient_a(c, n) * delta_power(c, k, n, s)) for n in range(c + 1, c * N + 1)])
    right = csum([complex(delta_power(c, k + 1, c * m - c, s)) for m in range(2, N + 1)])
    return complex(left), complex(right)


def _sum(values):
    if all(isinstance(v, (int, Fraction)) for v in values):
        return sum(values, Fraction(0)) if any(isinstance(v, Fraction) for v in values) else sum(values)
    if all(isinstance(v, (int, float, complex, Fraction)) for v in values):
        return csum([complex(v) if isinstance(v, complex) else float(v) for v in values])
    total = values[0]
    for v in values[1:]:
        total = total + v
    return total


def _scale(x, sign: int, den: int):
    if isinstance(x, (int, Fraction)):
        return Fraction(sign * x, den)
    return sign * x / den
