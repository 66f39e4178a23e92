"""The weighted difference operator Delta_c and its integer weight vectors.

For an integer modulus ``c >= 2`` the coefficients are ``a_{c,n} = 1 - c`` when
``c | n`` and ``1`` otherwise.  The operator acts by

    Delta_c^0 b_n = b_n
    Delta_c^k b_n = sum_{i=1}^{c} a_{c,i} Delta_c^{k-1} b_{n+i}

so ``Delta_c^k`` is a fixed integer stencil on offsets ``k .. c*k``.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Dict, Tuple

import mpmath
import numpy as np

from zetawallis.summation import csum

EPS = np.finfo(float).eps

_local = threading.local()


def _mp(dps: int) -> mpmath.MPContext:
    """Per-thread mpmath context set to ``dps`` digits (the global ``mpmath.mp`` is shared state)."""
    ctx = getattr(_local, "ctx", None)
    if ctx is None:
        ctx = _local.ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


class Modulus(int):
    """An integer ``c >= 2``."""

    def __new__(cls, c) -> "Modulus":
        if isinstance(c, bool) or int(c) != c:
            raise TypeError(f"modulus must be an integer, got {c!r}")
        if c < 2:
            raise ValueError(f"modulus must be >= 2, got {c}")
        return super().__new__(cls, int(c))


def _depth(k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise ValueError(f"operator depth must be a nonnegative integer, got {k!r}")
    return int(k)


def coefficient_a(c: int, n: int) -> int:
    """Return ``a_{c,n}``: ``1 - c`` if ``c`` divides ``n``, else ``1``."""
    c = Modulus(c)
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    return 1 - c if n % c == 0 else 1


@dataclass(frozen=True)
class WeightVector:
    """Exact stencil of ``Delta_c^k``: ``Delta_c^k b_n = sum_j weights[j] * b_{n+j}``."""

    c: int
    k: int
    weights: Dict[int, int]

    @property
    def offsets(self) -> Tuple[int, ...]:
        return tuple(sorted(self.weights))

    def items(self):
        """(offset, weight) pairs in ascending offset order."""
        return [(j, self.weights[j]) for j in self.offsets]

    def abs_sum(self) -> int:
        return sum(abs(w) for w in self.weights.values())

    def moment(self, r: int) -> int:
        """``sum_j w_j * j**r`` (exact)."""
        return sum(w * j**r for j, w in self.weights.items())


@lru_cache(maxsize=None)
def _weights(c: int, k: int) -> Tuple[Tuple[int, int], ...]:
    if k == 0:
        return ((0, 1),)
    prev = dict(_weights(c, k - 1))
    out: Dict[int, int] = {}
    for j, w in prev.items():
        for i in range(1, c + 1):
            out[j + i] = out.get(j + i, 0) + w * (1 - c if i == c else 1)
    return tuple(sorted((j, w) for j, w in out.items() if w != 0))


def weight_vector(c: int, k: int) -> WeightVector:
    """Integer weights of ``Delta_c^k`` by k-fold convolution of ``(a_{c,1}, ..., a_{c,c})``."""
    c = Modulus(c)
    k = _depth(k)
    return WeightVector(int(c), k, dict(_weights(int(c), k)))


def apply_delta(c: int, k: int, b: Callable[[int], object], n: int):
    """Evaluate ``Delta_c^k b_n`` from the accessor ``b`` (index -> value).

    Terms are accumulated in ascending offset order.  Integer and Fraction
    values are summed exactly, floats and complex numbers with ``math.fsum``,
    anything else (e.g. mpmath numbers) with its own ``+``.
    """
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    wv = weight_vector(c, k)
    terms = [w * b(n + j) for j, w in wv.items()]
    if all(isinstance(t, Rational) for t in terms):
        return sum(terms, Fraction(0)) if any(isinstance(t, Fraction) for t in terms) else sum(terms)
    if all(isinstance(t, (int, float, complex)) for t in terms):
        return csum(terms)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


def pochhammer(s: complex, k: int) -> complex:
    """Rising factorial ``(s)_k = s (s+1) ... (s+k-1)``, with ``(s)_0 = 1``."""
    k = _depth(k)
    out = 1
    for i in range(k):
        out *= s + i
    return out


def tail_bound(c: int, k: int, n: int, s: complex) -> float:
    """Upper bound ``|(s)_k| (c(c-1)/2)^k / n^(Re s + k)`` for ``|Delta_c^k n^-s|``.

    Only valid when ``Re(s) + k >= 0``.
    """
    c = Modulus(c)
    k = _depth(k)
    s = complex(s)
    p = s.real + k
    if p < 0:
        raise ValueError(f"bound needs Re(s) + k >= 0, got {p}")
    log_val = k * math.log(c * (c - 1) / 2) - p * math.log(n)
    poch = abs(pochhammer(s, k))
    if poch == 0:
        return 0.0
    return poch * math.exp(log_val)


def _working_dps(c: int, k: int, s: complex, n_top: int) -> int:
    # cancellation in the stencil costs roughly log10(sum|w| * n^(k + max(0, -Re s)))
    loss = k * math.log10(2 * (c - 1)) + (k + max(0.0, -s.real)) * math.log10(n_top + 1)
    return 25 + int(math.ceil(loss))


def delta_power(c: int, k: int, n: int, s: complex) -> complex:
    """``Delta_c^k n^-s`` for a single index.

    The stencil is applied through :func:`apply_delta` to ``m -> m^-s`` evaluated
    with enough working precision that stencil cancellation does not show in
    the double result.
    """
    c = Modulus(c)
    k = _depth(k)
    s = complex(s)
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    if k == 0:
        return cmath.exp(-s * math.log(n))
    ctx = _mp(_working_dps(c, k, s, n + c * k))
    ms = ctx.mpc(s)
    val = apply_delta(c, k, lambda m: ctx.power(m, -ms), n)
    return complex(val)


# --------------------------------------------------------------------------
# vectorised kernel for n = 1 .. n_max
# --------------------------------------------------------------------------


def _switch_index(c: int, k: int, s: complex) -> int:
    # past this index the Taylor ratio |s+r| c k / ((r+1) n) stays <= 1/4 for all r >= k
    g = max(1.0, (abs(s) + k) / (k + 1))
    return int(math.ceil(4 * c * k * g)) + 1


@lru_cache(maxsize=256)
def _scaled_moments(c: int, k: int, r_max: int) -> Tuple[float, ...]:
    wv = weight_vector(c, k)
    fact = 1
    out = []
    for r in range(r_max + 1):
        if r > 0:
            fact *= r
        out.append(float(Fraction(wv.moment(r), fact)) if r >= k else 0.0)
    return tuple(out)


def _taylor_order(c: int, k: int, s: complex, n0: int) -> int:
    """Order at which the majorant of the moment expansion drops below 1e-18 of its leading term."""
    # majorant of term r: (2(c-1))^k |(s)_r| (ck)^r / (r! n0^r); leading true term ~ |(s)_k| (c(c-1)/2)^k n0^-k
    log_lead = k * math.log(c * (c - 1) / 2) - k * math.log(n0)
    log_t = k * math.log(2 * (c - 1)) + k * math.log(c * k / n0) - math.lgamma(k + 1)
    r = k
    while True:
        if log_t - log_lead < math.log(1e-18) and r > k + 2:
            return r
        log_t += math.log(abs(s + r) + 1e-300) + math.log(c * k) - math.log(r + 1) - math.log(n0)
        r += 1
        if r > k + 400:
            return r


def delta_power_array(c: int, k: int, s: complex, n_max: int) -> np.ndarray:
    """``Delta_c^k n^-s`` for ``n = 1 .. n_max`` as a complex array.

    Small ``n`` go through the stencil in extended precision.  From a switch
    index on, the exact expansion

        Delta_c^k n^-s = n^-s * sum_{r>=k} (-1)^r (s)_r M_r / (r! n^r),
        M_r = sum_j w_j j^r,

    is summed in double precision; its terms shrink by at least 4x each, so
    the result keeps full relative accuracy where the stencil would cancel.
    """
    c = int(Modulus(c))
    k = _depth(k)
    s = complex(s)
    out = np.empty(n_max, dtype=complex)
    if n_max <= 0:
        return out
    n_all = np.arange(1, n_max + 1, dtype=float)
    if k == 0:
        out[:] = np.exp(-s * np.log(n_all))
        return out
    n_sw = min(_switch_index(c, k, s), n_max + 1)
    if n_sw > 1:
        out[: n_sw - 1] = _delta_power_mp(c, k, s, n_sw - 1)
    if n_sw <= n_max:
        n = n_all[n_sw - 1:]
        poch = pochhammer(s, k)
        if poch == 0:
            out[n_sw - 1:] = 0.0
            return out
        r_max = _taylor_order(c, k, s, n_sw)
        moments = _scaled_moments(c, k, r_max)
        coeffs = []
        p = poch
        for r in range(k, r_max + 1):
            coeffs.append((-1) ** r * p * moments[r])
            p *= s + r
        x = 1.0 / n
        acc = np.full(n.shape, coeffs[-1], dtype=complex)
        for cf in reversed(coeffs[:-1]):
            acc = acc * x + cf
        out[n_sw - 1:] = acc * np.exp(-(s + k) * np.log(n))
    return out


def _delta_power_mp(c: int, k: int, s: complex, n_top: int) -> np.ndarray:
    wv = weight_vector(c, k).items()
    top = n_top + c * k
    ctx = _mp(_working_dps(c, k, s, top))
    ms = ctx.mpc(s)
    pw = [ctx.mpf(0)] + [ctx.power(m, -ms) for m in range(1, top + 1)]
    vals = np.empty(n_top, dtype=complex)
    for n in range(1, n_top + 1):
        acc = ctx.mpc(0)
        for j, w in wv:
            acc += w * pw[n + j]
        vals[n - 1] = complex(acc)
    return vals


def head_value(c: int, k: int, s: complex) -> complex:
    """Finite part of the transformed series for ``b_n = n^-s``.

    ``sum_{j<k} (-1)^j c^-(j+1) [sum_{i=0}^{c-2} (c+i) Delta^j (i+1)^-s - (c-1)^2 Delta^j c^-s]``,
    evaluated in extended precision.
    """
    c = int(Modulus(c))
    k = _depth(k)
    s = complex(s)
    if k == 0:
        return 0j
    top = c * k
    ctx = _mp(_working_dps(c, k, s, top))
    ms = ctx.mpc(s)
    pw = [ctx.mpf(0)] + [ctx.power(m, -ms) for m in range(1, top + 1)]
    total = ctx.mpc(0)
    for j in range(k):
        wv = weight_vector(c, j).items()

        def dj(n):
            return ctx.fsum(w * pw[n + o] for o, w in wv)

        inner = ctx.fsum((c + i) * dj(i + 1) for i in range(c - 1)) - (c - 1) ** 2 * dj(c)
        total += (-1) ** j * inner / ctx.mpf(c) ** (j + 1)
    return complex(total)
