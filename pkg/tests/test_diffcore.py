import cmath
import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetawallis.diffcore import (
    Modulus,
    apply_delta,
    coefficient_a,
    delta_power,
    delta_power_array,
    head_value,
    pochhammer,
    tail_bound,
    weight_vector,
)

moduli = st.integers(min_value=2, max_value=7)
depths = st.integers(min_value=0, max_value=8)


def unit(i):
    """Accessor returning the symbol b_i as a one-hot coefficient vector."""
    def b(n):
        return Fraction(1) if n == i else Fraction(0)
    return b


@pytest.mark.parametrize("c,n,expected", [(3, 6, -2), (2, 1, 1), (4, 8, -3)])
def test_coefficient_examples(c, n, expected):
    assert coefficient_a(c, n) == expected


def test_modulus_rejects_small_and_nonintegral():
    with pytest.raises(ValueError):
        Modulus(1)
    with pytest.raises(TypeError):
        Modulus(2.5)
    with pytest.raises(TypeError):
        Modulus(True)


@pytest.mark.parametrize(
    "c,k,expected",
    [
        (2, 1, {1: 1, 2: -1}),
        (3, 1, {1: 1, 2: 1, 3: -2}),
        (3, 2, {2: 1, 3: 2, 4: -3, 5: -4, 6: 4}),
        (2, 0, {0: 1}),
    ],
)
def test_weight_vector_examples(c, k, expected):
    assert weight_vector(c, k).weights == expected


def test_apply_delta_examples():
    assert apply_delta(2, 1, lambda n: 5, 3) == 0
    assert apply_delta(3, 2, lambda n: n, 1) == 0
    got = apply_delta(3, 1, lambda n: n**-2.0, 1)
    assert got == pytest.approx(2**-2 + 3**-2 - 2 * 4**-2, abs=1e-16)
    assert got == pytest.approx(0.2361111111111111, abs=1e-15)


def test_delta_power_examples():
    assert delta_power(2, 0, 4, 2) == pytest.approx(0.0625, abs=0)
    assert abs(delta_power(3, 3, 5, -2)) < 1e-14
    assert delta_power(2, 1, 1, 1) == pytest.approx(1 / 2 - 1 / 3, abs=1e-16)


def test_pochhammer_examples():
    assert pochhammer(2, 3) == 24
    assert pochhammer(3.7 - 2j, 0) == 1
    assert pochhammer(-2, 3) == 0


def test_tail_bound_examples():
    assert tail_bound(2, 1, 10, 2) == pytest.approx(0.002, rel=1e-14)
    assert tail_bound(2, 0, 5, 2) == pytest.approx(0.04, rel=1e-14)
    assert abs(delta_power(2, 0, 5, 2)) == pytest.approx(tail_bound(2, 0, 5, 2), rel=1e-14)
    assert tail_bound(3, 2, 4, 1) == pytest.approx(0.28125, rel=1e-14)
    with pytest.raises(ValueError):
        tail_bound(2, 1, 5, -3)


def test_c3_depth2_expansion_in_symbols():
    from zetawallis.transform import transform

    # head (1/3)(3b1 + 4b2 - 4b3) - (1/9)(3b2 + 7b3 - 6b4 - 12b5 + 8b6)
    first = [3, 4, -4, 0, 0, 0]
    second = [0, 3, 7, -6, -12, 8]
    expected = [Fraction(a, 3) - Fraction(b, 9) for a, b in zip(first, second)]
    heads = [transform(3, 2, unit(i), limit=12).head for i in range(1, 7)]
    assert heads == expected
    # tail terms (1/9)[(b3 + 2b4 - 3b5 - 4b6 + 4b7) + (b4 + ...) - 2(b5 + ...)]
    for n, a in [(1, 1), (2, 1), (3, -2)]:
        row = [transform(3, 2, unit(i)).term(n) for i in range(1, 10)]
        pattern = [0] * (n + 1) + [1, 2, -3, -4, 4] + [0] * (3 - n)
        assert row == [Fraction(a * p, 9) for p in pattern]


# ---- properties -------------------------------------------------------------


@given(moduli, st.integers(min_value=1, max_value=10))
def test_weights_sum_to_zero_and_stay_in_window(c, k):
    wv = weight_vector(c, k)
    assert sum(wv.weights.values()) == 0
    assert min(wv.offsets) >= k and max(wv.offsets) <= c * k
    assert wv.abs_sum() <= (2 * (c - 1)) ** k


@given(moduli, depths, depths)
def test_convolution_consistency(c, k1, k2):
    # Delta^(k1+k2) = Delta^k1 applied to Delta^k2
    a, b = weight_vector(c, k1).weights, weight_vector(c, k2).weights
    conv = {}
    for i, wi in a.items():
        for j, wj in b.items():
            conv[i + j] = conv.get(i + j, 0) + wi * wj
    conv = {j: w for j, w in conv.items() if w}
    assert conv == weight_vector(c, k1 + k2).weights


@given(moduli, st.integers(min_value=0, max_value=6), st.integers(min_value=1, max_value=40), st.data())
def test_polynomial_annihilation(c, m, n, data):
    k = data.draw(st.integers(min_value=m + 1, max_value=m + 4))
    assert apply_delta(c, k, lambda j: j**m, n) == 0


def test_polynomial_degree_m_survives_depth_m():
    # Delta_c^m n^m = (-1)^m m! (c(c-1)/2)^m is a nonzero constant
    for c in range(2, 6):
        for m in range(0, 6):
            val = apply_delta(c, m, lambda j: j**m, 7)
            assert val == (-1) ** m * math.factorial(m) * (c * (c - 1) // 2) ** m


def test_delta_bound_on_random_samples():
    rng = random.Random(1000)
    for _ in range(1000):
        c = rng.randint(2, 6)
        k = rng.randint(0, 6)
        n = rng.randint(1, 400)
        s = complex(rng.uniform(-k + 0.01, 5), rng.uniform(-15, 15))
        d = abs(delta_power(c, k, n, s))
        bound = tail_bound(c, k, n, s)
        assert d <= bound * (1 + 1e-9) + 1e-300, (c, k, n, s)


@pytest.mark.parametrize("c", [2, 3, 4])
def test_first_difference_matches_integral(c):
    # (n+i)^-s - n^-s = -s * int_n^{n+i} x^(-s-1) dx, and the a_i sum to zero
    s = mpmath.mpf("1.5")
    n = 9
    quad = sum(coefficient_a(c, i) * mpmath.quad(lambda x: -s * x ** (-s - 1), [n, n + i]) for i in range(1, c + 1))
    assert delta_power(c, 1, n, 1.5) == pytest.approx(float(quad), rel=1e-12)


def test_second_difference_against_quadrature():
    # Delta_2^2 b_n = b_{n+2} - 2 b_{n+3} + b_{n+4} = int int b''
    s = mpmath.mpf(2)
    n = 5
    f2 = lambda x: s * (s + 1) * x ** (-s - 2)  # noqa: E731
    val = mpmath.quad(lambda u: mpmath.quad(lambda v: f2(n + 2 + u + v), [0, 1]), [0, 1])
    assert delta_power(2, 2, n, 2) == pytest.approx(float(val), rel=1e-12)


@pytest.mark.parametrize("c,k,s", [(2, 3, 2), (3, 4, -1.5 + 7j), (2, 5, -2.7 + 3j), (4, 2, 0.5 - 15j), (3, 6, 3.3)])
def test_kernel_array_matches_pointwise(c, k, s):
    arr = delta_power_array(c, k, s, 400)
    idx = [1, 2, 3, 10, 37, 90, 199, 400]
    for n in idx:
        ref = delta_power(c, k, n, s)
        assert abs(arr[n - 1] - ref) <= 1e-12 * abs(ref) + 1e-300


def test_kernel_array_against_high_precision():
    c, k, s = 2, 6, complex(-3.5, 2)
    arr = delta_power_array(c, k, s, 3000)
    mpmath.mp.dps = 60
    try:
        n = 2500
        ref = sum(w * mpmath.power(n + j, -mpmath.mpc(s)) for j, w in weight_vector(c, k).items())
        assert abs(arr[n - 1] - complex(ref)) <= 1e-13 * abs(complex(ref))
    finally:
        mpmath.mp.dps = 15


def test_head_value_matches_exact_head():
    from zetawallis.transform import transform

    ts = transform(3, 2, lambda n: Fraction(1, n * n))
    assert head_value(3, 2, 2) == pytest.approx(float(ts.head), rel=1e-15)
