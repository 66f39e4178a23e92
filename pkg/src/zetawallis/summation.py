"""Deterministic compensated sums used throughout the package."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np


def csum(values: Iterable) -> complex | float:
    """Correctly rounded sum of real or complex values (``math.fsum`` per component)."""
    vals = list(values)
    if any(isinstance(v, complex) for v in vals):
        return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    return math.fsum(vals)


def csum_array(arr: np.ndarray) -> complex | float:
    arr = np.asarray(arr)
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))
    return math.fsum(arr.tolist())


def block_sums(terms: np.ndarray, c: int) -> np.ndarray:
    """Sum consecutive blocks of ``c`` terms, left to right inside each block."""
    blocks = np.asarray(terms).reshape(-1, c)
    out = blocks[:, 0].copy()
    for i in range(1, c):
        out = out + blocks[:, i]
    return out


def running_sum(values: np.ndarray, start: float = 0.0) -> np.ndarray:
    """Neumaier-compensated prefix sums of a real array, in index order."""
    out = np.empty(len(values))
    s = float(start)
    comp = 0.0
    for i, v in enumerate(np.asarray(values, dtype=float).tolist()):
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
        out[i] = s + comp
    return out
