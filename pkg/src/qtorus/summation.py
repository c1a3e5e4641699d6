"""Deterministic compensated summation.

Zero-ordinate averages are folded in a fixed ascending order with
Neumaier's variant of Kahan summation so results are reproducible down to
the last bit regardless of how the per-term work was parallelized.
"""

from __future__ import annotations

import numpy as np


def kahan_sum(values) -> complex:
    """Sequential Neumaier sum of a 1D real or complex array."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError("kahan_sum expects a 1D array")
    if np.iscomplexobj(arr):
        return complex(kahan_sum(arr.real)) + 1j * complex(kahan_sum(arr.imag))
    total = 0.0
    comp = 0.0
    for x in arr.astype(np.float64):
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return total + comp


class KahanAccumulator:
    """Elementwise Neumaier accumulator over arrays of a fixed shape.

    add() must be called in the canonical (ascending-ordinate) order;
    the accumulator itself is sequential by design.
    """

    def __init__(self, shape, dtype=np.complex128):
        self.total = np.zeros(shape, dtype=dtype)
        self.comp = np.zeros(shape, dtype=dtype)

    def add(self, term: np.ndarray):
        term = np.asarray(term, dtype=self.total.dtype)
        if np.iscomplexobj(self.total):
            self._add_part(self.total.real, self.comp.real, term.real)
            self._add_part(self.total.imag, self.comp.imag, term.imag)
        else:
            self._add_part(self.total, self.comp, term)

    @staticmethod
    def _add_part(total, comp, x):
        t = total + x
        big = np.abs(total) >= np.abs(x)
        comp += np.where(big, (total - t) + x, (x - t) + total)
        total[...] = t

    def value(self) -> np.ndarray:
        return self.total + self.comp


def kahan_fold_axis0(stack: np.ndarray) -> np.ndarray:
    """Compensated sum along axis 0, sequential in the given order."""
    acc = KahanAccumulator(stack.shape[1:], dtype=np.result_type(stack.dtype, np.float64))
    for i in range(stack.shape[0]):
        acc.add(stack[i])
    return acc.value()
