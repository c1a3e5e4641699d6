"""Sobolev inner products and norms on coefficient grids.

<A|B>_alpha = sum over (k,l) of (1 + k^2 + l^2)^alpha * a[k,l] * conj(b[k,l])

The same form serves fields and operator matrices; alpha = 0 recovers the
Hilbert-Schmidt (Frobenius) pairing.  Custom weights are allowed as long
as they are non-negative and depend only on k^2 + l^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DimensionError, DomainError
from .grids import CoeffGrid, kl_mesh, require_hermitian, require_same_size


@dataclass(frozen=True)
class SobolevWeight:
    alpha: float = 0.0
    # radial profile of k^2 + l^2, overrides alpha when set
    profile: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def weights(self, n: int) -> np.ndarray:
        k, l = kl_mesh(n)
        r2 = (k * k + l * l).astype(np.float64)
        if self.profile is not None:
            w = np.asarray(self.profile(r2), dtype=np.float64)
            if w.shape != r2.shape:
                raise DimensionError("radial profile must map r^2 grid to same shape")
            if np.any(w < 0):
                raise DomainError("radial weight profile must be non-negative")
            return w
        return (1.0 + r2) ** self.alpha


def inner(a: CoeffGrid, b: CoeffGrid, w: SobolevWeight) -> complex:
    require_same_size(a, b)
    wgt = w.weights(a.n)
    return complex(np.sum(wgt * a.data * np.conj(b.data)))


def norm(a: CoeffGrid, w: SobolevWeight) -> float:
    wgt = w.weights(a.n)
    return float(np.sqrt(np.sum(wgt * np.abs(a.data) ** 2)))


def commutator_pairing(h: CoeffGrid, a: CoeffGrid, w: SobolevWeight) -> complex:
    """<[H,A]|A>_alpha for Hermitian H, A; purely imaginary up to round-off."""
    require_same_size(h, a)
    require_hermitian(h)
    require_hermitian(a)
    comm = h.data @ a.data - a.data @ h.data
    return inner(CoeffGrid(a.n, comm), a, w)
