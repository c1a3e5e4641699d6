"""Dirichlet convolution machinery and the generalized transforms.

Sequences live in 1-based numpy arrays (slot 0 unused) so a[j] is the
coefficient at j.  The convolution operator D acts on frequency vectors
indexed -N..N by

    (D x)_k = sum over d | k of a_d * x_{k/d}     for k > 0
    (D x)_{-k} mirrors with conj(a_d)             (coefficients of e^{-2 pi i k t})
    (D x)_0 = x_0

Divisors never leave the window (d | k implies k/d <= k <= N), so D and
its inverse are exact on band-limited data, not approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .grids import FOURIER_REAL, GENERAL, CoeffGrid, require_fourier_real
from .errors import DimensionError, DomainError
from .spectral import s_map


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError("moebius is defined for n >= 1, got %d" % n)
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=16)
def _divisor_lists(lmax: int):
    """divs[m] = all divisors of m, ascending; divs[0] empty."""
    divs = [[] for _ in range(lmax + 1)]
    for d in range(1, lmax + 1):
        for m in range(d, lmax + 1, d):
            divs[m].append(d)
    return divs


@lru_cache(maxsize=16)
def _cone_indices(n: int):
    """Flat (k, d, k//d) triples for all 1 <= k <= n, d | k."""
    divs = _divisor_lists(n)
    ks, ds, ms = [], [], []
    for k in range(1, n + 1):
        for d in divs[k]:
            ks.append(k)
            ds.append(d)
            ms.append(k // d)
    return np.array(ks), np.array(ds), np.array(ms)


def dirichlet_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a*b)_n = sum over d | n of a_d b_{n/d}; 1-based arrays in and out."""
    lmax = min(len(a), len(b)) - 1
    out = np.zeros(lmax + 1, dtype=np.complex128)
    divs = _divisor_lists(lmax)
    for n in range(1, lmax + 1):
        out[n] = sum(a[d] * b[n // d] for d in divs[n])
    return out


def dirichlet_inverse(a: np.ndarray, lmax: int | None = None) -> np.ndarray:
    """b with a*b = (1, 0, 0, ...), by the divisor-sum recursion."""
    if lmax is None:
        lmax = len(a) - 1
    if lmax < 1 or len(a) <= 1:
        raise DomainError("need at least the coefficient at 1")
    if a[1] == 0:
        raise DomainError("sequence has a_1 = 0; no Dirichlet inverse")
    b = np.zeros(lmax + 1, dtype=np.complex128)
    b[1] = 1.0 / a[1]
    divs = _divisor_lists(lmax)
    for n in range(2, lmax + 1):
        s = sum(a[d] * b[n // d] for d in divs[n] if d > 1)
        b[n] = -s / a[1]
    return b


def unit_sequence(lmax: int) -> np.ndarray:
    u = np.zeros(lmax + 1, dtype=np.complex128)
    u[1] = 1.0
    return u


@dataclass(eq=False)
class ArithmeticSeq:
    a: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.a, dtype=np.complex128).copy()
        if arr.ndim != 1 or arr.size < 2:
            raise DimensionError("sequence needs 1-based entries up to at least 1")
        arr[0] = 0.0
        if arr[1] == 0:
            raise DomainError("a_1 must be nonzero")
        self.a = arr

    @property
    def lmax(self) -> int:
        return self.a.size - 1

    @cached_property
    def b(self) -> np.ndarray:
        return dirichlet_inverse(self.a)


@dataclass(frozen=True)
class ZetaParams:
    sigma: float
    tau: float

    def __post_init__(self):
        if self.sigma <= 1:
            raise DomainError("sigma must exceed 1, got %g" % self.sigma)

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.tau)

    def sequence(self, lmax: int) -> ArithmeticSeq:
        """a_k = k^-(sigma + i tau), the periodized-zeta coefficients."""
        k = np.arange(lmax + 1, dtype=np.float64)
        with np.errstate(divide="ignore"):
            a = np.exp(-self.s * np.log(np.where(k > 0, k, 1.0)))
        a[0] = 0.0
        return ArithmeticSeq(a)

    def moebius_inverse(self, lmax: int) -> np.ndarray:
        """Closed form of the Dirichlet inverse: b_k = mu(k) k^-s."""
        b = np.zeros(lmax + 1, dtype=np.complex128)
        for k in range(1, lmax + 1):
            mu = moebius(k)
            if mu:
                b[k] = mu * np.exp(-self.s * np.log(k))
        return b


def _apply_coeffs(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Convolution operator with 1-based coefficients along axis 0 of x.

    x is indexed -N..N on axis 0; the negative cone uses conjugated
    coefficients, index 0 passes through.
    """
    m = x.shape[0]
    if m % 2 != 1:
        raise DimensionError("vector length must be odd (2N+1), got %d" % m)
    n = (m - 1) // 2
    if coeffs.size - 1 < n:
        raise DimensionError(
            "sequence only reaches %d but band limit is %d" % (coeffs.size - 1, n)
        )
    x = np.asarray(x, dtype=np.complex128)
    out = np.zeros_like(x)
    out[n] = x[n]
    if n == 0:
        return out
    ks, ds, ms = _cone_indices(n)
    xpos = x[n + 1:]
    xneg = x[n - 1::-1]  # position j holds the entry at index -(j+1)
    cf = coeffs[ds].reshape((-1,) + (1,) * (x.ndim - 1))
    pos_terms = cf * xpos[ms - 1]
    neg_terms = np.conj(cf) * xneg[ms - 1]
    pos = np.zeros_like(xpos, dtype=np.complex128)
    neg = np.zeros_like(xpos, dtype=np.complex128)
    np.add.at(pos, ks - 1, pos_terms)
    np.add.at(neg, ks - 1, neg_terms)
    out[n + 1:] = pos
    out[n - 1::-1] = neg
    return out


def apply_D(seq: ArithmeticSeq, x: np.ndarray) -> np.ndarray:
    return _apply_coeffs(seq.a, np.asarray(x, dtype=np.complex128))


def apply_D_inv(seq: ArithmeticSeq, x: np.ndarray) -> np.ndarray:
    return _apply_coeffs(seq.b, np.asarray(x, dtype=np.complex128))


def d_matrix(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Dense matrix of the convolution operator on indices -N..N."""
    if coeffs.size - 1 < n:
        raise DimensionError(
            "sequence only reaches %d but band limit is %d" % (coeffs.size - 1, n)
        )
    m = 2 * n + 1
    mat = np.zeros((m, m), dtype=np.complex128)
    mat[n, n] = 1.0
    for col in range(1, n + 1):
        d = 1
        while col * d <= n:
            mat[col * d + n, col + n] += coeffs[d]
            mat[-(col * d) + n, -col + n] += np.conj(coeffs[d])
            d += 1
    return mat


def d_transform_2d(seq: ArithmeticSeq, fhat: CoeffGrid) -> CoeffGrid:
    """Z = D^-1 fhat (D^-1)^T: inverse convolution down columns, then rows."""
    cols = _apply_coeffs(seq.b, fhat.data)
    z = _apply_coeffs(seq.b, cols.T).T
    tag = FOURIER_REAL if fhat.tag == FOURIER_REAL else GENERAL
    return CoeffGrid(fhat.n, z, tag)


def qd_transform(seq: ArithmeticSeq, f: CoeffGrid) -> CoeffGrid:
    """Generalized Q-transform: rearrange the D-transformed coefficients."""
    require_fourier_real(f)
    z = d_transform_2d(seq, CoeffGrid(f.n, f.data, FOURIER_REAL))
    return s_map(z)


def operator_norm_bound(seq: ArithmeticSeq) -> float:
    """max(1, sum |a_n|): upper bound for ||D|| at any truncation."""
    return max(1.0, float(np.sum(np.abs(seq.a[1:]))))


def estimated_operator_norm(seq: ArithmeticSeq, n: int, iters: int = 100,
                            seed: int = 0) -> float:
    """Largest singular value of the truncated D by power iteration."""
    mat = d_matrix(seq.a, n)
    gram = np.conj(mat.T) @ mat
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
    v /= np.linalg.norm(v)
    for _ in range(iters):
        w = gram @ v
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v = w / nw
    return float(np.linalg.norm(mat @ v))


class PeriodizedZeta(NamedTuple):
    value: complex
    tail_bound: float


def periodized_zeta(s: complex, t: float, terms: int) -> PeriodizedZeta:
    """Partial sum of F(s, t) = sum_{k>=1} e^{2 pi i k t} / k^s, Re s > 1.

    The reported tail bound is sum_{k>terms} k^-Re(s), estimated by the
    integral comparison; it bounds the truncation error of the value.
    """
    s = complex(s)
    if s.real <= 1:
        raise DomainError("periodized zeta needs Re s > 1, got %g" % s.real)
    if terms < 0:
        raise DomainError("terms must be non-negative")
    sigma = s.real
    if terms == 0:
        return PeriodizedZeta(0.0 + 0.0j, 1.0 + 1.0 / (sigma - 1.0))
    k = np.arange(1, terms + 1, dtype=np.float64)
    value = complex(np.sum(np.exp(2j * np.pi * t * k - s * np.log(k))))
    tail = float(terms) ** (1.0 - sigma) / (sigma - 1.0)
    return PeriodizedZeta(value, tail)
