"""Broadband averaging over zeta-zero ordinates.

A smooth field re-encoded through the slowly-decaying bases D(sigma, tau)
is recovered by averaging over many ordinates tau_n: the corrections ride
on averages of d^(-i tau_n log d)-type phases, which cancel as the table
grows.  Ordinates are ingested from text tables, never computed here.

Two implementations of the 2D average are kept deliberately separate:
broadband_average_2d applies averaged phase factors divisor pair by
divisor pair, while broadband_average_2d_per_zero averages the per-zero
inverse D-transforms.  They must agree; tests hold them to 1e-10.

All zero averages fold in ascending-ordinate order with compensated
summation, so results do not depend on how the per-zero work was split.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dirichlet import ZetaParams, _divisor_lists, d_transform_2d, moebius
from .errors import DimensionError, DomainError, EmptyRangeError, FormatError
from .grids import FOURIER_REAL, GENERAL, CoeffGrid
from .spectral import s_map
from .summation import KahanAccumulator

CHUNK = 256  # zeros per map batch in the per-zero route


@dataclass(eq=False)
class ZeroTable:
    ordinates: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.ordinates, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise FormatError("zero table needs at least one ordinate")
        if arr[0] <= 0:
            raise FormatError("ordinates must be positive")
        if np.any(np.diff(arr) <= 0):
            raise FormatError("ordinates must be strictly increasing")
        arr = np.array(arr)
        arr.setflags(write=False)
        self.ordinates = arr

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    def count_below(self, t: float) -> int:
        """N(T): how many ordinates are <= T."""
        return int(np.searchsorted(self.ordinates, t, side="right"))

    def upto(self, t: float) -> np.ndarray:
        taus = self.ordinates[: self.count_below(t)]
        if taus.size == 0:
            raise EmptyRangeError("no ordinates at or below T=%g" % t)
        return taus

    def t_covering(self, count: int) -> float:
        """Smallest T whose window holds exactly `count` leading ordinates."""
        if count < 1 or count > self.count:
            raise EmptyRangeError(
                "table holds %d ordinates, cannot cover %d" % (self.count, count)
            )
        return float(self.ordinates[count - 1])


def load_zero_table(source) -> ZeroTable:
    """Parse an ordinate table: one positive decimal per line, '#' comments."""
    if hasattr(source, "read"):
        lines = source
        close = False
    else:
        lines = open(source, "r")
        close = True
    try:
        vals = []
        prev = 0.0
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                tau = float(line)
            except ValueError:
                raise FormatError("line %d: not a decimal ordinate: %r" % (lineno, line))
            if not math.isfinite(tau) or tau <= 0:
                raise FormatError("line %d: ordinate must be positive and finite" % lineno)
            if tau <= prev:
                raise FormatError(
                    "line %d: ordinates must be strictly increasing (%r after %r)"
                    % (lineno, tau, prev)
                )
            vals.append(tau)
            prev = tau
        if not vals:
            raise FormatError("no ordinates found")
        return ZeroTable(np.array(vals))
    finally:
        if close:
            lines.close()


def phase_average(taus: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """M(x) = (1/n) sum over tau of exp(-i tau x), compensated, in order."""
    xs = np.asarray(xs, dtype=np.float64)
    acc = KahanAccumulator(xs.shape)
    for tau in taus:
        acc.add(np.exp(-1j * tau * xs))
    return acc.value() / taus.size


def c_d(d: int, sigma: float, zeros: ZeroTable, t: float) -> float:
    """Modulus of the zero-averaged coefficient at d: |avg d^-(sigma+i tau)|."""
    if d < 2:
        raise DomainError("c_d needs d >= 2, got %d" % d)
    taus = zeros.upto(t)
    m = phase_average(taus, np.array([math.log(d)]))
    return float(d ** (-sigma) * abs(m[0]))


def _require_sigma(sigma: float):
    if sigma <= 1:
        raise DomainError("broadband averaging needs sigma > 1, got %g" % sigma)


def broadband_average_1d(fhat: np.ndarray, sigma: float, zeros: ZeroTable,
                         t: float) -> np.ndarray:
    """Average of the 1D re-encodings; index 0 passes through exactly.

    z_k = fhat_k + sum over d | k, d > 1 of
          mu(d) * avg_n d^-(sigma + i tau_n) * fhat_{k/d}
    with conjugated averages on the negative cone.
    """
    _require_sigma(sigma)
    fhat = np.asarray(fhat, dtype=np.complex128)
    if fhat.ndim != 1 or fhat.size % 2 != 1:
        raise DimensionError("coefficient vector must have odd length 2N+1")
    n = (fhat.size - 1) // 2
    taus = zeros.upto(t)

    ds = [d for d in range(2, n + 1) if moebius(d) != 0]
    avg = {}
    if ds:
        ms = phase_average(taus, np.array([math.log(d) for d in ds]))
        for d, m in zip(ds, ms):
            avg[d] = moebius(d) * d ** (-float(sigma)) * m

    out = fhat.copy()
    divs = _divisor_lists(n) if n >= 1 else [[]]
    for k in range(2, n + 1):
        for d in divs[k]:
            if d == 1 or d not in avg:
                continue
            out[k + n] += avg[d] * fhat[k // d + n]
            out[-k + n] += np.conj(avg[d]) * fhat[-(k // d) + n]
    return out


def _axis_terms(k: int, n: int):
    """Divisor expansion of one index: list of (d, k//d, sign) with mu(d) != 0."""
    if k == 0:
        return [(1, 0, 0)]
    sk = 1 if k > 0 else -1
    return [(d, k // d, sk) for d in _divisor_lists(n)[abs(k)] if moebius(d) != 0]


def broadband_average_2d(fhat: CoeffGrid, sigma: float, zeros: ZeroTable,
                         t: float) -> CoeffGrid:
    """Direct formula: averaged phase factor per divisor pair.

    zbar[k,l] = sum over d | k, r | l of
        mu(d) mu(r) (d r)^-sigma * M(sgn(k) log d + sgn(l) log r) * fhat[k/d, l/r]
    where M is the zero-averaged phase; the (0,0) entry is exact since
    only d = r = 1 reaches it and M(0) = 1.
    """
    _require_sigma(sigma)
    n = fhat.n
    taus = zeros.upto(t)

    axis = {k: _axis_terms(k, n) for k in range(-n, n + 1)}

    # deduplicate phase arguments by the exact rational d^sgn(k) * r^sgn(l)
    keys = {}
    for k in range(-n, n + 1):
        for d, _, sk in axis[k]:
            for l in range(-n, n + 1):
                for r, _, sl in axis[l]:
                    num = (d if sk > 0 else 1) * (r if sl > 0 else 1)
                    den = (d if sk < 0 else 1) * (r if sl < 0 else 1)
                    g = math.gcd(num, den)
                    keys[(num // g, den // g)] = 0.0
    for (p, q) in keys:
        keys[(p, q)] = math.log(p) - math.log(q)
    key_list = list(keys)
    ms = phase_average(taus, np.array([keys[key] for key in key_list]))
    m_of = dict(zip(key_list, ms))

    fd = fhat.data
    out = np.zeros_like(fd)
    for k in range(-n, n + 1):
        for l in range(-n, n + 1):
            acc = 0.0 + 0.0j
            for d, kd, sk in axis[k]:
                mud = moebius(d)
                for r, lr, sl in axis[l]:
                    num = (d if sk > 0 else 1) * (r if sl > 0 else 1)
                    den = (d if sk < 0 else 1) * (r if sl < 0 else 1)
                    g = math.gcd(num, den)
                    m = m_of[(num // g, den // g)]
                    coef = mud * moebius(r) * (d * r) ** (-float(sigma))
                    acc += coef * m * fd[kd + n, lr + n]
            out[k + n, l + n] = acc
    tag = FOURIER_REAL if fhat.tag == FOURIER_REAL else GENERAL
    return CoeffGrid(n, out, tag)


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("QTL_THREADS", "1")))
    except ValueError:
        return 1


def broadband_average_2d_per_zero(fhat: CoeffGrid, sigma: float, zeros: ZeroTable,
                                  t: float, max_workers: int | None = None) -> CoeffGrid:
    """Oracle route: average the per-ordinate inverse D-transforms.

    Per-zero grids may be computed in parallel (QTL_THREADS), but the
    reduction is always the sequential compensated fold in ascending
    ordinate order, so the result is independent of the worker count.
    """
    _require_sigma(sigma)
    n = fhat.n
    taus = zeros.upto(t)
    workers = max_workers if max_workers is not None else _worker_count()

    def one(tau: float) -> np.ndarray:
        seq = ZetaParams(sigma, tau).sequence(n if n >= 1 else 1)
        return d_transform_2d(seq, fhat).data

    acc = KahanAccumulator(fhat.data.shape)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for start in range(0, taus.size, CHUNK):
                chunk = taus[start:start + CHUNK]
                for term in pool.map(one, chunk):
                    acc.add(term)
    else:
        for tau in taus:
            acc.add(one(tau))
    out = acc.value() / taus.size
    tag = FOURIER_REAL if fhat.tag == FOURIER_REAL else GENERAL
    return CoeffGrid(n, out, tag)


def averaging_errors(zbar: CoeffGrid, fhat: CoeffGrid):
    """(field l2 error, operator Hilbert-Schmidt error) of an average."""
    l2 = float(np.linalg.norm(zbar.data - fhat.data))
    hs = float(np.linalg.norm(s_map(zbar).data - s_map(fhat).data))
    return l2, hs
