"""Heisenberg-picture evolution of observables at band limit N.

The Hamiltonian is an affine spectrum h_n = a n + b plus an optional
compact Hermitian perturbation C; the affine part is never materialized
as a matrix, it acts entrywise through the phase gaps h_k - h_l.  The
dissipative part is a finite list of Lindblad operators and/or one
diagonal operator diag(lambda_n) handled entrywise.

Closed forms:

    harmonic:          a[k,l](t) = a[k,l](0) exp(i (h_k - h_l) t)
    diagonal Lindblad: a[k,l](t) = a[k,l](0) exp(phi[k,l] t),
        phi[k,l] = conj(lam_k) lam_l - |lam_k|^2/2 - |lam_l|^2/2

Re phi = -|lam_k - lam_l|^2 / 2 <= 0, so every off-diagonal mode decays
and the diagonal is frozen; Hermiticity is preserved for any lambda since
phi[l,k] = conj(phi[k,l]).

The integrator is classical RK4 run in the rotating frame of the affine
part (the entrywise phase factor is applied exactly each step, RK4 only
sees the compact/dissipative remainder).  For a pure harmonic flow the
step is exact up to round-off; for the general flow the order is the
classical 4.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .errors import DimensionError, DomainError, IntegrationError
from .grids import (
    FOURIER_REAL,
    GENERAL,
    CoeffGrid,
    index_range,
    kl_mesh,
    require_fourier_real,
    require_hermitian,
)
from .sobolev import SobolevWeight, norm

SUPPORT_RTOL = 1e-12


@dataclass(frozen=True)
class HarmonicSpec:
    a: float
    b: float = 0.0
    floor: Optional[int] = None  # h_n = 0 for n < floor

    def levels(self, n: int) -> np.ndarray:
        idx = index_range(n)
        h = self.a * idx + self.b
        if self.floor is not None:
            h = np.where(idx < self.floor, 0.0, h)
        return h

    def gaps(self, n: int) -> np.ndarray:
        """Matrix of h_k - h_l over the index window."""
        h = self.levels(n)
        return h[:, None] - h[None, :]


def _check_floor_support(a0: CoeffGrid, floor: int):
    idx = index_range(a0.n)
    bad = idx < floor
    dev = 0.0
    if bad.any():
        dev = max(
            float(np.max(np.abs(a0.data[bad, :]))),
            float(np.max(np.abs(a0.data[:, bad]))),
        )
    if dev > SUPPORT_RTOL * max(a0.scale(), 1e-300):
        raise DomainError(
            "initial grid has support below the spectrum floor %d (max %.3e)"
            % (floor, dev)
        )


def linear_lambda(c: complex, n: int) -> np.ndarray:
    """The diagonal family lam_k = c*k on the index window [-n, n]."""
    return c * index_range(n).astype(np.complex128)


@dataclass
class LindbladSet:
    c: Optional[CoeffGrid] = None
    ls: List[CoeffGrid] = field(default_factory=list)
    lam: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.c is not None:
            require_hermitian(self.c)
        if self.lam is not None:
            self.lam = np.asarray(self.lam, dtype=np.complex128)
        sizes = set()
        if self.c is not None:
            sizes.add(self.c.n)
        for l in self.ls:
            sizes.add(l.n)
        if self.lam is not None:
            if self.lam.ndim != 1 or self.lam.size % 2 != 1:
                raise DimensionError("lambda must be a 1D sequence of odd length 2N+1")
            sizes.add((self.lam.size - 1) // 2)
        if len(sizes) > 1:
            raise DimensionError("inconsistent band limits in LindbladSet: %r" % sizes)

    @property
    def n(self) -> Optional[int]:
        if self.c is not None:
            return self.c.n
        if self.ls:
            return self.ls[0].n
        if self.lam is not None:
            return (self.lam.size - 1) // 2
        return None

    def is_empty(self) -> bool:
        return self.c is None and not self.ls and self.lam is None

    def phi_matrix(self) -> Optional[np.ndarray]:
        if self.lam is None:
            return None
        lam = self.lam
        a2 = np.abs(lam) ** 2
        phi = np.conj(lam)[:, None] * lam[None, :] - 0.5 * (a2[:, None] + a2[None, :])
        np.fill_diagonal(phi, 0.0)  # exactly zero in exact arithmetic; keep it so
        return phi


@dataclass(frozen=True)
class EvolveConfig:
    t_end: float
    dt: Optional[float] = None  # None: min(1e-3, 0.5 / max phase gap)
    alpha: float = 0.0
    record_every: int = 1

    def __post_init__(self):
        if self.t_end < 0:
            raise DomainError("t_end must be non-negative")
        if self.dt is not None and self.dt <= 0:
            raise DomainError("dt must be positive")
        if self.record_every < 1:
            raise DomainError("record_every must be >= 1")


@dataclass
class TrajectoryPoint:
    t: float
    grid: CoeffGrid
    alpha_norm: float


def heisenberg_closed(a0: CoeffGrid, h: HarmonicSpec, t: float) -> CoeffGrid:
    if h.floor is not None:
        _check_floor_support(a0, h.floor)
    phase = np.exp(1j * h.gaps(a0.n) * t)
    return CoeffGrid(a0.n, a0.data * phase, a0.tag)


def drift_oracle(f0: CoeffGrid, a: float, t: float) -> CoeffGrid:
    """Harmonic flow at field level: rigid transport on the torus.

    In coefficients the flow is the phase modulation
        fhat[k,l] -> fhat[k,l] * exp(i a (k - l) t),
    i.e. f_t(x, y) = f_0(x + (a/2pi) t, y - (a/2pi) t).  Matches the
    Q-conjugated closed form exactly.
    """
    require_fourier_real(f0)
    k, l = kl_mesh(f0.n)
    phase = np.exp(1j * a * (k - l) * t)
    return CoeffGrid(f0.n, f0.data * phase, FOURIER_REAL)


def diagonal_lindblad_closed(a0: CoeffGrid, lam: Sequence[complex], t: float) -> CoeffGrid:
    if t < 0:
        raise DomainError("diagonal Lindblad closed form needs t >= 0")
    lset = LindbladSet(lam=np.asarray(lam))
    if lset.n != a0.n:
        raise DimensionError("lambda length %d does not match grid n=%d"
                             % (2 * lset.n + 1, a0.n))
    factor = np.exp(lset.phi_matrix() * t)
    return CoeffGrid(a0.n, a0.data * factor, a0.tag)


def lindblad_rhs(a: CoeffGrid, h: HarmonicSpec, lset: Optional[LindbladSet] = None,
                 picture: str = "heisenberg") -> CoeffGrid:
    """Full generator: affine phases + compact commutator + dissipator."""
    lset = lset or LindbladSet()
    if lset.n is not None and lset.n != a.n:
        raise DimensionError("operator set band limit %d vs grid %d" % (lset.n, a.n))
    sign = {"heisenberg": 1.0, "schrodinger": -1.0}[picture]
    ad = a.data
    out = (sign * 1j) * h.gaps(a.n) * ad
    out = out + _remainder_rhs(ad, lset, sign)
    return CoeffGrid(a.n, out, GENERAL)


def _remainder_rhs(ad: np.ndarray, lset: LindbladSet, sign: float) -> np.ndarray:
    """Everything except the affine phase part, acting on raw data."""
    out = np.zeros_like(ad)
    if lset.c is not None:
        cd = lset.c.data
        out += (sign * 1j) * (cd @ ad - ad @ cd)
    for l in lset.ls:
        ld = l.data
        lh = np.conj(ld.T)
        lhl = lh @ ld
        if sign > 0:  # observable picture
            out += lh @ ad @ ld - 0.5 * (lhl @ ad + ad @ lhl)
        else:  # state picture
            out += ld @ ad @ lh - 0.5 * (lhl @ ad + ad @ lhl)
    phi = lset.phi_matrix()
    if phi is not None:
        out += (phi if sign > 0 else np.conj(phi)) * ad
    return out


def default_dt(h: HarmonicSpec, n: int) -> float:
    gap = float(np.max(np.abs(h.gaps(n))))
    if gap == 0.0:
        return 1e-3
    return min(1e-3, 0.5 / gap)


def evolve_rk4(a0: CoeffGrid, h: HarmonicSpec, lset: Optional[LindbladSet],
               cfg: EvolveConfig, picture: str = "heisenberg") -> List[TrajectoryPoint]:
    """Fixed-step RK4 in the rotating frame of the affine spectrum.

    Writes A(t_n + s) = exp(sign*i*Delta*s) .* B(s) within each step and
    advances B with classical RK4; the phase factor is exact, so the pure
    harmonic flow is reproduced to round-off and stiffness from large
    phase gaps never enters the error term.
    """
    lset = lset or LindbladSet()
    if h.floor is not None:
        _check_floor_support(a0, h.floor)
    n = a0.n
    if lset.n is not None and lset.n != n:
        raise DimensionError("operator set band limit %d vs grid %d" % (lset.n, n))
    sign = {"heisenberg": 1.0, "schrodinger": -1.0}[picture]
    dt = cfg.dt if cfg.dt is not None else default_dt(h, n)
    gap = float(np.max(np.abs(h.gaps(n))))
    if dt * gap > 0.5:
        warnings.warn(
            "dt=%g does not resolve the fastest phase gap %g (dt*gap=%.3g > 0.5)"
            % (dt, gap, dt * gap),
            RuntimeWarning,
        )

    weight = SobolevWeight(cfg.alpha)
    delta = h.gaps(n)
    a = np.array(a0.data)

    def record(points, t, arr):
        g = CoeffGrid(n, arr, a0.tag)
        points.append(TrajectoryPoint(t, g, norm(g, weight)))

    points: List[TrajectoryPoint] = []
    record(points, 0.0, a)
    if cfg.t_end == 0.0:
        return points

    plain = lset.is_empty()
    n_steps = max(1, int(np.ceil(cfg.t_end / dt - 1e-12)))
    base_dt = cfg.t_end / n_steps  # uniform steps <= dt that land exactly on t_end
    e_full = np.exp((sign * 1j * base_dt) * delta)
    e_half = np.exp((sign * 1j * base_dt / 2.0) * delta)
    e_half_c = np.conj(e_half)
    e_full_c = np.conj(e_full)

    t = 0.0
    for step in range(1, n_steps + 1):
        if plain:
            a = e_full * a
        else:
            g1 = _remainder_rhs(a, lset, sign)
            y2 = e_half * (a + (base_dt / 2.0) * g1)
            g2 = e_half_c * _remainder_rhs(y2, lset, sign)
            y3 = e_half * (a + (base_dt / 2.0) * g2)
            g3 = e_half_c * _remainder_rhs(y3, lset, sign)
            y4 = e_full * (a + base_dt * g3)
            g4 = e_full_c * _remainder_rhs(y4, lset, sign)
            a = e_full * (a + (base_dt / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4))
        t = step * base_dt
        if not np.all(np.isfinite(a)):
            raise IntegrationError(
                "non-finite entries at t=%.6g (step %d); reduce dt or rescale"
                % (t, step)
            )
        if step % cfg.record_every == 0 or step == n_steps:
            record(points, t, a)
    return points


@dataclass(frozen=True)
class GrowthBound:
    c: float
    pure_factor: float  # exp(c t), valid for the a=0 dissipative flow
    full_factor: float  # 1 + sqrt(c t (exp(2 c t) - 1)) / (2 sqrt(2))


def dissipative_constant(alpha: float, lset: LindbladSet) -> float:
    """c = 4 ||C||_alpha + 4 sum_j ||L_j||^2_alpha (diag lambda included)."""
    w = SobolevWeight(alpha)
    c = 0.0
    if lset.c is not None:
        c += 4.0 * norm(lset.c, w)
    for l in lset.ls:
        c += 4.0 * norm(l, w) ** 2
    if lset.lam is not None:
        n = (lset.lam.size - 1) // 2
        idx = index_range(n)
        wts = (1.0 + 2.0 * idx.astype(float) ** 2) ** alpha
        c += 4.0 * float(np.sum(wts * np.abs(lset.lam) ** 2))
    return c


def growth_bound(alpha: float, lset: LindbladSet, t: float) -> GrowthBound:
    if alpha < 0:
        raise DomainError("growth bound needs alpha >= 0")
    if t < 0:
        raise DomainError("growth bound needs t >= 0")
    c = dissipative_constant(alpha, lset)
    with np.errstate(over="ignore"):
        pure = float(np.exp(c * t))
        full = 1.0 + float(np.sqrt(c * t * (np.exp(2.0 * c * t) - 1.0))) / (2.0 * np.sqrt(2.0))
    return GrowthBound(c, pure, full)
