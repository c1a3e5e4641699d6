"""Slow reference implementations the fast code is checked against.

Everything here is written in the most literal form possible (scalar
loops, explicit exponentials, explicit divisor sums) and shares no code
paths with the package beyond the CoeffGrid container.
"""

import numpy as np

from qtorus import CoeffGrid, FOURIER_REAL, GENERAL, HERMITIAN

SQRT2 = np.sqrt(2.0)


def naive_analyze(values):
    """Direct double-sum DFT, no np.fft anywhere."""
    m = values.shape[0]
    n = (m - 1) // 2
    out = np.zeros((m, m), dtype=np.complex128)
    ii = np.arange(m)
    for k in range(-n, n + 1):
        col = np.exp(-2j * np.pi * k * ii / m)
        for l in range(-n, n + 1):
            row = np.exp(-2j * np.pi * l * ii / m)
            out[k + n, l + n] = np.sum(values * col[:, None] * row[None, :]) / (m * m)
    return out


def naive_s_map(z):
    """Entry-by-entry restatement of the rearrangement rules."""
    n = z.n
    w = np.zeros_like(z.data)
    for k in range(-n, n + 1):
        for l in range(-n, n + 1):
            if k < l:
                w[k + n, l + n] = z.entry(k, l)
            elif k > l:
                w[k + n, l + n] = np.conj(z.entry(l, k))
            elif k < 0:
                w[k + n, k + n] = SQRT2 * z.entry(k, k).imag
            elif k > 0:
                w[k + n, k + n] = SQRT2 * z.entry(k, k).real
            else:
                w[n, n] = z.entry(0, 0).real
    return CoeffGrid(n, w, HERMITIAN)


def naive_divisor_transform_1d(avals, x, conjugate_negative=True):
    """out_k = sum over d | k of a_d x_{k/d} on the window, explicit loops.

    avals is 1-based (avals[1] = a_1); x is indexed -n..n via x[k+n].
    Negative k uses conj(a_d) when conjugate_negative is set; index 0
    passes through untouched.
    """
    n = (len(x) - 1) // 2
    out = np.zeros(len(x), dtype=np.complex128)
    out[n] = x[n]
    for k in range(1, n + 1):
        for d in range(1, k + 1):
            if k % d == 0:
                out[k + n] += avals[d] * x[k // d + n]
                cf = np.conj(avals[d]) if conjugate_negative else avals[d]
                out[-k + n] += cf * x[-(k // d) + n]
    return out


def naive_divisor_transform_2d(avals, fhat):
    """Row-then-column application of the 1D divisor transform."""
    n = fhat.n
    m = 2 * n + 1
    cols = np.zeros((m, m), dtype=np.complex128)
    for j in range(m):
        cols[:, j] = naive_divisor_transform_1d(avals, fhat.data[:, j])
    rows = np.zeros((m, m), dtype=np.complex128)
    for i in range(m):
        rows[i, :] = naive_divisor_transform_1d(avals, cols[i, :])
    return CoeffGrid(n, rows, GENERAL)


def symmetrize_fourier_real(raw):
    m = raw.shape[0]
    z = 0.5 * (raw + np.conj(raw[::-1, ::-1]))
    z[(m - 1) // 2, (m - 1) // 2] = z[(m - 1) // 2, (m - 1) // 2].real
    return z


def random_fourier_real(n, rng, scale=1.0):
    m = 2 * n + 1
    raw = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return CoeffGrid(n, symmetrize_fourier_real(scale * raw), FOURIER_REAL)


def random_hermitian(n, rng, scale=1.0):
    m = 2 * n + 1
    raw = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return CoeffGrid(n, 0.5 * scale * (raw + np.conj(raw.T)), HERMITIAN)


def random_general(n, rng, scale=1.0):
    m = 2 * n + 1
    raw = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return CoeffGrid(n, scale * raw, GENERAL)
