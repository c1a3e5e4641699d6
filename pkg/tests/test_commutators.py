"""Matrix commutators and the induced bracket on real fields."""

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st
from numpy.testing import assert_allclose

from qtorus import (
    FOURIER_REAL,
    CoeffGrid,
    SampleGrid,
    SobolevWeight,
    analyze,
    field_commutator,
    field_commutator_complex,
    fourier_real_deviation,
    norm,
    op_commutator,
    q_transform,
    s_map,
)
from qtorus.errors import DimensionError

from helpers import random_fourier_real, random_general


def as_field(m, func):
    z = analyze(SampleGrid.from_function(m, func))
    return CoeffGrid(z.n, z.data, FOURIER_REAL)


def test_op_commutator_antisymmetric(rng):
    a = random_general(4, rng)
    b = random_general(4, rng)
    c1 = op_commutator(a, b)
    c2 = op_commutator(b, a)
    assert np.max(np.abs(c1.data + c2.data)) == 0.0


def test_op_commutator_traceless(rng):
    a = random_general(5, rng)
    b = random_general(5, rng)
    assert abs(np.trace(op_commutator(a, b).data)) < 1e-12


def test_size_mismatch_rejected(rng):
    with pytest.raises(DimensionError):
        op_commutator(random_general(2, rng), random_general(3, rng))


@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_bracket_output_is_real_field(n, seed):
    rng = np.random.default_rng(seed)
    f = random_fourier_real(n, rng)
    g = random_fourier_real(n, rng)
    k = field_commutator(f, g)
    scale = max(k.scale(), 1e-300)
    assert fourier_real_deviation(k) < 1e-13 * scale
    assert k.tag == FOURIER_REAL


@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_bracket_antisymmetric(n, seed):
    rng = np.random.default_rng(seed)
    f = random_fourier_real(n, rng)
    g = random_fourier_real(n, rng)
    assert np.max(np.abs(field_commutator(f, g).data
                         + field_commutator(g, f).data)) < 1e-13


def test_jacobi_identity(rng):
    n = 4
    f = random_fourier_real(n, rng)
    g = random_fourier_real(n, rng)
    h = random_fourier_real(n, rng)
    total = (field_commutator(f, field_commutator(g, h)).data
             + field_commutator(g, field_commutator(h, f)).data
             + field_commutator(h, field_commutator(f, g)).data)
    scale = max(f.scale() * g.scale() * h.scale(), 1.0)
    assert np.max(np.abs(total)) < 1e-10 * scale


def test_diagonal_modes_commute():
    # both map to diagonal matrices, so the bracket vanishes
    f = as_field(5, lambda x, y: np.cos(2 * np.pi * (x + y)))
    g = as_field(5, lambda x, y: np.sin(2 * np.pi * (x + y)))
    k = field_commutator(f, g)
    assert np.max(np.abs(k.data)) < 1e-14


def test_bracket_with_self_vanishes(rng):
    f = random_fourier_real(5, rng)
    assert np.max(np.abs(field_commutator(f, f).data)) == 0.0


def test_bracket_matches_matrix_route(rng):
    f = random_fourier_real(4, rng)
    g = random_fourier_real(4, rng)
    direct = s_map(field_commutator(f, g)).data
    matrix = 1j * op_commutator(s_map(f), s_map(g)).data
    assert np.max(np.abs(direct - matrix)) < 1e-13


def test_bracket_norm_bound(rng):
    # the factor-2 submultiplicative bound transfers through the isometry
    for alpha in (0.0, 1.0, 2.0):
        w = SobolevWeight(alpha)
        for _ in range(20):
            f = random_fourier_real(5, rng)
            g = random_fourier_real(5, rng)
            k = field_commutator(f, g)
            assert norm(k, w) <= 2.0 * norm(f, w) * norm(g, w) + 1e-10


def test_complex_bracket_components(rng):
    n = 3
    f, g = random_fourier_real(n, rng), random_fourier_real(n, rng)
    p, q = random_fourier_real(n, rng), random_fourier_real(n, rng)
    re, im = field_commutator_complex((f, g), (p, q))
    assert_allclose(re.data,
                    field_commutator(f, p).data - field_commutator(g, q).data,
                    atol=1e-14)
    assert_allclose(im.data,
                    field_commutator(f, q).data + field_commutator(g, p).data,
                    atol=1e-14)
    # the same bilinearity through the matrix route
    u = q_transform(f, g)
    v = q_transform(p, q)
    kc = 1j * op_commutator(u, v).data
    assert_allclose(kc, s_map(re).data + 1j * s_map(im).data, atol=1e-12)
