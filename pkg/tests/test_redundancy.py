"""Zero tables, phase averages, and the broadband recovery routes.

The 100-ordinate fixture under data/ is enough for every functional
check; trend assertions against the large table live in the acceptance
module.
"""

import io
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qtorus import (
    FOURIER_REAL,
    CoeffGrid,
    ZeroTable,
    ZetaParams,
    apply_D_inv,
    averaging_errors,
    broadband_average_1d,
    broadband_average_2d,
    broadband_average_2d_per_zero,
    c_d,
    fourier_real_deviation,
    load_zero_table,
    phase_average,
    single_entry,
)
from qtorus.errors import DomainError, EmptyRangeError, FormatError

from helpers import random_fourier_real


class TestZeroTable:
    def test_fixture_shape(self, zeros100):
        assert zeros100.count == 100
        assert_allclose(zeros100.ordinates[0], 14.134725141734694, rtol=1e-12)
        assert zeros100.count_below(20.0) == 1
        assert zeros100.count_below(100.0) == 29

    def test_upto_windows(self, zeros100):
        taus = zeros100.upto(30.0)
        assert taus.size == 3
        assert np.all(np.diff(taus) > 0)
        with pytest.raises(EmptyRangeError):
            zeros100.upto(10.0)

    def test_t_covering(self, zeros100):
        t = zeros100.t_covering(5)
        assert zeros100.count_below(t) == 5
        assert t == zeros100.ordinates[4]
        with pytest.raises(EmptyRangeError):
            zeros100.t_covering(101)
        with pytest.raises(EmptyRangeError):
            zeros100.t_covering(0)

    def test_parse_comments_and_blanks(self):
        table = load_zero_table(io.StringIO(
            "# header\n\n14.1347\n  21.0220\n\n# trailing\n25.0109\n"))
        assert table.count == 3

    def test_parse_reports_line_numbers(self):
        with pytest.raises(FormatError, match="line 3"):
            load_zero_table(io.StringIO("# ok\n14.1\nnot-a-number\n"))

    def test_parse_rejects_disorder(self):
        with pytest.raises(FormatError, match="increasing"):
            load_zero_table(io.StringIO("14.1\n21.0\n21.0\n"))
        with pytest.raises(FormatError, match="positive"):
            load_zero_table(io.StringIO("-3.0\n"))

    def test_parse_rejects_empty(self):
        with pytest.raises(FormatError):
            load_zero_table(io.StringIO("# nothing here\n"))

    def test_constructor_validation(self):
        with pytest.raises(FormatError):
            ZeroTable(np.array([2.0, 1.0]))
        with pytest.raises(FormatError):
            ZeroTable(np.array([[1.0, 2.0]]))


class TestPhaseAverage:
    def test_zero_argument_is_exactly_one(self, zeros100):
        m = phase_average(zeros100.ordinates, np.array([0.0]))
        assert m[0] == 1.0 + 0.0j

    def test_single_ordinate(self):
        taus = np.array([5.0])
        xs = np.array([0.3, 1.7])
        m = phase_average(taus, xs)
        assert_allclose(m, np.exp(-5j * xs), rtol=1e-15)

    def test_antipodal_pair_cancels(self):
        # two phases half a turn apart at x = ln 2
        x = math.log(2.0)
        taus = np.array([1.0, 1.0 + math.pi / x])
        m = phase_average(taus, np.array([x]))
        assert abs(m[0]) < 1e-15


class TestCoefficientDecay:
    def test_single_zero_value(self):
        zeros = ZeroTable(np.array([14.134725]))
        assert c_d(2, 3.0, zeros, 20.0) == pytest.approx(0.125, abs=1e-15)

    def test_never_exceeds_sigma_power(self, zeros100):
        for d in (2, 3, 4, 5, 6, 10):
            assert c_d(d, 2.0, zeros100, 200.0) <= d**-2.0 + 1e-15

    def test_more_zeros_average_down(self, zeros100):
        few = c_d(2, 3.0, zeros100, zeros100.t_covering(10))
        many = c_d(2, 3.0, zeros100, zeros100.t_covering(100))
        assert many < few

    def test_domain(self, zeros100):
        with pytest.raises(DomainError):
            c_d(1, 3.0, zeros100, 100.0)


class TestAxisAverage:
    def test_head_passes_through_exactly(self, zeros100):
        n = 6
        fhat = np.zeros(2 * n + 1, dtype=complex)
        fhat[1 + n] = 1.0
        fhat[-1 + n] = 1.0
        z = broadband_average_1d(fhat, 3.0, zeros100, 300.0)
        assert z[1 + n] == 1.0
        assert z[-1 + n] == 1.0
        assert z[n] == 0.0

    def test_prime_leak_magnitude_is_cd(self, zeros100):
        n = 6
        t = 300.0
        fhat = np.zeros(2 * n + 1, dtype=complex)
        fhat[1 + n] = 1.0
        z = broadband_average_1d(fhat, 3.0, zeros100, t)
        for p in (2, 3, 5):
            assert abs(abs(z[p + n]) - c_d(p, 3.0, zeros100, t)) < 1e-15
        assert z[4 + n] == 0.0  # mu(4) = 0 kills the only route to 4

    def test_matches_per_zero_average(self, zeros100):
        # literal mean of windowed inverse transforms, one per ordinate
        n = 8
        rng = np.random.default_rng(7)
        fhat = random_fourier_real(n, rng).data[:, n].copy()
        sigma = 2.5
        t = zeros100.t_covering(40)
        fast = broadband_average_1d(fhat, sigma, zeros100, t)
        taus = zeros100.upto(t)
        slow = np.zeros_like(fhat)
        for tau in taus:
            seq = ZetaParams(sigma, tau).sequence(n)
            slow += apply_D_inv(seq, fhat)
        slow /= taus.size
        assert np.max(np.abs(fast - slow)) < 1e-12

    def test_rejects_bad_sigma(self, zeros100):
        with pytest.raises(DomainError):
            broadband_average_1d(np.zeros(5, dtype=complex), 1.0, zeros100, 100.0)


class TestPlaneAverage:
    def test_agrees_with_per_zero_route(self, zeros100, rng):
        f = random_fourier_real(5, rng)
        t = zeros100.t_covering(60)
        direct = broadband_average_2d(f, 3.0, zeros100, t)
        oracle = broadband_average_2d_per_zero(f, 3.0, zeros100, t)
        assert np.max(np.abs(direct.data - oracle.data)) < 1e-12

    def test_center_entry_exact(self, zeros100, rng):
        f = random_fourier_real(4, rng)
        z = broadband_average_2d(f, 2.0, zeros100, 500.0)
        assert z.entry(0, 0) == f.entry(0, 0)

    def test_axis_row_reduces_to_1d(self, zeros100, rng):
        # the l = 0 column sees only the k-axis divisor sums
        n = 6
        f = random_fourier_real(n, rng)
        t = zeros100.t_covering(30)
        z2 = broadband_average_2d(f, 3.0, zeros100, t)
        z1 = broadband_average_1d(f.data[:, n].copy(), 3.0, zeros100, t)
        assert np.max(np.abs(z2.data[:, n] - z1)) < 1e-13

    def test_preserves_field_symmetry(self, zeros100, rng):
        f = random_fourier_real(5, rng)
        z = broadband_average_2d(f, 3.0, zeros100, 300.0)
        assert z.tag == FOURIER_REAL
        assert fourier_real_deviation(z) < 1e-13 * z.scale()
        zo = broadband_average_2d_per_zero(f, 3.0, zeros100, 300.0)
        assert fourier_real_deviation(zo) < 1e-13 * zo.scale()

    def test_worker_count_does_not_change_result(self, zeros100, rng):
        f = random_fourier_real(4, rng)
        t = zeros100.t_covering(50)
        seq_route = broadband_average_2d_per_zero(f, 3.0, zeros100, t, max_workers=1)
        par_route = broadband_average_2d_per_zero(f, 3.0, zeros100, t, max_workers=4)
        assert np.array_equal(seq_route.data, par_route.data)

    def test_thread_env_knob(self, zeros100, rng, monkeypatch):
        f = random_fourier_real(3, rng)
        t = zeros100.t_covering(20)
        base = broadband_average_2d_per_zero(f, 3.0, zeros100, t)
        monkeypatch.setenv("QTL_THREADS", "3")
        threaded = broadband_average_2d_per_zero(f, 3.0, zeros100, t)
        monkeypatch.setenv("QTL_THREADS", "not-a-number")
        fallback = broadband_average_2d_per_zero(f, 3.0, zeros100, t)
        assert np.array_equal(base.data, threaded.data)
        assert np.array_equal(base.data, fallback.data)

    def test_error_shrinks_with_more_zeros(self, zeros100, rng):
        f = random_fourier_real(6, rng)
        sigma = 3.0
        errs = []
        for count in (10, 100):
            z = broadband_average_2d(f, sigma, zeros100, zeros100.t_covering(count))
            errs.append(averaging_errors(z, f)[0])
        assert errs[1] < errs[0]


class TestErrorAccounting:
    def test_field_and_operator_errors_agree(self, zeros100, rng):
        f = random_fourier_real(5, rng)
        z = broadband_average_2d(f, 3.0, zeros100, 300.0)
        l2, hs = averaging_errors(z, f)
        assert abs(l2 - hs) <= 1e-12 * max(l2, 1e-300)

    def test_zero_error_on_identical_grids(self, rng):
        f = random_fourier_real(3, rng)
        l2, hs = averaging_errors(f, f)
        assert l2 == 0.0
        assert hs == 0.0

    def test_single_entry_error_is_distance(self, zeros100):
        f = single_entry(2, 1, 0, 1.0, FOURIER_REAL)
        g = single_entry(2, 1, 0, 0.25, FOURIER_REAL)
        # not symmetric grids by themselves; symmetrize for the field check
        fd = f.data + np.conj(f.data[::-1, ::-1])
        gd = g.data + np.conj(g.data[::-1, ::-1])
        l2, hs = averaging_errors(CoeffGrid(2, fd, FOURIER_REAL),
                                  CoeffGrid(2, gd, FOURIER_REAL))
        assert_allclose(l2, np.sqrt(2.0) * 0.75, rtol=1e-14)
        assert_allclose(hs, l2, rtol=1e-13)
