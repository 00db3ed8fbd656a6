import math

import numpy as np
import pytest

from jcmix import observables as obs
from jcmix.errors import DegenerateInput, GridTooSmall
from jcmix.fock import SqueezeParam, squeezed_vacuum_amplitudes
from jcmix.special import poisson_pmf
from jcmix.states import FieldParams, choose_n_max, mscs_density, mscs_pcd


class TestQuadratures:
    def test_worked_example(self):
        rep = obs.quadrature_report(FieldParams.mscs(10, 1, q=0.8), 0.0)
        assert rep.var_x1 == pytest.approx(0.2 + 0.05 * (3 - 2 * math.sqrt(2)), abs=1e-15)
        assert rep.mean_x1 == pytest.approx(0.8 * math.sqrt(10))
        assert rep.mean_x2 == pytest.approx(0.0, abs=1e-15)

    def test_coherent_limit(self):
        rep = obs.quadrature_report(FieldParams.mscs(10, 3, q=1.0), 1.1)
        assert rep.var_x1 == pytest.approx(0.25) and rep.var_x2 == pytest.approx(0.25)

    @pytest.mark.parametrize("n_s", [0.5, 1, 2, 5, 10])
    def test_squeezing_at_origin(self, n_s):
        rep = obs.quadrature_report(FieldParams.mscs(10, n_s, q=0.8), 0.0)
        assert rep.var_x1 < 0.25 < rep.var_x2
        assert rep.product >= 0.25

    def test_squeezed_quadrature_rotates(self):
        p = FieldParams.mscs(10, 2, q=0.8)
        v1, v2 = obs.quadrature_variances_mscs(p, math.pi / 2)
        w1, w2 = obs.quadrature_variances_mscs(p, 0.0)
        assert (v1, v2) == pytest.approx((w2, w1))

    @pytest.mark.parametrize("omega_t", [0.0, 0.4, 1.3, 2.9])
    def test_trace_oracle(self, omega_t):
        p = FieldParams.mscs(10, 1.5, q=0.8)
        rho = mscs_density(p, choose_n_max(p, 1e-14), 1e-14)
        d = obs.quadrature_discrepancy(p, rho, omega_t)
        assert abs(d["residual_x1"]) < 1e-9 and abs(d["residual_x2"]) < 1e-9
        assert d["mean_residual"] < 1e-9

    def test_shift_size(self):
        p = FieldParams.mscs(10, 1, q=0.8)
        assert obs.mixture_variance_correction(p, 0.0) == pytest.approx((1.6, 0.0))

    def test_trace_respects_uncertainty(self):
        p = FieldParams.mscs(10, 2, q=0.8)
        rep = obs.quadrature_moments_trace(mscs_density(p, choose_n_max(p)), 0.3)
        assert rep.product >= 0.25

    def test_pscs_rejected(self):
        with pytest.raises(ValueError):
            obs.quadrature_report(FieldParams.pscs(10, 1))


class TestMandelQ:
    def test_poisson(self):
        assert abs(obs.mandel_q(poisson_pmf(20, 150))) < 1e-9

    @pytest.mark.parametrize("n_s", [0.5, 2, 5])
    def test_squeezed_vacuum(self, n_s):
        z = SqueezeParam.from_photons(n_s)
        n = 400
        p = squeezed_vacuum_amplitudes(z, n).probabilities
        assert obs.mandel_q(p) == pytest.approx(2 * n_s + 1, abs=1e-8)

    def test_fock_is_minus_one(self):
        p = np.zeros(6)
        p[4] = 1.0
        assert obs.mandel_q(p) == pytest.approx(-1.0)

    def test_vacuum_undefined(self):
        with pytest.raises(DegenerateInput):
            obs.mandel_q([1.0, 0.0])
        with pytest.raises(DegenerateInput):
            obs.mandel_q_mscs_moments(FieldParams.mscs(0, 0, q=0.5))

    @pytest.mark.parametrize("nc", [10, 20, 30])
    def test_mscs_routes_agree_and_positive(self, nc):
        for ns in (0.5, 1, 2, 5, 8, 10):
            p = FieldParams.mscs(nc, ns, q=0.8)
            from_pcd = obs.mandel_q(mscs_pcd(p, choose_n_max(p, 1e-13), 1e-13))
            assert from_pcd == pytest.approx(obs.mandel_q_mscs_moments(p), abs=1e-8)
            assert from_pcd > 0


class TestWigner:
    P = FieldParams.mscs(10, 2, q=0.8)

    def test_coherent_peak(self):
        p = FieldParams.mscs(10, 2, q=1.0)
        assert obs.wigner_mscs_values(p, p.alpha) == pytest.approx(2 / math.pi)

    def test_squeezed_axis(self):
        p = FieldParams.mscs(0, 1, q=0.0)
        r = p.zeta.r
        x = obs.wigner_mscs_values(p, 0.3)
        y = obs.wigner_mscs_values(p, 0.3j)
        assert x == pytest.approx(2 / math.pi * math.exp(-2 * 0.09 * math.exp(2 * r)))
        assert y == pytest.approx(2 / math.pi * math.exp(-2 * 0.09 * math.exp(-2 * r)))

    def test_default_grid(self):
        g = obs.wigner_mscs(self.P)
        assert g.values.shape == (201, 201)
        assert g.re_range == pytest.approx((-2.0, 8.0))
        assert g.step == pytest.approx(0.05)
        assert abs(g.integral() - 1.0) < 0.01
        assert g.values.min() >= -1e-9

    def test_marginal_moments(self):
        # Re(alpha) marginal: mean Re<a>, variance var_x1 (X1 = Re a)
        g = obs.wigner_mscs(self.P, step=0.02)
        m = g.marginal_re()
        norm = np.trapezoid(m, g.re)
        mean = np.trapezoid(g.re * m, g.re) / norm
        var = np.trapezoid((g.re - mean) ** 2 * m, g.re) / norm
        rep = obs.quadrature_report(self.P, 0.0)
        shift = obs.mixture_variance_correction(self.P, 0.0)[0]
        assert mean == pytest.approx(rep.mean_x1, rel=0.01)
        assert var == pytest.approx(rep.var_x1 + shift, rel=0.01)

    def test_grid_too_small(self):
        with pytest.raises(GridTooSmall):
            obs.wigner_mscs(self.P, re_range=(-1, 1), im_range=(-1, 1))

    def test_displaced_parity_oracle(self):
        rho = mscs_density(self.P, choose_n_max(self.P, 1e-14), 1e-14)
        pts = np.array([math.sqrt(10), 0.0, 0.5 + 0.7j, 1.5 - 0.4j])
        got = obs.wigner_displaced_parity(rho, pts)
        assert np.max(np.abs(got - obs.wigner_mscs_values(self.P, pts))) < 1e-9

    def test_printed_variant_differs(self):
        pts = np.array([0.2, 0.5j, 0.3 + 0.3j])
        gap = np.abs(obs.wigner_mscs_values(self.P, pts) - obs.wigner_mscs_printed_values(self.P, pts))
        assert gap.max() > 1e-2
