"""Kernel closed forms against independent quadrature oracles."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from dekohere import (EnvelopeError, LinearEnvelope, NullEnvelope,
                      BangBangEnvelope, OneOverF, OrnsteinUhlenbeck,
                      ParameterError, SpinBoson, eval_kernel,
                      renormalized_alpha_continuous, renormalized_mu_bb,
                      renormalized_nu_bb)
from dekohere.kernel import kernel_antiderivative_array, renormalized_alpha_bb
from dekohere.pulse import SwitchingFunction, eval_f


def quad_mu_nu(model, dt):
    """Brute-force cosine/sine transforms of the spectral density."""
    if isinstance(model, SpinBoson):
        j = lambda w: w ** model.p * np.exp(-w / model.lambda_uv)
        lo = 0.0
    elif isinstance(model, OneOverF):
        j = lambda w: np.exp(-w / model.lambda_uv) / w
        lo = model.lambda_ir
    else:
        raise AssertionError("oracle covers spectral-density models only")
    if dt == 0.0:
        mu, _ = quad(j, lo, np.inf, limit=400)
        return mu, 0.0
    mu, _ = quad(j, lo, np.inf, weight="cos", wvar=dt, limit=400)
    nu, _ = quad(j, lo, np.inf, weight="sin", wvar=dt, limit=400)
    return mu, nu


class TestEvalKernel:
    def test_ou_at_zero(self, ou):
        k = eval_kernel(ou, 0.0)
        assert k.mu == pytest.approx(1.0, abs=1e-14)   # 1/(2 tau)
        assert k.nu == 0.0

    def test_ohmic_at_zero_closed_form(self, ohmic):
        # Gamma(2) * Lambda^2, checked against the brute-force integral
        k = eval_kernel(ohmic, 0.0)
        assert k.mu == pytest.approx(400.0, rel=1e-12)
        mu_q, _ = quad_mu_nu(ohmic, 0.0)
        assert k.mu == pytest.approx(mu_q, rel=1e-9)
        assert k.nu == 0.0

    def test_ohmic_dt1_goes_negative(self, ohmic):
        # Re[1/(1/Lambda + i)^2] = (Lambda^-2 - 1)/((Lambda^-2 + 1)^2)
        a = 1.0 / 20.0
        expected = (a * a - 1.0) / (a * a + 1.0) ** 2
        k = eval_kernel(ohmic, 1.0)
        assert k.mu == pytest.approx(expected, rel=1e-12)
        assert k.mu < 0

    def test_one_over_f_at_zero_is_real_e1(self, one_over_f):
        from scipy.special import exp1
        k = eval_kernel(one_over_f, 0.0)
        assert k.mu == pytest.approx(float(exp1(0.01 / 20.0)), rel=1e-12)
        mu_q, _ = quad_mu_nu(one_over_f, 0.0)
        assert k.mu == pytest.approx(mu_q, rel=1e-8)
        assert k.nu == 0.0

    @pytest.mark.parametrize("dt", [0.05, 0.3, 1.0, 2.5, 5.0])
    def test_spectral_models_match_quadrature(self, ohmic, supra, one_over_f, dt):
        for model, rel in ((ohmic, 1e-7), (supra, 1e-7), (one_over_f, 1e-6)):
            mu_q, nu_q = quad_mu_nu(model, dt)
            k = eval_kernel(model, dt)
            scale = max(abs(mu_q), abs(nu_q))
            assert abs(k.mu - mu_q) <= rel * scale
            assert abs(k.nu - nu_q) <= rel * scale

    @pytest.mark.parametrize("dt", [0.0, 1e-3, 0.1, 0.77, 3.2])
    def test_symmetry_mu_even_nu_odd(self, all_models, dt):
        for model in all_models:
            kp = eval_kernel(model, dt)
            km = eval_kernel(model, -dt)
            assert abs(kp.mu - km.mu) <= 1e-12 * max(abs(kp.mu), 1.0)
            assert abs(kp.nu + km.nu) <= 1e-12 * max(abs(kp.nu), 1.0)

    def test_zero_scale_kills_kernel(self):
        model = OrnsteinUhlenbeck(tau=0.5, scale=0.0)
        assert eval_kernel(model, 0.3) == (0.0, 0.0)

    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            OrnsteinUhlenbeck(tau=0.0)
        with pytest.raises(ParameterError):
            SpinBoson(p=2, lambda_uv=20.0)
        with pytest.raises(ParameterError):
            SpinBoson(p=1, lambda_uv=-1.0)
        with pytest.raises(ParameterError):
            OneOverF(lambda_uv=20.0, lambda_ir=25.0)
        with pytest.raises(ParameterError):
            OneOverF(lambda_uv=20.0, lambda_ir=0.0)
        with pytest.raises(ParameterError):
            OrnsteinUhlenbeck(tau=0.5, scale=-1.0)


class TestAntiderivative:
    @pytest.mark.parametrize("x", [0.11, 0.6, 1.9])
    def test_derivative_recovers_kernel(self, all_models, x):
        # central differences on M; tolerance allows the cancellation noise of
        # the large constant offsets in the supra-Ohmic closed form
        eps = 1e-6
        for model in all_models:
            lo, hi = kernel_antiderivative_array(model, np.array([x - eps, x + eps]))
            deriv = (hi - lo) / (2 * eps)
            k = eval_kernel(model, x)
            assert deriv.real == pytest.approx(k.mu, rel=3e-5, abs=1e-5)
            assert -deriv.imag == pytest.approx(k.nu, rel=3e-5, abs=1e-5)

    def test_zero_at_origin(self, all_models):
        for model in all_models:
            assert abs(kernel_antiderivative_array(model, np.array([0.0]))[0]) < 1e-14


class TestBangBangRenormalization:
    def test_zero_at_t_zero(self, all_models):
        for model in all_models:
            assert renormalized_mu_bb(model, 0.0, 0.25) == 0.0
            assert renormalized_nu_bb(model, 0.0, 0.25) == 0.0

    @pytest.mark.parametrize("t_c", [0.5, 0.25])
    @pytest.mark.parametrize("n_cycles", [1, 2, 5])
    def test_ou_matches_geometric_closed_form(self, ou, t_c, n_cycles):
        # independent symbolic integration of the OU kernel against f(s):
        # F(N T_c) = e^{-t/tau} (q - 1)(1 - q^{2N}) / (2 (1 + q)), q = e^{T_c/(2 tau)}
        tau = ou.tau
        t = n_cycles * t_c
        q = math.exp(t_c / (2 * tau))
        expected = math.exp(-t / tau) * (q - 1) * (1 - q ** (2 * n_cycles)) / (2 * (1 + q))
        assert renormalized_mu_bb(ou, t, t_c) == pytest.approx(expected, abs=1e-12)

    def test_ou_nu_identically_zero(self, ou):
        for t in (0.1, 0.93, 2.0):
            assert renormalized_nu_bb(ou, t, 0.25) == 0.0

    def test_no_switch_before_t_equals_free_integral(self, ohmic):
        # T_c larger than t: f == +1 throughout
        t = 0.8
        free = kernel_antiderivative_array(ohmic, np.array([t]))[0]
        assert renormalized_mu_bb(ohmic, t, 10.0) == pytest.approx(free.real, rel=1e-14)
        assert renormalized_nu_bb(ohmic, t, 10.0) == pytest.approx(-free.imag, rel=1e-14)

    @pytest.mark.parametrize("t", [0.4, 1.3, 2.0])
    def test_matches_adaptive_quadrature(self, ohmic, one_over_f, t):
        t_c = 0.5
        sw = SwitchingFunction(t_c)
        for model in (ohmic, one_over_f):
            got_mu = renormalized_mu_bb(model, t, t_c)
            got_nu = renormalized_nu_bb(model, t, t_c)
            acc_mu = acc_nu = 0.0
            half = t_c / 2.0
            bounds = [j * half for j in range(int(t / half) + 1)]
            if t - bounds[-1] > 1e-12:
                bounds.append(t)
            for a, b in zip(bounds[:-1], bounds[1:]):
                sgn = eval_f(sw, (a + b) / 2.0)
                mu_seg, _ = quad(lambda s: eval_kernel(model, t - s).mu, a, b, limit=200)
                nu_seg, _ = quad(lambda s: eval_kernel(model, t - s).nu, a, b, limit=200)
                acc_mu += sgn * mu_seg
                acc_nu += sgn * nu_seg
            assert got_mu == pytest.approx(acc_mu, rel=1e-7, abs=1e-9)
            assert got_nu == pytest.approx(acc_nu, rel=1e-7, abs=1e-9)

    def test_ou_cancellation_in_ideal_limit(self):
        # tau >> T_c at a cycle boundary: renormalized integral collapses
        model = OrnsteinUhlenbeck(tau=50.0)
        t_c = 0.01
        t = 100 * t_c
        free = kernel_antiderivative_array(model, np.array([t]))[0].real
        assert abs(renormalized_mu_bb(model, t, t_c)) <= 1e-3 * abs(free)

    def test_nu_suppressed_ohmic(self, ohmic):
        # nu-channel suppression at fixed t = 2
        free_nu = -kernel_antiderivative_array(ohmic, np.array([2.0]))[0].imag
        assert abs(renormalized_nu_bb(ohmic, 2.0, 0.0625)) < abs(free_nu)

    def test_invalid_cycle_rejected(self, ou):
        with pytest.raises(ParameterError):
            renormalized_mu_bb(ou, 1.0, 0.0)
        with pytest.raises(ParameterError):
            renormalized_mu_bb(ou, -0.5, 0.5)


class TestContinuousRenormalization:
    def test_zero_at_t_zero(self, ou):
        mt, nt = renormalized_alpha_continuous(ou, 0.0, 0.25, LinearEnvelope(0.25))
        assert mt == 0 and nt == 0

    @pytest.mark.parametrize("t", [0.2, 1.0, 2.0])
    def test_ou_linear_matches_closed_form(self, ou, t):
        # mu~(t) = 2 (1 - e^{-t/tau} e^{-i 2 pi t/T_c}) / (1 + i 2 pi tau / T_c)
        t_c = 0.25
        w = 2 * math.pi / t_c
        mt, nt = renormalized_alpha_continuous(ou, t, t_c, LinearEnvelope(t_c))
        closed = 2 * (1 - np.exp(-t / ou.tau) * np.exp(-1j * w * t)) / (1 + 1j * w * ou.tau)
        assert abs(mt - closed) < 1e-12
        assert abs(nt) < 1e-14  # OU kernel is real

    @pytest.mark.parametrize("t", [0.3, 1.1])
    def test_matches_dense_trapezoid_oracle(self, ohmic, t):
        t_c = 0.25
        env = LinearEnvelope(t_c)
        mt, nt = renormalized_alpha_continuous(ohmic, t, t_c, env)
        ss = np.linspace(0.0, t, 20001)
        alphas = np.array([complex(eval_kernel(ohmic, t - s).mu,
                                   -eval_kernel(ohmic, t - s).nu) for s in ss])
        phases = np.exp(2j * env.phase(ss))
        int_mu = np.trapezoid(alphas.real * phases, ss)
        int_nu = np.trapezoid((-alphas.imag) * phases, ss)
        pref = 4 * np.exp(-2j * env.phase(t))
        assert abs(mt - pref * int_mu) < 5e-5 * max(abs(mt), 1.0)
        assert abs(nt - pref * int_nu) < 5e-5 * max(abs(nt), 1.0)

    def test_null_envelope_gives_free_integral(self, ohmic):
        t = 1.2
        mt, nt = renormalized_alpha_continuous(ohmic, t, 0.25, NullEnvelope(0.25))
        free = kernel_antiderivative_array(ohmic, np.array([t]))[0]
        assert mt == pytest.approx(4.0 * free.real, rel=1e-13)
        assert nt == pytest.approx(4.0 * (-free.imag), rel=1e-13)

    def test_staircase_envelope_reduces_to_switching_sum(self, ohmic):
        t, t_c = 1.1, 0.25
        env = BangBangEnvelope(t_c)
        mt, nt = renormalized_alpha_continuous(ohmic, t, t_c, env)
        f_t = eval_f(SwitchingFunction(t_c), t + 1e-12)
        assert mt == pytest.approx(4 * f_t * renormalized_mu_bb(ohmic, t, t_c), rel=1e-12)
        assert nt == pytest.approx(4 * f_t * renormalized_nu_bb(ohmic, t, t_c), rel=1e-12)


class TestBackendEquivalence:
    def test_python_backend_consistency_on_pair(self, all_models):
        # h+- and the bb sum agree with a direct per-point evaluation
        ts = np.array([0.0, 0.3, 0.77, 1.5])
        for model in all_models:
            bb = renormalized_alpha_bb(model, ts, 0.5)
            per_point = np.array(
                [complex(renormalized_mu_bb(model, t, 0.5),
                         -renormalized_nu_bb(model, t, 0.5)) for t in ts])
            assert np.allclose(bb, per_point, rtol=1e-13, atol=1e-15)
