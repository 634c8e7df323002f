"""Integrator checks: closed-form oracles, invariants, reference cross-checks."""

import math

import numpy as np
import pytest

from dekohere import (BangBangControl, ConfigurationError, ContinuousControl,
                      CouplingKind, LinearEnvelope, NoControl, OneOverF,
                      OrnsteinUhlenbeck, QubitState, SpinBoson, integrate,
                      run_scenario, step_coefficients)
from dekohere.config import parse_config
from nm_reference import (SIGMA_MINUS, integrate_reference, toggled_lowering)

PLUS = QubitState.plus()
DEPH = CouplingKind.DEPHASING
LOWER = CouplingKind.LOWERING


def ou_free_exact(ts, tau):
    """rho01(t) = (1/2) exp(-2 [t - tau (1 - e^{-t/tau})]) for the free sigma_z decay."""
    return 0.5 * np.exp(-2.0 * (ts - tau * (1.0 - np.exp(-ts / tau))))


def ou_bb_exponent(t, tau, t_c):
    """int_0^t f(t') F(t') dt' in closed form (G-function segment sum)."""
    def g(x):
        return (x - tau * (1.0 - math.exp(-x / tau))) / 2.0 if x > 0 else 0.0

    def phi(x):
        half = t_c / 2.0
        m = int(math.floor(x / half + 1e-12))
        out = g(x)
        for j in range(1, m + 1):
            out += 2.0 * (-1) ** j * g(max(x - j * half, 0.0))
        return out

    half = t_c / 2.0
    m = int(math.floor(t / half + 1e-12))
    acc = 0.0
    for k in range(m + 1):
        a, b = k * half, min((k + 1) * half, t)
        if b <= a + 1e-15:
            break
        acc += (-1) ** k * (phi(b) - phi(a))
    return acc


class TestFreeDecay:
    def test_ou_sigma_z_closed_form(self, ou):
        traj = integrate(ou, NoControl(), DEPH, PLUS, 1e-3, 2.0)
        exact = ou_free_exact(traj.times, ou.tau)
        rel = np.abs(traj.rho01.real - exact) / exact
        assert np.max(rel) < 1e-6

    def test_ou_sigma_minus_populations(self, ou):
        # d rho11/dt = -(1 - e^{-t/tau}) rho11  =>  rho11 = (1/2) e^{-(t - tau(1-e^{-t/tau}))}
        traj = integrate(ou, NoControl(), LOWER, PLUS, 1e-3, 2.0)
        exact = 0.5 * np.exp(-(traj.times - ou.tau * (1 - np.exp(-traj.times / ou.tau))))
        assert np.max(np.abs(traj.rho11 - exact) / exact) < 1e-6

    def test_zero_kernel_is_frozen(self):
        model = OrnsteinUhlenbeck(tau=0.5, scale=0.0)
        for coupling in (DEPH, LOWER):
            traj = integrate(model, NoControl(), coupling, PLUS, 1e-2, 2.0)
            assert np.all(traj.rho01 == 0.5)
            assert np.all(traj.rho00 == 0.5)

    def test_markov_limit_rate_two(self):
        # delta-correlated OU: int mu -> 1/2 and the decay turns Lindblad
        model = OrnsteinUhlenbeck(tau=1e-4)
        traj = integrate(model, NoControl(), DEPH, PLUS, 1e-3, 2.0)
        sel = traj.times >= 0.01
        slope = np.polyfit(traj.times[sel], np.log(np.abs(traj.rho01[sel])), 1)[0]
        assert abs(-slope - 2.0) < 0.02


class TestBangBang:
    def test_ou_trajectory_matches_symbolic_exponent(self, ou):
        t_c = 0.25
        traj = integrate(ou, BangBangControl(t_c), DEPH, PLUS, t_c / 64, 2.0)
        exact = 0.5 * np.exp(-4.0 * np.array(
            [ou_bb_exponent(t, ou.tau, t_c) for t in traj.times]))
        rel = np.abs(traj.rho01.real - exact) / exact
        assert np.max(rel) < 1e-5

    def test_none_equals_bb_that_never_switches(self, ohmic):
        h = 1e-2
        free = integrate(ohmic, NoControl(), DEPH, PLUS, h, 2.0)
        lazy = integrate(ohmic, BangBangControl(t_c=8.0), DEPH, PLUS, h, 2.0)
        assert np.allclose(free.rho01, lazy.rho01, rtol=1e-12, atol=0)

    def test_bb_protects_coherence_pointwise(self):
        # cutoff placed below the control filter frequency so bang-bang
        # protects the coherence pointwise; at Lambda = 20 the T_c = 0.125
        # filter sits inside the spectral peak and accelerates the decay
        model = SpinBoson(p=1, lambda_uv=10.0)
        t_c = 0.125
        h = t_c / 64
        free = integrate(model, NoControl(), DEPH, PLUS, h, 2.0)
        bb = integrate(model, BangBangControl(t_c), DEPH, PLUS, h, 2.0)
        assert np.all(np.abs(bb.rho01) >= np.abs(free.rho01) - 1e-12)
        assert abs(bb.rho01[-1]) > abs(free.rho01[-1])

    def test_sigma_minus_ou_is_sigma_z_with_quarter_rate(self, ou):
        # OU has nu == 0, so the sigma_- coherence decays with the same
        # renormalized integral at 1/4 the dephasing constant
        t_c = 0.25
        h = t_c / 64
        z = integrate(ou, BangBangControl(t_c), DEPH, PLUS, h, 2.0)
        m = integrate(ou, BangBangControl(t_c), LOWER, PLUS, h, 2.0)
        assert np.allclose(np.abs(m.rho01), np.abs(z.rho01) ** 0.25 * 0.5 ** 0.75,
                           rtol=5e-7, atol=0)


class TestContinuous:
    def test_ou_sigma_z_effective_rate_is_paper_prefactor(self, ou):
        # d rho01/dt = -2 L_s rho01 with 2 L_s = 2 M_s(t) sin(2 pi t/T_c) / (1 + (2 pi tau/T_c)^2)
        t_c = 0.25
        w = 2 * math.pi / t_c
        wt = w * ou.tau
        for t in (0.31, 0.8, 1.7):
            coeffs = step_coefficients(ou, ContinuousControl(LinearEnvelope(t_c)), DEPH, t)
            m_s = math.exp(-t / ou.tau) * wt - wt * math.cos(w * t) + math.sin(w * t)
            expected = 2 * m_s * math.sin(w * t) / (1 + wt * wt)
            assert 2 * coeffs["mu_sin"] == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_ou_sigma_z_trajectory_vs_quadrature_of_rate(self, ou):
        t_c = 0.25
        w = 2 * math.pi / t_c
        wt = w * ou.tau
        traj = integrate(ou, ContinuousControl(LinearEnvelope(t_c)), DEPH, PLUS,
                         t_c / 64, 2.0)
        ts = np.linspace(0, 2.0, 40001)
        m_s = np.exp(-ts / ou.tau) * wt - wt * np.cos(w * ts) + np.sin(w * ts)
        rate = 2 * m_s * np.sin(w * ts) / (1 + wt * wt)
        from scipy.integrate import cumulative_simpson
        exponent = np.concatenate([[0.0], cumulative_simpson(rate, x=ts)])
        exact = 0.5 * np.exp(-np.interp(traj.times, ts, exponent))
        assert np.max(np.abs(traj.rho01.real - exact) / exact) < 1e-6

    def test_sigma_minus_continuous_matches_reference_integrator(self, ou, ohmic):
        # production sigma_- continuous == brute-force generic master equation
        t_c = 0.25
        h = t_c / 64
        env = LinearEnvelope(t_c)
        rho0 = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
        for model in (ou, ohmic):
            traj = integrate(model, ContinuousControl(env), LOWER, PLUS, h, 1.0)
            ref = integrate_reference(model, toggled_lowering(env), rho0, h, 1.0)
            assert np.max(np.abs(ref[:, 0, 1] - traj.rho01)) < 2e-6
            assert np.max(np.abs(ref[:, 1, 1].real - traj.rho11)) < 2e-6

    def test_sigma_minus_free_matches_reference_integrator(self, ohmic):
        h = 1e-2
        rho0 = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
        traj = integrate(ohmic, NoControl(), LOWER, PLUS, h, 1.0)
        ref = integrate_reference(ohmic, lambda s: SIGMA_MINUS, rho0, h, 1.0)
        assert np.max(np.abs(ref[:, 0, 1] - traj.rho01)) < 2e-6

    def test_sigma_minus_continuous_staircase_limit_equals_bb(self, one_over_f):
        # through the kernel ops the staircase envelope reproduces the
        # bang-bang coefficients; the trajectories then agree up to the f(t)
        # factor, which squares away in |rho01| over full cycles
        from dekohere.kernel import phase_history_pair, renormalized_alpha_bb
        from dekohere.pulse import BangBangEnvelope
        ts = np.array([0.2, 0.7, 1.4])
        hp, hm = phase_history_pair(one_over_f, ts, 0.25, BangBangEnvelope(0.25))
        bb = renormalized_alpha_bb(one_over_f, ts, 0.25)
        assert np.allclose(hp, bb, rtol=1e-13)
        assert np.allclose(hm, bb, rtol=1e-13)


class TestInvariants:
    @pytest.mark.parametrize("coupling", [DEPH, LOWER])
    @pytest.mark.parametrize("control", ["none", "bb", "cont"])
    def test_trace_preserved_every_step(self, ohmic, coupling, control):
        pulse = {"none": NoControl(), "bb": BangBangControl(0.25),
                 "cont": ContinuousControl(LinearEnvelope(0.25))}[control]
        traj = integrate(ohmic, pulse, coupling, PLUS, 0.25 / 64, 2.0)
        assert np.max(np.abs(traj.rho00 + traj.rho11 - 1.0)) <= 1e-10

    @pytest.mark.parametrize("control", ["none", "bb", "cont"])
    def test_dephasing_population_freeze(self, one_over_f, control):
        pulse = {"none": NoControl(), "bb": BangBangControl(0.25),
                 "cont": ContinuousControl(LinearEnvelope(0.25))}[control]
        traj = integrate(one_over_f, pulse, DEPH, PLUS, 0.25 / 64, 2.0)
        assert np.max(np.abs(traj.rho00 - 0.5)) <= 1e-14

    def test_dephasing_real_coherence_stays_real(self, ou, ohmic):
        for model in (ou, ohmic):
            for pulse in (NoControl(), BangBangControl(0.25),
                          ContinuousControl(LinearEnvelope(0.25))):
                traj = integrate(model, pulse, DEPH, PLUS, 0.25 / 64, 2.0)
                assert np.max(np.abs(traj.rho01.imag)) <= 1e-12

    def test_step_halving_fourth_order(self, ou):
        # smooth scenario: continuous control with exact (h-independent) coefficients
        t_c = 0.5
        pulse = ContinuousControl(LinearEnvelope(t_c))
        ref = integrate(ou, pulse, DEPH, PLUS, t_c / 256, 2.0).rho01[-1]
        errs = [abs(integrate(ou, pulse, DEPH, PLUS, t_c / n, 2.0).rho01[-1] - ref)
                for n in (8, 16, 32)]
        assert errs[0] / errs[1] >= 8.0
        assert errs[1] / errs[2] >= 8.0

    def test_ideal_limit_suppression_ou(self, ou):
        finals = []
        for t_c in (0.5, 0.25, 0.125, 0.0625):
            traj = integrate(ou, BangBangControl(t_c), DEPH, PLUS, t_c / 64, 2.0)
            finals.append(abs(traj.rho01[-1]))
        assert all(finals[i] < finals[i + 1] for i in range(3))

    def test_positivity_monitored_not_enforced(self, ohmic):
        traj = integrate(ohmic, BangBangControl(0.5), DEPH, PLUS, 0.5 / 64, 2.0)
        assert isinstance(traj.positivity_min, float)
        assert traj.positivity_min <= 0.0 + 1e-12  # |+X+| is a pure state


class TestStepCoefficients:
    def test_all_zero_at_t0(self, all_models):
        for model in all_models:
            assert step_coefficients(model, NoControl(), DEPH, 0.0) == {"mu": 0.0, "nu": 0.0}
            bb = step_coefficients(model, BangBangControl(0.25), DEPH, 0.0)
            assert bb["mu"] == 0.0 and bb["nu"] == 0.0 and bb["f"] == 1.0
            cont = step_coefficients(model, ContinuousControl(LinearEnvelope(0.25)),
                                     LOWER, 0.0)
            assert cont["mu_tilde"] == 0 and cont["nu_tilde"] == 0

    def test_free_ou_rate(self, ou):
        # d rho01/dt = -2 (1 - e^{-t/tau}) rho01  => 4 * mu-integral
        for t in (0.2, 1.0):
            c = step_coefficients(ou, NoControl(), DEPH, t)
            assert 4 * c["mu"] == pytest.approx(2 * (1 - math.exp(-t / ou.tau)), rel=1e-12)
            assert c["nu"] == 0.0

    def test_matches_trajectory_record(self, ohmic):
        pulse = BangBangControl(0.25)
        traj = integrate(ohmic, pulse, DEPH, PLUS, 0.25 / 64, 1.0)
        for i in (17, 64, 128):
            c = step_coefficients(ohmic, pulse, DEPH, float(traj.times[i]))
            assert traj.coeff_mu[i].real == pytest.approx(c["mu"], rel=1e-12)
            assert traj.coeff_nu[i].real == pytest.approx(c["nu"], rel=1e-12)


class TestGridValidation:
    def test_incommensurate_step_rejected(self, ou):
        # h divides t_final but not the half cycle 0.125
        with pytest.raises(ConfigurationError):
            integrate(ou, BangBangControl(0.25), DEPH, PLUS, 0.01, 2.0)

    def test_t_final_must_be_multiple_of_h(self, ou):
        with pytest.raises(ConfigurationError):
            integrate(ou, NoControl(), DEPH, PLUS, 3e-3, 2.0)

    def test_bad_state_rejected(self):
        from dekohere import ParameterError
        with pytest.raises(ParameterError):
            QubitState(0.7, 0.7, 0.1 + 0j)


class TestRunScenario:
    def test_dispatch_equals_integrate(self, ou):
        config = parse_config({
            "noise": {"type": "ou", "tau": 0.5},
            "coupling": "sigma_z",
            "control": {"type": "bang_bang", "t_c": 0.25},
            "grid": {"h": 0.00390625, "t_final": 2.0},
        })
        traj = run_scenario(config)
        direct = integrate(ou, BangBangControl(0.25), DEPH, PLUS, 0.00390625, 2.0)
        assert np.array_equal(traj.rho01, direct.rho01)

    def test_one_over_f_sigma_minus_bb_beats_continuous(self, one_over_f):
        t_c = 0.25
        h = t_c / 64
        bb = integrate(one_over_f, BangBangControl(t_c), LOWER, PLUS, h, 2.0)
        cont = integrate(one_over_f, ContinuousControl(LinearEnvelope(t_c)),
                         LOWER, PLUS, h, 2.0)
        assert abs(bb.rho01[-1]) >= abs(cont.rho01[-1])
