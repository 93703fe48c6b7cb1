from fractions import Fraction

import numpy as np
import pytest

from cobsic import (
    CountError,
    DimensionError,
    ValidationFailure,
    maximally_mixed,
    min_eigenvalue_bound,
    negativity_oracle,
    quasiprobability,
    random_pure_state,
    saturating_spectrum,
    sic_criterion,
    sic_trace_targets,
    spectral_profile,
    state_negativity,
    validate_cob,
)

import refdata
from conftest import random_cob


class TestValidateCob:
    def test_reference_qubit_cob_valid(self):
        cob = validate_cob(refdata.D2_COB_C1)
        assert cob.dim == 2
        assert len(cob) == 4

    def test_reference_qutrit_cob_valid(self):
        cob = validate_cob(refdata.D3_COB_C2)
        assert cob.dim == 3

    def test_degenerate_input_fails_with_report(self):
        ops = [np.eye(2) / 2, np.eye(2) / 2, np.zeros((2, 2)), np.zeros((2, 2))]
        with pytest.raises(ValidationFailure) as exc:
            validate_cob(ops)
        assert "sub_orthonormality" in exc.value.violations

    def test_wrong_count(self):
        with pytest.raises(CountError):
            validate_cob(refdata.D2_COB_C1[:3])

    @pytest.mark.parametrize("d", [2, 3])
    def test_trace_constraints(self, d, rng):
        cob = random_cob(d, rng)
        for a in cob:
            assert abs(np.trace(a).real - 1 / d) < 1e-9
            assert abs(np.trace(a @ a).real - 1 / d) < 1e-9


class TestSpectralProfile:
    def test_qubit_values(self):
        prof = spectral_profile(validate_cob(refdata.D2_COB_C1))
        s3 = np.sqrt(3)
        assert prof.tau == pytest.approx((s3 - 1) / 4, abs=1e-12)
        assert prof.lambda_star == pytest.approx(1 / s3, abs=1e-12)
        assert prof.negativity == pytest.approx((s3 - 1) / 2, abs=1e-12)

    def test_qutrit_values(self):
        prof = spectral_profile(validate_cob(refdata.D3_COB_C2))
        assert prof.tau == pytest.approx(refdata.D3_TAU, abs=1e-5)
        assert prof.lambda_star == pytest.approx(refdata.D3_LAMBDA_STAR, abs=1e-5)

    def test_min_eigenvalues_all_negative(self, rng):
        prof = spectral_profile(random_cob(4, rng))
        assert all(m < 0 for m in prof.min_eigenvalues)

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_lambda_star_capped(self, d, rng):
        prof = spectral_profile(random_cob(d, rng))
        assert prof.lambda_star <= 1 / np.sqrt(d + 1) + 1e-9
        assert prof.tau >= min_eigenvalue_bound(d) - 1e-9


class TestMinEigenvalueBound:
    def test_closed_form_values(self):
        assert min_eigenvalue_bound(2) == pytest.approx((np.sqrt(3) - 1) / 4)
        assert min_eigenvalue_bound(3) == pytest.approx(1 / 9)
        with pytest.raises(DimensionError):
            min_eigenvalue_bound(1)

    def test_saturating_tuple_meets_constraints(self):
        for d in range(2, 9):
            x1, x2 = saturating_spectrum(d)
            xs = np.array([x1] + [x2] * (d - 1))
            assert abs(xs.sum() - 1 / d) < 1e-12
            assert abs((xs**2).sum() - 1 / d) < 1e-12
            assert abs(abs(x2) - min_eigenvalue_bound(d)) < 1e-14

    @pytest.mark.parametrize("d", range(2, 9))
    def test_constraint_sphere_oracle(self, d):
        # every tuple with sum x = sum x^2 = 1/d has its minimum below -bound
        xs = refdata.constraint_sphere_tuples(d, 2000, seed=7 * d)
        assert np.max(np.abs(xs.sum(axis=1) - 1 / d)) < 1e-12
        assert np.max(np.abs((xs**2).sum(axis=1) - 1 / d)) < 1e-12
        mins = xs.min(axis=1)
        assert np.all(mins < 0)
        assert np.all(np.abs(mins) >= min_eigenvalue_bound(d) - 1e-9)


class TestSicTraceTargets:
    def test_d2_has_no_conditions(self):
        assert sic_trace_targets(2) == []

    def test_d4_closed_forms(self):
        targets = sic_trace_targets(4)
        s5 = np.sqrt(5)
        assert targets[0] == pytest.approx((23 + 15 * s5) / 512, abs=1e-12)
        assert targets[1] == pytest.approx((77 + 15 * s5) / 2048, abs=1e-12)
        # and the independent power-sum oracle agrees
        assert targets[0] == pytest.approx(refdata.trace_power_oracle(4, 3), abs=1e-14)
        assert targets[1] == pytest.approx(refdata.trace_power_oracle(4, 4), abs=1e-14)

    def test_d3_certified_by_exact_oracle(self):
        certified = refdata.trace_power_oracle_d3(3)
        assert certified == Fraction(41, 243)
        alternate = Fraction(31, 243)
        print(
            f"d=3 trace-power oracle certifies {certified} "
            f"(= {float(certified):.12f}); alternate quoted value {alternate} "
            f"differs by {certified - alternate} and fails the power-sum identity"
        )
        assert sic_trace_targets(3)[0] == pytest.approx(float(certified), abs=1e-12)
        assert abs(float(certified - alternate)) > 1e-3

    @pytest.mark.parametrize("d", range(2, 11))
    def test_low_power_sums_recover_cob_traces(self, d):
        # n = 1 and n = 2 power sums must equal 1/d for every dimension
        assert refdata.trace_power_oracle(d, 1) == pytest.approx(1 / d, abs=1e-12)
        assert refdata.trace_power_oracle(d, 2) == pytest.approx(1 / d, abs=1e-12)


class TestSicCriterion:
    def test_qubit_always_capable(self, rng):
        report = sic_criterion(random_cob(2, rng))
        assert report.is_sic_capable
        assert abs(report.lambda_star_gap) < 1e-9
        assert report.trace_power_residuals == ()
        assert max(report.spectrum_residuals) < 1e-9

    def test_qutrit_not_capable(self):
        report = sic_criterion(validate_cob(refdata.D3_COB_C2))
        assert not report.is_sic_capable
        assert report.lambda_star_gap == pytest.approx(0.5 - refdata.D3_LAMBDA_STAR, abs=1e-5)
        assert report.trace_power_residuals[0] > 1e-3


class TestNegativity:
    def test_maximally_mixed_state_has_no_negativity(self):
        cob = validate_cob(refdata.D2_COB_C1)
        mu = quasiprobability(cob, maximally_mixed(2))
        assert np.allclose(mu, 0.25)  # 1/d^2 each, all positive
        assert state_negativity(cob, maximally_mixed(2)) == 0.0

    def test_quasiprobability_sums_to_one(self, rng):
        cob = random_cob(3, rng)
        mu = quasiprobability(cob, random_pure_state(3, rng))
        assert abs(mu.sum() - 1) < 1e-10

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_random_states_stay_below_profile(self, d, rng):
        cob = random_cob(d, rng)
        prof = spectral_profile(cob)
        est = negativity_oracle(cob, samples=300, seed=11, include_min_eigenvector_states=False)
        assert est <= prof.negativity + 1e-10

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_eigenvector_states_attain_profile(self, d, rng):
        cob = random_cob(d, rng)
        prof = spectral_profile(cob)
        est = negativity_oracle(cob, samples=50, seed=3)
        assert est == pytest.approx(prof.negativity, abs=1e-9)

    def test_qubit_exact_value(self):
        cob = validate_cob(refdata.D2_COB_C1)
        est = negativity_oracle(cob, samples=10, seed=0)
        assert est == pytest.approx((np.sqrt(3) - 1) / 2, abs=1e-12)
