import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from perpetua import families as cat
from perpetua import mellin as ml
from perpetua.errors import ConsistencyError, DomainError, NonconvergenceError, ShapeError

SQRT_PI = math.sqrt(math.pi)


class TestGammaFn:
    def test_values(self):
        assert ml.gamma_fn(1.0) == 1.0
        assert ml.gamma_fn(5.0) == pytest.approx(24.0, rel=1e-14)
        assert ml.gamma_fn(0.5) == pytest.approx(SQRT_PI, rel=1e-14)

    def test_log_gamma(self):
        assert ml.log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)

    @pytest.mark.parametrize("r", [0.0, -1.0])
    def test_domain(self, r):
        with pytest.raises(DomainError):
            ml.gamma_fn(r)


class TestMoments:
    def test_trivial_perpetuity_is_one(self):
        assert ml.moments_I(cat.trivial().function, 4) == pytest.approx(1.0, rel=1e-14)

    def test_expcp_matches_gamma_law(self):
        # E[I^2] for the gamma(2) law: Gamma(4)/Gamma(2) = 6
        assert ml.moments_I(cat.expcp(1.0).function, 2) == pytest.approx(6.0, rel=1e-12)

    def test_stable_second_moment(self):
        assert ml.moments_I(cat.stable(0.5).function, 2) == pytest.approx(
            math.sqrt(2.0), rel=1e-12
        )

    def test_trivial_remainder_factorials(self):
        assert ml.moments_R(cat.trivial().function, 3) == pytest.approx(6.0, rel=1e-14)

    def test_expcp_remainder_uniform(self):
        # beta(1,1) is uniform: E[R^3] = 1/4
        assert ml.moments_R(cat.expcp(1.0).function, 3) == pytest.approx(0.25, rel=1e-12)

    def test_gamma_first_moment(self):
        assert ml.moments_R(cat.gamma_process().function, 1) == pytest.approx(
            math.log(2.0), rel=1e-14
        )

    def test_order_validation(self):
        with pytest.raises(DomainError):
            ml.moments_R(cat.trivial().function, 0)

    def test_overflow_reported(self):
        with pytest.raises(OverflowError):
            ml.moments_R(cat.trivial().function, 200)


class TestRProduct:
    def test_trivial_gamma_values(self):
        res = ml.R_product(cat.trivial().function, 4.0)
        assert res.value == pytest.approx(6.0, rel=1e-8)
        assert res.method == "product"

    def test_stable_closed_form(self):
        res = ml.R_product(cat.stable(0.5).function, 3.0)
        assert res.value == pytest.approx(math.sqrt(2.0), rel=1e-8)

    def test_expcp_first_moment(self):
        # R(2) = Phi(1) = 1/(1+c) at c = 2
        res = ml.R_product(cat.expcp(2.0).function, 2.0)
        assert res.value == pytest.approx(1.0 / 3.0, rel=1e-10)

    def test_r_at_one_is_exact(self):
        res = ml.R_product(cat.gamma_process().function, 1.0)
        assert res.value == 1.0 and res.n_terms == 1 and res.err_estimate == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            ml.R_product(cat.trivial().function, 0.0)

    def test_cap_raises_with_best_value(self):
        with pytest.raises(NonconvergenceError) as err:
            ml.R_product(cat.trivial().function, 0.5, tol=1e-14, cap=64)
        assert err.value.best_value == pytest.approx(SQRT_PI, rel=1e-3)
        assert err.value.n_terms == 64
        assert err.value.gap > 0

    def test_err_estimate_is_honest(self):
        for entry in (cat.trivial(), cat.stable(0.7), cat.by451(0.5, 2.0)):
            for r in (0.3, 0.5, 0.8):
                res = ml.R_product(entry.function, r)
                exact = entry.closed_R(r)
                assert abs(res.value / exact - 1.0) <= 5.0 * res.err_estimate + 1e-12


class TestIProduct:
    def test_trivial_is_one_everywhere(self):
        res = ml.I_product(cat.trivial().function, 7.3)
        assert res.value == pytest.approx(1.0, rel=1e-8)

    def test_stable_closed_form(self):
        res = ml.I_product(cat.stable(0.5).function, 3.0)
        assert res.value == pytest.approx(math.sqrt(2.0), rel=1e-8)

    def test_expcp_gamma_ratio(self):
        res = ml.I_product(cat.expcp(1.0).function, 3.0)
        assert res.value == pytest.approx(6.0, rel=1e-8)

    def test_agrees_with_gamma_ratio_route(self):
        for entry in (cat.stable(0.3), cat.gamma_process(), cat.geomcp(0.1, 0.5)):
            for r in (0.4, 1.7, 2.5):
                a = ml.I_product(entry.function, r).value
                b = ml.gamma_ratio_I(entry.function, r).value
                assert a == pytest.approx(b, rel=1e-7), (entry.id, r)


class TestProductStructure:
    def test_reduction_matches_moments(self):
        for entry in (cat.trivial(), cat.stable(0.5), cat.expcp(1.0), cat.gamma_process()):
            f = entry.function
            for n in range(1, 7):
                assert ml.R_product(f, n + 1.0).value == pytest.approx(
                    ml.moments_R(f, n), rel=1e-6
                )
                assert ml.I_product(f, n + 1.0).value == pytest.approx(
                    ml.moments_I(f, n), rel=1e-6
                )

    def test_monotone_approach_from_above(self):
        for entry in (cat.trivial(), cat.stable(0.5), cat.expcp(1.0)):
            f = entry.function
            for r0 in (0.3, 0.5, 0.9):
                hs = [ml.raw_product(f, n, r0) for n in (16, 32, 64, 128, 256)]
                assert all(b <= a * (1 + 1e-12) for a, b in zip(hs, hs[1:])), entry.id
                limit = ml.R_product(f, r0).value
                assert all(h >= limit * (1 - 1e-9) for h in hs), entry.id

    def test_factorization_identity_on_grid(self):
        for entry in cat.catalog():
            for r in (0.3, 0.7, 1.0, 1.5, 2.8, 5.0):
                prod = (
                    ml.R_product(entry.function, r).value
                    * ml.I_product(entry.function, r).value
                    / ml.gamma_fn(r)
                )
                assert prod == pytest.approx(1.0, rel=1e-6), (entry.id, r)

    def test_qproduct_closed_forms_match(self):
        for c, q in ((0.0, 0.5), (0.1, 0.5)):
            entry = cat.geomcp(c, q)
            for r in (1.5, 2.0, 3.0):
                assert ml.R_product(entry.function, r).value == pytest.approx(
                    entry.closed_R(r), rel=1e-6
                )
                assert ml.I_product(entry.function, r).value == pytest.approx(
                    entry.closed_I(r), rel=1e-6
                )

    def test_record_layout(self):
        res = ml.R_product(cat.trivial().function, 2.0)
        rec = res.as_record(2.0)
        assert list(rec) == ["r", "value", "method", "n_terms", "err_estimate"]


class TestFunctionalEquations:
    def test_trivial_residuals_vanish(self):
        res = ml.check_functional_eqs(cat.trivial().function, [1.0])
        _, res_r, res_i = res[0]
        assert res_r <= 1e-10 and res_i <= 1e-10

    def test_stable_grid(self):
        res = ml.check_functional_eqs(cat.stable(0.5).function, [0.5, 1.0, 2.0])
        assert max(max(a, b) for _, a, b in res) <= 1e-6

    def test_gamma_process(self):
        # R(2)/R(1) = Phi(1) = log 2
        res = ml.check_functional_eqs(cat.gamma_process().function, [1.0])
        assert max(res[0][1:]) <= 1e-6
        assert ml.R_product(cat.gamma_process().function, 2.0).value == pytest.approx(
            math.log(2.0), rel=1e-8
        )


class TestLogConvexity:
    def test_gamma_samples_are_logconvex(self):
        pts = [(r, ml.gamma_fn(r)) for r in (1.0, 2.0, 3.0, 4.0)]
        assert ml.check_logconvex(pts)

    def test_stable_transform_is_logconvex(self):
        f = cat.stable(0.5).function
        grid = np.linspace(0.5, 3.0, 11)
        pts = [(r, ml.R_product(f, r).value) for r in grid]
        assert ml.check_logconvex(pts)

    def test_logconcave_data_rejected(self):
        pts = [(r, math.exp(-r * r)) for r in np.linspace(0.5, 2.0, 7)]
        assert not ml.check_logconvex(pts)

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            ml.check_logconvex([(1.0, 1.0), (2.0, 1.0)])
        with pytest.raises(ShapeError):
            ml.check_logconvex([(1.0, 1.0), (3.0, 1.0), (2.0, 1.0)])
        with pytest.raises(ShapeError):
            ml.check_logconvex([(1.0, 1.0), (2.0, 1.0), (4.0, 1.0)])
        with pytest.raises(ShapeError):
            ml.check_logconvex([(1.0, 1.0), (2.0, -1.0), (3.0, 1.0)])


class TestUniquenessNegative:
    """A shifted-equation-respecting but non-log-convex candidate is detected."""

    @pytest.mark.parametrize("entry_fn", [cat.trivial, lambda: cat.stable(0.5)])
    def test_perturbed_candidate_fails_logconvexity(self, entry_fn):
        entry = entry_fn()
        f = entry.function

        def candidate(r):
            # period-1 positive perturbation: preserves value 1 at r=1 and the
            # shift recursion, destroys log-convexity
            return ml.R_product(f, r).value * math.exp(0.15 * math.sin(2 * math.pi * r))

        assert candidate(1.0) == pytest.approx(1.0, rel=1e-8)
        for r in (0.7, 1.3, 2.6):
            assert candidate(r + 1.0) == pytest.approx(
                float(f(r)) * candidate(r), rel=1e-7
            )
        grid = np.linspace(1.0, 3.0, 21)
        pts = [(r, candidate(r)) for r in grid]
        assert not ml.check_logconvex(pts)
        # while the genuine transform on the same grid passes
        honest = [(r, ml.R_product(f, r).value) for r in grid]
        assert ml.check_logconvex(honest)


@settings(max_examples=20, deadline=None)
@given(
    alpha=st.floats(min_value=0.1, max_value=0.9),
    r=st.floats(min_value=0.1, max_value=8.0),
)
def test_product_factorization_property(alpha, r):
    f = cat.stable(alpha).function
    value = ml.R_product(f, r).value * ml.I_product(f, r).value
    assert value == pytest.approx(ml.gamma_fn(r), rel=1e-6)


@settings(max_examples=20, deadline=None)
@given(r0=st.floats(min_value=0.05, max_value=1.0))
def test_raw_product_decreases(r0):
    f = cat.expcp(1.0).function
    hs = [ml.raw_product(f, n, r0) for n in (8, 16, 32, 64)]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(hs, hs[1:]))
