import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from perpetua import bernstein as bs
from perpetua import families as cat
from perpetua.errors import DomainError, ParameterError


class TestEvalPhi:
    def test_identity_exponent(self):
        assert bs.eval_phi(cat.trivial().function, 3.0) == 3.0

    def test_gamma_process_at_one(self):
        assert bs.eval_phi(cat.gamma_process().function, 1.0) == pytest.approx(
            math.log(2.0), rel=1e-14
        )

    def test_exponential_cp(self):
        # s/(s+c) at s=2, c=1
        assert bs.eval_phi(cat.expcp(1.0).function, 2.0) == pytest.approx(2.0 / 3.0)

    def test_exactly_zero_at_origin(self):
        for entry in cat.catalog():
            assert bs.eval_phi(entry.function, 0.0) == 0.0

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            bs.eval_phi(cat.trivial().function, -0.1)

    def test_vectorized(self):
        f = cat.stable(0.5).function
        out = bs.eval_phi(f, np.array([0.0, 1.0, 4.0]))
        assert out == pytest.approx([0.0, 1.0, 2.0])


class TestEvalPhiFromLevy:
    def test_pure_drift(self):
        triple = bs.LevyTriple(drift=1.0)
        assert bs.eval_phi_from_levy(triple, 5.0) == 5.0

    def test_stable_half(self):
        # x^(-3/2) / (2 Gamma(1/2)) integrates to sqrt(s); at s=4 the value is 2
        triple = cat.stable(0.5).function.levy
        assert bs.eval_phi_from_levy(triple, 4.0, tol=1e-8) == pytest.approx(2.0, rel=1e-9)

    def test_exponential_jumps(self):
        triple = cat.expcp(1.0).function.levy
        assert bs.eval_phi_from_levy(triple, 1.0, tol=1e-9) == pytest.approx(0.5, rel=1e-10)

    def test_atoms_only(self):
        # single jump of size log 2 at rate 1: 1 - 2^-s
        triple = cat.geomcp(0.0, 0.5).function.levy
        got = bs.eval_phi_from_levy(triple, 2.0)
        assert got == pytest.approx(0.75, rel=1e-12)

    def test_catalog_match_on_grid(self):
        for entry in cat.catalog():
            f = entry.function
            if f.levy is None:
                continue
            for s in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
                approx = bs.eval_phi_from_levy(f.levy, s, tol=1e-6)
                assert approx == pytest.approx(float(f(s)), rel=1e-5), (entry.id, s)


class TestLevyTriple:
    def test_negative_drift_rejected(self):
        with pytest.raises(DomainError):
            bs.LevyTriple(drift=-1.0)

    def test_atom_at_origin_rejected(self):
        with pytest.raises(DomainError):
            bs.LevyTriple(atoms=((0.0, 1.0),))

    def test_integrability_finite(self):
        for entry in (cat.stable(0.3), cat.gamma_process(), cat.rou(0.4, 1.0)):
            value = entry.function.levy.check_integrability()
            assert math.isfinite(value) and value > 0

    def test_tail_function(self):
        triple = cat.expcp(2.0).function.levy
        assert triple.tail(1.0) == pytest.approx(math.exp(-2.0), rel=1e-8)


class TestConjugate:
    def test_stable_half_self_conjugate(self):
        f = cat.stable(0.5).function
        star = bs.conjugate(f)
        grid = np.array([0.3, 1.0, 4.0])
        assert np.allclose(star.phi(grid), f.phi(grid), rtol=1e-13)
        assert star.is_in_sigma is True

    def test_trivial_conjugate_is_constant(self):
        star = bs.conjugate(cat.trivial().function)
        assert float(star.phi(np.array([2.0]))[0]) == 1.0
        assert star.value_at_zero == pytest.approx(1.0, abs=1e-8)
        assert star.is_in_sigma is False

    def test_expcp_conjugate_shifts(self):
        star = bs.conjugate(cat.expcp(2.0).function)
        assert float(star.phi(np.array([3.0]))[0]) == pytest.approx(5.0)
        assert star.value_at_zero == pytest.approx(2.0, abs=1e-6)
        assert star.is_in_sigma is False

    def test_involution_for_symmetric_members(self):
        for alpha in (0.3, 0.5, 0.7):
            f = cat.stable(alpha).function
            back = bs.conjugate(bs.conjugate(f))
            grid = np.array([0.25, 1.0, 2.0, 10.0])
            assert np.allclose(back.phi(grid), f.phi(grid), rtol=1e-10)


class TestPowerSubordinate:
    def test_identity_power_returns_same(self):
        f = cat.stable(0.5).function
        assert bs.power_subordinate(f, 1.0) is f

    def test_square_root_of_identity(self):
        g = bs.power_subordinate(cat.trivial().function, 0.5)
        assert float(g.phi(np.array([9.0]))[0]) == pytest.approx(3.0)

    def test_power_composition(self):
        g = bs.power_subordinate(cat.stable(0.5).function, 0.5)
        assert float(g.phi(np.array([16.0]))[0]) == pytest.approx(2.0)

    def test_gamma_third_power(self):
        g = bs.power_subordinate(cat.gamma_process().function, 1.0 / 3.0)
        assert float(g.phi(np.array([1.0]))[0]) == pytest.approx(
            math.log(2.0) ** (1.0 / 3.0), rel=1e-12
        )

    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.5])
    def test_power_domain(self, alpha):
        with pytest.raises(DomainError):
            bs.power_subordinate(cat.trivial().function, alpha)


class TestShapes:
    def test_catalog_entries_pass_shape_check(self):
        for entry in cat.catalog():
            assert bs.check_phi_shape(entry.function), entry.id

    def test_convex_function_fails(self):
        f = bs.BernsteinFunction(name="bad", phi=lambda s: np.asarray(s, float) ** 2)
        assert not bs.check_phi_shape(f)

    def test_phi_prime_fallback_matches_closed_form(self):
        entry = cat.expcp(1.0)
        bare = bs.BernsteinFunction(name="bare", phi=entry.function.phi)
        for s in (0.5, 1.0, 3.0):
            assert float(bare.prime(s)) == pytest.approx(
                float(entry.function.prime(s)), rel=1e-7
            )


class TestCatalogIds:
    def test_roundtrip(self):
        for entry in cat.catalog():
            rebuilt = cat.get_entry(entry.id)
            assert rebuilt.id == entry.id

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            cat.get_entry("weird:alpha=1")

    def test_bad_parameters(self):
        with pytest.raises(ParameterError):
            cat.get_entry("geomcp:c=0.7,q=0.5")
        with pytest.raises(ParameterError):
            cat.get_entry("stable:alpha=1.5")
        with pytest.raises(ParameterError):
            cat.get_entry("by452:alpha=0.5,b=3,c=2")
        with pytest.raises(ParameterError):
            cat.get_entry("stable:alpha=0.5,extra=1")
        with pytest.raises(ParameterError):
            cat.get_entry("stable")


@settings(max_examples=25, deadline=None)
@given(alpha=st.floats(min_value=0.05, max_value=0.95))
def test_stable_conjugate_is_complementary_power(alpha):
    star = bs.conjugate(cat.stable(alpha).function)
    grid = np.array([0.5, 1.0, 3.0])
    assert np.allclose(star.phi(grid), grid ** (1.0 - alpha), rtol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    alpha=st.floats(min_value=0.1, max_value=1.0),
    beta=st.floats(min_value=0.1, max_value=1.0),
)
def test_power_of_power_composes(alpha, beta):
    f = cat.trivial().function
    g = bs.power_subordinate(bs.power_subordinate(f, alpha), beta)
    s = 2.7
    assert float(g.phi(np.array([s]))[0]) == pytest.approx(s ** (alpha * beta), rel=1e-12)
