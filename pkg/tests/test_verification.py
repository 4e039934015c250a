import math

import pytest

from perpetua import families as cat
from perpetua import verification as vf


def test_full_suite_passes():
    outcomes = vf.run_all()
    failures = [o for o in outcomes if not o.passed]
    assert not failures, [f"{o.entry}/{o.check}: {o.detail}" for o in failures]
    # every entry contributes and the global self-tests ran
    entries = {o.entry for o in outcomes}
    assert "(global)" in entries
    assert len(entries) == len(cat.catalog()) + 1


def test_outcome_serialization_layout():
    outcome = vf.run_global_checks()[0]
    assert list(outcome.to_dict()) == ["entry", "check", "passed", "detail"]


def test_single_entry_checks_cover_expected_names():
    names = {o.check for o in vf.run_entry_checks(cat.stable(0.5))}
    for expected in (
        "phi-null-at-zero",
        "levy-quadrature-match",
        "conjugate-involution",
        "product-identity",
        "moment-identity",
        "closed-R-match",
        "closed-form-factorization",
        "kappa-laplace-match",
        "route-agreement-R",
        "urbanik-equivalence",
        "classification-expected",
        "swap-residuals",
        "sigma-density-partition",
        "product-monotone-approach",
    ):
        assert expected in names, expected


def test_closed_form_spot_values():
    # direct values of the stored closed forms at hand-checked points
    assert cat.stable(0.5).closed_R(3.0) == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert cat.by451(0.5, 2.0).closed_I(3.0) == pytest.approx(4.0, rel=1e-12)
    assert cat.expcp(1.0).closed_I(3.0) == pytest.approx(6.0, rel=1e-12)
    assert cat.geomcp(0.0, 0.5).closed_R(2.0) == pytest.approx(0.5, rel=1e-12)
    assert cat.rou(0.3, 1.0 / 0.6).closed_R(2.0) == pytest.approx(
        1.0 / math.gamma(0.3), rel=1e-12
    )
    # both special-case forms of the half-index inverse local time coincide
    a = cat.rou(0.5, 1.0)
    for r in (0.7, 1.9, 3.4):
        duplication = (
            0.5 ** (r - 1.0) * math.gamma(r) / math.gamma(0.5 * (r - 1.0) + 1.0)
        )
        assert a.closed_R(r) == pytest.approx(duplication, rel=1e-12)
