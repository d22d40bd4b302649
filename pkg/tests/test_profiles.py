"""Profile data model, expansions, and the JSON wire format."""

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finhankel.errors import (
    DomainError,
    ExponentCollisionError,
    IncompatibleLadderError,
    NotApplicableError,
    ProfileFormatError,
)
from finhankel.profiles import (
    ProfileTerm,
    RadialProfile,
    binomial,
    boundary_expansion,
    boundary_function,
    evaluate,
    origin_expansion,
    profile_from_dict,
    profile_from_json,
    profile_to_dict,
)

from oracles import binomial_ladder, reciprocal_sqrt_series


def term(c, lam, rho):
    return ProfileTerm(coeff=c, lam=lam, rho=rho)


def single(lam, rho, n=2, c=1, **kw):
    return RadialProfile(n, (term(c, lam, rho),), **kw)


class TestEvaluate:
    def test_power_term(self):
        assert evaluate(single(1.0, 1.0), 0.5) == pytest.approx(0.5)

    def test_edge_factor(self):
        assert evaluate(single(0.0, 2.0), 0.5) == pytest.approx(0.75)

    def test_two_terms(self):
        p = RadialProfile(2, (term(1, 1.0, 1.0), term(2, 0.0, 2.0)))
        assert evaluate(p, 0.5) == pytest.approx(2.0)

    def test_domain(self):
        for bad in (0.0, 1.0, -0.5, 1.5):
            with pytest.raises(DomainError):
                evaluate(single(1.0, 1.0), bad)

    def test_array_input(self):
        s = np.array([0.25, 0.5, 0.75])
        vals = evaluate(single(1.0, 1.0), s)
        np.testing.assert_allclose(vals.real, s)


class TestValidation:
    def test_dimension(self):
        with pytest.raises(DomainError):
            RadialProfile(1, (term(1, 1, 1),))
        with pytest.raises(DomainError):
            RadialProfile(2, ())

    def test_zero_coefficient(self):
        with pytest.raises(DomainError):
            term(0, 1.0, 1.0)

    def test_rho_positive(self):
        with pytest.raises(DomainError):
            term(1, 1.0, 0.0)

    def test_lambda_floor(self):
        with pytest.raises(DomainError):
            single(-1.0, 1.0, n=2)  # needs lam > -1 - nu = -1
        single(-1.5, 1.0, n=4)  # nu = 1 allows it


class TestOriginExpansion:
    def test_jacobi_power_ladder(self):
        oe = origin_expansion(single(0.5, 6.0), max_k=4)
        assert oe.mu == 0.5
        # exact ladder of (1-u)^5, checked against the rational oracle
        expect = binomial_ladder(Fraction(5), 3)
        assert oe.coeffs == (1, 0, float(expect[1]), 0, float(expect[2]))

    def test_even_ladder_only(self):
        oe = origin_expansion(single(1.0, 4.5), max_k=8)
        assert all(oe.coeffs[k] == 0 for k in (1, 3, 5, 7))
        assert all(oe.coeffs[k] != 0 for k in (0, 2, 4, 6, 8))

    def test_inverse_sqrt_ladder(self):
        oe = origin_expansion(single(0.0, 0.5), max_k=2)
        # independent series-division oracle for (1-u)^(-1/2)
        div = reciprocal_sqrt_series(2)
        assert oe.mu == 0
        assert oe.coeffs == (1, 0, float(div[1]))

    def test_incompatible_ladder(self):
        p = RadialProfile(2, (term(1, 0.0, 1.0), term(1, 0.5, 1.0)))
        with pytest.raises(IncompatibleLadderError):
            origin_expansion(p)

    def test_rebase_after_cancellation(self):
        p = RadialProfile(2, (term(1, 0.0, 3.0), term(-1, 0.0, 1.0)))
        oe = origin_expansion(p, max_k=4)
        assert oe.mu == 2.0
        assert oe.coeffs[0] == -2.0


class TestBoundaryExpansion:
    def test_zero_power_factor(self):
        # transferred power beta = lam/2 - n/4 = 0: only j = 0 contributes
        be = boundary_expansion(single(1.0, 1.5), max_j=2)
        assert be.terms[0] == (0.5, 1)
        assert be.terms[1] == (1.5, 0)

    def test_sqrt_power_factor(self):
        be = boundary_expansion(single(2.0, 1.0), max_j=1)
        assert be.terms[0] == (0, 1)
        assert be.terms[1] == (1, -0.5)
        assert be.Lambda == 2.0

    def test_vanishing_profile_rejected(self):
        with pytest.raises(NotApplicableError):
            boundary_expansion(single(1.0, 1.0, vanishes_near_one=True))

    def test_collision(self):
        p = RadialProfile(2, (term(1, 1.0, 1.0), term(1, 1.0, complex(1.0, 0.5))))
        with pytest.raises(ExponentCollisionError):
            boundary_expansion(p)

    def test_exact_merge_sums(self):
        p = RadialProfile(2, (term(1, 1.0, 1.5), term(2, 1.0, 1.5)))
        be = boundary_expansion(p, max_j=2)
        assert be.terms[0] == (0.5, 3)

    def test_truncation_cap(self):
        be = boundary_expansion(single(1.0, 1.5), max_j=3)
        assert all(e.real < be.Lambda.real for e, _ in be.terms)
        assert be.Lambda == 0.5 + 4


class TestTruncationConsistency:
    # truncation orders kept low so the residual stays far above the
    # double-precision noise of `evaluate` across the whole fit window

    def test_origin_residual_slope(self):
        """Dropped ladder tail behaves like s^(mu + K + 1) as s -> 0."""
        p = single(0.5, 6.0)
        K = 2
        oe = origin_expansion(p, max_k=K)
        s = np.geomspace(1e-4, 1e-2, 12)
        partial = sum(
            c * s ** (oe.mu.real + k) for k, c in enumerate(oe.coeffs)
        )
        resid = np.abs(evaluate(p, s) - partial)
        slope = np.polyfit(np.log(s), np.log(resid), 1)[0]
        assert slope > oe.mu.real + K + 0.9

    def test_boundary_residual_slope(self):
        p = single(2.0, 1.0, n=2)  # transferred profile t^(1/2), infinite ladder
        be = boundary_expansion(p, max_j=1)
        t = 1.0 - np.geomspace(1e-4, 1e-2, 12)
        partial = sum(a * (1.0 - t) ** complex(e) for e, a in be.terms)
        resid = np.abs(boundary_function(p, t) - partial)
        slope = np.polyfit(np.log(1.0 - t), np.log(resid), 1)[0]
        assert slope > be.Lambda.real - 0.1


coeffs = st.complex_numbers(
    min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False
)


class TestLinearity:
    @given(coeffs, coeffs)
    @settings(max_examples=40, deadline=None)
    def test_origin_coeffs_linear(self, c1, c2):
        base = (term(c1, 0.5, 3.0), term(c2, 2.5, 1.5))
        oe = origin_expansion(RadialProfile(2, base), max_k=6)
        oe1 = origin_expansion(single(0.5, 3.0, c=c1), max_k=6)
        oe2 = origin_expansion(single(2.5, 1.5, c=c2), max_k=6)
        # second term enters at offset 2
        for k in range(7):
            expect = oe1.coeffs[k] + (oe2.coeffs[k - 2] if k >= 2 else 0)
            assert oe.coeffs[k] == pytest.approx(expect, rel=1e-12, abs=1e-15)

    @given(coeffs)
    @settings(max_examples=40, deadline=None)
    def test_evaluate_scales(self, c):
        p1 = single(1.0, 2.0)
        pc = single(1.0, 2.0, c=c)
        assert evaluate(pc, 0.3) == pytest.approx(c * evaluate(p1, 0.3), rel=1e-12)

    @given(coeffs)
    @settings(max_examples=40, deadline=None)
    def test_boundary_coeffs_scale(self, c):
        be1 = boundary_expansion(single(2.0, 1.0), max_j=3)
        bec = boundary_expansion(single(2.0, 1.0, c=c), max_j=3)
        for (e1, a1), (ec, ac) in zip(be1.terms, bec.terms):
            assert ec == e1
            assert ac == pytest.approx(c * a1, rel=1e-12, abs=1e-15)


class TestBinomial:
    def test_integer_cutoff_is_exact_zero(self):
        assert binomial(3.0, 5) == 0
        assert binomial(0.0, 1) == 0

    def test_fractional(self):
        assert binomial(-0.5, 1) == pytest.approx(-0.5)
        assert binomial(0.5, 2) == pytest.approx(-1.0 / 8.0)


class TestJson:
    def test_round_trip(self):
        p = RadialProfile(
            3,
            (term(complex(1, 2), complex(0.5, 0), 2.0), term(-1.5, 2.5, 0.7)),
            vanishes_near_one=False,
        )
        assert profile_from_json(json.dumps(profile_to_dict(p))) == p

    def test_unknown_keys_rejected(self):
        doc = profile_to_dict(single(1.0, 1.0))
        doc["extra"] = 1
        with pytest.raises(ProfileFormatError):
            profile_from_dict(doc)
        doc2 = profile_to_dict(single(1.0, 1.0))
        doc2["terms"][0]["spurious"] = 0
        with pytest.raises(ProfileFormatError):
            profile_from_dict(doc2)

    def test_empty_terms_rejected(self):
        with pytest.raises(ProfileFormatError):
            profile_from_dict({"dimension": 2, "terms": []})

    def test_pairs_required(self):
        with pytest.raises(ProfileFormatError):
            profile_from_dict(
                {"dimension": 2, "terms": [{"coeff": 1.0, "lambda": [1, 0], "rho": [1, 0]}]}
            )

    def test_dimension_type(self):
        with pytest.raises(ProfileFormatError):
            profile_from_dict(
                {"dimension": 2.0, "terms": [{"coeff": [1, 0], "lambda": [1, 0], "rho": [1, 0]}]}
            )

    def test_bad_json_text(self):
        with pytest.raises(ProfileFormatError):
            profile_from_json("{not json")
