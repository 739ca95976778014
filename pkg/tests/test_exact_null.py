"""
精確虛無分布測試
"""
import math
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from ks_bias_tool.core import ToolSettings
from ks_bias_tool.core.errors import DomainError
from ks_bias_tool.core.exact_null import (
    ExactNullAPI, enumerate_null_counts, pmf_work, tail_count, to_fraction
)

SMALL_PAIRS = [(n, total - n) for total in range(2, 9) for n in range(1, total)]


class TestNullDistribution:
    """動態規劃與暴力列舉"""

    @pytest.mark.parametrize("n,m", SMALL_PAIRS)
    def test_matches_enumeration(self, null_api, n, m):
        distribution = null_api.null_distribution(n, m)
        assert dict(zip(distribution.numerators, distribution.counts)) == enumerate_null_counts(n, m)

    def test_probabilities_sum_to_one(self, null_api):
        distribution = null_api.null_distribution(7, 4)
        assert sum(distribution.probabilities) == 1
        assert distribution.cdf()[-1] == 1

    def test_tails(self, null_api):
        distribution = null_api.null_distribution(6, 5)
        tails = distribution.tails()
        assert tails[0] == 1
        for k, tail in zip(distribution.numerators, tails):
            assert distribution.tail(k) == tail
            assert tail == Fraction(tail_count(6, 5, k), math.comb(11, 6))

    def test_support_is_reduced(self, null_api):
        distribution = null_api.null_distribution(3, 3)
        assert distribution.support == [Fraction(1, 3), Fraction(2, 3), Fraction(1)]
        assert distribution.counts == [8, 10, 2]

    def test_size_limits(self, null_api):
        with pytest.raises(DomainError):
            null_api.null_distribution(0, 3)
        with pytest.raises(DomainError):
            null_api.null_distribution(501, 3)

    def test_work_limit(self):
        assert pmf_work(6, 5) == 7 * 6 * 30
        assert pmf_work(4, 6) == 5 * 7 * 12
        at_limit = ExactNullAPI(ToolSettings(max_pmf_work=pmf_work(6, 5)))
        assert at_limit.null_distribution(6, 5).total == math.comb(11, 5)
        below_limit = ExactNullAPI(ToolSettings(max_pmf_work=pmf_work(6, 5) - 1))
        with pytest.raises(DomainError, match="pvalue"):
            below_limit.null_distribution(6, 5)
        # 單點 p 值不受工作量上限影響
        assert below_limit.p_value(6, 5, 1) == Fraction(2, math.comb(11, 5))

    @pytest.mark.parametrize("n,m", [(500, 499), (120, 119)])
    def test_coprime_sizes_rejected_before_work(self, null_api, n, m):
        with pytest.raises(DomainError):
            null_api.null_distribution(n, m)

    def test_equal_sizes_within_limit(self, settings):
        assert pmf_work(500, 500) <= settings.max_pmf_work
        assert pmf_work(100, 99) <= settings.max_pmf_work


class TestPValue:
    """精確 p 值"""

    @pytest.mark.parametrize("d,expected", [("0.26", 0.0678), ("0.28", 0.0392)])
    def test_equal_sizes_fifty(self, null_api, d, expected):
        assert float(null_api.p_value(50, 50, d)) == pytest.approx(expected, abs=5e-4)

    def test_matches_r_exact(self, null_api):
        """R: ks.test(c(1,2,3,4,5), c(3,4,5,6,7)) 的 p 值 0.873015873015873"""
        assert float(null_api.p_value(5, 5, Fraction(2, 5))) == pytest.approx(0.873015873015873, rel=1e-12)

    def test_complete_separation(self, null_api):
        assert null_api.p_value(3, 3, 1) == Fraction(1, 10)

    def test_rounding_up_to_support(self, null_api):
        """介於兩個支撐點之間的 d 取上方的支撐點"""
        assert null_api.p_value(3, 3, "0.5") == null_api.p_value(3, 3, Fraction(2, 3))

    def test_zero_statistic(self, null_api):
        assert null_api.p_value(4, 6, 0) == 1

    @pytest.mark.parametrize("d", ["-0.1", "1.01"])
    def test_out_of_range(self, null_api, d):
        with pytest.raises(DomainError):
            null_api.p_value(4, 6, d)


class TestAlphaLadder:
    """離散顯著水準 α₁ < α₂ < α₃"""

    def test_alpha1_closed_form(self, null_api):
        ladder = null_api.alpha_ladder(10, 11)
        assert ladder.alpha1 == Fraction(2 * math.factorial(10) * math.factorial(11), math.factorial(21))
        assert f"{float(ladder.alpha1):.3g}" == "5.67e-06"
        assert ladder.verified

    def test_alpha2(self, null_api):
        ladder = null_api.alpha_ladder(5, 3)
        assert ladder.k == 4
        assert ladder.alpha2 == ladder.alpha2_closed_form == Fraction(1, 7)
        assert ladder.threshold2 == Fraction(12, 15)

    @pytest.mark.parametrize(
        "n,m,expected",
        [(6, 2, Fraction(3, 7)), (7, 3, Fraction(1, 6)), (2, 7, Fraction(1, 3))],
    )
    def test_alpha3_specials(self, null_api, n, m, expected):
        ladder = null_api.alpha_ladder(n, m)
        assert ladder.alpha3_defined
        assert ladder.alpha3 == expected
        assert ladder.verified

    def test_alpha3_multiplier(self, null_api):
        ladder = null_api.alpha_ladder(9, 4)
        assert ladder.k2 == 15
        assert ladder.alpha3 == 15 * ladder.alpha1
        assert ladder.threshold3 == Fraction(36 - 8, 36)

    def test_equal_sizes(self, null_api):
        ladder = null_api.alpha_ladder(5, 5)
        assert not ladder.alpha2_identity_applies
        assert not ladder.alpha3_defined
        assert ladder.alpha2 == null_api.tail_probability(5, 5, 20)
        with pytest.raises(ValueError):
            ladder.level(3)

    @pytest.mark.parametrize("n,m", [(4, 7), (8, 3), (12, 10), (20, 9)])
    def test_closed_forms_verified(self, null_api, n, m):
        assert null_api.alpha_ladder(n, m).verified

    def test_minimum_sizes(self, null_api):
        with pytest.raises(DomainError):
            null_api.alpha_ladder(1, 5)


class TestThreshold:
    """名目水準對應的拒絕門檻"""

    def test_equal_sizes_fifty(self, null_api):
        threshold = null_api.threshold_for_level(50, 50, 0.05)
        assert threshold.threshold == Fraction(7, 25)
        assert float(threshold.attained_level) == pytest.approx(0.0392, abs=5e-4)
        lower, upper = threshold.level_interval
        assert lower == threshold.attained_level
        assert upper == null_api.p_value(50, 50, "0.26")
        assert not threshold.never_rejects

    def test_below_smallest_level(self, null_api):
        threshold = null_api.threshold_for_level(5, 5, Fraction(1, 10**6))
        assert threshold.never_rejects
        assert threshold.attained_level == 0
        assert threshold.numerator == 26

    def test_level_one(self, null_api):
        threshold = null_api.threshold_for_level(3, 3, 1)
        assert threshold.threshold == Fraction(1, 3)
        assert threshold.attained_level == 1
        assert threshold.level_interval == (Fraction(1), Fraction(1))

    @pytest.mark.parametrize("alpha", [0, -0.5, 1.5, "abc"])
    def test_invalid_level(self, null_api, alpha):
        with pytest.raises(DomainError):
            null_api.threshold_for_level(5, 5, alpha)

    @given(
        st.integers(min_value=1, max_value=8),
        st.integers(min_value=1, max_value=8),
        st.fractions(min_value=Fraction(1, 10**4), max_value=Fraction(9999, 10**4)),
    )
    @settings(max_examples=150, deadline=None)
    def test_attained_level_brackets_alpha(self, n, m, alpha):
        api = ExactNullAPI()
        threshold = api.threshold_for_level(n, m, alpha)
        lower, upper = threshold.level_interval
        assert threshold.attained_level <= alpha < upper
        if not threshold.never_rejects:
            assert lower == threshold.attained_level == api.tail_probability(n, m, threshold.numerator)
            # 門檻是可達的支撐點
            assert threshold.numerator in api.null_distribution(n, m).numerators


class TestToFraction:
    def test_decimal_literal(self):
        assert to_fraction(0.05) == Fraction(1, 20)
        assert to_fraction("13/50") == Fraction(13, 50)

    def test_invalid(self):
        with pytest.raises(DomainError):
            to_fraction("1/0")
