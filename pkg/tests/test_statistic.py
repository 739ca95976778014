"""
KS 統計量計算測試
"""
from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings
from pydantic import ValidationError
from scipy.stats import ks_2samp

from ks_bias_tool.core.errors import DomainError, InputFileError
from ks_bias_tool.core.statistic import (
    batch_numerators, detect_cross_sample_ties, load_sample_file, one_sided_d, two_sided_d
)
from ks_bias_tool.models.statistic import KsStatistic, Sample

finite_values = st.lists(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=30,
)


class TestTwoSided:
    """雙尾統計量"""

    def test_separated_samples(self):
        d = two_sided_d([1, 2, 3], [4, 5, 6])
        assert d.value == 1
        assert d.numerator == d.denominator == 9

    def test_shifted_samples(self):
        """與 R ks.test(c(1,2,3,4,5), c(3,4,5,6,7)) 相同：D = 0.4"""
        assert two_sided_d([1, 2, 3, 4, 5], [3, 4, 5, 6, 7]).value == Fraction(2, 5)

    def test_ties_are_grouped(self):
        """相同數值在全部納入後才取值"""
        assert two_sided_d([1, 2, 3, 4, 5], [1, 2, 3, 6, 7]).value == Fraction(2, 5)

    def test_identical_samples(self):
        assert two_sided_d([1, 2, 3], [3, 2, 1]).value == 0

    def test_unequal_sizes(self):
        d = two_sided_d([0.1, 0.2], [0.15, 0.3, 0.4])
        assert d.denominator == 6
        # F̂ - Ĝ 在 0.2 處為 1 - 1/3
        assert d.value == Fraction(2, 3)

    @given(finite_values, finite_values)
    @settings(max_examples=200, deadline=None)
    def test_matches_scipy(self, x, y):
        expected = ks_2samp(x, y, method="asymp").statistic
        assert float(two_sided_d(x, y)) == pytest.approx(expected, abs=1e-12)

    def test_empty_sample_rejected(self):
        with pytest.raises(DomainError):
            two_sided_d([], [1.0])

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            two_sided_d([1.0, float("nan")], [1.0])


class TestOneSided:
    """單尾統計量的方向"""

    def test_interleaved(self):
        x, y = [1, 3], [2, 4]
        assert one_sided_d(x, y, "y-above-x").value == Fraction(1, 2)
        assert one_sided_d(x, y, "x-above-y").value == 0
        assert two_sided_d(x, y).value == Fraction(1, 2)

    def test_all_y_below_all_x(self):
        x, y = [5, 6, 7], [1, 2]
        assert one_sided_d(x, y, "x-above-y").value == 1
        assert one_sided_d(x, y, "y-above-x").value == 0

    def test_invalid_direction(self):
        with pytest.raises(DomainError):
            one_sided_d([1], [2], "sideways")  # type: ignore[arg-type]

    @given(finite_values, finite_values)
    @settings(max_examples=100, deadline=None)
    def test_matches_scipy(self, x, y):
        less = ks_2samp(x, y, alternative="less", method="asymp").statistic
        greater = ks_2samp(x, y, alternative="greater", method="asymp").statistic
        assert float(one_sided_d(x, y, "x-above-y")) == pytest.approx(less, abs=1e-12)
        assert float(one_sided_d(x, y, "y-above-x")) == pytest.approx(greater, abs=1e-12)

    @given(finite_values, finite_values)
    @settings(max_examples=100, deadline=None)
    def test_two_sided_is_larger_side(self, x, y):
        lower = one_sided_d(x, y, "x-above-y").numerator
        upper = one_sided_d(x, y, "y-above-x").numerator
        assert two_sided_d(x, y).numerator == max(lower, upper)


class TestBatchNumerators:
    """向量化的批次計算與逐筆計算一致"""

    @given(
        st.integers(min_value=0, max_value=2**32 - 1),
        st.integers(min_value=1, max_value=12),
        st.integers(min_value=1, max_value=12),
    )
    @settings(max_examples=50, deadline=None)
    def test_matches_scalar(self, seed, n, m):
        rng = np.random.default_rng(seed)
        x = rng.random((8, n))
        y = rng.random((8, m))
        for side in ("two-sided", "x-above-y", "y-above-x"):
            batch = batch_numerators(x, y, side)
            for row in range(8):
                if side == "two-sided":
                    expected = two_sided_d(x[row].tolist(), y[row].tolist())
                else:
                    expected = one_sided_d(x[row].tolist(), y[row].tolist(), side)
                assert batch[row] == expected.numerator

    def test_repeated_values_within_sample(self):
        x = np.array([[0.2, 0.7, 0.9]])
        y = np.array([[0.5, 0.5]])
        assert batch_numerators(x, y)[0] == two_sided_d([0.2, 0.7, 0.9], [0.5, 0.5]).numerator


class TestTiesAndFiles:
    """跨組重複值偵測與資料檔讀取"""

    def test_cross_sample_ties(self):
        assert detect_cross_sample_ties([1.0, 2.0], [2.0, 3.0])
        assert not detect_cross_sample_ties([1.0, 2.0], [2.5, 3.0])

    def test_load_sample_file(self, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("0.5\n\n  1.25 \n-3\n", encoding="utf-8")
        sample = load_sample_file(path)
        assert sample.values == [-3.0, 0.5, 1.25]
        assert sample.size == 3

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1.0\nabc\n", encoding="utf-8")
        with pytest.raises(InputFileError, match="bad.txt:2"):
            load_sample_file(path)

    def test_non_finite_line(self, tmp_path):
        path = tmp_path / "inf.txt"
        path.write_text("inf\n", encoding="utf-8")
        with pytest.raises(InputFileError):
            load_sample_file(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("\n\n", encoding="utf-8")
        with pytest.raises(InputFileError):
            load_sample_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFileError):
            load_sample_file(tmp_path / "missing.txt")


class TestModels:
    """資料模型的驗證規則"""

    def test_sample_is_sorted(self):
        assert Sample(values=[3.0, 1.0, 2.0]).values == [1.0, 2.0, 3.0]

    def test_statistic_bounds(self):
        with pytest.raises(ValidationError):
            KsStatistic(numerator=7, denominator=6)

    def test_statistic_value(self):
        statistic = KsStatistic(numerator=3, denominator=6)
        assert statistic.value == Fraction(1, 2)
        assert float(statistic) == 0.5
