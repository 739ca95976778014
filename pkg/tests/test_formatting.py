"""
輸出格式與日誌工具測試
"""
import logging
from fractions import Fraction

import numpy as np
import pytest

from ks_bias_tool.models.alternative import OddsPowerCdf
from ks_bias_tool.models.output import OutputRecord
from ks_bias_tool.utils.formatting import decimal_string, render_rational, render_value
from ks_bias_tool.utils.logger import setup_logger


class TestDecimalString:
    @pytest.mark.parametrize(
        "value,digits,expected",
        [
            (Fraction(3, 7), 6, "0.428571"),
            (Fraction(2, 3), 6, "0.666667"),
            (Fraction(0), 6, "0"),
            (Fraction(1, 8), 2, "0.12"),
            (Fraction(1), 6, "1"),
        ],
    )
    def test_rounding(self, value, digits, expected):
        assert decimal_string(value, digits) == expected

    def test_small_value(self):
        assert decimal_string(Fraction(2, 352716), 3) == "0.00000567"

    def test_render_rational(self):
        assert render_rational(Fraction(7, 25)) == {"fraction": "7/25", "decimal": "0.28"}


class TestRenderValue:
    def test_nested(self):
        rendered = render_value({"a": [Fraction(1, 2), np.float64(0.25)], "b": None, "c": True})
        assert rendered == {"a": [{"fraction": "1/2", "decimal": "0.5"}, 0.25], "b": None, "c": True}

    def test_model(self):
        assert render_value(OddsPowerCdf(theta=Fraction(9, 8)), 4) == {
            "theta": {"fraction": "9/8", "decimal": "1.125"}
        }

    def test_output_record(self):
        record = OutputRecord(command="pvalue", parameters={"n": 3}, results={"p": Fraction(1, 10)})
        assert record.rendered()["results"] == {"p": {"fraction": "1/10", "decimal": "0.1"}}


class TestLogger:
    def test_level_from_environment(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "debug")
        logger = setup_logger("ks_bias_tool.test_env")
        assert logger.level == logging.DEBUG

    def test_default_level(self, monkeypatch):
        monkeypatch.delenv("LOG_LEVEL", raising=False)
        assert setup_logger("ks_bias_tool.test_default").level == logging.WARNING

    def test_no_duplicate_handlers(self):
        logger = setup_logger("ks_bias_tool.test_handlers", "INFO")
        setup_logger("ks_bias_tool.test_handlers", "INFO")
        assert len(logger.handlers) == 1
