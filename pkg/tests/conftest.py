"""
共用測試設定
"""
import pytest
from typer.testing import CliRunner

from ks_bias_tool.cli.main import register_commands
from ks_bias_tool.core import (
    AlternativeAPI, BiasAPI, ExactNullAPI, SimulationAPI, ToolSettings
)


@pytest.fixture(scope="session")
def settings():
    return ToolSettings()


@pytest.fixture(scope="session")
def null_api(settings):
    return ExactNullAPI(settings)


@pytest.fixture(scope="session")
def alternative_api(settings):
    return AlternativeAPI(settings)


@pytest.fixture(scope="session")
def bias_api(settings, null_api):
    return BiasAPI(settings, null_api)


@pytest.fixture(scope="session")
def simulation_api(settings, null_api):
    return SimulationAPI(settings, null_api)


@pytest.fixture(scope="session")
def runner():
    register_commands()
    return CliRunner()
