"""
自我驗證套件測試
"""
import pytest

from ks_bias_tool.core import VerificationAPI
from ks_bias_tool.models.verification import CheckResult, VerificationReport


@pytest.fixture(scope="module")
def verification_api(settings):
    return VerificationAPI(settings)


def assert_all_passed(checks):
    failures = [(check.name, check.detail) for check in checks if not check.passed]
    assert not failures


class TestCheckGroups:
    def test_oracle(self, verification_api):
        checks = verification_api.check_oracle()
        assert [check.name for check in checks] == ["null-dp-vs-enumeration", "uniform-rejection-vs-dp-tail"]
        assert_all_passed(checks)

    def test_known_values(self, verification_api):
        assert_all_passed(verification_api.check_known_values())

    def test_rank1_bias(self, verification_api):
        assert_all_passed(verification_api.check_rank1_bias())

    def test_rank2_boundary(self, verification_api):
        assert_all_passed(verification_api.check_rank2_boundary())

    def test_degenerate_limits(self, verification_api):
        assert_all_passed(verification_api.check_degenerate_limits())

    def test_non_nesting(self, verification_api):
        checks = verification_api.check_non_nesting()
        assert len(checks) == 2
        assert_all_passed(checks)

    def test_simulation_small(self, verification_api):
        assert_all_passed(verification_api.check_simulation(replicates=20000, seed=1))


class TestReport:
    def test_failures(self):
        report = VerificationReport(
            checks=[CheckResult(name="a", passed=True), CheckResult(name="b", passed=False, detail="x")],
            replicates=10,
            seed=0,
        )
        assert not report.passed
        assert [check.name for check in report.failures] == ["b"]
        assert report.model_dump()["passed"] is False

    @pytest.mark.slow
    def test_full_run(self, verification_api):
        report = verification_api.run()
        assert report.passed, report.failures
        assert report.replicates == 100_000
