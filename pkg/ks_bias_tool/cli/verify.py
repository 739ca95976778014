"""
自我驗證命令模組
"""
import typer

from ks_bias_tool.cli.main import (
    FORMAT_OPTION, OutputFormat, app, format_output, handle_tool_error, provenance, settings_with
)
from ks_bias_tool.core import VerificationAPI
from ks_bias_tool.core.errors import VerificationError
from ks_bias_tool.models.output import OutputRecord


@app.command("verify")
@handle_tool_error
def verify(
    reps: int = typer.Option(100_000, "--reps", help="蒙地卡羅檢查的重複次數"),
    seed: int = typer.Option(1, "--seed", help="蒙地卡羅檢查的種子"),
    format: OutputFormat = FORMAT_OPTION,
):
    """執行列舉、積分與蒙地卡羅交叉驗證套件；有檢查未通過時結束碼為 6"""
    settings = settings_with()
    report = VerificationAPI(settings).run(reps, seed)
    rows = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks]
    record = OutputRecord(
        command="verify",
        parameters={"reps": reps, "seed": seed},
        results={"passed": report.passed, "rows": rows},
        provenance=provenance(settings, quad_tol=settings.quad_tol, replicates=reps, seed=seed),
    )
    format_output(record, format, "自我驗證", rows_key="rows")
    if not report.passed:
        names = ", ".join(check.name for check in report.failures)
        raise VerificationError(f"{len(report.failures)} 項檢查未通過: {names}")


if __name__ == "__main__":
    app()
