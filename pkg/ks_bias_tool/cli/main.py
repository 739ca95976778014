"""
雙樣本 KS 檢定有限樣本性質命令列工具

提供精確 p 值、α 階梯、最偏誤對立分布、拒絕機率、檢定力模擬與自我驗證等子命令。
結果輸出到 stdout，日誌與錯誤訊息輸出到 stderr。
"""
import functools
import json
from enum import Enum
from typing import Any, Dict, Optional

import pandas as pd
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ks_bias_tool import __version__
from ks_bias_tool.core import ToolSettings
from ks_bias_tool.core.alternatives import most_biased_exponent
from ks_bias_tool.core.errors import DomainError, KSToolError, QuadratureError
from ks_bias_tool.core.exact_null import to_fraction
from ks_bias_tool.models.alternative import Alternative, DegenerateAlternative, OddsPowerCdf
from ks_bias_tool.models.output import OutputRecord
from ks_bias_tool.utils import setup_logger

# 初始化日誌
logger = setup_logger()

# 初始化 Typer 應用
app = typer.Typer(
    name="ks-bias",
    help="雙樣本 Kolmogorov-Smirnov 檢定的精確分布、偏誤分析與檢定力模擬工具",
    add_completion=False,
)

# 初始化 Rich 控制台
console = Console()

# 全局選項
state: Dict[str, Any] = {"digits": 6, "workers": 1}


class OutputFormat(str, Enum):
    table = "table"
    json = "json"
    csv = "csv"


FORMAT_OPTION = typer.Option(
    OutputFormat.table, "--format", "-f", help="輸出格式: table, json, csv"
)


def version_callback(value: bool):
    """返回版本信息的回調函數"""
    if value:
        console.print(f"ks-bias 命令列工具 v{__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False, "--version", "-v", help="顯示版本信息", callback=version_callback, is_eager=True
    ),
    digits: int = typer.Option(6, "--digits", help="有理數十進位輸出的有效位數"),
    workers: int = typer.Option(1, "--workers", help="平行工作執行緒數（不影響結果）"),
    verbose: bool = typer.Option(False, "--verbose", help="顯示詳細日誌信息"),
):
    """雙樣本 KS 檢定有限樣本性質工具

    精確虛無分布、離散顯著水準、最偏誤對立分布、拒絕機率積分與蒙地卡羅檢定力。
    """
    state["digits"] = digits
    state["workers"] = workers
    # 設置日誌級別
    if verbose:
        setup_logger(level="DEBUG")
        logger.debug("啟用詳細日誌")


def settings_with(**overrides: Any) -> ToolSettings:
    """以全局選項與命令參數建立設定

    Raises:
        DomainError: 參數不符合設定的限制（如 tol ≤ 0）
    """
    try:
        return ToolSettings(digits=state["digits"], workers=state["workers"], **overrides)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        raise DomainError(f"無效的設定 {field}: {error['msg']}") from e


class SideChoice(str, Enum):
    two_sided = "two-sided"
    x_above_y = "x-above-y"
    y_above_x = "y-above-x"


class LimitKind(str, Enum):
    two_point = "two-point-0-1"
    point_mass = "point-mass-half"


THETA_OPTION = typer.Option(
    None, "--theta", help="odds-power 指數 θ（如 9/8 或 1.5）；未指定時使用該 rank 的最偏誤分布"
)
LIMIT_OPTION = typer.Option(None, "--limit", help="改用離散極限分布: two-point-0-1, point-mass-half")


def resolve_alternative(
    n: int, m: int, rank: int, theta: Optional[str], limit: Optional[LimitKind]
) -> Alternative:
    """由 --theta / --limit 選項決定對立分布

    Raises:
        DomainError: 同時指定兩者、θ 無法解析或 θ ≤ 0
    """
    if theta is not None and limit is not None:
        raise DomainError("--theta 與 --limit 只能擇一")
    if limit is not None:
        return DegenerateAlternative(kind=limit.value)
    if theta is None:
        return most_biased_exponent(n, m, rank)
    value = to_fraction(theta)
    if value <= 0:
        raise DomainError(f"θ 必須為正數，收到 {theta}")
    return OddsPowerCdf(theta=value)


def describe_alternative(alternative: Alternative) -> Dict[str, Any]:
    """對立分布的輸出欄位；離散極限的 theta 為 None"""
    theta = alternative.theta if isinstance(alternative, OddsPowerCdf) else None
    return {"alternative": alternative.describe(), "theta": theta}


def provenance(settings: ToolSettings, **extra: Any) -> Dict[str, Any]:
    """輸出記錄中的計算條件"""
    return {"tool": "ks-bias", "version": __version__, "digits": settings.digits, **extra}


def _cell(value: Any) -> str:
    if isinstance(value, dict) and set(value) == {"fraction", "decimal"}:
        if value["fraction"] == value["decimal"]:
            return escape(value["fraction"])
        return escape(f"{value['fraction']} ≈ {value['decimal']}")
    if isinstance(value, list):
        return escape("[" + ", ".join(_cell(v) for v in value) + "]")
    if isinstance(value, float):
        return f"{value:.{state['digits']}g}"
    if isinstance(value, dict):
        return escape(json.dumps(value, ensure_ascii=False))
    return escape(str(value))


def format_output(
    record: OutputRecord,
    format_type: OutputFormat = OutputFormat.table,
    table_title: Optional[str] = None,
    rows_key: Optional[str] = None,
):
    """格式化輸出結果

    Args:
        record: 輸出記錄
        format_type: 輸出格式（table、json 或 csv）
        table_title: 表格標題（僅在 format_type 為 table 時有效）
        rows_key: results 中逐列資料的鍵；CSV 只輸出這些列
    """
    data = record.rendered(state["digits"])
    results = data["results"]
    rows = results.get(rows_key) if rows_key else None

    if format_type == OutputFormat.json:
        typer.echo(json.dumps(data, ensure_ascii=False, indent=2))
        return

    if format_type == OutputFormat.csv:
        # 有理數欄位展開為 <name>.fraction 與 <name>.decimal 兩欄
        frame = pd.json_normalize(rows if rows is not None else results)
        typer.echo(frame.to_csv(index=False), nl=False)
        return

    # 預設以表格形式輸出
    if rows:
        table = Table(title=table_title)
        for key in rows[0].keys():
            table.add_column(key)
        for row in rows:
            table.add_row(*[_cell(value) for value in row.values()])
        console.print(table)

    summary = {key: value for key, value in results.items() if key != rows_key}
    if summary:
        table = Table(title=None if rows else table_title)
        table.add_column("屬性")
        table.add_column("值")
        for key, value in summary.items():
            table.add_row(escape(key), _cell(value))
        console.print(table)

    parameters = ", ".join(f"{key}={_cell(value)}" for key, value in data["parameters"].items())
    console.print(f"[dim]{escape(record.command)}({parameters})[/dim]")


def handle_tool_error(func):
    """處理工具錯誤的裝飾器

    錯誤以單行 `error[<種類>]: <訊息>` 輸出到 stderr，結束碼依錯誤種類而定。
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except QuadratureError as e:
            logger.error(f"積分失敗: {e.message}")
            typer.echo(
                f"error[{e.kind}]: {e.message} (best_estimate={e.best_estimate!r}, "
                f"error_estimate={e.error_estimate!r})",
                err=True,
            )
            raise typer.Exit(code=e.exit_code)
        except KSToolError as e:
            typer.echo(f"error[{e.kind}]: {e.message}", err=True)
            raise typer.Exit(code=e.exit_code)
        except Exception as e:
            logger.exception("執行時發生未預期錯誤")
            typer.echo(f"error[internal]: {e}", err=True)
            raise typer.Exit(code=1)

    return wrapper


def register_commands():
    """註冊所有子命令"""
    from ks_bias_tool.cli import bias, simulation, statistic, verify  # noqa: F401


# 為了與 pyproject.toml 中的設定相符，命令列入口點需命名為 cli
def cli():
    """命令列入口點"""
    register_commands()
    app()


if __name__ == "__main__":
    cli()
