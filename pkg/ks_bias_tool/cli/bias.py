"""
偏誤分析相關命令模組

提供 biased-alt、reject-prob、bias-verdict、scan、non-nesting、figure1 等子命令。
"""
from typing import List, Optional

import numpy as np
import typer

from ks_bias_tool.cli.main import (
    FORMAT_OPTION, LIMIT_OPTION, THETA_OPTION, LimitKind, OutputFormat, SideChoice, app,
    describe_alternative, format_output, handle_tool_error, provenance, resolve_alternative,
    settings_with
)
from ks_bias_tool.core import AlternativeAPI, BiasAPI
from ks_bias_tool.core.alternatives import FIGURE_MS, FIGURE_N
from ks_bias_tool.core.bias import stationarity_exponents
from ks_bias_tool.core.errors import DomainError
from ks_bias_tool.models.output import OutputRecord

RANK_OPTION = typer.Option(1, "--rank", "-r", help="顯著水準階數 1, 2, 3")
TOL_OPTION = typer.Option(1e-12, "--tol", help="積分絕對容許誤差")


@app.command("biased-alt")
@handle_tool_error
def biased_alternative(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    rank: int = RANK_OPTION,
    format: OutputFormat = FORMAT_OPTION,
):
    """第 rank 階顯著水準下最偏誤的 odds-power 指數 θ"""
    settings = settings_with()
    alternative = AlternativeAPI(settings).most_biased_exponent(n, m, rank)
    y_power, x_power = stationarity_exponents(n, m, rank)
    record = OutputRecord(
        command="biased-alt",
        parameters={"n": n, "m": m, "rank": rank},
        results={
            **describe_alternative(alternative),
            "stationarity_y_exponent": y_power,
            "stationarity_x_exponent": x_power,
        },
        provenance=provenance(settings),
    )
    format_output(record, format, f"最偏誤對立分布 (n={n}, m={m}, rank={rank})")


@app.command("reject-prob")
@handle_tool_error
def rejection_probability(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    rank: int = RANK_OPTION,
    theta: Optional[str] = THETA_OPTION,
    limit: Optional[LimitKind] = LIMIT_OPTION,
    side: SideChoice = typer.Option(SideChoice.two_sided, "--side", help="two-sided, x-above-y, y-above-x"),
    tol: float = TOL_OPTION,
    format: OutputFormat = FORMAT_OPTION,
):
    """x ~ 均勻、y ~ G 時 P(D ≥ 第 rank 階門檻)，附 G 為均勻時的精確值"""
    settings = settings_with(quad_tol=tol)
    api = BiasAPI(settings)
    alternative = resolve_alternative(n, m, rank, theta, limit)
    probability = api.rejection_probability(n, m, alternative, rank, side.value)
    record = OutputRecord(
        command="reject-prob",
        parameters={"n": n, "m": m, "rank": rank, "side": side.value, **describe_alternative(alternative)},
        results={
            "probability": probability.value,
            "quadrature_error": probability.quadrature_error,
            "exact": probability.exact,
            "uniform_probability": api.exact_uniform_probability(n, m, rank, side.value),
        },
        provenance=provenance(settings, quad_tol=settings.quad_tol, quad_order=settings.quad_order),
    )
    format_output(record, format, f"拒絕機率 (n={n}, m={m}, rank={rank})")


@app.command("bias-verdict")
@handle_tool_error
def bias_verdict(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    rank: int = RANK_OPTION,
    theta: Optional[str] = THETA_OPTION,
    limit: Optional[LimitKind] = LIMIT_OPTION,
    tol: float = TOL_OPTION,
    margin_factor: float = typer.Option(10.0, "--margin-factor", help="判定邊際 = 倍數 x 積分誤差估計"),
    format: OutputFormat = FORMAT_OPTION,
):
    """判定檢定在第 rank 階顯著水準下是否對 G 有偏誤"""
    settings = settings_with(quad_tol=tol, margin_factor=margin_factor)
    alternative = resolve_alternative(n, m, rank, theta, limit)
    verdict = BiasAPI(settings).bias_verdict(n, m, rank, alternative)
    record = OutputRecord(
        command="bias-verdict",
        parameters={"n": n, "m": m, "rank": rank, **describe_alternative(alternative)},
        results={
            "verdict": verdict.verdict,
            "level": verdict.level,
            "power_at_level": verdict.power_at_level,
            "margin": verdict.margin,
        },
        provenance=provenance(settings, quad_tol=settings.quad_tol, margin_factor=settings.margin_factor),
    )
    format_output(record, format, f"偏誤判定 (n={n}, m={m}, rank={rank})")


@app.command("scan")
@handle_tool_error
def exponent_scan(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    rank: int = RANK_OPTION,
    theta_min: float = typer.Option(0.5, "--theta-min", help="θ 網格下限"),
    theta_max: float = typer.Option(2.0, "--theta-max", help="θ 網格上限"),
    points: int = typer.Option(41, "--points", help="θ 網格點數"),
    tol: float = TOL_OPTION,
    format: OutputFormat = FORMAT_OPTION,
):
    """在等距 θ 網格上計算拒絕機率並找出最小值

    CSV 欄位: theta, probability, quadrature_error
    """
    if points < 2 or not theta_min < theta_max:
        raise DomainError("需要 points ≥ 2 且 theta-min < theta-max")
    settings = settings_with(quad_tol=tol)
    grid = np.linspace(theta_min, theta_max, points)
    scan = BiasAPI(settings).exponent_scan(n, m, rank, grid)
    rows = [
        {
            "theta": point.theta,
            "probability": point.probability.value,
            "quadrature_error": point.probability.quadrature_error,
        }
        for point in scan.points
    ]
    record = OutputRecord(
        command="scan",
        parameters={
            "n": n, "m": m, "rank": rank, "theta_min": theta_min, "theta_max": theta_max, "points": points,
        },
        results={"argmin_theta": scan.argmin_theta, "predicted_theta": scan.predicted_theta, "rows": rows},
        provenance=provenance(settings, quad_tol=settings.quad_tol, workers=settings.workers),
    )
    format_output(record, format, f"θ 掃描 (n={n}, m={m}, rank={rank})", rows_key="rows")


@app.command("non-nesting")
@handle_tool_error
def non_nesting(
    tol: float = TOL_OPTION,
    format: OutputFormat = FORMAT_OPTION,
):
    """偏誤集合在 α₁ 與 α₂ 之間互不包含的兩個見證"""
    settings = settings_with(quad_tol=tol)
    witnesses = BiasAPI(settings).bias_sets_non_nesting()
    rows = [
        {
            "n": witness.n,
            "m": witness.m,
            "alternative": witness.alternative.describe(),
            "verdict_alpha1": witness.lower_level.verdict,
            "verdict_alpha2": witness.higher_level.verdict,
        }
        for witness in witnesses
    ]
    record = OutputRecord(
        command="non-nesting",
        parameters={},
        results={"rows": rows},
        provenance=provenance(settings, quad_tol=settings.quad_tol),
    )
    format_output(record, format, "偏誤集合不具包含關係", rows_key="rows")


@app.command("figure1")
@handle_tool_error
def figure_curves(
    n: int = typer.Option(FIGURE_N, "--n", help="第一組樣本大小"),
    ms: List[int] = typer.Option(list(FIGURE_MS), "--m", help="第二組樣本大小（可重複指定）"),
    points: int = typer.Option(101, "--points", help="x 網格點數"),
    format: OutputFormat = FORMAT_OPTION,
):
    """rank 1 最偏誤分布函數 G 的作圖資料（只輸出資料，不繪圖）

    CSV 欄位: m, theta.fraction, theta.decimal, x, G
    """
    settings = settings_with()
    curves = AlternativeAPI(settings).figure_curves(n, ms, points)
    rows = [
        {"m": curve.m, "theta": curve.theta, "x": x, "G": g}
        for curve in curves
        for x, g in zip(curve.x, curve.g)
    ]
    record = OutputRecord(
        command="figure1",
        parameters={"n": n, "m": list(ms), "points": points},
        results={"rows": rows},
        provenance=provenance(settings),
    )
    format_output(record, format, f"最偏誤分布函數 (n={n})", rows_key="rows")


if __name__ == "__main__":
    app()
