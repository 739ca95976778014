"""
統計量與精確虛無分布相關命令模組

提供 stat、pvalue、null-dist、alpha-ladder、threshold 等子命令。
"""
import logging
from pathlib import Path

import typer

from ks_bias_tool.cli.main import (
    FORMAT_OPTION, OutputFormat, SideChoice, app, format_output, handle_tool_error, provenance,
    settings_with
)
from ks_bias_tool.core import ExactNullAPI
from ks_bias_tool.core.exact_null import to_fraction
from ks_bias_tool.core.statistic import (
    detect_cross_sample_ties, load_sample_file, one_sided_d, two_sided_d
)
from ks_bias_tool.models.output import OutputRecord

logger = logging.getLogger(__name__)


@app.command("stat")
@handle_tool_error
def compute_statistic(
    x_file: Path = typer.Argument(..., help="第一組樣本資料檔（每行一個數值）"),
    y_file: Path = typer.Argument(..., help="第二組樣本資料檔（每行一個數值）"),
    side: SideChoice = typer.Option(
        SideChoice.two_sided, "--side", help="two-sided, x-above-y (sup(G-F)), y-above-x (sup(F-G))"
    ),
    format: OutputFormat = FORMAT_OPTION,
):
    """由兩個資料檔計算 KS 統計量；雙尾時附精確 p 值"""
    settings = settings_with()
    x = load_sample_file(x_file)
    y = load_sample_file(y_file)
    ties = detect_cross_sample_ties(x, y)
    if ties:
        logger.warning("兩組樣本有相同數值，精確 p 值假設連續分布（無跨組重複值）")

    if side == SideChoice.two_sided:
        statistic = two_sided_d(x, y)
    else:
        statistic = one_sided_d(x, y, side.value)  # type: ignore[arg-type]

    results = {
        "n": x.size,
        "m": y.size,
        "statistic": statistic.value,
        "numerator": statistic.numerator,
        "cross_sample_ties": ties,
    }
    if side == SideChoice.two_sided:
        limit = settings.max_sample_size
        if max(x.size, y.size) <= limit:
            results["p_value"] = ExactNullAPI(settings).p_value(x.size, y.size, statistic)
        else:
            logger.warning(f"樣本大小超過精確 p 值上限 {limit}（n={x.size}, m={y.size}），只輸出統計量")
            results["p_value"] = None

    record = OutputRecord(
        command="stat",
        parameters={"x_file": str(x_file), "y_file": str(y_file), "side": side.value},
        results=results,
        provenance=provenance(settings),
    )
    format_output(record, format, "KS 統計量")


@app.command("pvalue")
@handle_tool_error
def p_value(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    d: str = typer.Option(..., "--d", help="觀測統計量（如 0.26 或 13/50）"),
    format: OutputFormat = FORMAT_OPTION,
):
    """精確 p 值 P(D_{n,m} ≥ d)"""
    settings = settings_with()
    statistic = to_fraction(d)
    p = ExactNullAPI(settings).p_value(n, m, statistic)
    record = OutputRecord(
        command="pvalue",
        parameters={"n": n, "m": m, "d": statistic},
        results={"p_value": p},
        provenance=provenance(settings),
    )
    format_output(record, format, f"精確 p 值 (n={n}, m={m})")


@app.command("null-dist")
@handle_tool_error
def null_distribution(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    format: OutputFormat = FORMAT_OPTION,
):
    """H 下 D_{n,m} 的完整精確分布

    CSV 欄位: numerator, d.fraction, d.decimal, count,
    probability.fraction, probability.decimal, tail.fraction, tail.decimal
    （tail 為 P(D ≥ d)）
    """
    settings = settings_with()
    distribution = ExactNullAPI(settings).null_distribution(n, m)
    rows = [
        {"numerator": k, "d": d, "count": c, "probability": p, "tail": t}
        for k, d, c, p, t in zip(
            distribution.numerators,
            distribution.support,
            distribution.counts,
            distribution.probabilities,
            distribution.tails(),
        )
    ]
    record = OutputRecord(
        command="null-dist",
        parameters={"n": n, "m": m},
        results={"total_paths": distribution.total, "rows": rows},
        provenance=provenance(settings),
    )
    format_output(record, format, f"D_{{{n},{m}}} 精確虛無分布", rows_key="rows")


@app.command("alpha-ladder")
@handle_tool_error
def alpha_ladder(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    format: OutputFormat = FORMAT_OPTION,
):
    """最小的三個可達顯著水準 α₁, α₂, α₃ 與拒絕門檻"""
    settings = settings_with()
    ladder = ExactNullAPI(settings).alpha_ladder(n, m)
    results = {
        "alpha1": ladder.alpha1,
        "threshold1": ladder.threshold1,
        "alpha2": ladder.alpha2,
        "threshold2": ladder.threshold2,
        "k": ladder.k,
        "alpha2_closed_form": ladder.alpha2_closed_form,
        "alpha2_identity_applies": ladder.alpha2_identity_applies,
        "alpha3_defined": ladder.alpha3_defined,
        "verified": ladder.verified,
    }
    if ladder.alpha3_defined:
        results.update({"alpha3": ladder.alpha3, "threshold3": ladder.threshold3, "k2": ladder.k2})
    record = OutputRecord(
        command="alpha-ladder",
        parameters={"n": n, "m": m},
        results=results,
        provenance=provenance(settings),
    )
    format_output(record, format, f"α 階梯 (n={n}, m={m})")


@app.command("threshold")
@handle_tool_error
def threshold_for_level(
    n: int = typer.Option(..., "--n", help="第一組樣本大小"),
    m: int = typer.Option(..., "--m", help="第二組樣本大小"),
    alpha: str = typer.Option("0.05", "--alpha", help="名目顯著水準"),
    format: OutputFormat = FORMAT_OPTION,
):
    """名目水準下的拒絕門檻、實際水準與共用同一門檻的 α 區間"""
    settings = settings_with()
    threshold = ExactNullAPI(settings).threshold_for_level(n, m, to_fraction(alpha))
    record = OutputRecord(
        command="threshold",
        parameters={"n": n, "m": m, "alpha": threshold.nominal_alpha},
        results={
            "threshold": threshold.threshold,
            "attained_level": threshold.attained_level,
            "never_rejects": threshold.never_rejects,
            "level_interval": list(threshold.level_interval),
        },
        provenance=provenance(settings),
    )
    format_output(record, format, f"拒絕門檻 (n={n}, m={m})")


if __name__ == "__main__":
    app()
