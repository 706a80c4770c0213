"""
Reporting utilities: tables, spreadsheet export and charts for fuzz and bench results.
"""

import logging
from pathlib import Path

import pandas as pd
import plotly.express as px

logger = logging.getLogger(__name__)

CHART_THEME = {
    'paper_bgcolor': 'rgba(0,0,0,0)',
    'plot_bgcolor': 'rgba(0,0,0,0)',
    'font': {'color': '#a0a0a0'},
    'xaxis': {'gridcolor': 'rgba(255,255,255,0.1)'},
    'yaxis': {'gridcolor': 'rgba(255,255,255,0.1)'},
}
REPORT_FORMATS = ("csv", "xlsx")


def convert_df(df):
    """The frame as CSV text without index."""
    return df.to_csv(index=False)


def write_table(df: pd.DataFrame, path, fmt: str = "csv") -> Path:
    """Write `df` as CSV or as an Excel sheet (openpyxl)."""
    path = Path(path)
    if fmt == "csv":
        df.to_csv(path, index=False)
    elif fmt == "xlsx":
        df.to_excel(path, index=False, engine="openpyxl", sheet_name="results")
    else:
        raise ValueError(f"unknown report format {fmt!r}; choose one of {', '.join(REPORT_FORMATS)}")
    logger.info("wrote %d rows to %s", len(df), path)
    return path


def steps_chart(summary: pd.DataFrame):
    """Bar chart of mean steps per calculus and rule set, one bar group per strategy."""
    frame = summary.assign(system=summary["calculus"] + " / " + summary["ruleset"])
    fig = px.bar(
        frame,
        x="system",
        y="mean_steps",
        color="strategy",
        barmode="group",
        labels={"system": "Calculus / rule set", "mean_steps": "Mean steps"},
    )
    fig.update_layout(**CHART_THEME, height=400, xaxis_tickangle=-45)
    return fig


def write_chart(fig, path) -> Path:
    """HTML via plotly itself; image formats through kaleido."""
    path = Path(path)
    if path.suffix.lower() in (".html", ".htm"):
        fig.write_html(str(path))
    else:
        fig.write_image(str(path))
    logger.info("wrote chart to %s", path)
    return path


def format_summary(summary: pd.DataFrame) -> str:
    if summary.empty:
        return "(no results)"
    return summary.to_string(index=False)
