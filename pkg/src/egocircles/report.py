"""Deterministic CSV/JSON emitters for the analysis tables.

CSV files use ``,`` separators, ``.`` decimals and LF line endings; JSON is
written with sorted keys.  Missing values are empty CSV cells / JSON nulls.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

from egocircles.dynamics import CorrespondenceMatrix, TurnoverReport
from egocircles.hashtags import GrowthSeries, LayerHashtagRow
from egocircles.model import N_RINGS, OUT, ring_label
from egocircles.regression import GROUPS, RING_COLUMNS, Table3Report
from egocircles.static import PopulationSummary, UsageStats, scaling_ratios

FLOAT_DIGITS = 6
PCT_DIGITS = 2


def _cell(value: Any, digits: int = FLOAT_DIGITS) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{digits}f}"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_table(rows: Sequence[dict], columns: Sequence[str], path: Path, fmt: str = "csv",
                pct_columns: Iterable[str] = ()) -> Path:
    """Write ``rows`` to ``path`` (suffix chosen from ``fmt``) and return the path written."""
    pct_columns = set(pct_columns)
    path = Path(path).with_suffix("." + fmt)
    if fmt == "json":
        data = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(data, fh, indent=2, sort_keys=True, ensure_ascii=False)
            fh.write("\n")
        return path
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c), PCT_DIGITS if c in pct_columns else FLOAT_DIGITS) for c in columns])
    return path


# --- row builders -------------------------------------------------------------

USAGE_COLUMNS = ("sample", "ego_id", "pct_social", "pct_reply", "pct_mention", "pct_retweet", "fs_ratio",
                 "tweet_freq")
USAGE_PCT = ("pct_social", "pct_reply", "pct_mention", "pct_retweet")


def usage_rows(sample: str, stats: Iterable[UsageStats]) -> list[dict]:
    return [{"sample": sample, **s.to_dict()} for s in stats]


CIRCLE_COLUMNS = ("sample", "ego_id", "channel", "k_used", *(f"C{i}" for i in range(1, N_RINGS + 1)),
                  *(f"ratio_{i}" for i in range(1, N_RINGS)))


def circle_rows(sample: str, networks) -> list[dict]:
    rows = []
    for net in networks:
        row = {"sample": sample, "ego_id": net.ego_id, "channel": net.channel.value, "k_used": net.k_used}
        sizes, total = [], 0
        for n in net.ring_sizes():
            total += n
            sizes.append(total)
        for i, s in enumerate(sizes, start=1):
            row[f"C{i}"] = s
        for i, r in enumerate(scaling_ratios(sizes), start=1):
            row[f"ratio_{i}"] = r
        rows.append(row)
    return rows


POPULATION_COLUMNS = ("sample", "statistic", "n", "mean", "sd", "ci_half_width", "c_index")


def population_rows(sample: str, summary: PopulationSummary) -> list[dict]:
    return [{"sample": sample, "statistic": s.name, "n": s.n, "mean": s.mean, "sd": s.sd,
             "ci_half_width": s.half_width, "c_index": s.c_index} for s in summary.rows()]


TURNOVER_COLUMNS = ("sample", "aggregation", "ring", "jaccard", "jaccard_n", "exit_jumps", "exit_normalized",
                    "exit_n", "entry_jumps", "entry_normalized", "entry_n", "pooled_jumps", "pooled_normalized",
                    "pooled_n")


def turnover_rows(sample: str, report: TurnoverReport) -> list[dict]:
    rows = []
    for r in report.rings:
        row = {k: getattr(r, k) for k in TURNOVER_COLUMNS if hasattr(r, k)}
        row.update(sample=sample, aggregation=report.aggregation, ring=ring_label(r.ring))
        rows.append(row)
    return rows


LAYER_NAMES = tuple(ring_label(p) for p in (*range(1, N_RINGS + 1), OUT))
CORRESPONDENCE_COLUMNS = ("sample", "static_ring", *LAYER_NAMES, "n", "empty")


def correspondence_rows(sample: str, cm: CorrespondenceMatrix) -> list[dict]:
    rows = []
    for i in range(N_RINGS):
        row = {"sample": sample, "static_ring": ring_label(i + 1), "n": cm.counts[i], "empty": cm.empty_rows[i]}
        row.update({name: float(cm.matrix[i, j]) for j, name in enumerate(LAYER_NAMES)})
        rows.append(row)
    return rows


HASHTAG_COLUMNS = ("sample", "ring", "group", "n_ties", "pct", "mean_freq", "mean_d_rel", "mean_u_rel")


def hashtag_rows(rows: Iterable[LayerHashtagRow]) -> list[dict]:
    return [{c: getattr(r, c) for c in HASHTAG_COLUMNS} for r in rows]


GROWTH_COLUMNS = ("sample", "ego_id", "months", "mean_new_alters", "mean_new_hashtags")


def growth_rows(sample: str, series: Sequence[GrowthSeries]) -> list[dict]:
    rows = [{"sample": sample, "ego_id": g.ego_id, "months": len(g.new_alters),
             "mean_new_alters": g.mean_new_alters, "mean_new_hashtags": g.mean_new_hashtags} for g in series]
    if series:
        rows.append({"sample": sample, "ego_id": "MEAN", "months": None,
                     "mean_new_alters": math.fsum(g.mean_new_alters for g in series) / len(series),
                     "mean_new_hashtags": math.fsum(g.mean_new_hashtags for g in series) / len(series)})
    return rows


TABLE3_COLUMNS = ("sample", "group", *RING_COLUMNS)


def table3_rows(report: Table3Report) -> list[dict]:
    rows = []
    for group in GROUPS:
        for sample in report.samples:
            row = {"sample": sample, "group": group}
            row.update({col: report.r_squared(sample, group, col) for col in RING_COLUMNS})
            rows.append(row)
    return rows


SIGN_COLUMNS = ("sample", "group", "ring", "n", "predictor", "coefficient", "sign")


def sign_rows(report: Table3Report) -> list[dict]:
    rows = []
    for group in GROUPS:
        for sample in report.samples:
            for col in RING_COLUMNS:
                m = report.cells.get((sample, group, col))
                if m is None:
                    continue
                for p, c in zip(m.predictors, m.coefficients):
                    rows.append({"sample": sample, "group": group, "ring": col, "n": m.n, "predictor": p,
                                 "coefficient": c, "sign": "+" if c > 0 else "-" if c < 0 else "0"})
    return rows
