"""CSV/JSON renderings of exact tables and summaries."""
from __future__ import annotations

import csv
import io
import json

from .exact import ExactSummary, ExactTable, decimal_str, fraction_str

TABLE_COLUMNS = ["j", "eb", "eb_decimal", "el", "el_decimal", "db", "db_decimal", "dl", "dl_decimal"]


def table_records(t: ExactTable) -> list[dict]:
    """One record per block length ``j = 1..n+2``; lucky columns are empty at ``j = 1``."""
    out = []
    for row in t.rows():
        rec = {"j": row["j"]}
        for key in ("eb", "el", "db", "dl"):
            v = row[key]
            rec[key] = fraction_str(v) if v is not None else None
            rec[f"{key}_decimal"] = decimal_str(v) if v is not None else None
        out.append(rec)
    return out


def table_csv(t: ExactTable) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    w.writeheader()
    for rec in table_records(t):
        w.writerow({k: ("" if v is None else v) for k, v in rec.items()})
    return buf.getvalue()


def table_json(t: ExactTable) -> str:
    return json.dumps({"n": t.n, "rows": table_records(t)}, indent=2)


def summary_csv(summaries: list[ExactSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([
        "n", "expected_length", "expected_length_decimal", "expected_lucky", "expected_lucky_decimal",
        "expected_first_match", "expected_first_match_decimal", "asymptotic_length", "epsilon",
    ])
    for s in summaries:
        w.writerow([
            s.n,
            fraction_str(s.expected_length), decimal_str(s.expected_length),
            fraction_str(s.expected_lucky), decimal_str(s.expected_lucky),
            fraction_str(s.expected_first_match), decimal_str(s.expected_first_match),
            decimal_str(s.asymptotic_length), decimal_str(s.epsilon),
        ])
    return buf.getvalue()
