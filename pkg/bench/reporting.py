"""Benchmark output files"""
from pathlib import Path
from typing import Iterable, List

import pandas as pd

from services.dataset_io import write_frame_csv, write_jsonl
from .records import BenchAggregate, BenchRecord, RuntimeRow

AGGREGATE_COLUMNS = list(BenchAggregate.model_fields)
RUNTIME_COLUMNS = list(RuntimeRow.model_fields)


def aggregate_frame(aggregates: Iterable[BenchAggregate]) -> pd.DataFrame:
    return pd.DataFrame([a.model_dump() for a in aggregates], columns=AGGREGATE_COLUMNS)


def runtime_frame(rows: Iterable[RuntimeRow]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in rows], columns=RUNTIME_COLUMNS)


def write_aggregate_csv(path: Path, aggregates: Iterable[BenchAggregate]) -> Path:
    """Columns: scenario, method, error_law, n, p, ME_mean, ME_se, TP_mean, FP_mean, runtime_mean, replications, excluded"""
    return write_frame_csv(path, aggregate_frame(aggregates))


def write_records_jsonl(path: Path, records: List[BenchRecord]) -> Path:
    return write_jsonl(path, (r.model_dump() for r in records))


def write_runtime_csv(path: Path, rows: Iterable[RuntimeRow]) -> Path:
    return write_frame_csv(path, runtime_frame(rows))
