"""File handling service: CSV input, JSON / JSONL / CSV output"""
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import numpy as np
import pandas as pd

from core.dataset import Dataset
from core.exceptions import ContractError
from utils.logger import get_logger

logger = get_logger("services.dataset_io")


def ensure_directory(path: Path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def read_dataset_csv(path, response: str, columns: Optional[Iterable[str]] = None) -> Dataset:
    """
    Read a comma-separated file with a header row into a Dataset.

    The response column becomes y and every other column (or only
    ``columns``) becomes a covariate. Cells must be non-empty numbers.

    Raises:
        FileNotFoundError: the file does not exist
        ContractError: missing response column, empty or non-numeric cell
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"input file not found: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        raise ContractError(f"{path} has no header row") from e
    except pd.errors.ParserError as e:
        raise ContractError(f"{path} is not a valid CSV file: {e}") from e

    if response not in frame.columns:
        raise ContractError(f"response column '{response}' not found; columns are {list(frame.columns)}")
    covariates = [c for c in (columns or frame.columns) if c != response]
    if not covariates:
        raise ContractError("no covariate columns")

    numeric = {}
    for name in [response, *covariates]:
        raw = frame[name].str.strip()
        empty = np.flatnonzero(raw.eq("").to_numpy())
        if empty.size:
            raise ContractError(f"empty cell at row {empty[0] + 1}, column '{name}'")
        values = pd.to_numeric(raw, errors="coerce")
        bad = np.flatnonzero(values.isna().to_numpy())
        if bad.size:
            row = int(bad[0])
            raise ContractError(f"non-numeric value '{raw.iloc[row]}' at row {row + 1}, column '{name}'")
        numeric[name] = values.to_numpy(dtype=float)

    logger.info("Read %d rows, %d covariates from %s", len(frame), len(covariates), path)
    X = np.column_stack([numeric[c] for c in covariates])
    return Dataset(y=numeric[response], X=X)


def covariate_names(path, response: str) -> list:
    header = pd.read_csv(path, nrows=0, encoding="utf-8").columns
    return [c for c in header if c != response]


def write_json(path, document: Dict[str, Any]) -> Path:
    """JSON document; floats use the shortest repr that round-trips exactly"""
    path = Path(path)
    ensure_directory(path.parent)
    path.write_text(json.dumps(document, indent=2, allow_nan=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_jsonl(path, rows: Iterable[Dict[str, Any]]) -> Path:
    path = Path(path)
    ensure_directory(path.parent)
    with path.open("w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row) + "\n")
    logger.info(f"Wrote {path}")
    return path


def write_frame_csv(path, frame: pd.DataFrame) -> Path:
    path = Path(path)
    ensure_directory(path.parent)
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Wrote {path}")
    return path
