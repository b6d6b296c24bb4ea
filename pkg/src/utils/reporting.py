"""CSV and JSON emitters for price reports and convergence tables."""
import json
from pathlib import Path
from typing import Iterable, List

import pandas as pd
import structlog

logger = structlog.get_logger(__name__)

# Convergence-table schema, column order is part of the output contract
CSV_COLUMNS: List[str] = ["method", "N", "N_eval", "estimate", "relative_error", "wall_time_s"]


def convergence_frame(rows: Iterable[dict]) -> pd.DataFrame:
    """Convergence rows as a DataFrame with the fixed column order"""
    frame = pd.DataFrame(list(rows), columns=CSV_COLUMNS)
    return frame.astype({"N": "Int64", "N_eval": "Int64"})


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info("csv_written", path=str(path), rows=len(frame))
    return path


def write_json(payload, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, default=str))
    logger.info("json_written", path=str(path))
    return path
