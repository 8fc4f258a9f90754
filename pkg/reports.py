"""Tabular output for search results and verification reports."""
from __future__ import annotations

import logging
from io import BytesIO, StringIO
from pathlib import Path

import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


def frame_to_csv(df: pd.DataFrame) -> str:
    buffer = StringIO()
    df.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def frame_to_xlsx(df: pd.DataFrame, sheet_name: str = "results") -> bytes:
    buffer = BytesIO()
    df.to_excel(buffer, index=False, sheet_name=sheet_name[:31], engine="openpyxl")
    buffer.seek(0)
    return buffer.read()


def export_xlsx(df: pd.DataFrame, path: str | Path, sheet_name: str = "results") -> Path:
    path = Path(path)
    if df.empty:
        logger.warning("writing an empty table to %s", path)
    path.write_bytes(frame_to_xlsx(df, sheet_name))
    logger.info("wrote %d rows to %s", len(df), path)
    return path
