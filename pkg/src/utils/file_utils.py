import json
import os
from datetime import datetime, timedelta

import numpy as np
import pandas as pd

from src.utils.logger import setup_logging  # Import the logger setup function

# Instantiate the logger
logger = setup_logging("file_utils")

FLOAT_FORMAT = "%.12g"


def delete_old_csv_files(directory: str, days: int):
    """
    Deletes CSV files in the specified directory that are older than the given
    number of days.

    :param directory: Directory containing the CSV files.
    :param days: Number of days to keep files.
        Files older than this will be deleted.
    """
    cutoff_time = datetime.now() - timedelta(days=days)

    if not os.path.exists(directory):
        logger.warning(
            f"⚠️ Directory {directory} does not exist. Skipping deletion."
        )
        return

    for file_name in os.listdir(directory):
        file_path = os.path.join(directory, file_name)
        if file_name.endswith(".csv") and os.path.isfile(file_path):
            file_mod_time = datetime.fromtimestamp(os.path.getmtime(file_path))
            if file_mod_time < cutoff_time:
                try:
                    os.remove(file_path)
                    logger.info(f"🗑️ Deleted old file: {file_path}")
                except OSError as e:
                    logger.error(f"❌ Failed to delete file {file_path}: {e}")


def _ensure_parent(file_path: str):
    parent = os.path.dirname(file_path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def _jsonable(value):
    """Round floats to 12 significant digits and unwrap numpy scalars."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return float(FLOAT_FORMAT % value) if np.isfinite(value) else None
    return value


def write_json_report(payload: dict, file_path: str | None) -> str:
    """
    Serialize a report dictionary as JSON.

    :param payload: JSON-compatible dictionary.
    :param file_path: Target file, or None to only return the text.
    :return: The JSON text that was written.
    """
    text = json.dumps(_jsonable(payload), indent=2, ensure_ascii=False)
    if file_path:
        _ensure_parent(file_path)
        with open(file_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        logger.info(f"📁 Report saved to {file_path}")
    return text


def write_csv_report(df: pd.DataFrame, file_path: str | None) -> str:
    """
    Write a DataFrame as CSV with 12 significant digits for floats.

    :param df: Report frame.
    :param file_path: Target file, or None to only return the text.
    :return: The CSV text.
    """
    text = df.to_csv(index=False, float_format=FLOAT_FORMAT,
                     lineterminator="\n")
    if file_path:
        _ensure_parent(file_path)
        with open(file_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"📁 Data saved to {file_path} ({len(df)} rows)")
    return text
