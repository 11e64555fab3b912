"""Export utilities for results.

JSON floats use Python's shortest round-trip repr, so every value reads back
bit-exact. CSV floats use 17 significant digits.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd

Exportable = Any  # any record with to_dict(); tables also have to_frame()


def _native(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _as_dict(result: Union[Exportable, Dict[str, Any]]) -> Dict[str, Any]:
    return result if isinstance(result, dict) else result.to_dict()


def dumps_json(result: Union[Exportable, Dict[str, Any]]) -> str:
    """Serialize a result record to indented JSON text."""
    return json.dumps(_as_dict(result), indent=2, default=_native, allow_nan=False)


def to_frame(result: Union[Exportable, Dict[str, Any]]) -> pd.DataFrame:
    """Tabular form: the record's own ``to_frame()`` or its flattened dict as one row."""
    if hasattr(result, "to_frame"):
        return result.to_frame()
    return pd.json_normalize(_as_dict(result), sep="_")


def export_json(result: Union[Exportable, Dict[str, Any]], filepath: Union[str, Path]) -> None:
    """Export a result record to a JSON file.

    Args:
        result: Record with ``to_dict()`` (or a plain dict)
        filepath: Output path (e.g., 'results/table1.json')
    """
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    filepath.write_text(dumps_json(result) + "\n", encoding="utf-8")


def export_csv(result: Union[Exportable, Dict[str, Any]], filepath: Union[str, Path]) -> None:
    """Export a result record to a CSV file.

    Args:
        result: Record with ``to_frame()`` or ``to_dict()``
        filepath: Output path (e.g., 'results/table1.csv')
    """
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    to_frame(result).to_csv(filepath, index=False, float_format="%.17g", lineterminator="\n")


def dumps_csv(result: Union[Exportable, Dict[str, Any]]) -> str:
    return to_frame(result).to_csv(index=False, float_format="%.17g", lineterminator="\n")
