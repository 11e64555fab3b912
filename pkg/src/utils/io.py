"""CSV ingestion of planar samples.

Format: two comma-separated floats per line, UTF-8, LF or CRLF line endings.
A single header line is detected by a non-numeric first token. Blank lines
are skipped; every other malformed row raises ``InputParseError`` naming its
1-based line number in the file.
"""

import io
import logging
import math
import re
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from src.models.errors import InputParseError
from src.models.sample import Sample

logger = logging.getLogger(__name__)

_PARSER_LINE = re.compile(r"line (\d+)")


def _to_float(token: str) -> float:
    try:
        return float(token)
    except ValueError:
        return math.nan


def _read_frame(source: Union[str, Path, io.TextIOBase]) -> pd.DataFrame:
    try:
        return pd.read_csv(
            source,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError as exc:
        raise InputParseError("Input contains no data") from exc
    except pd.errors.ParserError as exc:
        match = _PARSER_LINE.search(str(exc))
        line = int(match.group(1)) if match else None
        raise InputParseError("Expected two comma-separated values", line=line) from exc
    except UnicodeDecodeError as exc:
        raise InputParseError("Input is not valid UTF-8") from exc


def parse_points(source: Union[str, Path, io.TextIOBase]) -> np.ndarray:
    """Parse a CSV source into an (n, 2) float array (no deduplication).

    Raises:
        InputParseError: Malformed, missing or non-finite coordinate
    """
    frame = _read_frame(source)
    frame = frame.fillna("").apply(lambda col: col.str.strip())
    # pandas row i is file line i + 1
    lines = np.arange(1, len(frame) + 1)
    blank = (frame == "").all(axis=1).to_numpy()
    frame, lines = frame[~blank], lines[~blank]
    if frame.empty:
        raise InputParseError("Input contains no data")

    if math.isnan(_to_float(frame.iloc[0, 0])) and frame.iloc[0, 0].lower() != "nan":
        logger.debug(f"Header detected on line {lines[0]}: {list(frame.iloc[0])}")
        frame, lines = frame.iloc[1:], lines[1:]
        if frame.empty:
            raise InputParseError("Input contains only a header")

    if frame.shape[1] != 2:
        extra = (frame.iloc[:, 2:] != "").any(axis=1).to_numpy()
        line = int(lines[np.flatnonzero(extra)[0]]) if extra.any() else int(lines[0])
        raise InputParseError("Expected two comma-separated values", line=line)

    values = frame.map(_to_float).to_numpy(dtype=float)
    bad = ~np.isfinite(values).all(axis=1)
    if bad.any():
        k = int(np.flatnonzero(bad)[0])
        raise InputParseError(
            f"Expected two finite numbers, got {list(frame.iloc[k])}", line=int(lines[k])
        )
    return values.reshape(-1, 2)


def read_points_csv(source: Union[str, Path, io.TextIOBase]) -> Sample:
    """Read a sample from CSV, removing near-duplicates.

    Raises:
        InputParseError: Malformed input (see ``parse_points``)
    """
    points = parse_points(source)
    sample = Sample.from_points(points, provenance="ingested")
    logger.info(f"Read {len(points)} point(s) from {source if isinstance(source, (str, Path)) else 'stream'}")
    if sample.dedup_count:
        logger.info(f"Removed {sample.dedup_count} duplicate point(s); n={sample.n}")
    return sample


def write_points_csv(sample: Union[Sample, np.ndarray], target: Union[str, Path, io.TextIOBase]) -> None:
    """Write points as a headed ``x,y`` CSV with round-trip float text."""
    points = sample.points if isinstance(sample, Sample) else np.asarray(sample, dtype=float)
    frame = pd.DataFrame(points, columns=["x", "y"])
    if isinstance(target, (str, Path)):
        path = Path(target)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    else:
        frame.to_csv(target, index=False, float_format="%.17g", lineterminator="\n")
