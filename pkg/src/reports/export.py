"""JSON and CSV renderings of analysis results."""

import csv
import io
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import BaseModel

from src.mahavier.entropy import EntropyReport
from src.orbits.models import OrbitCensus
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


def _csv_text(header: Sequence[str], rows: List[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def entropy_csv(report: EntropyReport) -> str:
    """One row per depth m: box count and a_m / m."""
    rows = [
        [m, count, f"{ratio:.12f}"]
        for m, (count, ratio) in enumerate(zip(report.counts, report.ratios), start=1)
    ]
    return _csv_text(["m", "count", "ratio"], rows)


def census_csv(census: OrbitCensus) -> str:
    rows = [
        [orbit.period, " ".join(orbit.points), " ".join(orbit.branch), census.proof_level]
        for orbit in census.orbits
    ]
    return _csv_text(["period", "points", "branch", "proof_level"], rows)


def write_output(text: str, out: Optional[Union[str, Path]] = None) -> None:
    """Write UTF-8 text to a file, or to stdout when no path is given."""
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(text)} characters to {out}")
