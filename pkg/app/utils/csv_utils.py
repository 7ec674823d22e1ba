"""Deterministic CSV tables: comma separated, 17 significant digits, LF line endings."""

import csv
from pathlib import Path
from typing import Iterable, Sequence, Union

from app.constants import CSV_DIGITS
from app.utils.logger import logger

Cell = Union[int, float, str]


def format_cell(value: Cell) -> str:
    """Integers verbatim, floats with 17 significant digits."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{CSV_DIGITS}g}"
    return str(value)


def write_csv(
    path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Cell]]
) -> Path:
    """Write a table with a header row; the same rows always give the same bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(value) for value in row])
    logger.info(f"Wrote {path}")
    return path


def write_gnuplot_script(path: Union[str, Path], csv_name: str, columns: int, title: str) -> Path:
    """Companion gnuplot script plotting columns 2..columns of a CSV against the first."""
    path = Path(path)
    plots = ", \\\n     ".join(
        f"'{csv_name}' using 1:{column} with lines title 'Lambda_{column - 1}'"
        for column in range(2, columns + 1)
    )
    script = (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        f"set title '{title}'\n"
        "set xlabel 'lambda'\n"
        "set ylabel 'Lambda_m(lambda)'\n"
        "set xzeroaxis\n"
        f"plot {plots}\n"
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(script)
    logger.info(f"Wrote {path}")
    return path
