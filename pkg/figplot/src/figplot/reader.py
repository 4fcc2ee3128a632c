"""Reading and validating delta-sweep CSV tables.

The schema is fixed: nine named columns in a fixed order, one row per
(L, N_I) grid cell.  Lines starting with ``#`` are comments and are
skipped wherever they appear.
"""

import csv
from dataclasses import dataclass

COLUMNS = (
    "L",
    "N_I",
    "trials",
    "mean_physics",
    "se_physics",
    "theory_physics",
    "gain_conventional",
    "delta_empirical",
    "delta_theory",
)

_INT_COLUMNS = frozenset({"L", "N_I", "trials"})


class SchemaError(Exception):
    """The CSV does not match the delta-sweep schema.

    ``column`` carries the offending column name when one specific
    column is to blame.
    """

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


@dataclass(frozen=True)
class SweepRow:
    L: int
    N_I: int
    trials: int
    mean_physics: float
    se_physics: float
    theory_physics: float
    gain_conventional: float
    delta_empirical: float
    delta_theory: float


@dataclass(frozen=True)
class SweepTable:
    rows: tuple

    def groups(self):
        """Rows grouped by L, each group sorted by N_I.

        Returns a dict mapping L to a list of rows.  Input row order
        does not matter; the grouping is what the plot consumes.
        """
        out = {}
        for row in sorted(self.rows, key=lambda r: (r.L, r.N_I)):
            out.setdefault(row.L, []).append(row)
        return out


def _check_header(header):
    for position, want in enumerate(COLUMNS):
        if position >= len(header):
            raise SchemaError(f"missing column {want!r}", column=want)
        got = header[position]
        if got != want:
            raise SchemaError(
                f"unexpected column {got!r} where {want!r} should be",
                column=got,
            )
    if len(header) > len(COLUMNS):
        extra = header[len(COLUMNS)]
        raise SchemaError(f"unexpected extra column {extra!r}", column=extra)


def _parse_field(name, text, lineno):
    try:
        if name in _INT_COLUMNS:
            return int(text)
        return float(text)
    except ValueError:
        kind = "an integer" if name in _INT_COLUMNS else "a number"
        raise SchemaError(
            f"row {lineno}: column {name!r} is not {kind}: {text!r}",
            column=name,
        ) from None


def read_sweep(path):
    """Parse a delta-sweep CSV file into a SweepTable.

    Raises SchemaError on any deviation from the schema: wrong or
    missing columns, unparseable fields, duplicate (L, N_I) cells, or
    a table with no data rows.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        numbered = [
            (lineno, line)
            for lineno, line in enumerate(handle, start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]
    if not numbered:
        raise SchemaError("empty table: no header row")

    header_line, data_lines = numbered[0], numbered[1:]
    (header,) = csv.reader([header_line[1]])
    _check_header([name.strip() for name in header])

    rows = []
    for lineno, line in data_lines:
        (record,) = csv.reader([line])
        if len(record) != len(COLUMNS):
            raise SchemaError(
                f"row {lineno}: expected {len(COLUMNS)} fields, got {len(record)}"
            )
        values = {
            name: _parse_field(name, text.strip(), lineno)
            for name, text in zip(COLUMNS, record)
        }
        rows.append(SweepRow(**values))
    if not rows:
        raise SchemaError("empty table: header but no data rows")

    seen = set()
    for row in rows:
        cell = (row.L, row.N_I)
        if cell in seen:
            raise SchemaError(
                f"duplicate grid cell L={row.L}, N_I={row.N_I}", column="N_I"
            )
        seen.add(cell)
    return SweepTable(rows=tuple(rows))
