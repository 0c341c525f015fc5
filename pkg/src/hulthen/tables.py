"""Reference tables of binding energies shipped with the package.

The data file stores every printed value as a string, exactly as
published; parsing to float happens here and never writes back.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

from .spectrum import QuantumNumbers, parse_state

COLUMNS = ("present", "previous", "numerical", "aim", "variational", "susy")
#: Columns that are recomputed; the rest are carried for display.
COMPUTED = ("present", "aim", "numerical")


@dataclass(frozen=True)
class TableCell:
    table: int
    state: QuantumNumbers
    delta: float
    delta_text: str
    values: dict
    raw: dict = field(repr=False)
    suspect: dict = field(default_factory=dict)


def _data_text(path=None):
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    return resources.files("hulthen").joinpath("data/tables.json").read_text(encoding="utf-8")


def load_document(path=None):
    return json.loads(_data_text(path))


def load_tables(path=None):
    """``{1: [TableCell, ...], 2: [...]}`` in published row order."""
    doc = load_document(path)
    out = {}
    for key, rows in doc["tables"].items():
        cells = []
        for row in rows:
            raw = {c: row.get(c) for c in COLUMNS}
            values = {c: (None if v is None else float(v)) for c, v in raw.items()}
            cells.append(
                TableCell(
                    int(key), parse_state(row["state"]), float(row["delta"]), row["delta"],
                    values, raw, row.get("suspect", {}),
                )
            )
        out[int(key)] = cells
    return out


def all_cells(path=None):
    tables = load_tables(path)
    return [c for k in sorted(tables) for c in tables[k]]
