"""Built-in PD codes for the knots used throughout the library, and file loading.

PD codes follow the KnotInfo tables.  Each record carries its reduced
Alexander polynomial as ascending coefficients; the test suite recomputes
every one of them, so a wrong PD code cannot go unnoticed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .diagram import KnotDiagram, parse_pd
from .errors import MalformedToken, UnknownKnot
from .laurent import LaurentPoly, parse_coeffs


@dataclass(frozen=True)
class KnotRecord:
    name: str
    pd: str
    expected_reduced_alexander: LaurentPoly | None
    source: str = "KnotInfo"

    @cached_property
    def diagram(self) -> KnotDiagram:
        return parse_pd(self.pd)


def _pd(tuples) -> str:
    return " ".join("X[{},{},{},{}]".format(*x) for x in tuples)


_TABLE = {
    "3_1": ([[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], [1, -1, 1]),
    "4_1": ([[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]], [1, -3, 1]),
    "6_1": (
        [[1, 7, 2, 6], [3, 10, 4, 11], [5, 3, 6, 2], [7, 1, 8, 12], [9, 4, 10, 5], [11, 9, 12, 8]],
        [2, -5, 2],
    ),
    "6_2": (
        [[1, 8, 2, 9], [3, 11, 4, 10], [5, 1, 6, 12], [7, 2, 8, 3], [9, 7, 10, 6], [11, 5, 12, 4]],
        [1, -3, 3, -3, 1],
    ),
    "6_3": (
        [[4, 2, 5, 1], [8, 4, 9, 3], [12, 9, 1, 10], [10, 5, 11, 6], [6, 11, 7, 12], [2, 8, 3, 7]],
        [1, -3, 5, -3, 1],
    ),
    "7_2": (
        [[2, 10, 3, 9], [4, 14, 5, 13], [6, 12, 7, 11], [8, 2, 9, 1], [10, 8, 11, 7],
         [12, 6, 13, 5], [14, 4, 1, 3]],
        [3, -5, 3],
    ),
    "8_7": (
        [[2, 9, 3, 10], [4, 14, 5, 13], [6, 15, 7, 16], [8, 1, 9, 2], [10, 5, 11, 6],
         [12, 4, 13, 3], [14, 12, 15, 11], [16, 7, 1, 8]],
        [1, -3, 5, -5, 5, -3, 1],
    ),
    "9_12": (
        [[2, 9, 3, 10], [4, 16, 5, 15], [6, 14, 7, 13], [8, 3, 9, 4], [10, 18, 11, 17],
         [12, 8, 13, 7], [14, 6, 15, 5], [16, 2, 17, 1], [18, 12, 1, 11]],
        [2, -9, 13, -9, 2],
    ),
}

KNOTS: dict[str, KnotRecord] = {
    name: KnotRecord(name, _pd(pd), parse_coeffs(coeffs))
    for name, (pd, coeffs) in _TABLE.items()
}

ALIASES = {"trefoil": "3_1", "figure-eight": "4_1", "figure_eight": "4_1"}


def names() -> list[str]:
    return list(KNOTS)


def lookup(name: str) -> KnotRecord:
    key = ALIASES.get(name, name)
    try:
        return KNOTS[key]
    except KeyError:
        raise UnknownKnot(f"unknown knot {name!r}; known: {', '.join(KNOTS)}") from None


def load_file(path: str | Path) -> list[KnotRecord]:
    """Read diagrams from a file.

    Accepted layouts: a single PD code (text or JSON); a JSON list of objects
    with ``name`` and ``pd`` keys; or text with one ``name: PD`` entry per line.
    """
    path = Path(path)
    text = path.read_text()
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(stripped)
        if isinstance(data, list) and data and isinstance(data[0], dict):
            return [_record(d.get("name", f"{path.stem}[{i}]"), d) for i, d in enumerate(data)]
        return [_record(path.stem, data)]
    lines = [ln.strip() for ln in stripped.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if lines and all(":" in ln and not ln.startswith("X[") for ln in lines):
        out = []
        for ln in lines:
            name, pd = ln.split(":", 1)
            out.append(_record(name.strip(), pd.strip()))
        return out
    return [_record(path.stem, " ".join(lines))]


def _record(name: str, data) -> KnotRecord:
    if isinstance(data, dict):
        expected = data.get("alexander")
        d = parse_pd(data if "pd" in data else {"pd": data})
        poly = parse_coeffs(expected) if expected is not None else None
        return _with_diagram(KnotRecord(name, d.to_pd_string(), poly, str(data.get("source", "file"))), d)
    if not isinstance(data, (str, list)):
        raise MalformedToken(f"cannot read PD data for {name!r}")
    d = parse_pd(data)
    return _with_diagram(KnotRecord(name, d.to_pd_string(), None, "file"), d)


def _with_diagram(rec: KnotRecord, d: KnotDiagram) -> KnotRecord:
    # keep file-given signs (they may differ from what the numbering implies)
    rec.__dict__["diagram"] = d
    return rec
