"""Printed radius tables and figure sweeps."""

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal
from importlib import resources

import numpy as np

from .functionals import FunctionalId, ParamSet
from .radius import radius_for
from .series import M_SUP

TABLE_IDS = (1, 2, 4, 5, 6, 7)
M_GRID = (0.14, 0.28, 0.42, 0.56, 0.70, 0.84, 0.98, 1.12, 1.26)

# curves drawn in each figure, in plotting order
FIGURES = {
    1: (FunctionalId.COR_3_8, FunctionalId.COR_3_9),
    2: (FunctionalId.COR_3_5, FunctionalId.COR_3_6),
    3: (FunctionalId.COR_3_11, FunctionalId.COR_3_12),
    4: (FunctionalId.COR_3_25, FunctionalId.COR_3_26),
    5: (FunctionalId.COR_3_13,),
}

ROUNDINGS = ("truncate", "nearest")

_Q = Decimal("0.0001")


@dataclass(frozen=True)
class TableEntry:
    fid: FunctionalId
    M: float
    expected: Decimal
    source: str


@dataclass(frozen=True)
class TableSpec:
    table_id: int
    caption: str
    entries: tuple

    @property
    def functionals(self):
        seen = []
        for e in self.entries:
            if e.fid not in seen:
                seen.append(e.fid)
        return tuple(seen)

    @property
    def M_grid(self):
        return tuple(sorted({e.M for e in self.entries}))


def threads():
    try:
        return max(1, int(os.environ.get("HARMBOHR_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    n = threads()
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def load_table(table_id):
    table_id = int(table_id)
    if table_id not in TABLE_IDS:
        raise KeyError(f"no table {table_id}; printed tables are {TABLE_IDS} (there is no table 3)")
    text = resources.files("harmbohr").joinpath("data", f"table{table_id}.csv").read_text()
    lines = text.splitlines()
    caption = lines[0].lstrip("# ").split(":", 1)[1].strip()
    body = [ln for ln in lines if not ln.startswith("#")]
    entries = []
    for row in csv.DictReader(io.StringIO("\n".join(body))):
        entries.append(TableEntry(FunctionalId.parse(row["functional"]), float(row["M"]),
                                  Decimal(row["expected"]), row["source"]))
    return TableSpec(table_id, caption, tuple(entries))


def to_4dp(x, rounding="truncate"):
    """Cut a computed radius to four decimals the way the printed tables do."""
    if rounding not in ROUNDINGS:
        raise ValueError(f"rounding must be one of {ROUNDINGS}")
    mode = ROUND_DOWN if rounding == "truncate" else ROUND_HALF_UP
    return Decimal(repr(float(x))).quantize(_Q, rounding=mode)


def solve_entry(fid, M, variant="squared", certify=False):
    return radius_for(fid, ParamSet(M=M, variant=variant), certify=certify)


@dataclass(frozen=True)
class RowResult:
    entry: TableEntry
    computed: float
    rounding: str

    @property
    def abs_diff(self):
        return abs(self.computed - float(self.entry.expected))

    @property
    def match4dp(self):
        return to_4dp(self.computed, self.rounding) == self.entry.expected


def reproduce(table, variant="squared", rounding="truncate"):
    spec = table if isinstance(table, TableSpec) else load_table(table)
    roots = _pmap(lambda e: solve_entry(e.fid, e.M, variant).value, spec.entries)
    return [RowResult(e, v, rounding) for e, v in zip(spec.entries, roots)]


def table_csv(rows):
    """CSV with header M,computed,expected,abs_diff,match4dp and a closing max row."""
    out = io.StringIO()
    out.write("M,computed,expected,abs_diff,match4dp\n")
    for row in rows:
        out.write(f"{row.entry.M:.2f},{row.computed:.10f},{row.entry.expected},"
                  f"{row.abs_diff:.3e},{str(row.match4dp).lower()}\n")
    worst = max(row.abs_diff for row in rows)
    ok = all(row.match4dp for row in rows)
    out.write(f"max,,,{worst:.3e},{str(ok).lower()}\n")
    return out.getvalue()


def variant_forensics(table_id=2, rounding="truncate"):
    """Which area-bound variants reproduce every entry of a table."""
    spec = load_table(table_id)
    report = {}
    for variant in ("squared", "linear"):
        rows = reproduce(spec, variant, rounding)
        report[variant] = (sum(r.match4dp for r in rows), len(rows))
    return report


def figure_grid(samples):
    samples = int(samples)
    if samples < 50:
        raise ValueError("a figure needs at least 50 samples")
    return [M_SUP * k / (samples + 1) for k in range(1, samples + 1)]


def figure_data(figure, samples=200, variant="squared"):
    """{functional: [(M, R(M)), ...]} over a uniform grid inside (0, M_SUP)."""
    figure = int(figure)
    if figure not in FIGURES:
        raise KeyError(f"no figure {figure}; figures are {tuple(FIGURES)}")
    grid = figure_grid(samples)
    curves = {}
    for fid in FIGURES[figure]:
        vals = _pmap(lambda M: solve_entry(fid, M, variant).value, grid)
        curves[fid] = list(zip(grid, vals))
    return curves


def figure_tsv(curves):
    """Gnuplot-style data: one block per curve, blocks separated by two blank lines."""
    out = io.StringIO()
    for i, (fid, pts) in enumerate(curves.items()):
        if i:
            out.write("\n\n")
        out.write(f"# curve: {fid.value}\n# M\tR\n")
        for M, R in pts:
            out.write(f"{M:.8f}\t{R:.10f}\n")
    return out.getvalue()


def interpolate(curve, M):
    xs, ys = zip(*curve)
    return float(np.interp(M, xs, ys))
