from decimal import Decimal

import pytest

from harmbohr.functionals import FunctionalId
from harmbohr.tables import (FIGURES, M_GRID, TABLE_IDS, figure_data, figure_grid, figure_tsv,
                             interpolate, load_table, reproduce, solve_entry, table_csv, to_4dp,
                             variant_forensics)
from harmbohr.series import M_SUP


class TestData:
    @pytest.mark.parametrize("tid", TABLE_IDS)
    def test_grid_and_provenance(self, tid):
        spec = load_table(tid)
        assert spec.M_grid == M_GRID
        assert len(spec.entries) == 9 * len(spec.functionals)
        assert all(e.source.startswith(f"T{tid}.") for e in spec.entries)
        assert all(e.expected.as_tuple().exponent == -4 for e in spec.entries)

    def test_no_table_3(self):
        with pytest.raises(KeyError):
            load_table(3)

    def test_table_functionals(self):
        assert load_table(1).functionals == (FunctionalId.COR_3_8, FunctionalId.COR_3_9)
        assert load_table(7).functionals == (FunctionalId.COR_3_13,)

    def test_anchor_values(self):
        first = {tid: load_table(tid).entries[0].expected for tid in TABLE_IDS}
        assert first == {1: Decimal("0.3398"), 2: Decimal("0.4658"), 4: Decimal("0.3108"),
                         5: Decimal("0.3358"), 6: Decimal("0.4368"), 7: Decimal("0.3045")}


class TestRounding:
    def test_truncate(self):
        assert to_4dp(0.33989) == Decimal("0.3398")

    def test_nearest_half_up(self):
        assert to_4dp(0.33985, "nearest") == Decimal("0.3399")
        assert to_4dp(0.33984, "nearest") == Decimal("0.3398")

    def test_unknown(self):
        with pytest.raises(ValueError):
            to_4dp(0.1, "banker")


class TestReproduce:
    @pytest.mark.parametrize("tid", TABLE_IDS)
    def test_printed_digits_are_truncations(self, tid):
        # every printed entry is the root cut after the fourth decimal
        for row in reproduce(tid):
            assert 0.0 <= row.computed - float(row.entry.expected) < 1e-4
            assert row.match4dp

    def test_csv_layout(self):
        text = table_csv(reproduce(1))
        lines = text.split("\n")
        assert lines[0] == "M,computed,expected,abs_diff,match4dp"
        assert len(lines) == 1 + 18 + 1 + 1  # header, rows, summary, trailing newline
        assert lines[1].startswith("0.14,0.33984")
        assert lines[-2].startswith("max,,,") and lines[-2].endswith(",true")
        assert "\r" not in text and '"' not in text

    def test_csv_byte_stable(self):
        assert table_csv(reproduce(5)) == table_csv(reproduce(5))

    def test_threads_do_not_change_output(self, monkeypatch):
        serial = table_csv(reproduce(6))
        monkeypatch.setenv("HARMBOHR_THREADS", "4")
        assert table_csv(reproduce(6)) == serial

    def test_forensics_names_squared(self):
        report = variant_forensics(2)
        assert report["squared"] == (18, 18)
        assert report["linear"][0] < 18

    def test_table1_variant_free(self):
        a = [r.computed for r in reproduce(1, "squared")]
        b = [r.computed for r in reproduce(1, "linear")]
        assert a == b


class TestFigures:
    def test_min_samples(self):
        with pytest.raises(ValueError):
            figure_grid(10)

    def test_grid_inside_range(self):
        g = figure_grid(50)
        assert len(g) == 50 and 0 < g[0] and g[-1] < M_SUP

    def test_figure1(self):
        curves = figure_data(1, 100)
        t1 = load_table(1)
        for fid, pts in curves.items():
            assert len(pts) == 100
            rs = [R for _, R in pts]
            assert all(b < a for a, b in zip(rs, rs[1:]))
            printed = [float(e.expected) for e in t1.entries if e.fid is fid]
            assert rs[0] > max(printed) and rs[-1] < min(printed)

    def test_figure5_passes_table7_roots(self):
        curve = figure_data(5, 200)[FunctionalId.COR_3_13]
        for e in load_table(7).entries:
            R = interpolate(curve, e.M)
            assert abs(R - solve_entry(e.fid, e.M).value) <= 5e-5
            assert 0.0 <= R - float(e.expected) < 1e-4

    def test_every_figure_has_a_table(self):
        drawn = {f for fids in FIGURES.values() for f in fids}
        tabled = {f for tid in TABLE_IDS for f in load_table(tid).functionals}
        assert drawn == tabled

    def test_unknown_figure(self):
        with pytest.raises(KeyError):
            figure_data(6, 50)

    def test_tsv_blocks(self):
        text = figure_tsv(figure_data(1, 50))
        blocks = text.split("\n\n\n")
        assert len(blocks) == 2
        assert blocks[0].startswith("# curve: cor3.8\n# M\tR\n")
        rows = [ln for ln in blocks[1].splitlines() if not ln.startswith("#")]
        assert len(rows) == 50 and all(len(r.split("\t")) == 2 for r in rows)
