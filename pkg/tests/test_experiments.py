import json

import pytest

from erschess.board import parse_fen
from erschess.experiments import (CSV_HEADER, DEFAULT_REGISTRY, DESK_GRID, REFERENCE_GRID,
                                  REFERENCE_RESULTS, ExperimentConfig, ExperimentError,
                                  ExperimentRow, PositionRegistry, RegistryEntry,
                                  divisor_levels, emit_csv, emit_plot_series, format_csv,
                                  load_config, min_nodes_to_solve, min_solving_budget,
                                  parse_config, parse_csv, resolve_position, run_case,
                                  run_sweep)

from conftest import COMBINATION_FEN

MATE_IN_ONE = "6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1"


def row(i, solved=1, divisor=1.0, nodes=100, budget=16.0, ply=5):
    return ExperimentRow(i, nodes, divisor, ply, budget, solved, 6.0)


class TestRegistry:
    def test_combination_certified(self):
        assert DEFAULT_REGISTRY.certify("combination")
        pos = DEFAULT_REGISTRY.get("combination")
        assert pos.placement_key() == parse_fen(COMBINATION_FEN).placement_key()

    def test_entry_fields(self):
        e = DEFAULT_REGISTRY.entry("combination")
        assert (e.mate_plies, e.first_move) == (13, "d4b6")

    def test_unknown_id(self):
        with pytest.raises(ExperimentError):
            DEFAULT_REGISTRY.entry("nope")

    def test_duplicate_rejected(self):
        reg = PositionRegistry([RegistryEntry("a", "4k3/8/8/8/8/8/8/4K3 w - -")])
        with pytest.raises(ExperimentError):
            reg.add(RegistryEntry("a", "4k3/8/8/8/8/8/8/4K3 w - -"))

    def test_bogus_combination_refused(self):
        reg = PositionRegistry([RegistryEntry("fake", "4k3/8/8/8/8/8/8/4K3 w - -", mate_plies=3)])
        assert not reg.certify("fake")
        with pytest.raises(ExperimentError):
            reg.get("fake")

    def test_wrong_first_move_refused(self):
        reg = PositionRegistry([RegistryEntry("m1", MATE_IN_ONE.rsplit(" ", 2)[0], 1, "a1a7")])
        assert not reg.certify("m1")

    def test_resolve_inline(self):
        assert resolve_position(MATE_IN_ONE).turn == 1
        assert resolve_position("4k3/8/8/8/8/8/8/4K3 b - - id \"x\";").turn == -1
        with pytest.raises(ExperimentError):
            resolve_position("not a position")


class TestGrids:
    def test_reference_grid_shape(self):
        assert len(REFERENCE_GRID) == len(REFERENCE_RESULTS) == 30
        assert REFERENCE_GRID[0] == (1, 16) and REFERENCE_GRID[-1] == (5, 70)
        divs = [d for d, _ in REFERENCE_GRID]
        assert divs == sorted(divs)
        assert sorted(set(divs)) == divisor_levels()

    def test_reference_budget_escalation(self):
        rows = [ExperimentRow(i, n, d, p, b, s, 6.0)
                for i, ((d, b), (n, p, s)) in enumerate(zip(REFERENCE_GRID, REFERENCE_RESULTS), 1)]
        budgets = list(min_solving_budget(rows).values())
        assert budgets == sorted(budgets)

    def test_desk_grid_covers_all_levels(self):
        assert sorted({d for d, _ in DESK_GRID}) == divisor_levels()

    def test_desk_grid_sorted(self):
        assert len(DESK_GRID) == 30
        assert list(DESK_GRID) == sorted(DESK_GRID)

    def test_divisor_levels(self):
        levels = divisor_levels()
        assert len(levels) == 17 and levels[0] == 1.0 and levels[-1] == 5.0


class TestRunCase:
    def test_reference_row_one(self, combination):
        r = run_case(combination, 1, 16, 6, 10 ** 6)
        assert r.solved == 1 and 13 <= r.max_ply <= 17 and r.nodes <= 10 ** 6

    def test_reference_row_two(self, combination):
        assert run_case(combination, 1.25, 16, 6, 10 ** 6).solved == 0

    def test_node_limit_one(self, combination):
        r = run_case(combination, 1, 16, 6, 1)
        assert r.solved == 0 and r.nodes <= 1 + len(combination.legal_moves())

    def test_columns(self):
        r = run_case(parse_fen(MATE_IN_ONE), 1.5, 6, 6, 1000, row_id=4)
        assert r.as_tuple()[0] == 4 and r.divisor == 1.5 and r.virtual_budget == 6 and r.step == 6

    def test_mate_threshold(self):
        pos = parse_fen("4k3/8/8/3q4/8/8/3R4/4K3 w - - 0 1")
        assert run_case(pos, 1, 6, 6, 1000, scheduler="uniform", mate_threshold=400).solved == 1


class TestSweep:
    def test_two_rows(self):
        cfg = ExperimentConfig(MATE_IN_ONE, ((1, 6), (2, 6)), node_limit=10_000)
        rows = run_sweep(cfg)
        assert [r.id for r in rows] == [1, 2] and all(r.solved for r in rows)

    def test_empty_rows(self):
        with pytest.raises(ExperimentError):
            ExperimentConfig(MATE_IN_ONE, ())

    def test_bad_node_limit(self):
        with pytest.raises(ExperimentError):
            ExperimentConfig(MATE_IN_ONE, ((1, 6),), node_limit=0)

    def test_unknown_position_before_search(self, monkeypatch):
        import erschess.experiments as ex
        monkeypatch.setattr(ex, "run_case", lambda *a, **k: pytest.fail("searched"))
        with pytest.raises(ExperimentError):
            run_sweep(ExperimentConfig("no-such-id", ((1, 6),)))

    def test_progress_callback(self):
        seen = []
        run_sweep(ExperimentConfig(MATE_IN_ONE, ((1, 6),)), progress=seen.append)
        assert len(seen) == 1


class TestConfig:
    def test_key_value(self):
        cfg = parse_config("position = combination\nrows = 1:16, 1.25:16  # first two\nnode_limit=500\n")
        assert cfg.rows == ((1.0, 16.0), (1.25, 16.0)) and cfg.node_limit == 500

    def test_json(self):
        cfg = parse_config(json.dumps({"position_id": "start", "rows": [[1, 6]], "step": 5}))
        assert cfg.step == 5.0 and cfg.rows == ((1.0, 6.0),)

    def test_named_grid(self):
        assert parse_config("position = combination\ngrid = reference").rows == tuple(
            (float(d), float(b)) for d, b in REFERENCE_GRID)

    @pytest.mark.parametrize("text", [
        "rows = 1:16", "position = start", "position = start\nrows = 1-16",
        "position = start\nrows = 1:16\ncolour = red", "position = start\nrows = 1:16\nstep = x",
        "position = start\ngrid = huge", "{not json", "[1, 2]", "position start",
    ])
    def test_errors(self, text):
        with pytest.raises(ExperimentError):
            parse_config(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ExperimentError):
            load_config(tmp_path / "absent.cfg")


class TestCsv:
    def test_header_and_lines(self):
        text = format_csv([row(1)])
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_HEADER) and len(lines) == 2
        assert lines[1] == "1,100,1,5,16,1,6"

    def test_two_decimals(self):
        text = format_csv([row(1, divisor=1.25, budget=16.5)])
        assert text.splitlines()[1] == "1,100,1.25,5,16.5,1,6"

    def test_round_trip(self, tmp_path):
        rows = [row(1), row(2, solved=0, divisor=4.75, budget=69)]
        path = tmp_path / "out.csv"
        emit_csv(rows, path)
        assert parse_csv(path.read_text()) == rows

    def test_out_of_order(self):
        with pytest.raises(ExperimentError):
            format_csv([row(2), row(1)])

    def test_empty(self):
        with pytest.raises(ExperimentError):
            format_csv([])

    def test_unwritable(self, tmp_path):
        with pytest.raises(ExperimentError):
            emit_csv([row(1)], tmp_path / "missing" / "out.csv")

    def test_bad_header(self):
        with pytest.raises(ExperimentError):
            parse_csv("a,b\n1,2\n")


class TestPlotSeries:
    def test_four_files(self, tmp_path):
        rows = [row(1), row(2, solved=0, nodes=900, divisor=1.25)]
        paths = emit_plot_series(rows, tmp_path)
        assert len(paths) == 4 and all(p.exists() for p in paths.values())
        assert paths["nodes_unsolved"].read_text().splitlines() == ["divisor,nodes", "1.25,900"]

    def test_all_solved_leaves_unsolved_empty(self, tmp_path):
        paths = emit_plot_series([row(1)], tmp_path)
        assert paths["nodes_unsolved"].read_text() == "divisor,nodes\n"

    def test_single_row(self, tmp_path):
        paths = emit_plot_series([row(1)], tmp_path)
        for p in paths.values():
            assert len(p.read_text().splitlines()) <= 2


class TestSummaries:
    def test_min_budget_and_nodes(self):
        rows = [row(1, budget=20, nodes=50), row(2, budget=18, nodes=70),
                row(3, solved=0, budget=10), row(4, divisor=2, budget=30, nodes=9)]
        assert min_solving_budget(rows) == {1.0: 18, 2.0: 30}
        assert min_nodes_to_solve(rows) == {1.0: 50, 2.0: 9}
