from __future__ import annotations

import json
from fractions import Fraction

import pytest

from lap_perturb.cli import main
from lap_perturb.graph import build_graph, format_edge_list
from lap_perturb.sweep import ExperimentConfig, resolve_graph_source, run_sweep, select_nodes


class TestSelectNodes:
    def test_max_unique_degree(self, e2):
        assert select_nodes(e2, "max_unique_degree") == (7,)

    def test_all_unique(self, e2):
        assert select_nodes(e2, "all_unique") == (3, 4, 7, 13)

    def test_explicit_index(self, e2):
        assert select_nodes(e2, 13) == (13,)
        assert select_nodes(e2, 1) == ()  # degree 4 is shared

    def test_unknown_selector(self, e2):
        with pytest.raises(ValueError):
            select_nodes(e2, "best")


class TestRunSweep:
    def test_deterministic_rows(self):
        config = ExperimentConfig(trials=8, n_grid=(10,), p_grid=(Fraction(2, 5),), seed=5)
        first, _ = run_sweep(config)
        second, _ = run_sweep(config)
        assert [c.row() for c in first] == [c.row() for c in second]

    def test_skipped_trials_counted(self):
        # dense tiny graphs frequently have no unique-degree node
        config = ExperimentConfig(trials=20, n_grid=(5,), p_grid=(Fraction(9, 10),), seed=1)
        cells, _ = run_sweep(config)
        (cell,) = cells
        assert cell.trials == 20
        assert cell.skipped > 0
        assert 0 <= cell.converged <= cell.trials - cell.skipped

    def test_degenerate_single_graph_sweep(self):
        config = ExperimentConfig(graph_source="example:e2", q_selector=13,
                                  t_grid=(Fraction(-1),), K_max=30, K_check=30)
        cells, details = run_sweep(config)
        assert len(cells) == 1 and len(details) == 1
        assert details[0].q == 13 and details[0].converged

    def test_singular_t_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            ExperimentConfig(t_grid=(Fraction(1),), zeta=Fraction(-1))

    def test_config_json_round_trip(self):
        text = json.dumps({
            "graph_source": "erdos_renyi", "q_selector": "max_unique_degree",
            "t_grid": ["-1", "-2"], "zeta": "-1", "K_max": 12, "K_check": 12,
            "trials": 3, "n_grid": [8], "p_grid": ["0.3"], "seed": 11,
            "alpha_threshold": -4.0, "domain": "exact_rational",
        })
        config = ExperimentConfig.from_json(text)
        assert config.t_grid == (Fraction(-1), Fraction(-2))
        assert config.p_grid == (Fraction(3, 10),)
        cells, _ = run_sweep(config)
        assert len(cells) == 2  # one per t


class TestResolveGraphSource:
    def test_generator_specs(self):
        assert resolve_graph_source("ring_with_core:8,1").degrees[0] == 7
        assert resolve_graph_source("antiregular:10").degrees == (5, 5, 4, 6, 3, 7, 2, 8, 1, 9)
        assert resolve_graph_source("complete:4").degrees == (3, 3, 3, 3)
        assert resolve_graph_source("erdos_renyi:10,0.3,7").n == 10

    def test_file_source(self, tmp_path):
        g = build_graph(4, [(1, 2), (2, 3, Fraction(1, 2))])
        path = tmp_path / "g.edges"
        path.write_text(format_edge_list(g))
        assert resolve_graph_source(f"file:{path}").weights == g.weights

    def test_unknown_source(self):
        with pytest.raises(ValueError, match="unknown graph source"):
            resolve_graph_source("petersen:10")


class TestCli:
    def test_coeffs_exact(self, capsys):
        assert main(["coeffs", "--example", "e1", "--q", "1", "--K", "4", "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "c2=2/1,c3=0/1,c4=-5/2"

    def test_coeffs_json(self, capsys):
        assert main(["coeffs", "--example", "e1", "--q", "5", "--K", "4", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["c"] == ["0/1", "0/1", "2/1"]

    def test_oracle_integer_spectrum(self, capsys):
        assert main(["oracle", "--example", "e3"]) == 0
        data = json.loads(capsys.readouterr().out)
        values = [round(float(v)) for v in data["eigenvalues"]]
        assert values == [10, 9, 8, 7, 6, 4, 3, 2, 1, 0]

    def test_euler_csv_final_row(self, capsys):
        assert main(["euler", "--example", "e2", "--q", "7", "--t", "-1", "--K", "30"]) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert rows[0].split(",")[:4] == ["q", "t", "K", "xi"]
        last = rows[-1].split(",")
        assert last[:3] == ["7", "-1", "30"]
        assert abs(float(last[3]) - 13.35139267) < 5e-9
        assert last[6] == "true"

    def test_taylor_zeta_zero(self, capsys):
        assert main(["taylor", "--example", "e1", "--q", "1", "--K", "4",
                     "--zeta", "0", "--exact"]) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert all(row.split(",")[3] == "3/1" for row in rows[1:])

    def test_edge_list_file_input(self, tmp_path, capsys, e1):
        path = tmp_path / "tree.edges"
        path.write_text(format_edge_list(e1))
        assert main(["coeffs", "--graph", str(path), "--q", "1", "--K", "4", "--exact"]) == 0
        assert capsys.readouterr().out.strip() == "c2=2/1,c3=0/1,c4=-5/2"

    def test_contour_json(self, capsys):
        assert main(["contour", "--gen", "ring_with_core:21,1", "--zeta", "-1"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert set(data) == {"radius", "points", "branch_ok", "value"}
        assert data["branch_ok"] is True
        assert abs(float(data["value"]) - 21) < 1e-12

    def test_contour_error_exit_code(self, capsys):
        assert main(["contour", "--gen", "ring_with_core:21,9", "--zeta", "-1"]) == 2
        assert "branch condition" in capsys.readouterr().err

    def test_sweep_csv(self, capsys):
        assert main(["sweep", "--n", "10", "--p", "0.4", "--trials", "4", "--seed", "2"]) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert rows[0] == "n,p,t,trials,skipped,converged,fraction"
        assert rows[1].startswith("10,2/5,-1,4,")

    def test_sweep_byte_identical_runs(self, capsys):
        args = ["sweep", "--n", "9", "--p", "0.5", "--trials", "5", "--seed", "9", "--detail"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_reproduce_e1(self, capsys, tmp_path):
        assert main(["reproduce", "e1", "--out-dir", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "PASS e1 xi_1;4(-1) = 4.21875" in out
        assert "FAIL" not in out
        assert (tmp_path / "e1.csv").exists()

    def test_nonunique_node_error_exit(self, capsys):
        assert main(["coeffs", "--example", "e2", "--q", "1", "--K", "4"]) == 2
        assert "unique degree" in capsys.readouterr().err
