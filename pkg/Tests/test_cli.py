import json

import pytest

from InfluenceMax.cli import main


@pytest.fixture
def ring_file(tmp_path):
    lines = [f"n{v} n{(v + 1) % 30}" for v in range(30)]
    lines += [f"n{v} n{(v + 7) % 30}" for v in range(0, 30, 3)]
    path = tmp_path / "ring.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def run_args(network, out, *extra):
    return [
        "run", "--network", str(network), "--p", "0.1",
        "--k", "3", "--pop", "6", "--mfe", "60", "--replicas", "300", "--seed", "7",
        "--out", str(out), "--log-level", "WARNING", *extra,
    ]


class TestGenerate:
    def test_writes_network_and_communities(self, tmp_path, capsys):
        args = ["generate", "--gn", "--nodes", "128", "--communities", "4", "--degree", "16", "--seed", "1"]
        assert main(args + ["--out", str(tmp_path / "a")]) == 0
        summary = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert summary["nodes"] == 128

        communities = (tmp_path / "a" / "communities.txt").read_text().splitlines()
        assert len(communities) == 129

        assert main(args + ["--out", str(tmp_path / "b")]) == 0
        first = (tmp_path / "a" / "network.txt").read_bytes()
        assert first == (tmp_path / "b" / "network.txt").read_bytes()

    def test_zero_nodes(self, tmp_path):
        assert main(["generate", "--gn", "--nodes", "0", "--out", str(tmp_path)]) == 2

    def test_uneven_communities(self, tmp_path):
        assert main(["generate", "--gn", "--nodes", "10", "--communities", "3", "--out", str(tmp_path)]) == 2


class TestRun:
    def test_result_files(self, ring_file, tmp_path, capsys):
        assert main(run_args(ring_file, tmp_path / "out", "--algo", "mtefim")) == 0
        result = json.loads((tmp_path / "out" / "result.json").read_text())
        assert result["algorithm"] == "mtefim"
        assert len(result["chosen_seeds"]) == 3
        assert all(label.startswith("n") for label in result["chosen_seeds"])
        assert result["config"]["k"] == 3
        assert "workers" not in result["config"]
        assert (tmp_path / "out" / "trace.csv").exists()
        assert "spread" in capsys.readouterr().out

    def test_workers_do_not_change_output(self, ring_file, tmp_path):
        assert main(run_args(ring_file, tmp_path / "one", "--workers", "1")) == 0
        assert main(run_args(ring_file, tmp_path / "three", "--workers", "3")) == 0
        for name in ("result.json", "trace.csv"):
            assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "three" / name).read_bytes()

    def test_single_transformation_aliases(self, ring_file, tmp_path):
        assert main(run_args(ring_file, tmp_path / "a", "--algo", "edvea")) == 0
        assert main(run_args(ring_file, tmp_path / "b", "--algo", "mtefim", "--transformations", "edv")) == 0
        first = json.loads((tmp_path / "a" / "result.json").read_text())
        second = json.loads((tmp_path / "b" / "result.json").read_text())
        assert first["chosen_seeds"] == second["chosen_seeds"]

    @pytest.mark.parametrize("algo", ["degree", "sdd", "pagerank"])
    def test_heuristics(self, ring_file, tmp_path, algo):
        assert main(run_args(ring_file, tmp_path, "--algo", algo)) == 0
        result = json.loads((tmp_path / "result.json").read_text())
        assert result["algorithm"] == algo
        assert len(result["chosen_seeds"]) == 3

    def test_config_file_overridden_by_flags(self, ring_file, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text("k: 4\npopulation_size: 8\n", encoding="utf-8")
        assert main(run_args(ring_file, tmp_path / "out", "--config", str(config))) == 0
        result = json.loads((tmp_path / "out" / "result.json").read_text())
        assert result["config"]["k"] == 3
        assert result["config"]["population_size"] == 6

    @pytest.mark.parametrize(
        "extra",
        [
            ("--algo", "imm"),
            ("--prefs", "0.7,0.7"),
            ("--prefs", "1.0"),
            ("--mfe", "5"),
        ],
    )
    def test_bad_parameters(self, ring_file, tmp_path, extra):
        assert main(run_args(ring_file, tmp_path, *extra)) == 2

    def test_bad_probability_in_file(self, tmp_path):
        network = tmp_path / "bad.txt"
        network.write_text("a b 1.5\n", encoding="utf-8")
        assert main(run_args(network, tmp_path, "--weighted", "--algo", "degree")) == 2

    def test_k_larger_than_network(self, tmp_path):
        network = tmp_path / "tiny.txt"
        network.write_text("a b\n", encoding="utf-8")
        assert main(run_args(network, tmp_path, "--algo", "degree")) == 3

    def test_missing_network(self, tmp_path):
        assert main(run_args(tmp_path / "nope.txt", tmp_path)) == 2


class TestEvaluate:
    def test_inert_network_spread_is_seed_count(self, ring_file, tmp_path, capsys):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text("n0\nn5\n", encoding="utf-8")
        args = ["evaluate", "--network", str(ring_file), "--p", "0", "--seeds", str(seeds), "--out", str(tmp_path)]
        assert main(args) == 0
        spread = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert spread["mean"] == 2.0

    def test_unknown_label(self, ring_file, tmp_path):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text("n0\nzz\n", encoding="utf-8")
        args = ["evaluate", "--network", str(ring_file), "--seeds", str(seeds), "--out", str(tmp_path)]
        assert main(args) == 2


class TestExperiment:
    def test_small_suite(self, ring_file, tmp_path):
        suite = tmp_path / "suite.json"
        suite.write_text(json.dumps({
            "network": str(ring_file),
            "default_p": 0.1,
            "methods": ["mtefim", "degree"],
            "reference": "degree",
            "k_values": [3],
            "repeats": 2,
            "replicas": 200,
            "population_size": 6,
            "evaluations_per_transformation": 30,
        }), encoding="utf-8")
        assert main(["experiment", "--suite", str(suite), "--seed", "3", "--out", str(tmp_path / "out")]) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["master_seed"] == 3
        assert [row["method"] for row in report["rows"]] == ["mtefim", "degree"]
        for name in ("spread_vs_k.csv", "convergence.csv", "r_trajectory.csv", "runtime.csv"):
            assert (tmp_path / "out" / name).exists()

    def test_empty_methods(self, tmp_path):
        suite = tmp_path / "suite.yaml"
        suite.write_text("network: x.txt\nmethods: []\n", encoding="utf-8")
        assert main(["experiment", "--suite", str(suite), "--out", str(tmp_path)]) == 2

    def test_missing_suite(self, tmp_path):
        assert main(["experiment", "--out", str(tmp_path)]) == 2
