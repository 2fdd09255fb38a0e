"""Command-line surface: files, exit codes, determinism."""

import json
import subprocess
import sys

import numpy as np
import pytest

from checkerlag.cli import main


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture
def coeff_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"n": 1, "a": [2.0], "b": [0.0]}))
    return path


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "g.json"
    assert run_cli("grid", "--preset", "padua", "--n", "3",
                   "--tau", "0", "--out", str(path)) == 0
    return path


class TestNodesCommand:
    def test_example(self, coeff_file, tmp_path, capsys):
        assert run_cli("nodes", "--coeffs", str(coeff_file)) == 0
        data = json.loads(capsys.readouterr().out)
        assert data == {"nodes": [0.5, -0.5]}

    def test_missing_file(self, tmp_path):
        assert run_cli("nodes", "--coeffs", str(tmp_path / "nope.json")) == 1


class TestCoeffsCommand:
    def test_round_trip_through_files(self, tmp_path, coeff_file, capsys):
        nodes_path = tmp_path / "n.json"
        assert run_cli("nodes", "--coeffs", str(coeff_file),
                       "--out", str(nodes_path)) == 0
        assert run_cli("coeffs", "--nodes", str(nodes_path), "--normalize-a0") == 0
        data = json.loads(capsys.readouterr().out)
        np.testing.assert_allclose(data["a"], [2.0], rtol=1e-9)
        np.testing.assert_allclose(data["b"], [0.0], atol=1e-9)

    def test_bad_nodes_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"nodes": [1.0, 1.0]}))
        assert run_cli("coeffs", "--nodes", str(path)) == 1


class TestGridCommand:
    def test_from_coeff_files(self, tmp_path):
        xc = tmp_path / "x.json"
        yc = tmp_path / "y.json"
        xc.write_text(json.dumps({"n": 1, "a": [2.0], "b": [0.0]}))
        yc.write_text(json.dumps({"n": 2, "a": [1.0, 2.0], "b": [0.0, 0.0]}))
        out = tmp_path / "g.json"
        assert run_cli("grid", "--xcoeffs", str(xc), "--ycoeffs", str(yc),
                       "--sigma", "1", "--tau", "0", "--out", str(out)) == 0
        data = json.loads(out.read_text())
        assert data["n"] == 1 and data["sigma"] == 1
        assert data["checkerboard"]["tau"] == 0

    def test_sigma_mismatch(self, tmp_path):
        xc = tmp_path / "x.json"
        yc = tmp_path / "y.json"
        xc.write_text(json.dumps({"n": 1, "a": [2.0], "b": [0.0]}))
        yc.write_text(json.dumps({"n": 2, "a": [1.0, 2.0], "b": [0.0, 0.0]}))
        assert run_cli("grid", "--xcoeffs", str(xc), "--ycoeffs", str(yc),
                       "--sigma", "3") == 1

    def test_usage_error_without_inputs(self, capsys):
        with pytest.raises(SystemExit) as err:
            run_cli("grid", "--tau", "0")
        assert err.value.code == 64


class TestVerifyCommand:
    def test_padua_passes(self, grid_file, capsys):
        assert run_cli("verify", "--grid", str(grid_file), "--tau", "0") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["ok"] is True
        assert report["rank"] == report["N_tau"]
        assert report["span_equal"] is True

    def test_duplicate_node_exits_1(self, grid_file, tmp_path):
        data = json.loads(grid_file.read_text())
        data["xnodes"][1] = data["xnodes"][0]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        assert run_cli("verify", "--grid", str(bad), "--tau", "0") == 1

    def test_inconsistent_coeffs_exit_1(self, grid_file, tmp_path):
        data = json.loads(grid_file.read_text())
        data["xnodes"] = [x + 0.25 for x in data["xnodes"]]
        bad = tmp_path / "bad2.json"
        bad.write_text(json.dumps(data))
        assert run_cli("verify", "--grid", str(bad), "--tau", "0") == 1


class TestBasisCommand:
    def test_lattice_dump(self, grid_file, tmp_path):
        out = tmp_path / "b.csv"
        assert run_cli("basis", "--grid", str(grid_file), "--tau", "0",
                       "--eval-lattice", "5", "--out", str(out)) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "s,v,point_x,point_y,L_value"
        # one block of 25 lattice points per anchor node
        n_anchors = len({line.split(",")[0] + "," + line.split(",")[1]
                         for line in lines[1:]})
        assert len(lines) - 1 == 25 * n_anchors


class TestInterpCommand:
    def test_evaluates_samples(self, grid_file, tmp_path, capsys):
        data = json.loads(grid_file.read_text())
        rows = ["r,u,value"]
        for p in data["checkerboard"]["points"]:
            rows.append(f"{p['r']},{p['u']},{p['x'] * p['y']}")
        samples = tmp_path / "s.csv"
        samples.write_text("\n".join(rows) + "\n")
        points = tmp_path / "p.csv"
        points.write_text("x,y\n0.25,0.5\n-0.3,0.1\n")
        assert run_cli("interp", "--grid", str(grid_file), "--tau", "0",
                       "--samples", str(samples), "--points", str(points)) == 0
        out_lines = capsys.readouterr().out.splitlines()
        assert out_lines[0] == "x,y,p"
        assert len(out_lines) == 3

    def test_missing_sample_exits_1(self, grid_file, tmp_path):
        samples = tmp_path / "s.csv"
        samples.write_text("r,u,value\n0,0,1.0\n")
        points = tmp_path / "p.csv"
        points.write_text("0.0,0.0\n")
        assert run_cli("interp", "--grid", str(grid_file), "--tau", "0",
                       "--samples", str(samples), "--points", str(points)) == 1


class TestDeterminism:
    def test_byte_identical_outputs(self, tmp_path):
        outs = []
        for i in (0, 1):
            path = tmp_path / f"g{i}.json"
            assert run_cli("grid", "--preset", "chebyshev", "--n", "5",
                           "--tau", "1", "--out", str(path)) == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]

    def test_file_round_trip_matches_in_process(self, tmp_path, capsys):
        from checkerlag import NodeSequence, coeffs_from_nodes
        nodes = [0.9, 0.2, -0.4, -1.1]
        path = tmp_path / "n.json"
        path.write_text(json.dumps({"nodes": nodes}))
        assert run_cli("coeffs", "--nodes", str(path)) == 0
        via_cli = json.loads(capsys.readouterr().out)
        direct = coeffs_from_nodes(NodeSequence(np.array(nodes)))
        np.testing.assert_array_equal(via_cli["a"], direct.a)
        np.testing.assert_array_equal(via_cli["b"], direct.b)


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run([sys.executable, "-m", "checkerlag.cli", "--help"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "checkerboard" in proc.stdout

    def test_usage_exit_code(self):
        proc = subprocess.run([sys.executable, "-m", "checkerlag.cli", "frobnicate"],
                              capture_output=True, text=True)
        assert proc.returncode == 64
