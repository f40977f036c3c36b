"""State-file round trips and the batch command line interface."""

import json
import math

import numpy as np
import pytest

from cohrand import (
    DensityMatrix,
    OutcomeStream,
    maximally_coherent_state,
    pure_state,
    random_density,
)
from cohrand.cli import main
from cohrand.errors import NotPSD
from cohrand.stateio import load_state, load_stream, save_state, save_stream


@pytest.fixture
def plus_file(tmp_path):
    path = tmp_path / "plus.json"
    save_state(maximally_coherent_state(2), path)
    return str(path)


class TestStateFiles:
    def test_density_round_trip(self, tmp_path):
        rho = random_density(3, 3, seed=0)
        path = tmp_path / "rho.json"
        save_state(rho, path)
        loaded = load_state(path)
        assert isinstance(loaded, DensityMatrix)
        assert np.allclose(loaded.mat, rho.mat)

    def test_pure_round_trip(self, tmp_path):
        psi = pure_state([0.6, 0.8j])
        path = tmp_path / "psi.json"
        save_state(psi, path)
        loaded = load_state(path)
        assert np.allclose(loaded.amps, psi.amps)

    def test_bloch_input(self, tmp_path):
        path = tmp_path / "b.json"
        path.write_text(json.dumps({"bloch": [0.3, 0.4, 0.2]}))
        rho = load_state(path)
        assert rho.dim == 2

    def test_invalid_density_raises_named_error(self, tmp_path):
        path = tmp_path / "bad.json"
        entries = [[1.5, 0], [0, 0], [0, 0], [-0.5, 0]]
        path.write_text(json.dumps({"dim": 2, "entries": entries}))
        with pytest.raises(NotPSD):
            load_state(path)

    def test_missing_keys(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("{}")
        with pytest.raises(ValueError):
            load_state(path)

    def test_wrong_entry_count(self, tmp_path):
        path = tmp_path / "short.json"
        path.write_text(json.dumps({"dim": 2, "entries": [[1.0, 0.0]]}))
        with pytest.raises(ValueError):
            load_state(path)


class TestStreamFiles:
    def test_round_trip(self, tmp_path):
        stream = OutcomeStream(np.array([0, 1, 1, 0], dtype=np.int64), 2, 7)
        path = tmp_path / "s.txt"
        save_stream(stream, path)
        loaded = load_stream(path)
        assert np.array_equal(loaded.symbols, stream.symbols)
        assert loaded.source_dim == 2 and loaded.seed == 7

    def test_header_required(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0\n1\n")
        with pytest.raises(ValueError):
            load_stream(path)

    def test_out_of_range_symbols(self, tmp_path):
        path = tmp_path / "oob.txt"
        path.write_text("# dim=2 seed=0\n0\n5\n")
        with pytest.raises(ValueError):
            load_stream(path)


class TestCli:
    def test_measures(self, plus_file, capsys):
        assert main(["measures", plus_file]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["l1"] == pytest.approx(1.0)
        assert out["r_pure"] == pytest.approx(1.0)
        assert out["qubit_analytic"] == pytest.approx(1.0)

    def test_roof(self, tmp_path, capsys):
        path = tmp_path / "rho.json"
        save_state(random_density(2, 2, seed=1), path)
        assert main(["roof", str(path), "--restarts", "4"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert 0.0 <= out["value"] <= 1.0
        assert out["decomposition"]

    def test_verify_passes(self, capsys):
        assert main(["verify", "--samples", "25", "--max-dim", "3"]) == 0
        reports = json.loads(capsys.readouterr().out)
        assert all(r["passed"] for r in reports)

    def test_distill_simulate(self, capsys):
        assert main(["distill", "--alpha-sq", "0.8", "--n", "20", "--m", "10"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["mode"] == "simulate"
        assert out["r"] == math.floor(out["total_log2_dim"] + 1e-12)

    def test_distill_exact(self, capsys):
        assert main(["distill", "--alpha-sq", "0.5", "--n", "4", "--exact"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["subspace_dims"] == [1, 4, 6, 4, 1]

    def test_sample_to_file(self, plus_file, tmp_path):
        out_path = tmp_path / "stream.txt"
        assert main(["sample", plus_file, "--n", "100", "--out", str(out_path)]) == 0
        stream = load_stream(out_path)
        assert len(stream.symbols) == 100

    def test_sample_rejects_density(self, tmp_path):
        path = tmp_path / "rho.json"
        save_state(random_density(2, 2, seed=2), path)
        with pytest.raises(SystemExit):
            main(["sample", str(path), "--n", "10"])

    def test_pipeline(self, plus_file, capsys):
        assert main(["pipeline", plus_file, "--groups", "10", "--group-n", "10"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["path_a_bits"] > 0
        assert out["path_b_bits"] > 0
