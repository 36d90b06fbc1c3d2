import json

import numpy as np
import pytest

from latticelife.cli import main


def _csv_matrix(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("#")
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:]]
    labels = header[1:]
    matrix = np.array([[float(x) for x in row[1:]] for row in rows])
    return labels, matrix


def test_run_writes_artifacts(tmp_path, capsys):
    code = main(["run", "--mode", "quantum1", "--N", "5", "--out", str(tmp_path)])
    assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert names == {
        "quantum1_N5_transition.csv",
        "quantum1_N5_life.csv",
        "quantum1_N5_spectrum.json",
        "quantum1_N5_summary.json",
        "quantum1_N5_heatmap.svg",
        "quantum1_N5_life.svg",
    }
    labels, matrix = _csv_matrix(tmp_path / "quantum1_N5_transition.csv")
    assert labels == ["n=0", "n=2", "n=4", "n=6", "n=8"]
    assert np.abs(matrix.sum(axis=0) - 1.0).max() < 1e-10
    spectrum = json.loads((tmp_path / "quantum1_N5_spectrum.json").read_text())
    assert spectrum["lambda_max"][0] == pytest.approx(2.14224, rel=1e-3)
    summary = json.loads((tmp_path / "quantum1_N5_summary.json").read_text())
    assert summary["eta"] == -0.9
    assert set(summary["life_expectancy"]) == {"n=2", "n=4", "n=6", "n=8"}


def test_run_superposition_column_count(tmp_path):
    code = main(["run", "--mode", "quantum1-sp", "--N", "5", "--out", str(tmp_path), "--no-plot"])
    assert code == 0
    labels, matrix = _csv_matrix(tmp_path / "quantum1-sp_N5_transition.csv")
    assert labels == ["2+6", "2-6", "4+8", "4-8", "n=0"]
    assert matrix.shape == (5, 5)


def test_run_json_format(tmp_path):
    code = main(["run", "--mode", "realquantum1", "--N", "5", "--out", str(tmp_path),
                 "--format", "json", "--no-plot"])
    assert code == 0
    doc = json.loads((tmp_path / "realquantum1_N5_transition.json").read_text())
    assert doc["states"][0] == "n=0"
    assert abs(sum(row[0] for row in doc["p"]) - 1.0) < 1e-10


def test_run_summaries_compare_across_modes(tmp_path):
    # quantum life expectancy beats the real rule at every initial state,
    # read back from the emitted summaries
    assert main(["run", "--mode", "quantum1", "--N", "5", "--out", str(tmp_path), "--no-plot"]) == 0
    assert main(["run", "--mode", "realquantum1", "--N", "5", "--out", str(tmp_path), "--no-plot"]) == 0
    quantum = json.loads((tmp_path / "quantum1_N5_summary.json").read_text())
    real = json.loads((tmp_path / "realquantum1_N5_summary.json").read_text())
    for label, value in quantum["life_expectancy"].items():
        assert value > real["life_expectancy"][label]


def test_run_requires_mode(tmp_path, capsys):
    code = main(["run", "--out", str(tmp_path)])
    assert code == 3
    assert "requires --mode" in capsys.readouterr().err


def test_bad_arguments_exit_three(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--mode", "nonsense"])
    assert exc.value.code == 3


def test_numerical_error_exit_two(tmp_path, capsys):
    # even cutoff cannot host the superposition pairing
    code = main(["run", "--mode", "quantum1-sp", "--N", "4", "--out", str(tmp_path)])
    assert code == 2
    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["error"] == "DomainError"
    assert "odd cutoff" in payload["message"]


def test_spectrum_stdout(capsys):
    code = main(["spectrum", "--mode", "quantum1", "--N", "5"])
    assert code == 0
    documents = json.loads(capsys.readouterr().out)
    assert len(documents) == 1
    assert documents[0]["N"] == 5
    moduli = sorted(abs(complex(re, im)) for re, im in documents[0]["eigenvalues"])
    assert moduli[-1] == pytest.approx(2.14224 * np.sqrt(2), rel=1e-3)


def test_config_file_defaults_and_flag_precedence(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text(
        "# reference setup\n"
        "mode = realquantum1\n"
        "N = 5, 9\n"
        "plot = false\n"
        f"out = {tmp_path / 'from_config'}\n"
    )
    code = main(["run", "--config", str(config), "--N", "5"])
    assert code == 0
    names = {p.name for p in (tmp_path / "from_config").iterdir()}
    # the explicit --N 5 flag beats the config's N = 5, 9
    assert "realquantum1_N5_transition.csv" in names
    assert not any("N9" in name for name in names)
    assert not any(name.endswith(".svg") for name in names)


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("modus = quantum1\n")
    code = main(["run", "--config", str(config)])
    assert code == 2
    assert json.loads(capsys.readouterr().err.strip())["error"] == "ValueError"


def test_death_state_flag(tmp_path):
    code = main(["run", "--mode", "quantum1", "--N", "5", "--out", str(tmp_path),
                 "--death-state", "2", "--no-plot"])
    assert code == 0
    doc = json.loads((tmp_path / "quantum1_N5_summary.json").read_text())
    assert set(doc["life_expectancy"]) == {"n=0", "n=4", "n=6", "n=8"}


def test_verify_passes(capsys):
    code = main(["verify"])
    assert code == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.strip().endswith("checks passed")


def test_reproduce_small_and_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["reproduce-paper", "--N", "5", "--out", str(out1)]) == 0
    first = capsys.readouterr().out
    assert "quantum1 > quantum1-sp > realquantum1" in first
    assert main(["reproduce-paper", "--N", "5", "--out", str(out2)]) == 0
    for path in sorted(out1.iterdir()):
        twin = out2 / path.name
        assert twin.exists()
        assert path.read_bytes() == twin.read_bytes(), f"{path.name} differs"
