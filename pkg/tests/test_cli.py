import io
import json

import pytest

from src.cli.client import QracCli, parse_config, UsageError
from src.circuit.export import NATIVE_MAGIC
from src.config import Config
from src.core.errors import OutputError
from src.workflow import checks, serialize
from src.workflow.serialize import write_atomic


def run(argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = QracCli(stdout, stderr).run(argv)
    return code, stdout.getvalue(), stderr.getvalue()


# ---------- 參數解析 ----------


def test_parse_config_defaults():
    config = parse_config(["simulate", "--n", "3"])
    assert config.command == "simulate"
    assert config.shots == 100_000
    assert config.seed == 0
    assert config.noise == 0.0
    assert config.format is None


def test_analyze_accepts_single_n():
    assert parse_config(["analyze", "--n", "4"]).n_values == [4]
    assert parse_config(["analyze", "--n-range", "2..5"]).n_values == [2, 3, 4, 5]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["verify"],
        ["verify", "--n", "1"],
        ["circuit", "--n", "3"],
        ["circuit", "--n", "3", "--k", "1", "--y", "100"],
        ["circuit", "--n", "3", "--k", "4"],
        ["circuit", "--n", "3", "--y", "12"],
        ["circuit", "--n", "3", "--y", "10"],
        ["encode", "--n", "3", "--format", "csv"],
        ["simulate", "--n", "3", "--noise", "1.0"],
        ["simulate", "--n", "3", "--shots", "0"],
        ["simulate", "--n", "3", "--seed", "-4"],
        ["analyze"],
        ["analyze", "--n-range", "5..2"],
        ["export", "--n", "3", "--k", "0"],
    ],
)
def test_usage_errors(argv):
    with pytest.raises(UsageError):
        parse_config(argv)
    code, stdout, stderr = run(argv)
    assert code == 2
    assert stdout == ""
    assert stderr.startswith("error: usage: ")
    assert stderr.count("\n") == 1


def test_dense_limit_out_of_range():
    code, _, stderr = run(["verify", "--n", "3", "--dense-limit", "20"])
    assert code == 2
    assert "QRAC_DENSE_LIMIT" in stderr
    assert Config.DENSE_LIMIT != 20
    Config.validate()


def test_dense_path_above_limit_is_usage_error():
    code, _, stderr = run(["encode", "--n", "12"])
    assert code == 2
    assert stderr.startswith("error: usage: ")


def test_dense_limit_override_applies():
    code, stdout, _ = run(["verify", "--n", "3", "--dense-limit", "2"])
    assert code == 0
    assert "SKIP" in stdout
    assert Config.DENSE_LIMIT == 2


# ---------- 指令 ----------


def test_verify():
    code, stdout, stderr = run(["verify", "--n", "3"])
    assert code == 0
    assert stderr == ""
    lines = stdout.splitlines()
    assert len(lines) == 13
    assert all(line.startswith("PASS") for line in lines[:12])
    assert lines[-1] == "12/12 checks passed for n=3"


def test_verify_json():
    code, stdout, _ = run(["verify", "--n", "3", "--format", "json"])
    assert code == 0
    payload = json.loads(stdout)
    assert payload["n"] == 3
    assert len(payload["checks"]) == 12
    assert {check["status"] for check in payload["checks"]} == {"PASS"}
    assert payload["oracle"] == Config.get_oracle_config()


def test_verify_json_reports_dense_settings():
    code, stdout, _ = run(["verify", "--n", "3", "--dense-limit", "4", "--format", "json"])
    assert code == 0
    oracle = json.loads(stdout)["oracle"]
    assert oracle["dense_limit"] == 4
    assert oracle["eigen_dim_limit"] == 8
    assert oracle["eigen_method"] == Config.EIGEN_METHOD


def test_verify_failure_exit_code(monkeypatch):
    def broken(inst):
        checks._require(False, "forced")

    monkeypatch.setattr(checks, "CHECKS", (("broken", broken),))
    code, stdout, stderr = run(["verify", "--n", "3"])
    assert code == 1
    assert stdout.startswith("FAIL")
    assert stderr == "error: check-failed: broken\n"


def test_circuit_default_qasm_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, stdout, _ = run(["circuit", "--n", "3", "--k", "1", "--format", "qasm"])
    assert code == 0
    assert stdout.strip() == "qrac_n3_k1.qasm"
    text = (tmp_path / "qrac_n3_k1.qasm").read_text()
    assert text.startswith("OPENQASM 2.0;\n")
    assert sum(1 for line in text.splitlines() if line.startswith("cx ")) == 2


def test_circuit_encoding_native_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, stdout, _ = run(["circuit", "--n", "3", "--y", "100"])
    assert code == 0
    assert stdout.strip() == "qrac_n3_y100.qrac"
    lines = (tmp_path / "qrac_n3_y100.qrac").read_text().splitlines()
    assert lines[0] == NATIVE_MAGIC
    assert lines[1] == "# n=3 y=100"


def test_circuit_explicit_output(tmp_path):
    target = tmp_path / "nested" / "decode.qrac"
    code, stdout, _ = run(["circuit", "--n", "4", "--k", "4", "--output", str(target)])
    assert code == 0
    assert stdout.strip() == str(target)
    assert target.read_text().startswith(NATIVE_MAGIC)
    assert not [p for p in target.parent.iterdir() if p.name.endswith(".tmp")]


def test_encode():
    code, stdout, _ = run(["encode", "--n", "3"])
    assert code == 0
    payload = json.loads(stdout)
    assert payload["qubits"] == 2
    assert len(payload["codebook"]) == 8


def test_simulate_is_deterministic():
    argv = ["simulate", "--n", "3", "--shots", "20000", "--seed", "7"]
    first = run(argv)
    second = run(argv)
    assert first == second
    assert first[0] == 0
    assert first[1].startswith("n=3 shots=20000 seed=7 ")
    assert "witness=true" in first[1]


def test_simulate_json():
    code, stdout, _ = run(["simulate", "--n", "4", "--shots", "5000", "--seed", "1", "--format", "json"])
    assert code == 0
    payload = json.loads(stdout)
    assert payload["shots"] == 5000
    assert 0.0 <= payload["empirical_p"] <= 1.0


def test_analyze_csv(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "EIGEN_METHOD", "lapack")
    target = tmp_path / "report.csv"
    code, _, _ = run(["analyze", "--n-range", "2..8", "--format", "csv", "--output", str(target)])
    assert code == 0
    rows = target.read_text().splitlines()
    assert rows[0].startswith("n,p_quantum_exact,p_quantum_closed")
    assert len(rows) == 8
    assert [row.split(",")[0] for row in rows[1:]] == [str(n) for n in range(2, 9)]


def test_analyze_json_is_reproducible(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for target in (first, second):
        code, _, _ = run(
            ["analyze", "--n-range", "2..4", "--shots", "3000", "--seed", "2", "--output", str(target)]
        )
        assert code == 0
    assert first.read_bytes() == second.read_bytes()
    payload = json.loads(first.read_text())
    assert payload["schema"] == "qrac-report/1"
    assert [item["n"] for item in payload["reports"]] == [2, 3, 4]
    assert payload["reports"][1]["commutator_norms"]["1,2"] == pytest.approx(1.0)


def test_export():
    code, stdout, _ = run(["export", "--n", "4"])
    assert code == 0
    payload = json.loads(stdout)
    assert [d["k"] for d in payload["decompositions"]] == [1, 2, 3, 4]
    assert all(len(d["terms"]) == 4 for d in payload["decompositions"])

    code, stdout, _ = run(["export", "--n", "4", "--k", "2"])
    assert [d["k"] for d in json.loads(stdout)["decompositions"]] == [2]


def test_unwritable_output_is_clean_usage_error(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    code, stdout, stderr = run(["encode", "--n", "3", "--output", str(blocker / "codebook.json")])
    assert code == 2
    assert stdout == ""
    assert stderr.startswith("error: usage: Failed to write ")
    assert stderr.count("\n") == 1


def test_write_atomic_raises_output_error(tmp_path, monkeypatch):
    target = tmp_path / "report.json"

    def refuse(src, dst):
        raise PermissionError("read-only target")

    monkeypatch.setattr(serialize.os, "replace", refuse)
    with pytest.raises(OutputError) as info:
        write_atomic(target, "{}\n")
    assert isinstance(info.value, OSError)
    assert not target.exists()
    assert list(tmp_path.iterdir()) == []
