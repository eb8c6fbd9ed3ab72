"""Command-line client: subcommands, exit codes, reproducible JSON."""
import json
import math

from qdesk.cli import EXIT_EXEC, EXIT_OK, EXIT_PARAMS, EXIT_PARSE, main, parse_angle

BELL_QASM = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q[0] -> c[0];
measure q[1] -> c[1];
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAngleLiterals:
    def test_pi_multiples(self):
        assert parse_angle("0.8pi") == 0.8 * math.pi
        assert parse_angle("pi") == math.pi
        assert parse_angle("-pi") == -math.pi
        assert parse_angle("pi/2") == math.pi / 2
        assert parse_angle("1.5") == 1.5


class TestRunCommand:
    def test_bell_counts(self, tmp_path, capsys):
        path = tmp_path / "bell.qasm"
        path.write_text(BELL_QASM)
        code, out, _ = run_cli(capsys, "run", str(path), "--shots", "1000", "--seed", "7")
        assert code == EXIT_OK
        counts = json.loads(out)["result"]["counts"]
        assert set(counts) == {"00", "11"}
        assert abs(counts["00"] - 500) < 80

    def test_statevector_mode(self, tmp_path, capsys):
        path = tmp_path / "bell.qasm"
        path.write_text(BELL_QASM)
        code, out, _ = run_cli(capsys, "run", str(path), "--mode", "statevector")
        amps = json.loads(out)["result"]["statevector"]
        assert abs(amps[0][0] - 1 / math.sqrt(2)) < 1e-9
        assert abs(amps[3][0] - 1 / math.sqrt(2)) < 1e-9

    def test_parse_error_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.qasm"
        path.write_text("OPENQASM 2.0;\nqreg q[1];\nnope q[0];\n")
        code, _, err = run_cli(capsys, "run", str(path))
        assert code == EXIT_PARSE
        assert "line 3" in err

    def test_missing_file_exit_5(self, capsys):
        code, _, _ = run_cli(capsys, "run", "/no/such/file.qasm")
        assert code == EXIT_PARAMS


class TestAlgorithms:
    def test_grover(self, capsys):
        code, out, _ = run_cli(capsys, "grover", "--n", "2", "--target", "3")
        assert code == EXIT_OK
        assert json.loads(out)["result"]["bits"] == "11"

    def test_shor_fifteen(self, capsys):
        code, out, _ = run_cli(capsys, "shor", "--n", "15", "--seed", "1")
        assert json.loads(out)["result"]["factors"] == [3, 5]

    def test_qaoa_with_pi_literals(self, capsys):
        code, out, _ = run_cli(
            capsys, "qaoa", "--graph", "triangle", "--gamma", "0.8pi", "--beta", "0.4pi"
        )
        assert abs(json.loads(out)["result"]["expected_cut"] - 1.999) < 0.005

    def test_unknown_subcommand_exit_4(self, capsys):
        from qdesk.cli import EXIT_UNKNOWN

        code, _, err = run_cli(capsys, "teleport", "--n", "2")
        assert code == EXIT_UNKNOWN and "teleport" in err

    def test_invalid_params_exit_5(self, capsys):
        code, _, _ = run_cli(capsys, "grover", "--n", "2", "--target", "9")
        assert code == EXIT_PARAMS or code == EXIT_EXEC

    def test_prep_emits_parseable_qasm(self, capsys):
        from qdesk.qasm import parse_qasm

        amps = json.dumps([[1 / math.sqrt(2), 0.0], [0.0, 0.0],
                           [0.0, 0.0], [1 / math.sqrt(2), 0.0]])
        code, out, _ = run_cli(capsys, "prep", "--amps", amps)
        assert code == EXIT_OK
        body = json.loads(out)["result"]
        circuit = parse_qasm(body["qasm"])
        assert circuit.n_qubits == 2 and body["cnot_count"] == 1

    def test_text_output(self, capsys):
        code, out, _ = run_cli(capsys, "bv", "--hidden", "101", "--output", "text")
        assert code == EXIT_OK
        assert "bits: 101" in out

    def test_tomography_from_circuit(self, tmp_path, capsys):
        path = tmp_path / "plus.qasm"
        path.write_text("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n")
        code, out, _ = run_cli(capsys, "tomography", "--qasm-path", str(path))
        body = json.loads(out)["result"]
        assert code == EXIT_OK and body["eigenvalues"][0] > 0.9999

    def test_tomography_from_record(self, tmp_path, capsys):
        record = {"z": {"0": 500, "1": 500}, "y": {"0": 500, "1": 500},
                  "x": {"0": 1000, "1": 0}}
        path = tmp_path / "rec.json"
        path.write_text(json.dumps(record))
        code, out, _ = run_cli(capsys, "tomography", "--record-path", str(path))
        body = json.loads(out)["result"]
        assert code == EXIT_OK and body["eigenvalues"][0] > 0.9999

    def test_qec_subcommand(self, capsys):
        code, out, _ = run_cli(
            capsys, "qec", "--noise-kind", "bitflip", "--p", "0.1",
            "--shots", "5000", "--seed", "2",
        )
        body = json.loads(out)["result"]
        assert abs(body["p_encoded"] - 0.028) < 0.01


class TestReproducibility:
    def test_identical_seed_identical_json(self, capsys):
        _, first, _ = run_cli(capsys, "minfind", "--values", "5,2,8,1", "--seed", "9")
        _, second, _ = run_cli(capsys, "minfind", "--values", "5,2,8,1", "--seed", "9")
        assert first == second

    def test_walk_four_steps(self, capsys):
        code, out, _ = run_cli(capsys, "walk", "--nodes", "4", "--steps", "4")
        probs = json.loads(out)["result"]["probabilities"]
        assert abs(probs["100"] - 1.0) < 1e-9
