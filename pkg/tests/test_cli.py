import pytest

from helpers_machines import (const_output_machine, fan_ptm, parity_machine)
from promiselab.circuit import Circuit, Gate, encode_circuit
from promiselab.cli import dispatch
from promiselab.ptm import encode_ptm
from promiselab.tm import encode_godel

EXAMPLE_BITS = "01011010010110110111011010111"


@pytest.fixture
def parity_file(tmp_path):
    path = tmp_path / "parity.tm"
    path.write_text(encode_godel(parity_machine()) + "\n")
    return str(path)


@pytest.fixture
def coin_file(tmp_path):
    path = tmp_path / "coin.ptm"
    path.write_text(encode_ptm(fan_ptm(1, 2)))
    return str(path)


@pytest.fixture
def example_circuit_file(tmp_path):
    path = tmp_path / "example.qc"
    path.write_text(EXAMPLE_BITS + "\n")
    return str(path)


@pytest.fixture
def h_generator_file(tmp_path):
    gen = const_output_machine("0101")
    path = tmp_path / "gen.tm"
    path.write_text(encode_godel(gen))
    return str(path)


class TestRunCommand:
    def test_parity_run(self, parity_file, capsys):
        code = dispatch(["run", "--machine", parity_file,
                         "--input", "101", "--fuel", "50"])
        out = capsys.readouterr().out
        assert code == 0
        assert "halted\toutput=0\tsteps=4" in out

    def test_fuel_exhaustion_reported(self, parity_file, capsys):
        code = dispatch(["run", "--machine", parity_file,
                         "--input", "101", "--fuel", "2"])
        assert code == 0
        assert "fuel-exhausted\tsteps=2" in capsys.readouterr().out


class TestBranchesCommand:
    def test_coin_fractions(self, coin_file, capsys):
        code = dispatch(["branches", "--machine", coin_file,
                         "--input", "11", "--fuel", "10"])
        out = capsys.readouterr().out
        assert code == 0
        assert "1\t1\t2\t1/2\t1/2" in out


class TestSimulateCommand:
    def test_worked_example_listing(self, example_circuit_file, capsys):
        code = dispatch(["simulate", "--circuit", example_circuit_file])
        out = capsys.readouterr().out
        assert code == 0
        assert "H q2; T q1; CNOT 2→3; CNOT 1→3" in out
        assert "p_acc" in out

    def test_identical_invocations_are_byte_identical(self, example_circuit_file,
                                                      capsys):
        dispatch(["simulate", "--circuit", example_circuit_file])
        first = capsys.readouterr().out
        dispatch(["simulate", "--circuit", example_circuit_file])
        second = capsys.readouterr().out
        assert first == second


class TestDecideCommand:
    def test_single_h_is_outside(self, h_generator_file, capsys):
        code = dispatch(["decide", "bqp", "--gen", h_generator_file,
                         "--input", "1"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "outside-promise"

    def test_threshold_flags(self, h_generator_file, capsys):
        code = dispatch(["decide", "bqp", "--gen", h_generator_file,
                         "--input", "1", "--c", "1/2", "--s", "1/3"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "yes"


class TestClassifyCommand:
    def test_builtin(self, capsys):
        assert dispatch(["classify", "--problem", "builtin:parity",
                         "--input", "101"]) == 0
        assert capsys.readouterr().out.strip() == "no"

    def test_machine_backed(self, parity_file, capsys):
        assert dispatch(["classify", "--problem", f"machine:{parity_file}",
                         "--input", "011"]) == 0
        assert capsys.readouterr().out.strip() == "no"

    def test_domain_error_exit_code(self, tmp_path, capsys):
        # the identity machine outputs its input, which is not a verdict
        path = tmp_path / "id.tm"
        path.write_text("10101000")
        code = dispatch(["classify", "--problem", f"machine:{path}",
                         "--input", "11"])
        err = capsys.readouterr().err
        assert code == 1
        assert "NotTotalDecider" in err

    def test_missing_file_is_domain_error(self, capsys):
        code = dispatch(["classify", "--problem", "machine:/nonexistent",
                         "--input", "1"])
        assert code == 1


class TestUsageErrors:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            dispatch(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_problem_reference(self):
        with pytest.raises(SystemExit) as exc:
            dispatch(["classify", "--problem", "bogus", "--input", "1"])
        assert exc.value.code == 2


class TestGaplangCommand:
    def test_succ_member_odd_length_is_false(self, capsys):
        assert dispatch(["gaplang", "--r", "succ", "--member", "101"]) == 0
        assert capsys.readouterr().out.strip() == "false"

    def test_succ_member_even_length_is_true(self, capsys):
        assert dispatch(["gaplang", "--r", "succ", "--member", "11"]) == 0
        assert capsys.readouterr().out.strip() == "true"

    def test_affine_table(self, capsys):
        assert dispatch(["gaplang", "--r", "affine:2:2", "--table", "14"]) == 0
        out = capsys.readouterr().out
        assert "start\tend\tmember" in out
        assert "0\t2\ttrue" in out
        assert "2\t6\tfalse" in out
        assert "6\t14\ttrue" in out


class TestEnumerateCommand:
    def test_p_family_table(self, capsys):
        assert dispatch(["enumerate", "p", "0", "--max-len", "2"]) == 0
        out = capsys.readouterr().out
        assert "word\tverdict" in out
        assert "(empty)\tno" in out

    def test_unknown_family_is_domain_error(self, capsys):
        code = dispatch(["enumerate", "martians", "0"])
        assert code == 1


class TestDiagonalizeCommand:
    def test_toy_run_emits_all_sections(self, capsys):
        code = dispatch([
            "diagonalize",
            "--a", "builtin:parity",
            "--a-pres", "builtins:const-yes,const-no,len-even",
            "--aprime", "builtin:const-no",
            "--aprime-pres", "builtins:const-yes,parity,ones-promise",
            "--bound", "6", "--table", "12",
        ])
        out = capsys.readouterr().out
        assert code == 0
        for section in ("## r-table", "## intervals", "## witnesses",
                        "## reduction-check"):
            assert section in out
        final = out.strip().splitlines()[-1]
        checked, violations = final.split("\t")
        assert violations == "0"

    def test_ladner_run(self, capsys):
        code = dispatch([
            "ladner",
            "--a", "builtin:parity",
            "--pres", "builtins:const-yes,const-no,len-even",
            "--bound", "6", "--table", "8",
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "## reduction-to-a" in out
        final = out.strip().splitlines()[-1]
        assert final.split("\t")[1] == "0"


class TestDecideWitnessClasses:
    @pytest.fixture
    def copy_generator_file(self, tmp_path):
        circ = Circuit((Gate("CNOT", (2, 1)),), witness_qubits=1)
        path = tmp_path / "copygen.tm"
        path.write_text(encode_godel(const_output_machine(encode_circuit(circ))))
        return str(path)

    def test_qcma(self, copy_generator_file, capsys):
        assert dispatch(["decide", "qcma", "--gen", copy_generator_file,
                         "--input", "0"]) == 0
        assert capsys.readouterr().out.strip() == "yes"

    def test_qma(self, copy_generator_file, capsys):
        assert dispatch(["decide", "qma", "--gen", copy_generator_file,
                         "--input", "0"]) == 0
        assert capsys.readouterr().out.strip() == "yes"


class TestConfiguredCaps:
    def test_enumerate_word_length_cap(self, capsys):
        code = dispatch(["enumerate", "p", "0", "--max-len", "30"])
        assert code == 1
        assert "CapExceeded" in capsys.readouterr().err

    def test_run_uses_default_fuel_from_config(self, tmp_path, parity_file,
                                               capsys):
        cfg = tmp_path / "lab.cfg"
        cfg.write_text("default-fuel = 2\n")
        code = dispatch(["--config", str(cfg), "run",
                         "--machine", parity_file, "--input", "101"])
        assert code == 0
        assert "fuel-exhausted\tsteps=2" in capsys.readouterr().out


class TestConfigFile:
    def test_thresholds_from_file(self, tmp_path, h_generator_file, capsys):
        cfg = tmp_path / "lab.cfg"
        cfg.write_text("threshold-c = 1/2\nthreshold-s = 1/4\n")
        code = dispatch(["--config", str(cfg), "decide", "bqp",
                         "--gen", h_generator_file, "--input", "1"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "yes"

    def test_flags_override_file(self, tmp_path, h_generator_file, capsys):
        cfg = tmp_path / "lab.cfg"
        cfg.write_text("threshold-c = 1/2\n")
        code = dispatch(["--config", str(cfg), "decide", "bqp",
                         "--gen", h_generator_file, "--input", "1",
                         "--c", "2/3"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "outside-promise"

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "lab.cfg"
        cfg.write_text("frobnication = 9\n")
        code = dispatch(["--config", str(cfg), "classify",
                         "--problem", "builtin:parity", "--input", "1"])
        assert code == 1
        assert "frobnication" in capsys.readouterr().err
