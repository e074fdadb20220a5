import json

import pytest
from click.testing import CliRunner

from ordlang.acceptance import demo_machine
from ordlang.cli import main
from ordlang.machine import Configuration, TapeState, config_to_dict, machine_to_dict


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def machine_file(tmp_path):
    path = tmp_path / "machine.json"
    path.write_text(json.dumps(machine_to_dict(demo_machine())))
    return str(path)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.json"
    cfg = Configuration(1, (TapeState((), 1, (1,)),))
    path.write_text(json.dumps(config_to_dict(cfg)))
    return str(path)


class TestOrd:
    def test_example(self, runner):
        result = runner.invoke(main, ["ord", "<1><2>"])
        assert result.exit_code == 0 and result.output.strip() == "w^2+w"

    def test_bad_program(self, runner):
        result = runner.invoke(main, ["ord", "<1"])
        assert result.exit_code != 0


class TestParse:
    def test_reports_measures(self, runner):
        result = runner.invoke(main, ["parse", "<<1>>"])
        assert "depth: 2" in result.output and "safe: False" in result.output

    def test_flags_absorption(self, runner):
        result = runner.invoke(main, ["parse", "<b>a"])
        assert "absorbed" in result.output

    def test_json(self, runner):
        result = runner.invoke(main, ["parse", "<2>", "--json"])
        assert json.loads(result.output)["ordinal"] == "w^2"


class TestRun:
    def test_golden(self, runner):
        result = runner.invoke(main, ["run", "<2>", "--n", "2"])
        assert result.exit_code == 0 and "finalLength: 11" in result.output

    def test_trace_flag(self, runner):
        result = runner.invoke(main, ["run", "<1>", "--n", "2", "--trace"])
        assert '"rule": "omega"' in result.output

    def test_input_file(self, runner, tmp_path):
        datum = tmp_path / "input.json"
        datum.write_text('["||"]')
        result = runner.invoke(main, ["run", "1", "--input", str(datum)])
        assert "finalLength: 3" in result.output

    def test_fuel_error(self, runner):
        result = runner.invoke(main, ["run", "<<1>>", "--n", "3", "--fuel", "4"])
        assert result.exit_code != 0 and "fuel" in result.output


class TestNumbers:
    def test_size(self, runner):
        result = runner.invoke(main, ["size", "--ordinal", "w^3", "--n", "2"])
        assert result.output.strip() == "27"

    def test_size_overflow_format(self, runner):
        result = runner.invoke(main, ["size", "--ordinal", "w^w", "--n", "5",
                                      "--cap", "10"])
        assert result.output.startswith("overflow(>=")

    def test_wainer(self, runner):
        result = runner.invoke(main, ["wainer", "--ordinal", "w", "--n", "2"])
        assert result.output.strip() == "23"

    def test_env_cap(self, runner, monkeypatch):
        monkeypatch.setenv("ORDLANG_CAP_BITS", "10")
        result = runner.invoke(main, ["size", "--ordinal", "w^w", "--n", "5"])
        assert result.output.startswith("overflow(>=")


class TestBounds:
    def test_elementary_band(self, runner):
        result = runner.invoke(main, ["bounds", "--ordinal", "w^(w+1)"])
        assert "lower: F_3(n)" in result.output and "upper: F_3(n+1)" in result.output

    def test_below_threshold_fails(self, runner):
        result = runner.invoke(main, ["bounds", "--ordinal", "w^2"])
        assert result.exit_code != 0 and "polynomial" in result.output


class TestSynthClassify:
    def test_synth(self, runner):
        result = runner.invoke(main, ["synth", "--ordinal", "w^2+w"])
        assert result.output.strip() == "<1><2>"

    def test_synth_symbol(self, runner):
        result = runner.invoke(main, ["synth", "--ordinal", "2", "--symbol", "n"])
        assert result.output.strip() == "nn"

    def test_classify_program(self, runner):
        result = runner.invoke(main, ["classify", "<<1>>"])
        assert "superexponential" in result.output

    def test_classify_ordinal_json(self, runner):
        result = runner.invoke(main, ["classify", "--ordinal", "w^2", "--json"])
        assert json.loads(result.output)["label"] == "TIMEF(n^2)"


class TestTm:
    def test_run(self, runner, machine_file, config_file):
        result = runner.invoke(main, ["tm", "run", "--machine", machine_file,
                                      "--input", config_file, "--steps", "2"])
        assert result.exit_code == 0
        assert json.loads(result.output)["state"] == 1

    def test_compile(self, runner, machine_file):
        result = runner.invoke(main, ["tm", "compile", "--machine", machine_file])
        assert result.exit_code == 0 and "growth check (+1 per step): True" in result.output

    def test_simulate(self, runner, machine_file, config_file):
        result = runner.invoke(main, ["tm", "simulate", "--machine", machine_file,
                                      "--input", config_file, "--ordinal", "w^2"])
        assert "steps simulated: 9" in result.output


class TestVerify:
    def test_single_suite(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "run-goldens"])
        assert result.exit_code == 0 and result.output.startswith("PASS run-goldens")

    def test_unknown_suite_exits_nonzero(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "bogus"])
        assert result.exit_code == 1 and "FAIL" in result.output

    def test_unknown_flag_rejected(self, runner):
        result = runner.invoke(main, ["verify", "--frobnicate"])
        assert result.exit_code != 0
