import json

import pytest
from click.testing import CliRunner

from homlim.cli import main, parse_quantity


@pytest.fixture
def runner():
    return CliRunner()


class TestQuantityParsing:
    def test_plain_numbers(self):
        assert parse_quantity("1e12") == 1e12
        assert parse_quantity("3.5") == 3.5
        assert parse_quantity("-2e-3") == -2e-3

    def test_suffixes(self):
        assert parse_quantity("1102Pflop/s") == pytest.approx(1.102e18)
        assert parse_quantity("122.3PB/s") == pytest.approx(1.223e17)
        assert parse_quantity("3.1TB") == pytest.approx(3.1e12)
        assert parse_quantity("826mm2") == pytest.approx(826e-6)
        assert parse_quantity("370m2") == 370.0

    def test_unknown_suffix(self):
        import click
        with pytest.raises(click.UsageError):
            parse_quantity("5parsecs")


class TestSolve:
    def test_json_output(self, runner):
        result = runner.invoke(main, ["solve", "--machine", "frontier",
                                      "--alg", "cg", "--n", "1e9"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["machine"] == "frontier"
        assert data["algorithm"] == "CG"
        assert data["regime"] in ("compute-bound", "memory-bound", "latency-bound")
        assert 0 < data["v_star"] <= 370.0
        assert data["total"] == pytest.approx(
            data["t_work"] + data["t_io"] + data["t_lat"], rel=1e-9)

    def test_fixed_v_evaluation(self, runner):
        result = runner.invoke(main, ["solve", "--machine", "a100-homogeneous",
                                      "--alg", "mxm", "--n", "1e6", "--v", "1"])
        assert result.exit_code == 0
        assert json.loads(result.output)["v_star"] == 1.0

    def test_unknown_machine_exit_2(self, runner):
        result = runner.invoke(main, ["solve", "--machine", "atari", "--n", "1e6"])
        assert result.exit_code == 2
        assert "atari" in result.output

    def test_invalid_override_exit_2_names_invariant(self, runner):
        result = runner.invoke(main, ["solve", "--n", "1e6", "--pi", "-1"])
        assert result.exit_code == 2
        assert "pi" in result.output

    def test_table_format(self, runner):
        result = runner.invoke(main, ["solve", "--n", "1e6", "--format", "table"])
        assert result.exit_code == 0
        assert "regime" in result.output

    def test_config_file_with_flag_override(self, runner, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("machine = fugaku\nalg = fft\npi = 1e10\n")
        result = runner.invoke(main, ["solve", "--n", "1e6",
                                      "--config", str(cfg), "--pi", "1e12"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["machine"] == "fugaku"
        assert data["algorithm"] == "FFT"
        # Flag wins over the config value: check via t_work = W/(pi*v).
        result2 = runner.invoke(main, ["solve", "--n", "1e6",
                                       "--config", str(cfg)])
        d2 = json.loads(result2.output)
        assert data["t_work"] != d2["t_work"]

    def test_custom_cost_from_config(self, runner, tmp_path):
        cfg = tmp_path / "cost.cfg"
        cfg.write_text("cost_a=1\ncost_p=1\ncost_b=1\ncost_w=1\ncost_g=1\ncost_h=1\n")
        result = runner.invoke(main, ["solve", "--alg", "custom", "--n", "1e6",
                                      "--config", str(cfg)])
        assert result.exit_code == 0
        assert json.loads(result.output)["algorithm"] == "CUSTOM"


class TestSweep:
    def test_csv_contract(self, runner):
        result = runner.invoke(main, ["sweep", "--machine", "frontier",
                                      "--alg", "cg", "--axis", "n:1e6:1e12:4"])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        data = [l for l in lines if not l.startswith("#")]
        assert data[0] == "pi,beta,s,c,V,n,v_star,t_work,t_io,t_lat,total,performance,regime"
        assert len(data) == 5
        row = data[1].split(",")
        assert len(row) == 13
        # 9 significant digits in scientific notation.
        mantissa = row[0].split("e")[0]
        assert len(mantissa.replace("-", "").replace(".", "")) == 9
        assert row[-1] in ("compute-bound", "memory-bound", "latency-bound")

    def test_header_comments_record_seed(self, runner):
        result = runner.invoke(main, ["sweep", "--n", "1e6",
                                      "--axis", "pi:1:1e6:3", "--seed", "7"])
        assert result.exit_code == 0
        assert "seed=7" in result.output.splitlines()[0]

    def test_multi_machine_blocks(self, runner):
        result = runner.invoke(main, ["sweep", "--machine", "frontier,fugaku",
                                      "--alg", "cg,fft", "--n", "1e9"])
        assert result.exit_code == 0
        blocks = [l for l in result.output.splitlines()
                  if l.startswith("# machine=")]
        assert len(blocks) == 4

    def test_n_list_becomes_axis(self, runner):
        result = runner.invoke(main, ["sweep", "--n", "1e3,1e6,1e9"])
        assert result.exit_code == 0
        data = [l for l in result.output.splitlines()
                if l and not l.startswith("#")]
        assert len(data) == 1 + 3

    def test_missing_n_exit_2(self, runner):
        result = runner.invoke(main, ["sweep", "--axis", "pi:1:10:3"])
        assert result.exit_code == 2

    def test_bad_axis_exit_2(self, runner):
        result = runner.invoke(main, ["sweep", "--n", "1e6", "--axis", "zeta:1:10:3"])
        assert result.exit_code == 2

    def test_output_file(self, runner, tmp_path):
        out = tmp_path / "sweep.csv"
        result = runner.invoke(main, ["sweep", "--n", "1e6", "--output", str(out)])
        assert result.exit_code == 0
        assert out.read_text().startswith("#")


class TestScale:
    def test_strong_csv(self, runner):
        result = runner.invoke(main, ["scale", "--machine", "frontier",
                                      "--alg", "cg", "--mode", "strong",
                                      "--n0", "1e12", "--v0", "1", "--v", "1:370:5"])
        assert result.exit_code == 0
        lines = [l for l in result.output.splitlines() if not l.startswith("#")]
        assert lines[0] == "v,n,total,efficiency"
        first = lines[1].split(",")
        assert float(first[3]) == pytest.approx(1.0)  # efficiency 1 at v0

    def test_weak_records_k_policy(self, runner):
        result = runner.invoke(main, ["scale", "--machine", "fugaku",
                                      "--alg", "fft", "--mode", "weak",
                                      "--n0", "1e9", "--v0", "1", "--v", "1,10,100",
                                      "--k", "n"])
        assert result.exit_code == 0
        assert "# k_policy=n" in result.output
        lines = [l for l in result.output.splitlines() if not l.startswith("#")]
        ns = [float(l.split(",")[1]) for l in lines[1:]]
        assert ns == pytest.approx([1e9, 1e10, 1e11], rel=1e-6)

    def test_v_below_v0_exit_2(self, runner):
        result = runner.invoke(main, ["scale", "--mode", "strong", "--n0", "1e6",
                                      "--v0", "10", "--v", "1"])
        assert result.exit_code == 2


class TestLaws:
    def test_amdahl_with_limit_line(self, runner):
        result = runner.invoke(main, ["laws", "--law", "amdahl",
                                      "--machine", "fugaku", "--alg", "cg",
                                      "--n0", "1e9"])
        assert result.exit_code == 0
        assert "# speedup_limit=" in result.output
        lines = [l for l in result.output.splitlines() if not l.startswith("#")]
        assert lines[0] == "v,speedup"
        assert float(lines[1].split(",")[1]) == pytest.approx(1.0)

    def test_gustafson(self, runner):
        result = runner.invoke(main, ["laws", "--law", "gustafson",
                                      "--n0", "1e6", "--v0", "1", "--v", "1,2,4"])
        assert result.exit_code == 0
        lines = [l for l in result.output.splitlines() if not l.startswith("#")]
        vals = [float(l.split(",")[1]) for l in lines[1:]]
        # Affine in v/v0: equal second difference structure.
        assert vals[2] - vals[1] == pytest.approx(2 * (vals[1] - vals[0]), rel=1e-9)


class TestMachines:
    def test_list_has_five_builtins(self, runner):
        result = runner.invoke(main, ["machines", "list"])
        assert result.exit_code == 0
        names = result.output.split()
        assert set(names) == {"frontier", "fugaku", "dgx-gh200",
                              "a100-homogeneous", "a100-homogeneous-1e9"}
        assert len(names) == 5

    def test_show(self, runner):
        result = runner.invoke(main, ["machines", "show", "fugaku"])
        assert result.exit_code == 0
        assert "fugaku" in result.output
        assert "4.88000000e+17" in result.output

    def test_show_unknown_exit_2(self, runner):
        result = runner.invoke(main, ["machines", "show", "cray-1"])
        assert result.exit_code == 2

    def test_env_preset_path(self, runner, tmp_path, monkeypatch):
        (tmp_path / "toy.preset").write_text(
            "name = toy\npi_total_flops = 1e15\nb_total_bytes = 8e12\n"
            "s_total_bytes = 8e9\nvolume = 1.0\nc = 3e8\n")
        monkeypatch.setenv("HOMLIM_PRESET_PATH", str(tmp_path))
        result = runner.invoke(main, ["machines", "list"])
        assert "toy" in result.output.split()
        result = runner.invoke(main, ["solve", "--machine", "toy", "--n", "1e6"])
        assert result.exit_code == 0
