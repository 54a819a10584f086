import logging
import sys

import pytest

from dafsim import main as cli
from dafsim.core import log
from dafsim.core.errors import NumericError
from dafsim.utils.curve_csv import parse_curve_csv


@pytest.fixture(autouse=True)
def _detach_log_handlers():
    def detach():
        for handler in list(log.logger.handlers):
            log.logger.removeHandler(handler)

    detach()
    yield
    detach()


class TestFloorVerb:
    def test_prints_the_floor(self, capsys) -> None:
        assert cli.main(["floor", "--preset", "scenario_II"]) == 0
        out = capsys.readouterr().out
        assert "case         mixed" in out
        assert out.startswith("scenario     scenario_II (R=2, M=2)")

    def test_numeric_failure_exit_code(self, monkeypatch, capsys) -> None:
        def boom(cfg):
            raise NumericError("quadrature integrand is not finite", {"theta": 0.1})

        monkeypatch.setattr(cli, "floor_report", boom)
        assert cli.main(["floor"]) == 3
        assert "theta=0.1" in capsys.readouterr().err


class TestScenarioResolution:
    def test_bad_config_file(self, tmp_path, capsys) -> None:
        path = tmp_path / "bad.cfg"
        path.write_text("R = 1\nM = 3\nf_sd = 0.01\nf_sr = 0.01\nf_rd = 0.7\n", encoding="utf-8")
        assert cli.main(["floor", "--config", str(path)]) == 2
        err = capsys.readouterr().err
        assert err.count("config error:") == 2

    def test_relays_cannot_reshape_a_file(self, tmp_path) -> None:
        path = tmp_path / "ok.cfg"
        path.write_text("name = scenario_I\nR = 1\nM = 2\n", encoding="utf-8")
        assert cli.main(["floor", "--config", str(path), "--relays", "2"]) == 2
        assert cli.main(["floor", "--config", str(path), "--mod", "4", "--seed", "5"]) == 0

    def test_overrides(self) -> None:
        args = cli.build_parser().parse_args(["floor", "--preset", "scenario_III", "--relays", "3", "--mod", "4"])
        cfg = cli.resolve_scenario(args)
        assert (cfg.name, cfg.R, cfg.M) == ("scenario_III", 3, 4)

    def test_argparse_rejects_bad_choices(self) -> None:
        with pytest.raises(SystemExit):
            cli.main(["floor", "--mod", "8"])
        with pytest.raises(SystemExit):
            cli.main(["floor", "--preset", "scenario_IV"])


class TestOutputVerbs:
    def test_analyze_with_gnuplot(self, tmp_path) -> None:
        out = tmp_path / "theory.csv"
        argv = ["analyze", "--relays", "1", "--pmax", "20", "--pstep", "10", "--gnuplot", "--out", str(out)]
        assert cli.main(argv) == 0
        assert parse_curve_csv(out).column("P_dB") == [0.0, 10.0, 20.0]
        assert out.with_suffix(".gp").exists()

    def test_sweep(self, tmp_path) -> None:
        out = tmp_path / "ber.csv"
        argv = ["sweep", "--preset", "scenario_II", "--relays", "1", "--pmax", "10", "--pstep", "10"]
        argv += ["--bits", "10000", "--scheme", "tvd", "--out", str(out)]
        assert cli.main(argv) == 0
        curve = parse_curve_csv(out)
        assert len(curve) == 2
        assert curve.column("ber_sim_cdd") == [None, None]
        assert all(n >= 10_000 for n in curve.column("n_bits"))

    def test_pdf(self, tmp_path) -> None:
        out = tmp_path / "pdf.csv"
        assert cli.main(["pdf", "--relays", "1", "--samples", "100000", "--out", str(out)]) == 0
        assert len(out.read_text(encoding="utf-8").splitlines()) == 101

    def test_report(self, tmp_path) -> None:
        curve = tmp_path / "theory.csv"
        assert cli.main(["analyze", "--pmax", "10", "--out", str(curve)]) == 0
        assert cli.main(["report", "--curve", str(curve)]) == 0
        assert curve.with_suffix(".pdf").read_bytes().startswith(b"%PDF")

    def test_report_missing_curve(self, tmp_path, capsys) -> None:
        assert cli.main(["report", "--curve", str(tmp_path / "none.csv")]) == 1
        assert "cannot read curve CSV" in capsys.readouterr().err


class TestLogging:
    def test_configure_logging_installs_one_stderr_handler(self) -> None:
        log.configure_logging("DEBUG")
        log.configure_logging("warning")
        handlers = [h for h in log.logger.handlers if type(h) is logging.StreamHandler]
        assert len(handlers) == 1
        assert handlers[0].stream is sys.stderr
        assert log.logger.level == logging.WARNING
        assert not log.logger.propagate

    def test_unknown_level_falls_back_to_info(self) -> None:
        assert log.configure_logging("chatty").level == logging.INFO
