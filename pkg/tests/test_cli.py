"""Command-line interface: exit codes, emission formats, determinism."""

import json

import pytest

from k3mirror import cli
from k3mirror.cli import RunConfig, emit_expansion, main
from k3mirror.report import Check, VerificationReport


class TestExitCodes:
    def test_no_command_is_usage_error(self, capsys):
        assert main([]) == 2
        capsys.readouterr()

    def test_unknown_suite_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nope"])
        assert exc.value.code == 2

    def test_unknown_model_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--model", "e9"])
        assert exc.value.code == 2

    def test_bad_order_is_usage_error(self, capsys):
        assert main(["verify", "--model", "e6", "--suite", "ramanujan", "-K", "1"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_passing_suite_exits_zero(self, capsys):
        assert main(["verify", "--model", "e6", "--suite", "ramanujan",
                     "-K", "3", "--qorder", "12"]) == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out and "FAILED" not in out

    def test_failing_check_exits_one(self, capsys, monkeypatch):
        rep = VerificationReport("ramanujan", "E6")
        rep.add(Check("forced failure", "fail"))

        monkeypatch.setattr(cli, "run_suite", lambda name, ctx: rep)
        assert main(["verify", "--model", "e6", "--suite", "ramanujan",
                     "-K", "3", "--qorder", "12"]) == 1
        assert "[FAIL]" in capsys.readouterr().out

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RunConfig(model="e9")
        with pytest.raises(ValueError):
            RunConfig(suite="nope")
        with pytest.raises(ValueError):
            RunConfig(order=1)
        with pytest.raises(ValueError):
            RunConfig(order=10, qmax=19)


class TestEmission:
    def test_form_level3_leading_coefficients(self, capsys):
        assert main(["emit", "form", "--level", "3", "--name", "A", "-K", "4"]) == 0
        data = json.loads(capsys.readouterr().out)
        coeffs = data["series"]["coeffs"]
        assert coeffs[0] == "1" and coeffs[1] == "6"

    def test_period_low_order(self, capsys):
        assert main(["emit", "period", "--model", "e7", "--name", "X0", "-K", "1"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["series"] == {"0,0": "1", "1,0": "12"}

    def test_mirror_map_degenerate_truncation(self, capsys):
        assert main(["emit", "mirror-map", "--model", "e8", "-K", "0"]) == 0
        data = json.loads(capsys.readouterr().out)
        for key in ("q1_over_z1", "q2_over_z2", "z1_over_q1", "z2_over_q2"):
            assert data[key] == {"0,0": "1"}

    def test_gm_contains_both_variants(self):
        cfg = RunConfig(model="e6", suite="ramanujan", order=2, qmax=30)
        data = json.loads(emit_expansion("gm", {"model": "e6"}, cfg))
        for key in ("G1", "G2", "G1_published", "G2_published"):
            assert len(data[key]) == 4 and all(len(row) == 4 for row in data[key])

    def test_unknown_kind_or_selector_rejected(self):
        cfg = RunConfig(order=2, qmax=30)
        with pytest.raises(ValueError):
            emit_expansion("nope", {}, cfg)
        with pytest.raises(ValueError):
            emit_expansion("form", {"name": "Z"}, cfg)
        with pytest.raises(ValueError):
            emit_expansion("period", {"name": "Z", "model": "e6"}, cfg)

    def test_emission_is_deterministic(self):
        cfg = RunConfig(order=4, qmax=30)
        sel = {"model": "e6", "truncate": 4}
        first = emit_expansion("yukawa", sel, cfg)
        second = emit_expansion("yukawa", sel, cfg)
        assert first == second

    def test_out_file(self, tmp_path):
        target = tmp_path / "out.json"
        assert main(["emit", "form", "--level", "2", "--name", "A",
                     "-K", "3", "--out", str(target)]) == 0
        data = json.loads(target.read_text())
        assert data["series"]["coeffs"][:3] == ["1", "12", "-60"]


class TestJsonReports:
    def test_json_report_schema(self, capsys):
        assert main(["verify", "--model", "e6", "--suite", "picard-fuchs",
                     "-K", "3", "--qorder", "12", "--format", "json"]) == 0
        reports = json.loads(capsys.readouterr().out)
        assert isinstance(reports, list) and reports
        rep = reports[0]
        assert rep["suite"] == "picard-fuchs"
        assert rep["model"] == "E6"
        assert rep["passed"] is True
        for check in rep["checks"]:
            assert check["status"] in ("pass", "fail", "skipped")
            assert isinstance(check["name"], str)
