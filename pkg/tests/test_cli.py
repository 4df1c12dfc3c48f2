"""End-to-end command-line behavior: exit codes, emission formats, seeding."""
import json

import pytest

from tiltbench import cli, report
from tiltbench.axioms import Verdict

A2_JOB = {
    "name": "cli-probe",
    "characteristic": 101,
    "quiver": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]},
    "relations": [],
    "module": ["regular"],
    "checks": ["A1+A1op"],
}


def write_job(tmp_path, name="job.json", **over):
    data = dict(A2_JOB)
    data.update(over)
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


class TestExitCodes:
    def test_passing_job(self, tmp_path, capsys):
        rc = cli.main(["check", write_job(tmp_path), "--trials", "20"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "result: pass" in out
        assert "A1+A1op" in out

    def test_failing_job(self, tmp_path, capsys):
        # Λ alone over the arrow quiver: relative epis need not be cokernels
        path = write_job(tmp_path, checks=["A2+A2op"])
        rc = cli.main(["check", path, "--trials", "20"])
        assert rc == 1
        out = capsys.readouterr().out
        assert "result: fail" in out
        assert "epi-not-weak-cokernel" in out

    def test_missing_file(self, tmp_path, capsys):
        rc = cli.main(["check", str(tmp_path / "nope.json")])
        assert rc == 2
        assert "no such file" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        rc = cli.main(["check", str(p)])
        assert rc == 2
        assert "line 1" in capsys.readouterr().err

    def test_schema_error(self, tmp_path, capsys):
        rc = cli.main(["check", write_job(tmp_path, characteristic=4)])
        assert rc == 2
        assert "odd prime" in capsys.readouterr().err

    def test_empty_checks_pass(self, tmp_path, capsys):
        rc = cli.main(["check", write_job(tmp_path, checks=[])])
        assert rc == 0
        assert "result: pass" in capsys.readouterr().out


class TestJsonReport:
    def run_json(self, tmp_path, capsys, *extra, **over):
        rc = cli.main(["check", write_job(tmp_path, **over),
                       "--report", "json", "--trials", "20", *extra])
        return rc, json.loads(capsys.readouterr().out)

    def test_shape(self, tmp_path, capsys):
        rc, doc = self.run_json(tmp_path, capsys)
        assert rc == 0
        assert set(doc) == {"tool", "version", "name", "job", "seed", "trials",
                            "status", "verdicts", "disagreement", "timing_s"}
        assert doc["tool"] == "tiltbench"
        assert doc["status"] == "pass"
        assert doc["timing_s"] is None
        (verdict,) = doc["verdicts"]
        assert set(verdict) == {"name", "status", "route", "seed", "trials",
                                "details", "witness"}
        assert verdict["status"] in ("certified-pass", "sampled-pass")

    def test_byte_determinism(self, tmp_path, capsys):
        path = write_job(tmp_path, checks=["A2+A2op", "A3+A3op"])
        cli.main(["check", path, "--report", "json", "--seed", "7"])
        first = capsys.readouterr().out
        cli.main(["check", path, "--report", "json", "--seed", "7"])
        assert capsys.readouterr().out == first
        cli.main(["check", path, "--report", "json", "--seed", "8"])
        other = capsys.readouterr().out
        assert json.loads(other)["seed"] == 8

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        rc = cli.main(["check", write_job(tmp_path), "--report", "json",
                       "--trials", "20", "--out", str(out)])
        assert rc == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text())["name"] == "cli-probe"


class TestSeedPrecedence:
    def run_seed(self, tmp_path, capsys, *extra, **over):
        cli.main(["check", write_job(tmp_path, **over),
                  "--report", "json", "--trials", "10", *extra])
        return json.loads(capsys.readouterr().out)["seed"]

    def test_default(self, tmp_path, capsys):
        assert self.run_seed(tmp_path, capsys) == 42

    def test_flag(self, tmp_path, capsys):
        assert self.run_seed(tmp_path, capsys, "--seed", "5") == 5

    def test_job_option(self, tmp_path, capsys):
        assert self.run_seed(tmp_path, capsys, options={"seed": 9}) == 9

    def test_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("TILTBENCH_SEED", "13")
        assert self.run_seed(tmp_path, capsys) == 13

    def test_flag_beats_env_and_option(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("TILTBENCH_SEED", "13")
        assert self.run_seed(tmp_path, capsys, "--seed", "5",
                             options={"seed": 9}) == 5

    def test_job_option_beats_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("TILTBENCH_SEED", "13")
        assert self.run_seed(tmp_path, capsys, options={"seed": 9}) == 9

    def test_bad_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("TILTBENCH_SEED", "many")
        rc = cli.main(["check", write_job(tmp_path)])
        assert rc == 2
        assert "TILTBENCH_SEED" in capsys.readouterr().err


class TestDisagreementRendering:
    """exit 3 marks an internal inconsistency; it cannot be provoked by a
    well-formed input, so exercise the reporting path directly."""

    def fake_report(self):
        return report.CheckReport(
            job={}, name="synthetic", seed=1, trials=10, version="0",
            verdicts=[Verdict(name="A0", status="certified-pass", route="cert",
                              seed=1, trials=10)],
            disagreement={"check": {"check": "d-cluster-tilting", "d": 1},
                          "error": "routes disagree", "details": {}})

    def test_exit_code_and_text(self):
        rpt = self.fake_report()
        assert rpt.status == "route-disagreement"
        assert rpt.exit_code == report.EXIT_ROUTE_DISAGREEMENT == 3
        text = report.emit(rpt, "text")
        assert "ROUTE DISAGREEMENT" in text
        assert "bug in the tool" in text

    def test_json_status(self):
        doc = json.loads(report.emit(self.fake_report(), "json"))
        assert doc["status"] == "route-disagreement"
        assert doc["disagreement"]["error"] == "routes disagree"

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            report.emit(self.fake_report(), "yaml")
