import json
import subprocess
import sys

import pytest

from questions import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFormat:
    def test_fmt14(self):
        assert cli.fmt14(0.45) == "0.45000000000000"
        assert cli.fmt14(0.12299828119582076) == "0.12299828119582"

    def test_fmt_short(self):
        assert cli.fmt_short(-0.5546875) == "-0.5546875"
        assert cli.fmt_short(0.12299828119582076) == "0.12299828119582"


class TestTilde:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "tilde", "0.25", "0.25")
        assert code == 0
        assert out.strip() == "x = 0.12299828119582"

    def test_coincidence(self, capsys):
        _, out, _ = run(capsys, "tilde", "0.5", "0.9")
        assert out.strip() == "x = 0.45000000000000"

    def test_full(self, capsys):
        code, out, _ = run(capsys, "tilde", "0.25", "0.25", "--full")
        assert code == 0
        lines = dict(line.split(" = ", 1) for line in out.strip().splitlines())
        assert lines["T"] == "-0.5546875"
        assert lines["S"] == "-1.275390625"
        assert lines["Y"] == "-0.31884765625"
        assert lines["V"].startswith("0.43149484358746 - 1.4256795572489")
        assert "0.0625" in lines["roots"]

    def test_boundary_full(self, capsys):
        code, out, _ = run(capsys, "tilde", "0", "1", "--full")
        assert code == 0
        assert "P(B|A) = unconstrained" in out

    @pytest.mark.parametrize("args", [("1.5", "0.2"), ("-0.1", "0.2"), ("abc", "0.2"), ("0.2",)])
    def test_bad_input(self, capsys, args):
        with pytest.raises(SystemExit) as exc:
            cli.main(["tilde", *args])
        assert exc.value.code == 2


class TestBell:
    def test_violated(self, capsys):
        code, out, _ = run(capsys, "bell")
        assert code == 0
        assert "VIOLATED" in out
        assert "0.073223" in out

    def test_not_violated(self, capsys):
        _, out, _ = run(capsys, "bell", "--w-angle", "90")
        assert "not violated" in out

    def test_monte_carlo_deterministic(self, capsys):
        _, a, _ = run(capsys, "bell", "--trials", "5000", "--seed", "4")
        _, b, _ = run(capsys, "--seed", "4", "bell", "--trials", "5000")
        assert a == b
        assert "5000 trials" in a

    def test_seed_env(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.SEED_ENV, "9")
        _, a, _ = run(capsys, "bell", "--trials", "100")
        assert "seed 9" in a

    def test_bad_seed_env(self, monkeypatch):
        monkeypatch.setenv(cli.SEED_ENV, "x")
        with pytest.raises(SystemExit):
            cli.main(["bell"])


class TestCensus:
    def test_n3(self, capsys):
        code, out, _ = run(capsys, "census", "-n", "3")
        assert code == 0
        assert "|Q|=128" in out and "|Q1|=8" in out and "generators=7" in out
        assert "|S2|=8" in out and "laws ok" in out

    def test_out_of_range(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["census", "-n", "5"])
        assert exc.value.code == 2


class TestVerify:
    def test_bell_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "bell")
        assert code == 0
        payload = json.loads(out[out.index("{"):])
        assert payload["suite"] == "bell"

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "nope"])
        assert exc.value.code == 2


class TestFigure:
    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "figure", "fig2_2", "--step", "0.25")
        assert code == 0
        assert out.splitlines()[0] == "pa,pb,x_tilde,x_indep"
        assert len(out.splitlines()) == 26

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        code, out, _ = run(capsys, "figure", "fig7_1", "--step", "0.25", "--format", "json",
                           "--out", str(path))
        assert code == 0
        assert json.loads(path.read_text())["columns"] == ["pa", "pb", "re", "im"]

    def test_bad_step(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["figure", "fig2_2", "--step", "0.5"])
        assert exc.value.code == 2

    def test_unwritable(self, capsys, tmp_path):
        code, _, err = run(capsys, "figure", "fig2_2", "--step", "0.25",
                           "--out", str(tmp_path / "missing" / "f.csv"))
        assert code == 1
        assert "cannot write" in err


def test_module_entry():
    res = subprocess.run([sys.executable, "-m", "questions", "tilde", "0.25", "0.25"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.strip() == "x = 0.12299828119582"
