import io
import json
import subprocess
import sys

import pytest

from closedfactors import cli, oracle


class FakeStdin:
    def __init__(self, data: bytes):
        self.buffer = io.BytesIO(data)


def run(argv, stdin: bytes = b"", monkeypatch=None):
    if monkeypatch is not None:
        monkeypatch.setattr(sys, "stdin", FakeStdin(stdin))
    return cli.main(argv)


@pytest.fixture
def text_file(tmp_path):
    def make(data: bytes):
        path = tmp_path / "input.bin"
        path.write_bytes(data)
        return str(path)

    return make


@pytest.mark.parametrize("mode", ["online", "offline"])
def test_count_stdin(mode, monkeypatch, capsys):
    assert run(["count", "--mode", mode], b"abaab", monkeypatch) == 0
    assert capsys.readouterr().out == "6\n"


def test_count_file(text_file, capsys):
    assert cli.main(["count", text_file(b"a")]) == 0
    assert capsys.readouterr().out == "1\n"


def test_count_trace_and_formats(text_file, capsys):
    path = text_file(b"abaab")
    assert cli.main(["count", "--trace", path]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "j\tt_len\tz_len\td"
    assert lines[-2] == "5\t2\t0\t2" and lines[-1] == "6"
    assert cli.main(["count", "--format", "tsv", path]) == 0
    assert capsys.readouterr().out == "5\t6\n"
    assert cli.main(["count", "--format", "json", "--trace", "--mode", "online", path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["total"] == 6 and obj["sum_lrs"] == 4 and obj["j_set_size"] == 3
    assert [row[3] for row in obj["per_step"]] == [1, 1, 1, 1, 2]


def test_enumerate_formats(text_file, capsys):
    path = text_file(b"abaab")
    assert cli.main(["enumerate", path]) == 0
    rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
    assert len(rows) == 6
    assert rows[-2:] == [["2", "5", "1", "baab"], ["1", "5", "2", "abaab"]]
    assert cli.main(["enumerate", "--format", "plain", path]) == 0
    assert capsys.readouterr().out == "6\n"
    assert cli.main(["enumerate", "--format", "json", path]) == 0
    objs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert objs[-1] == {"start": 1, "end": 5, "border_len": 2, "factor": "abaab"}
    assert cli.main(["enumerate", "--occurrences", "--format", "plain", path]) == 0
    assert capsys.readouterr().out == f"{len(oracle.closed_occurrences(b'abaab'))}\n"


def test_enumerate_escapes_and_clips(text_file, capsys):
    path = text_file(b"\t" * 100)
    assert cli.main(["enumerate", path]) == 0
    last = capsys.readouterr().out.splitlines()[-1].split("\t")
    assert last[:3] == ["1", "100", "99"]
    assert last[3] == "\\t" * 64 + "..."


def test_oc(text_file, capsys):
    path = text_file(b"ab")
    assert cli.main(["oc", path]) == 0
    assert capsys.readouterr().out == "01\n"
    assert cli.main(["oc", "--format", "json", path]) == 0
    assert json.loads(capsys.readouterr().out) == {"oc": [0, 1]}


def test_verify(capsys):
    assert cli.main(["verify", "--alphabet", "2", "--maxlen", "6"]) == 0
    assert "0 mismatches" in capsys.readouterr().out


def test_verify_reports_mismatch(monkeypatch, capsys):
    monkeypatch.setattr(cli, "count_online", lambda w: cli.count_offline(w + b"z"))
    assert cli.main(["verify", "--maxlen", "2"]) == cli.EXIT_MISMATCH
    assert "MISMATCH" in capsys.readouterr().out


def test_bench(capsys):
    assert cli.main(["bench", "--sizes", "1e3,2000", "--alphabet", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["n", "seconds", "ns/symbol"]
    assert [line.split()[0] for line in lines[1:]] == ["1000", "2000"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["enumerate", "--mode", "online"],
        ["verify", "--maxlen", "17"],
        ["verify", "--maxlen", "4", "--alphabet", "0"],
        ["bench", "--alphabet", "300"],
        ["bench", "--sizes", "10,-1"],
        ["count", "--format", "xml"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == cli.EXIT_USAGE
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("command", ["count", "enumerate", "oc"])
def test_empty_input(command, monkeypatch, capsys):
    assert run([command], b"", monkeypatch) == cli.EXIT_INPUT
    assert "empty" in capsys.readouterr().err


def test_empty_online_input(monkeypatch, capsys):
    assert run(["count", "--mode", "online"], b"", monkeypatch) == cli.EXIT_INPUT


def test_missing_file(tmp_path, capsys):
    assert cli.main(["count", str(tmp_path / "nope")]) == cli.EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0


def test_console_script_via_python_m():
    out = subprocess.run(
        [sys.executable, "-m", "closedfactors.cli", "count", "--mode", "online"],
        input=b"abaab",
        capture_output=True,
        check=True,
    )
    assert out.stdout == b"6\n"
