import csv
import io
import json
import shutil
import subprocess

import pytest

from sublogic.cli import run_cli
from sublogic.errors import DiscrepancyError
from sublogic.syntax import parse


@pytest.fixture
def cli(capsys):
    def run(*argv):
        code = run_cli([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return run


def test_clone(cli, fixtures):
    code, out, _ = cli("clone", fixtures / "ops_and_not.txt")
    assert (code, out.strip()) == (0, "BF")
    code, out, _ = cli("clone", "--json", fixtures / "ops_or_bot.txt")
    assert json.loads(out)["named"] == "V0"


def test_classify(cli, fixtures):
    code, out, _ = cli("classify", fixtures / "ops_or_bot.txt", "--problem", "tcsat",
                       "--quantifiers", "exists")
    assert code == 0 and out.startswith("P-complete per ")
    code, out, _ = cli("classify", fixtures / "ops_or_bot.txt", "--problem", "ocsat",
                       "--quantifiers", "exists", "--json")
    payload = json.loads(out)
    assert payload["class"] == "Open" and payload["provenance"]
    code, out, _ = cli("classify", fixtures / "ops_and_not.txt", "--problem", "tsat",
                       "--quantifiers", "exists,forall")
    assert out.startswith("EXPTIME-complete")


def test_classify_table(cli):
    code, out, _ = cli("classify", "--table")
    blocks = out.strip().split("\n\n")
    assert code == 0 and [b.split()[0] for b in blocks] == ["TSAT", "TCSAT", "OSAT", "OCSAT"]
    assert all(len(b.splitlines()) == 5 for b in blocks)
    assert "OPEN" not in blocks[1] and "OPEN" in blocks[2]


def test_solve(cli, fixtures):
    code, out, _ = cli("solve", "--cross-check", fixtures / "gap_unsat.dl")
    assert (code, out.strip()) == (0, "UNSAT")
    code, out, _ = cli("solve", "-v", "--model", fixtures / "gap_sat.dl")
    lines = out.splitlines()
    assert lines[:2] == ["SAT", "method nlgraph"]
    code, out, _ = cli("solve", "--json", "--method", "typeelim", fixtures / "ocsat_exists.dl")
    payload = json.loads(out)
    assert payload["status"] == "SAT" and payload["method"] == "typeelim"


def test_solve_unknown_exit_code(cli, tmp_path):
    f = tmp_path / "unknown.dl"
    f.write_text("operator top 0 1\noperator bot 0 0\nproblem tsat\ntbox\n"
                 "  (top) <= (some R B)\n  B <= (bot)\n")
    code, out, _ = cli("solve", "--method", "brute", f)
    assert (code, out.strip()) == (1, "UNKNOWN")


@pytest.mark.parametrize("argv", [
    ("frobnicate",),
    ("solve",),
    ("solve", "/nonexistent/file.dl"),
    ("classify", "--problem", "tsat"),
    ("classify", "--quantifiers", "sometimes", "--problem", "tsat", "FIXTURE"),
    ("reduce", "lift", "FIXTURE"),
])
def test_usage_errors(cli, fixtures, argv):
    argv = [fixtures / "gap_sat.dl" if a == "FIXTURE" else a for a in argv]
    code, _, err = cli(*argv)
    assert code == 2 and "error" in err


def test_parse_error_exit_code(cli, tmp_path):
    f = tmp_path / "bad.dl"
    f.write_text("problem tsat\ntbox\n  A <= (nope B)\n")
    code, _, err = cli("solve", f)
    assert code == 2 and "ParseError" in err


def test_discrepancy_exit_code(cli, fixtures, monkeypatch):
    def broken(*args, **kwargs):
        raise DiscrepancyError("methods disagree: {'nlgraph': 'SAT', 'typeelim': 'UNSAT'}")
    monkeypatch.setattr("sublogic.cli.dispatch", broken)
    code, _, err = cli("solve", "--cross-check", fixtures / "gap_unsat.dl")
    assert code == 3 and "discrepancy" in err


def test_reduce(cli, fixtures, tmp_path):
    code, out, err = cli("reduce", "lift", fixtures / "gap_sat.dl", "--target", "ocsat")
    assert code == 0 and parse(out).kind == "ocsat" and err
    target = tmp_path / "out.dl"
    code, out, _ = cli("reduce", "normalize", fixtures / "gap_unsat.dl", "-o", target)
    assert code == 0 and parse(target.read_text()).kind == "tsat"
    code, out, _ = cli("reduce", "change-base", fixtures / "gap_sat.dl",
                       "--ops", fixtures / "ops_and_not.txt")
    assert code == 2


def test_gen_is_deterministic_and_answers(cli, tmp_path):
    _, a, _ = cli("gen", "gap", "--seed", 5, "--with-answer")
    _, b, _ = cli("gen", "gap", "--seed", 5, "--with-answer")
    assert a == b
    expected = a.strip().splitlines()[-1].split()[-1]
    inst = tmp_path / "gap.dl"
    inst.write_text(a)
    _, out, _ = cli("solve", inst)
    assert out.strip().lower() == expected
    for family in ("hgap", "one-in-three", "random"):
        code, out, _ = cli("gen", family, "--seed", 2, "--json", "--with-answer")
        payload = json.loads(out)
        assert code == 0 and payload["expected"] in ("sat", "unsat")
        parse(payload["instance"])


def test_bench(cli, fixtures, tmp_path):
    for name in ("gap_sat.dl", "gap_unsat.dl", "ocsat_exists.dl"):
        shutil.copy(fixtures / name, tmp_path / name)
    code, out, _ = cli("bench", tmp_path, "--methods", "auto,typeelim")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 6
    assert out.splitlines()[0] == "id,profile,method,status,ms,types,rules"
    assert {r["id"]: r["status"] for r in rows}["gap_unsat"] == "UNSAT"
    code, _, _ = cli("bench", fixtures / "gap_sat.dl")
    assert code == 2


def test_bench_in_parallel(cli, fixtures, tmp_path):
    shutil.copy(fixtures / "gap_sat.dl", tmp_path / "a.dl")
    shutil.copy(fixtures / "gap_unsat.dl", tmp_path / "b.dl")
    _, serial, _ = cli("bench", tmp_path, "--json")
    _, parallel, _ = cli("bench", tmp_path, "--json", "--jobs", 2)
    strip = lambda text: [{k: v for k, v in r.items() if k != "ms"}  # noqa: E731
                          for r in json.loads(text)]
    assert strip(serial) == strip(parallel)


def test_selftest(cli):
    code, out, _ = cli("selftest")
    assert code == 0 and out.strip().endswith("selftest passed")


@pytest.mark.skipif(shutil.which("sublogic") is None, reason="console script not installed")
def test_console_script(fixtures):
    proc = subprocess.run(["sublogic", "clone", str(fixtures / "ops_and_not.txt")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "BF"
