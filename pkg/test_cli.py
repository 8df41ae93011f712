#!/usr/bin/env python3
"""
Tests for the list file format and the command line: reports, JSON and
exit codes.
"""

import json
import logging
import os
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path
from unittest.mock import patch

import pytest

# Add package directory to Python path
sys.path.insert(0, str(Path(__file__).parent))

from subcheck.core.errors import ListParseError
from subcheck.main import main
from subcheck.models import GenKind
from subcheck.services.generator_service import build_spec, generate
from subcheck.services.listfile_service import listfile_service

SAMPLE_TEXT = """\
# coherent, incomplete
a b c d
a b
a c d
a c
a
c
"""

RESP3_TEXT = """\
a b c
a b
a c
a
b c
b
c
-
"""

INCOHERENT_TEXT = """\
a b
a
a b
-
"""


class TestListFile:
    """Parsing and serialization."""

    def test_parse_sample(self):
        plist = listfile_service.parse(SAMPLE_TEXT)
        assert plist.universe.alternatives == ("a", "b", "c", "d")
        assert plist.masks == (0b0011, 0b1101, 0b0101, 0b0001, 0b0100, 0)
        assert plist.empty_appended

    def test_explicit_empty(self):
        plist = listfile_service.parse(RESP3_TEXT)
        assert plist.n == 7 and not plist.empty_appended

    def test_comments_and_blank_lines(self):
        plist = listfile_service.parse("\n# header next\na b  # universe\n\nb a\n   \n-\n")
        assert plist.masks == (0b11, 0)

    def test_empty_universe(self):
        plist = listfile_service.parse("-\n")
        assert plist.m == 0 and plist.masks == (0,)

    def test_unknown_name_reports_line(self):
        with pytest.raises(ListParseError) as info:
            listfile_service.parse("a\na b\n", source="bad.txt")
        assert info.value.line_no == 2
        assert "unknown alternative 'b'" in str(info.value)
        assert str(info.value).startswith("bad.txt:2:")

    def test_duplicate_names(self):
        with pytest.raises(ListParseError):
            listfile_service.parse("a a\n")
        with pytest.raises(ListParseError) as info:
            listfile_service.parse("a b\na a\n")
        assert info.value.line_no == 2

    def test_missing_header(self):
        with pytest.raises(ListParseError):
            listfile_service.parse("# nothing here\n\n")

    def test_dash_mixed_with_names(self):
        with pytest.raises(ListParseError):
            listfile_service.parse("a b\na -\n")

    def test_invalid_utf8_reports_line(self, tmp_path):
        path = tmp_path / "binary.txt"
        path.write_bytes(b"a b\na \xff\xfe\n")
        with pytest.raises(ListParseError) as info:
            listfile_service.read(path)
        assert info.value.line_no == 2
        assert "0xff" in str(info.value)

    def test_round_trip(self):
        texts = [SAMPLE_TEXT, RESP3_TEXT, INCOHERENT_TEXT, "-\n"]
        for text in texts:
            plist = listfile_service.parse(text)
            assert listfile_service.parse(listfile_service.format(plist)) == plist

    def test_round_trip_generated(self):
        for kind, params in [
            (GenKind.RESPONSIVE, {"m": 4, "q": 3}),
            (GenKind.COMPLETE_COHERENT, {"m": 3}),
            (GenKind.RANDOM_COHERENT, {"m": 5, "n": 9}),
        ]:
            for seed in range(5):
                plist = generate(build_spec(kind=kind, seed=seed, **params))
                text = listfile_service.format(plist, comments=["fixture"])
                assert listfile_service.parse(text) == plist, f"{kind.value} seed {seed}"

    def test_appended_empty_not_written(self):
        plist = listfile_service.parse(SAMPLE_TEXT)
        lines = listfile_service.format(plist).splitlines()
        assert lines == ["a b c d", "a b", "a c d", "a c", "a", "c"]


class TestCli:
    """End-to-end runs of ``subcheck`` through ``main``."""

    def setup_method(self):
        self.test_dir = tempfile.mkdtemp(prefix="subcheck_test_")
        self.env_file = os.path.join(self.test_dir, "missing.env")

    def teardown_method(self):
        # handlers bound to this test's captured stderr
        logging.getLogger().handlers.clear()
        if self.test_dir and os.path.exists(self.test_dir):
            shutil.rmtree(self.test_dir)

    def write(self, name, text):
        path = os.path.join(self.test_dir, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def run(self, *args):
        return main(["--env-file", self.env_file, *args])

    def test_sample_not_substitutable(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        assert self.run("check", path, "--algorithm", "fast", "--mode", "witness", "--json") == 1
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "not_substitutable"
        assert report["witness"] == {"X": ["a", "b"], "Y": ["c"], "x": "b"}
        assert report["violation"] == {"A": ["b", "c"], "B": ["a", "b", "c"], "x": "b"}
        assert report["coherent"] is True and report["complete"] is False
        assert report["n"] == 6 and report["universe_size"] == 4
        assert report["empty_appended"] is True

    def test_fast_and_naive_report_same_witness(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        self.run("check", path, "--algorithm", "fast", "--json")
        fast = json.loads(capsys.readouterr().out)
        self.run("check", path, "--algorithm", "naive", "--json")
        naive = json.loads(capsys.readouterr().out)
        assert fast["witness"] == naive["witness"]

    def test_figure1_mode(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        assert self.run("check", path, "--mode", "figure1", "--json") == 1
        report = json.loads(capsys.readouterr().out)
        assert report["witness"] is None
        assert report["mode"] == "figure1"

    def test_responsive_substitutable_all_algorithms(self, capsys):
        path = self.write("resp3.txt", RESP3_TEXT)
        for algorithm in ("fast", "naive", "brute"):
            assert self.run("check", path, "--algorithm", algorithm, "--json") == 0, algorithm
            report = json.loads(capsys.readouterr().out)
            assert report["verdict"] == "substitutable"
            assert report["complete"] is True

    def test_incoherent(self, capsys):
        path = self.write("bad.txt", INCOHERENT_TEXT)
        assert self.run("check", path) == 2
        out = capsys.readouterr().out
        assert "coherent: no" in out

    def test_prune_makes_coherent(self, capsys):
        path = self.write("bad.txt", INCOHERENT_TEXT)
        assert self.run("check", path, "--prune") == 0
        out = capsys.readouterr().out
        assert "pruned: 1" in out

    def test_human_report(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        assert self.run("check", path) == 1
        out = capsys.readouterr().out
        assert "verdict: not substitutable" in out
        assert "witness: X = {a b} (rank 0), Y = {c} (rank 4), x = b" in out
        assert "d_X = 3, need 4" in out

    def test_quiet(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        assert self.run("check", path, "--quiet") == 1
        assert capsys.readouterr().out == ""

    def test_parse_error_exit_code(self, capsys):
        path = self.write("bad.txt", "a\na b\n")
        assert self.run("check", path) == 65
        err = capsys.readouterr().err
        assert ":2:" in err and "'b'" in err

    def test_invalid_utf8_exit_code(self, capsys):
        path = os.path.join(self.test_dir, "binary.txt")
        with open(path, "wb") as f:
            f.write(b"a b\na \xff\xfe\n")
        assert self.run("check", path) == 65
        assert "binary.txt:2:" in capsys.readouterr().err
        assert self.run("info", path) == 65

    def test_missing_file(self, capsys):
        assert self.run("check", os.path.join(self.test_dir, "absent.txt")) == 66

    def test_usage_error(self, capsys):
        assert self.run("check") == 64
        assert self.run("check", "x.txt", "--algorithm", "quick") == 64

    def test_oracle_cap_from_environment(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        with patch.dict(os.environ, {"SUBCHECK_ORACLE_MAX": "3"}):
            assert self.run("check", path, "--algorithm", "brute") == 64
        assert "capped at 3" in capsys.readouterr().err

    def test_invalid_environment(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        with patch.dict(os.environ, {"SUBCHECK_ORACLE_MAX": "99"}):
            assert self.run("check", path) == 64

    def test_invalid_environment_in_fresh_process(self):
        path = self.write("sample.txt", SAMPLE_TEXT)
        env = {key: value for key, value in os.environ.items() if not key.startswith("SUBCHECK_")}
        env["SUBCHECK_ORACLE_MAX"] = "99"
        result = subprocess.run(
            [sys.executable, "-m", "subcheck", "--env-file", self.env_file, "check", path],
            cwd=str(Path(__file__).parent),
            env=env,
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert result.returncode == 64, f"exit {result.returncode}: {result.stderr}"
        assert "invalid configuration" in result.stderr
        assert "Traceback" not in result.stderr

    def test_env_file(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        env_file = self.write("local.env", "SUBCHECK_DEFAULT_MODE=figure1\n")
        with patch.dict(os.environ, {}):
            assert main(["--env-file", env_file, "check", path, "--json"]) == 1
        assert json.loads(capsys.readouterr().out)["mode"] == "figure1"

    def test_gen_responsive(self, capsys):
        assert self.run("gen", "responsive", "-m", "3", "-q", "2", "--seed", "0") == 0
        out = capsys.readouterr().out
        assert "# spec: kind=responsive m=3 q=2 n=- seed=0" in out
        assert "# prng: MT19937" in out
        plist = listfile_service.parse(out)
        assert plist.n == 7

    def test_gen_complete_single(self, capsys):
        assert self.run("gen", "complete_coherent", "-m", "1", "--seed", "9") == 0
        plist = listfile_service.parse(capsys.readouterr().out)
        assert plist.masks == (1, 0)

    def test_gen_deterministic_bytes(self, capsys):
        first = os.path.join(self.test_dir, "one.txt")
        second = os.path.join(self.test_dir, "two.txt")
        assert self.run("gen", "random_coherent", "-m", "4", "-n", "5", "--seed", "7", "-o", first) == 0
        assert self.run("gen", "random_coherent", "-m", "4", "-n", "5", "--seed", "7", "-o", second) == 0
        assert Path(first).read_bytes() == Path(second).read_bytes()

    def test_gen_then_check(self, capsys):
        path = os.path.join(self.test_dir, "resp.txt")
        assert self.run("gen", "responsive", "-m", "4", "-q", "2", "-o", path) == 0
        assert self.run("check", path, "--quiet") == 0
        mutated = os.path.join(self.test_dir, "mutated.txt")
        assert self.run("gen", "responsive", "-m", "4", "-q", "2", "--mutate-drop", "-o", mutated) == 0
        assert self.run("check", mutated, "--quiet") == 1

    def test_gen_large_universe(self, capsys):
        assert self.run("gen", "random_coherent", "-m", "70", "-n", "5", "--seed", "1") == 0
        lines = [line for line in capsys.readouterr().out.splitlines() if not line.startswith("#")]
        assert lines[0].split()[-1] == "x69"

    def test_gen_invalid_spec(self, capsys):
        assert self.run("gen", "responsive", "-m", "3") == 64
        assert self.run("gen", "random_coherent", "-m", "2", "-n", "9") == 64
        assert self.run("gen", "responsive", "-m", "3", "-q", "1", "--mutate-drop") == 64

    def test_info_json(self, capsys):
        path = self.write("sample.txt", SAMPLE_TEXT)
        assert self.run("info", path, "--json") == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["coherent"] is True
        assert summary["complete"] is False
        assert summary["subset_counts"] == [3, 5, 4, 2, 2, 1]
        assert summary["first_failure"] == {"rank": 0, "d_x": 3, "required": 4}
        assert summary["pruned_n"] == 6

    def test_info_incoherent(self, capsys):
        path = self.write("bad.txt", INCOHERENT_TEXT)
        assert self.run("info", path) == 0
        out = capsys.readouterr().out
        assert "coherent: no (rank 0 {a} is contained in rank 1 {a b})" in out
        assert "after pruning: 2 members" in out

    def test_bench_csv(self, capsys):
        csv_path = os.path.join(self.test_dir, "bench.csv")
        code = self.run("bench", "-m", "3,4", "--algorithms", "fast,naive,brute", "--reps", "1",
                        "--csv", csv_path)
        assert code == 0
        lines = Path(csv_path).read_text().splitlines()
        assert lines[0] == "m,N,algorithm,seed,rep,elapsed_ns,verdict"
        assert len(lines) == 1 + 2 * 3
        assert lines[1].startswith("3,8,fast,0,0,")
        assert "slope" in capsys.readouterr().err

    def test_bench_bad_sizes(self, capsys):
        assert self.run("bench", "-m", "eight") == 64
        assert self.run("bench", "-m", "3", "--algorithms", "quick") == 64
