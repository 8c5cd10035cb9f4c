"""Command-line interface: flags, exit codes, determinism, formats."""

import json
import re

import pytest

from nsphere.cli import (
    EXIT_BAD_FLAGS,
    EXIT_OK,
    EXIT_UNSUPPORTED,
    EXIT_UNWRITABLE,
    main,
)
from nsphere.rng import RNG_TAGS
from nsphere.samplers import SAMPLER_TAGS


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSample:
    def test_basic_invocation(self, capsys):
        code, out, _ = run(
            capsys, "sample", "--method", "sorted-basic", "--n", "4",
            "--count", "1", "--rng", "lcg48", "--seed", "7",
        )
        assert code == EXIT_OK
        cells = [float(c) for c in out.strip().split(",")]
        assert len(cells) == 4
        assert sum(c * c for c in cells) == pytest.approx(1.0, abs=1e-12)

    def test_byte_determinism(self, capsys):
        argv = ("sample", "--method", "muller", "--n", "5", "--count", "20",
                "--rng", "mt64", "--seed", "3")
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2 and out1.count("\n") == 20

    def test_seventeen_digit_roundtrip(self, capsys):
        _, out, _ = run(
            capsys, "sample", "--method", "polar3", "--n", "3", "--seed", "1",
        )
        for cell in out.strip().split(","):
            assert float(cell) == float(repr(float(cell)))

    def test_jsonl_format(self, capsys):
        code, out, _ = run(
            capsys, "sample", "--method", "ball-sorted", "--n", "4",
            "--count", "3", "--format", "jsonl", "--seed", "2",
        )
        assert code == EXIT_OK
        rows = [json.loads(line) for line in out.strip().split("\n")]
        assert len(rows) == 3
        assert all(len(r) == 4 for r in rows)
        assert all(sum(c * c for c in r) < 1.0 + 1e-12 for r in rows)

    def test_unsupported_dimension_exits_3(self, capsys):
        code, _, err = run(
            capsys, "sample", "--method", "marsaglia4", "--n", "5",
        )
        assert code == EXIT_UNSUPPORTED
        assert "marsaglia4" in err

    def test_unknown_flag_exits_2(self, capsys):
        code, _, _ = run(
            capsys, "sample", "--method", "muller", "--n", "3", "--frobnicate",
        )
        assert code == EXIT_BAD_FLAGS

    def test_unknown_method_exits_2(self, capsys):
        code, _, _ = run(capsys, "sample", "--method", "nope", "--n", "3")
        assert code == EXIT_BAD_FLAGS

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "pts.csv"
        code, out, _ = run(
            capsys, "sample", "--method", "muller", "--n", "3",
            "--count", "2", "--out", str(path),
        )
        assert code == EXIT_OK and out == ""
        assert path.read_text().count("\n") == 2

    def test_unwritable_out_exits_4(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "sample", "--method", "muller", "--n", "3",
            "--out", str(tmp_path / "no" / "such" / "dir" / "x.csv"),
        )
        assert code == EXIT_UNWRITABLE
        assert "cannot write" in err


class TestVerify:
    def test_lemmas_suite(self, capsys):
        code, out, err = run(
            capsys, "verify", "--suite", "lemmas", "--samples", "20000", "--seed", "4",
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "test,method,rng,n,samples,statistic,p_value,pass"
        assert any("max-of-" in line for line in lines)
        assert any("ratio-eta" in line for line in lines)
        assert "pass" in err

    def test_consumption_suite(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "consumption", "--samples", "20000",
        )
        assert code == EXIT_OK
        assert "consumption,sorted-basic" in out
        assert "consumption,muller" in out

    def test_below_minimum_samples_exits_2(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "all", "--samples", "10")
        assert code == EXIT_BAD_FLAGS

    def test_unknown_suite_exits_2(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "bogus")
        assert code == EXIT_BAD_FLAGS


class TestBench:
    def test_small_grid(self, capsys):
        code, out, err = run(
            capsys, "bench", "--methods", "muller", "--rngs", "lcg48",
            "--max-n", "5", "--vectors", "500",
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == (
            "method,rng,n,vectors,seconds_per_component,rng_draws_per_component"
        )
        assert len(lines) == 1 + 4  # schedule(5) = 2,3,4,5
        assert err.count("muller,lcg48") == 4

    def test_bad_tag_exits_2(self, capsys):
        code, _, _ = run(capsys, "bench", "--methods", "warp-drive", "--max-n", "4")
        assert code == EXIT_BAD_FLAGS

    def test_bad_max_n_exits_2(self, capsys):
        code, _, _ = run(capsys, "bench", "--max-n", "1")
        assert code == EXIT_BAD_FLAGS


class TestSchedule:
    def test_max_n_10(self, capsys):
        code, out, _ = run(capsys, "schedule", "--max-n", "10")
        assert code == EXIT_OK
        assert out.split() == ["2", "3", "4", "5", "8", "9"]

    def test_max_n_2(self, capsys):
        code, out, _ = run(capsys, "schedule", "--max-n", "2")
        assert code == EXIT_OK and out.split() == ["2"]

    def test_max_n_1_exits_2(self, capsys):
        code, _, _ = run(capsys, "schedule", "--max-n", "1")
        assert code == EXIT_BAD_FLAGS


class TestHelp:
    def test_sample_help_lists_each_tag_once(self, capsys):
        code, out, _ = run(capsys, "sample", "--help")
        assert code == 0
        for tag in list(SAMPLER_TAGS) + list(RNG_TAGS):
            # whole-tag matches only: "mt64" must not count inside "mt64x"
            hits = re.findall(rf"(?<![\w-]){re.escape(tag)}(?![\w-])", out)
            assert len(hits) == 1, tag

    def test_top_level_help_lists_commands(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        for verb in ("sample", "verify", "bench", "schedule"):
            assert verb in out
