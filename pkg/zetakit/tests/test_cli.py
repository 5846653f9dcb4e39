"""
Tests for the command-line surface.

Tests:
- RunConfig merging (flags > config > DEFAULTS, ZETAKIT_JOBS > --jobs)
- compute / verify / scan entry points and exit codes
- Report rendering (JSON lines, TSV)
- Command dispatch in __main__
"""

import argparse
import copy
import json
import os
import sys
import unittest
from unittest.mock import MagicMock, patch

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from zetakit.config import DEFAULTS


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    """Run every CLI test against DEFAULTS with no ZETAKIT_JOBS set."""
    monkeypatch.delenv("ZETAKIT_JOBS", raising=False)
    with patch("zetakit.cli.load_config", return_value=copy.deepcopy(DEFAULTS)):
        yield


def run_main(module, argv):
    """Call module.main() with argv; return the exit code (0 if it returns)."""
    with patch.object(sys, "argv", argv):
        try:
            module.main()
        except SystemExit as e:
            return e.code
    return 0


# ===== RunConfig =====

class TestBuildRunConfig:
    """Merging flags over config."""

    def _args(self, **flags):
        base = {name: None for name in ("bits", "ladder", "order", "jobs", "format", "max_den", "digits", "trunc")}
        base["verbose"] = False
        base.update(flags)
        return argparse.Namespace(**base)

    def test_defaults(self):
        """With no flags, every setting comes from DEFAULTS."""
        from zetakit.cli import build_run_config

        rc = build_run_config("verify", self._args(), DEFAULTS)
        assert rc.bits == 192
        assert rc.cap == 12
        assert rc.ladder == (1024, 2048, 4096, 8192, 16384)
        assert rc.jobs == 1
        assert rc.format == "json"

    def test_flags_win(self):
        """Flags override the config file values."""
        from zetakit.cli import build_run_config

        rc = build_run_config("verify", self._args(bits=256, trunc=5, ladder="64,128,256"), DEFAULTS)
        assert rc.bits == 256
        assert rc.cap == 5
        assert rc.ladder == (64, 128, 256)

    def test_env_jobs_overrides_flag(self, monkeypatch):
        """ZETAKIT_JOBS should win over --jobs."""
        from zetakit.cli import build_run_config

        monkeypatch.setenv("ZETAKIT_JOBS", "3")
        rc = build_run_config("scan", self._args(jobs=1), DEFAULTS)
        assert rc.jobs == 3

    def test_invalid_value(self):
        """Out-of-range settings surface as ValueError."""
        from zetakit.cli import build_run_config

        with pytest.raises(ValueError):
            build_run_config("verify", self._args(bits=16), DEFAULTS)

    def test_precision_context(self):
        """The run config builds a matching PrecisionContext."""
        from zetakit.cli import build_run_config

        ctx = build_run_config("verify", self._args(order=3), DEFAULTS).precision()
        assert ctx.order == 3
        assert ctx.bits == 192

    def test_parse_int_list(self):
        from zetakit.cli import parse_int_list

        assert parse_int_list("1,0,1") == (1, 0, 1)
        assert parse_int_list("") == ()
        with pytest.raises(ValueError):
            parse_int_list("1,a")


# ===== compute =====

class TestCompute:
    """zetakit compute."""

    def test_exact_value(self, capsys):
        """exact-p mode prints the rational value."""
        from zetakit import compute

        code = run_main(compute, ["compute", "--star", "--index", "2,1", "--trunc", "2", "--mode", "exact-p"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "11/8"

    def test_pattern_target(self, capsys):
        """A pattern is expanded before evaluation."""
        from zetakit import compute

        # j=1,0;e=1 is (2,1)
        run_main(compute, ["compute", "-s", "-p", "j=1,0;e=1", "-t", "2", "-m", "exact-p"])
        assert capsys.readouterr().out.strip() == "11/8"

    def test_json_record(self, capsys):
        """JSON output carries value, star flag and level."""
        from zetakit import compute

        run_main(compute, ["compute", "--index", "2,1", "--trunc", "3", "--mode", "exact-p", "--format", "json"])
        record = json.loads(capsys.readouterr().out)
        assert record["value"] == "5/12"
        assert record["star"] is False
        assert record["trunc"] == 3

    def test_numeric_value(self, capsys):
        """Numeric mode prints the extrapolated limit."""
        from zetakit import compute

        run_main(compute, ["compute", "--index", "2", "--bits", "128", "--ladder", "512,1024,2048,4096,8192"])
        assert capsys.readouterr().out.startswith("1.6449340668")

    def test_divergent_index_is_usage_error(self):
        """A divergent index exits 2."""
        from zetakit import compute

        assert run_main(compute, ["compute", "--index", "1,2"]) == 2

    def test_bad_index_is_usage_error(self):
        """A malformed index exits 2."""
        from zetakit import compute

        assert run_main(compute, ["compute", "--index", "2,0", "--mode", "exact-p"]) == 2

    def test_unexpected_error_exits_three(self):
        """Errors other than bad input exit 3."""
        from zetakit import compute

        with patch("zetakit.compute.compute_value", side_effect=ArithmeticError("overflow")), \
                patch("zetakit.cli.logger"):
            assert run_main(compute, ["compute", "--index", "2", "--mode", "exact-p"]) == 3


# ===== verify =====

class TestVerify:
    """zetakit verify."""

    def test_telescope_passes(self, capsys):
        """A telescope instance passes and echoes its parameters."""
        from zetakit import verify

        code = run_main(verify, ["verify", "telescope", "--pattern", "j=1,1;e=1", "--trunc", "4"])
        assert code == 0
        record = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert record["identity"] == "telescope"
        assert record["status"] == "pass"
        assert record["params"] == {"pattern": "j=1,1;e=1", "P": 4}

    def test_c_duality_kernel_flag(self, capsys):
        """--kernel-j selects the C_j kernel."""
        from zetakit import verify

        code = run_main(verify, ["verify", "c_duality", "--kernel-j", "0", "--trunc", "2", "--q", "3"])
        assert code == 0
        record = json.loads(capsys.readouterr().out)
        assert record["lhs"] == "21/20"

    def test_tsv_format(self, capsys):
        """TSV output has a header row and one report row."""
        from zetakit import verify

        run_main(verify, ["verify", "main2_finite", "--m", "1", "--n", "1", "--trunc", "5", "-f", "tsv"])
        header, row = capsys.readouterr().out.strip().splitlines()
        assert header.split("\t") == ["identity", "params", "residual", "tolerance", "status"]
        assert row.split("\t") == ["main2_finite", "m=1,n=1,p=5", "0", "0.0", "pass"]

    def test_divergent_is_usage_error(self):
        """main2 at m=0 diverges and exits 2."""
        from zetakit import verify

        assert run_main(verify, ["verify", "main2", "--m", "0", "--n", "1"]) == 2

    def test_missing_parameter_is_usage_error(self):
        """A checker missing a parameter exits 2."""
        from zetakit import verify

        assert run_main(verify, ["verify", "ccbaa", "--m", "1"]) == 2

    def test_failing_report_exits_one(self):
        """A failing report exits 1."""
        from zetakit import verify
        from zetakit.identities import IdentityReport

        failed = IdentityReport(identity="main3", params={}, tolerance=1e-10, method="numeric", status="fail")
        with patch("zetakit.verify.run_checker", return_value=failed):
            assert run_main(verify, ["verify", "main3", "--m", "1", "--n", "1"]) == 1

    def test_checker_crash_exits_three(self):
        """An unexpected exception is logged with its traceback, not reported as a failure."""
        from zetakit import verify

        with patch("zetakit.verify.run_checker", side_effect=RuntimeError("boom")), \
                patch("zetakit.cli.logger") as log:
            assert run_main(verify, ["verify", "main3", "--m", "1", "--n", "1"]) == 3
        log.exception.assert_called_once()


# ===== scan =====

class TestScan:
    """zetakit scan."""

    def test_family_grid_weights(self):
        """(m, n) grids stop at the weight bound, in lexicographic order."""
        from zetakit.scan import family_grid

        assert family_grid("main3", 6, None, 1, 12) == [{"m": 1, "n": 1}, {"m": 1, "n": 2}, {"m": 2, "n": 1}]
        assert family_grid("22322", 5, None, 1, 12) == [{"m": 0, "n": 0}, {"m": 0, "n": 1}, {"m": 1, "n": 0}]
        assert family_grid("prop_m0", 7, None, 1, 12) == [{"n": 1}, {"n": 2}, {"n": 3}]

    def test_family_grid_patterns(self):
        """Telescope grids pair each pattern with every cap."""
        from zetakit.indices import Pattern
        from zetakit.scan import family_grid

        grid = family_grid("telescope", 11, 1, 1, 2)
        assert grid == [{"pattern": Pattern((1,)), "P": 1}, {"pattern": Pattern((1,)), "P": 2}]

    def test_family_grid_conjectures(self):
        """Conjecture grids list multisets only."""
        from zetakit.scan import family_grid

        grid = family_grid("conjectureA", 11, 1, 1, 12)
        assert [g["jvec"] for g in grid] == [(0, 0), (0, 1), (1, 1)]
        assert family_grid("conjectureB", 11, 0, 2, 12) == [
            {"n": 0, "jvec": (0,)}, {"n": 0, "jvec": (1,)}, {"n": 0, "jvec": (2,)},
        ]

    def test_unknown_family(self):
        """Unknown families raise ValueError."""
        from zetakit.scan import family_grid

        with pytest.raises(ValueError):
            family_grid("nope", 5, None, 1, 12)

    def test_telescope_scan(self, capsys):
        """Every telescope row in a small scan passes."""
        from zetakit import scan

        code = run_main(scan, ["scan", "telescope", "--n", "2", "--jmax", "1", "--trunc", "3", "-f", "tsv"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("identity\t")
        assert all(line.endswith("\tpass") for line in lines[1:])
        assert len(lines) > 1

    def test_order_independent_of_jobs(self):
        """Reports match field for field whatever the worker count."""
        from zetakit.cli import RunConfig
        from zetakit.scan import family_grid, run_scan

        grid = family_grid("telescope", 11, 1, 2, 3)
        base = dict(subcommand="scan", bits=128, cap=3, ladder=(64, 128, 256), order=2, target=1e-8,
                    max_rungs=3, max_weight=11, format="json", max_den=1000, digits=10)
        serial = run_scan("telescope", grid, RunConfig(jobs=1, **base))
        parallel = run_scan("telescope", grid, RunConfig(jobs=2, **base))
        assert [r.to_record(10) for r in serial] == [r.to_record(10) for r in parallel]

    def test_negative_jmax(self):
        """A negative --jmax exits 2."""
        from zetakit import scan

        assert run_main(scan, ["scan", "thm31", "--jmax", "-1"]) == 2

    def test_checker_crash_exits_three(self):
        """A checker crash inside a scan exits 3 and is logged."""
        from zetakit import scan

        with patch("zetakit.scan.run_checker", side_effect=RuntimeError("boom")), \
                patch("zetakit.cli.logger") as log:
            assert run_main(scan, ["scan", "thm31", "--n", "1", "--jmax", "1"]) == 3
        log.exception.assert_called_once()


# ===== __main__ dispatch =====

class TestMainDispatch(unittest.TestCase):
    """Command table and dispatch."""

    def test_commands_have_modules(self):
        """Commands map to their modules; config has none."""
        from zetakit.__main__ import COMMANDS

        self.assertEqual(COMMANDS["compute"]["module"], "zetakit.compute")
        self.assertIsNone(COMMANDS["config"]["module"])

    def test_run_command_replaces_argv(self):
        """The subcommand sees its own argv."""
        from zetakit.__main__ import run_command

        module = MagicMock()
        with patch("importlib.import_module", return_value=module) as import_module:
            with patch.object(sys, "argv", ["zetakit"]):
                run_command("verify", ["main3", "--m", "1"])
                self.assertEqual(sys.argv, ["verify", "main3", "--m", "1"])
        import_module.assert_called_once_with("zetakit.verify")
        module.main.assert_called_once()

    def test_no_args_prints_table(self):
        """No arguments prints the command table."""
        from zetakit import __main__ as entry

        with patch.object(entry, "console") as console, patch.object(sys, "argv", ["zetakit"]):
            entry.main()
        self.assertTrue(console.print.called)

    def test_config_command(self):
        """config shows the effective configuration."""
        from zetakit import __main__ as entry

        with patch.object(entry, "show_config") as show, patch.object(sys, "argv", ["zetakit", "config"]):
            entry.main()
        show.assert_called_once()

    def test_unknown_command_exits_two(self):
        """An unknown command exits 2."""
        from zetakit import __main__ as entry

        with patch.object(entry, "console"), patch.object(sys, "argv", ["zetakit", "bogus"]):
            with self.assertRaises(SystemExit) as ctx:
                entry.main()
        self.assertEqual(ctx.exception.code, 2)
