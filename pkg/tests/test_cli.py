"""End-to-end command line behavior via subprocesses."""

import json
import os
import subprocess
import sys

from hopf_forge.fixtures import packaged_fixture_path


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("HOPF_FORGE_SPEC_POINTS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "hopf_forge", *args],
        capture_output=True, text=True, env=env)


class TestValidate:
    def test_good_fixture_exits_zero(self):
        proc = run_cli("validate", "c_z2")
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "result: PASS" in proc.stdout

    def test_failing_fixture_exits_one_and_names_the_rank(self):
        proc = run_cli("validate", "semilattice2")
        assert proc.returncode == 1
        assert "rank 2 of 4" in proc.stdout
        assert "result: FAIL" in proc.stdout

    def test_path_input_wins_over_packaged_name(self, tmp_path):
        src = packaged_fixture_path("c_z2")
        with open(src, encoding="utf-8") as f:
            body = f.read()
        target = tmp_path / "c_z2"
        target.write_text(body, encoding="utf-8")
        proc = run_cli("validate", str(target))
        assert proc.returncode == 0
        assert str(target) in proc.stdout

    def test_unknown_input_exits_two(self):
        proc = run_cli("validate", "no_such_thing")
        assert proc.returncode == 2
        assert "error:" in proc.stderr

    def test_json_format(self):
        proc = run_cli("validate", "c_z2", "--format", "json")
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["ok"] is True
        assert payload["command"] == "validate"
        assert all(c["ok"] for c in payload["checks"])

    def test_output_file_matches_stdout(self, tmp_path):
        out = tmp_path / "report.txt"
        proc = run_cli("validate", "c_z4", "--output", str(out))
        assert proc.returncode == 0
        assert out.read_text(encoding="utf-8") == proc.stdout


class TestAnalyze:
    def test_star_assert_fails_on_sweedler(self):
        proc = run_cli("analyze", "sweedler_h4")
        assert proc.returncode == 1

    def test_no_star_assert_reports_obstructions(self):
        proc = run_cli("analyze", "sweedler_h4", "--no-star-assert")
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "obstruction" in proc.stdout

    def test_bad_spec_points_flag_exits_two(self):
        proc = run_cli("analyze", "c_z2", "--spec-points", "nope")
        assert proc.returncode == 2

    def test_bad_spec_points_env_exits_two(self):
        proc = run_cli("analyze", "c_z2",
                       env_extra={"HOPF_FORGE_SPEC_POINTS": "3/2"})
        assert proc.returncode == 2

    def test_flag_overrides_env(self):
        proc = run_cli("analyze", "c_z2", "--spec-points", "1/2,1/3",
                       env_extra={"HOPF_FORGE_SPEC_POINTS": "3/2"})
        assert proc.returncode == 0

    def test_pairing_input_is_rejected(self):
        proc = run_cli("analyze", "pairing-uqsu2-suq2")
        assert proc.returncode == 2


class TestDual:
    def test_dual_output_revalidates(self, tmp_path):
        out = tmp_path / "dual.qg"
        proc = run_cli("dual", "c_z2", "--output", str(out))
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert out.exists()
        again = run_cli("validate", str(out))
        assert again.returncode == 0, again.stdout + again.stderr


class TestSubcheck:
    def test_named_sub_passes(self):
        proc = run_cli("subcheck", "c_z4", "--sub", "c_h")
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "imbedding-injective" in proc.stdout

    def test_fixture_without_subs_exits_two(self):
        proc = run_cli("subcheck", "c_z2")
        assert proc.returncode == 2

    def test_unknown_sub_name_exits_two(self):
        proc = run_cli("subcheck", "c_z4", "--sub", "ghost")
        assert proc.returncode == 2


class TestPair:
    def test_pair_reports_the_table(self):
        proc = run_cli("pair", "pairing-uqsu2-suq2", "--degree", "2")
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "<K, a> = 1/s" in proc.stdout
        assert "<E, bs> = -s^2" in proc.stdout
        assert "reported, not asserted" in proc.stdout

    def test_pair_rejects_structure_input(self):
        proc = run_cli("pair", "c_z2")
        assert proc.returncode == 2


class TestExamples:
    def test_writes_all_packaged_files(self, tmp_path):
        out = tmp_path / "ex"
        proc = run_cli("examples", "--output", str(out))
        assert proc.returncode == 0
        names = sorted(p.name for p in out.iterdir())
        assert len(names) == 9
        assert "pairing-uqsu2-suq2.qg" in names


class TestDeterminism:
    def test_two_runs_are_byte_identical(self):
        a = run_cli("analyze", "group_s3", "--format", "json")
        b = run_cli("analyze", "group_s3", "--format", "json")
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout
