import json
import math
import subprocess
import sys
import time

import jsonschema
import mpmath
import pytest

from supervol.cli import NORMALIZED_SCHEMA, VOLUME_SCHEMA, format_complex, main, parse_range
from supervol.oracles.report import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def text_fields(out):
    return dict(line.split(": ", 1) for line in out.strip().splitlines() if ": " in line)


class TestVolume:
    def test_cp11_text(self, capsys):
        code, out, _ = run(capsys, "volume", "cp", "--n", "1", "--m", "1", "--radius", "3")
        assert code == 0
        f = text_fields(out)
        assert float(f["value"]) == pytest.approx(2 * math.pi, rel=1e-14)
        assert f["exact_zero"] == "false" and f["index"] == "0" and f["conjectural"] == "false"

    def test_json_matches_text_to_full_precision(self, capsys):
        args = ["volume", "sphere", "--n", "4", "--m", "1", "--radius", "1.7"]
        _, text, _ = run(capsys, *args)
        code, js, _ = run(capsys, *args, "--format", "json")
        assert code == 0
        data = json.loads(js)
        jsonschema.validate(data, VOLUME_SCHEMA)
        assert f"{data['value_re']:.15g}" == text_fields(text)["value"]
        assert f"{data['gaussian_factor']:.15g}" == text_fields(text)["gaussian_factor"]

    def test_exact_zero_and_conjectural(self, capsys):
        _, out, _ = run(capsys, "volume", "stiefel", "--n", "2", "--m", "1", "--r", "1", "--s", "1", "--format", "json")
        assert json.loads(out)["exact_zero"] is True
        _, out, _ = run(capsys, "volume", "grassmannian", "--n", "2", "--r", "1", "--format", "json")
        assert json.loads(out)["conjectural"] is True

    @pytest.mark.parametrize(
        "argv, needle",
        [
            (["volume", "stiefel", "--n", "2", "--m", "1", "--r", "3"], "r <= n"),
            (["volume", "sphere", "--n", "-1"], "n must be >= 0"),
            (["volume", "cp", "--n", "1", "--s", "1"], "no r/s"),
        ],
    )
    def test_bad_parameters_exit_2(self, capsys, argv, needle):
        code, _, err = run(capsys, *argv)
        assert code == 2 and needle in err

    def test_usage_errors_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["volume", "torus", "--n", "1"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["volume", "cp", "--n", "1", "--radius", "-1"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2


class TestNormalized:
    def test_complex_output(self, capsys):
        code, out, _ = run(capsys, "normalized", "cp", "--z", "0.5+1i")
        assert code == 0
        val = text_fields(out)["value"]
        assert val.endswith("i")
        z = complex(val.replace("i", "j"))
        ref = complex(mpmath.rgamma(mpmath.mpc(1.5, 1)))
        assert abs(z - ref) <= 1e-13 * abs(ref)

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "normalized", "stiefel", "--z", "2.5", "--w", "1", "--format", "json")
        assert code == 0
        jsonschema.validate(json.loads(out), NORMALIZED_SCHEMA)

    def test_missing_w(self, capsys):
        code, _, err = run(capsys, "normalized", "grassmannian", "--z", "2")
        assert code == 2 and "--w" in err

    def test_bad_complex(self):
        with pytest.raises(SystemExit) as exc:
            main(["normalized", "cp", "--z", "abc"])
        assert exc.value.code == 2


class TestVerify:
    @pytest.mark.parametrize(
        "argv",
        [
            ["--case", "u11"],
            ["--case", "sphere", "--n", "2", "--m", "1"],
            ["--case", "hopf", "--n", "1", "--m", "1"],
            ["--case", "cp", "--n", "2", "--m", "1", "--radius", "2"],
            ["--case", "gaussian", "--n", "3", "--m", "2"],
            ["--case", "cavalieri", "--n", "1", "--m", "1"],
        ],
    )
    def test_cases_pass_quickly(self, capsys, argv):
        t0 = time.perf_counter()
        code, out, _ = run(capsys, "verify", *argv, "--format", "json")
        assert time.perf_counter() - t0 <= 10
        assert code == 0
        reports = json.loads(out)
        assert reports
        for r in reports:
            jsonschema.validate(r, REPORT_SCHEMA)
            assert r["pass"] is True

    def test_sphere_both_sides_four_pi(self, capsys):
        _, out, _ = run(capsys, "verify", "--case", "sphere", "--n", "2", "--m", "1", "--format", "json")
        for r in json.loads(out):
            assert r["closed_form"][0] == pytest.approx(4 * math.pi, rel=1e-14)
            assert r["oracle"][0] == pytest.approx(4 * math.pi, rel=1e-12)

    def test_u11_text(self, capsys):
        code, out, _ = run(capsys, "verify", "--case", "u11")
        assert code == 0 and out.startswith("PASS") and "density=0-2i" in out

    def test_too_few_nodes_is_a_failure(self, capsys):
        code, out, _ = run(capsys, "verify", "--case", "cp", "--n", "2", "--m", "1", "--nodes", "4", "--format", "json")
        assert code == 1
        assert json.loads(out)[0]["pass"] is False

    def test_unsupported_grid_point_exit_2(self, capsys):
        code, _, err = run(capsys, "verify", "--case", "sphere", "--n", "5", "--m", "1")
        assert code == 2 and "n <=" in err
        code, _, _ = run(capsys, "verify", "--case", "cp", "--nodes", "1")
        assert code == 2


class TestTable:
    def test_sphere_table(self, capsys):
        code, out, _ = run(capsys, "table", "sphere", "--n", "0..5", "--m", "0..2", "--format", "json")
        assert code == 0
        cells = json.loads(out)
        assert len(cells) == 18
        for c in cells:
            jsonschema.validate(c, VOLUME_SCHEMA)
            n, m = c["n"], c["m"]
            assert c["exact_zero"] == (n % 2 == 1 and m > n // 2)

    def test_cp_table_zeros_below_diagonal(self, capsys):
        code, out, _ = run(capsys, "table", "cp", "--n", "0..3", "--m", "0..3", "--format", "json")
        assert code == 0
        for c in json.loads(out):
            assert c["exact_zero"] == (c["m"] > c["n"])
        _, text, _ = run(capsys, "table", "cp", "--n", "0..3", "--m", "0..3")
        assert text.count("0*") == 6 + 1  # six zero cells plus the legend

    def test_stiefel_table_skips_invalid_cells(self, capsys):
        code, out, _ = run(capsys, "table", "stiefel", "--n", "2", "--m", "1", "--r", "0..3", "--s", "0..1", "--format", "json")
        assert code == 0
        assert all(c["r"] <= 2 for c in json.loads(out))

    @pytest.mark.parametrize("argv", [["--n", "3..1"], ["--n", "0..200", "--m", "0..100"], ["--n", "x"], ["--n=-2..1"]])
    def test_bad_ranges_exit_2(self, capsys, argv):
        code, _, err = run(capsys, "table", "cp", *argv)
        assert code == 2 and err


def test_helpers():
    assert format_complex(1 - 2j) == "1-2i"
    assert format_complex(math.pi) == "3.14159265358979+0i"
    assert list(parse_range("2..4")) == [2, 3, 4]
    assert list(parse_range("3")) == [3]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "supervol.cli", "volume", "sphere", "--n", "2", "--m", "1"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "value: 12.5663706143592" in proc.stdout
    proc = subprocess.run(
        [sys.executable, "-m", "supervol.cli", "table", "cp", "--n", "5..1"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 2
