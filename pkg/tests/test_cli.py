import io
import json

import pytest

from zmdiff.cli import (
    DocumentError,
    ProblemDocument,
    document_to_spec,
    main,
    parse_document,
    run_uniqueness_sweep,
    run_oracle_sweep,
    serialize_document,
)

EX1 = {"m": 6, "a": 2, "b": 3, "f": [1, 2, 0, 1], "f_period": 4}
EX2 = {"m": 9, "a": 2, "b": 3, "f": [1], "f_period": 1}
EX3_EVEN = {"m": 12, "a": 2, "b": 6, "f": [2, 4, 0], "f_period": 3, "horizon": 6}
EX3_ODD = {"m": 12, "a": 2, "b": 6, "f": [1, 2, 0], "f_period": 3}
EX4 = {"m": 12, "a": 6, "b": 9, "f": [3, 0, 6], "f_period": 3, "horizon": 6}


@pytest.fixture
def doc_path(tmp_path):
    def write(doc):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(doc))
        return str(path)

    return write


class TestParseDocument:
    def test_full_document(self):
        doc = parse_document({"m": 6, "a": 2, "b": 3, "f": [1, 2], "f_period": 2,
                              "y0": 4, "horizon": 5})
        assert doc == ProblemDocument(6, 2, 3, (1, 2), 2, 4, 5)

    def test_defaults(self):
        doc = parse_document({"m": 6, "a": 2, "b": 3, "f": [1]})
        assert (doc.f_period, doc.y0, doc.horizon) == (None, None, 8)

    @pytest.mark.parametrize(
        "data, field",
        [
            ({"m": 6, "a": 2, "b": 3, "f": [1], "bogus": 0}, "bogus"),
            ({"m": 6, "a": 2, "b": 3}, "f"),
            ({"a": 2, "b": 3, "f": [1]}, "m"),
            ({"m": 1, "a": 2, "b": 3, "f": [1]}, "m"),
            ({"m": 2**33, "a": 2, "b": 3, "f": [1]}, "m"),
            ({"m": True, "a": 2, "b": 3, "f": [1]}, "m"),
            ({"m": 6, "a": "2", "b": 3, "f": [1]}, "a"),
            ({"m": 6, "a": 2, "b": 3, "f": []}, "f"),
            ({"m": 6, "a": 2, "b": 3, "f": 1}, "f"),
            ({"m": 6, "a": 2, "b": 3, "f": [1.5]}, "f"),
            ({"m": 6, "a": 2, "b": 3, "f": [1], "f_period": 2}, "f_period"),
            ({"m": 6, "a": 2, "b": 3, "f": [1], "f_period": 0}, "f_period"),
            ({"m": 6, "a": 2, "b": 3, "f": [1], "horizon": 0}, "horizon"),
            ({"m": 6, "a": 2, "b": 3, "f": [2**63]}, "f"),
        ],
    )
    def test_rejections_name_the_field(self, data, field):
        with pytest.raises(DocumentError) as err:
            parse_document(data)
        assert err.value.fieldname == field

    def test_not_an_object(self):
        with pytest.raises(DocumentError):
            parse_document([1, 2, 3])

    @pytest.mark.parametrize("data", [EX1, EX2, EX3_EVEN, EX4,
                                      {"m": 6, "a": -2, "b": 3, "f": [1], "y0": 0}])
    def test_round_trip(self, data):
        doc = parse_document(data)
        assert parse_document(serialize_document(doc)) == doc

    def test_document_to_spec(self):
        spec = document_to_spec(parse_document(EX1))
        assert (spec.m, spec.a, spec.b) == (6, 2, 3)
        assert spec.forcing.period == 4


class TestClassifyCommand:
    def test_finite_two(self, capsys, doc_path):
        assert main(["classify", "--input", doc_path(EX1)]) == 0
        out = capsys.readouterr().out
        assert "finite: exactly 2 solutions" in out
        assert "x[0] = 1 (mod 3)" in out

    def test_unique(self, capsys, doc_path):
        assert main(["classify", "--input", doc_path(EX2)]) == 0
        assert "finite: exactly 1 solution" in capsys.readouterr().out

    def test_none_with_witness(self, capsys, doc_path):
        assert main(["classify", "--input", doc_path(EX3_ODD)]) == 1
        assert "forcing term 0 not divisible" in capsys.readouterr().out

    def test_initial_verdict(self, capsys, doc_path):
        assert main(["classify", "--input", doc_path(EX1), "--y0", "2"]) == 1
        assert "none" in capsys.readouterr().out
        assert main(["classify", "--input", doc_path(EX1), "--y0", "4"]) == 0

    def test_json_mode(self, capsys, doc_path):
        assert main(["classify", "--input", doc_path(EX4), "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == {"kind": "infinite", "d": 3, "m1_prime": 4}
        assert (report["m1"], report["m2"]) == (4, 3)
        assert report["support_qualified"] is False

    def test_malformed_document(self, capsys, doc_path):
        path = doc_path({"m": 6, "a": 2, "b": 3, "f": [1], "bogus": 1})
        assert main(["classify", "--input", path]) == 2
        assert "bogus" in capsys.readouterr().err


class TestSolveCommand:
    def test_known_value(self, capsys, doc_path):
        path = doc_path({**EX1, "y0": 4, "horizon": 3})
        assert main(["solve", "--input", path]) == 0
        out = capsys.readouterr().out
        assert "x[1]" in out and " 5" in out

    def test_json_values(self, capsys, doc_path):
        path = doc_path({**EX1, "y0": 4})
        assert main(["solve", "--input", path, "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["values"][:4] == [4, 5, 0, 4]
        assert report["lookahead"] == 0

    def test_constant_solution(self, capsys, doc_path):
        assert main(["solve", "--input", doc_path(EX2), "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["values"] == [1] * 8
        assert report["lookahead"] == 1

    def test_unsolvable(self, capsys, doc_path):
        assert main(["solve", "--input", doc_path(EX3_ODD)]) == 1
        assert "no solution" in capsys.readouterr().out

    def test_out_of_range_digit(self, capsys, doc_path):
        assert main(["solve", "--input", doc_path(EX4), "--alpha", "3"]) == 2
        assert main(["solve", "--input", doc_path(EX4), "--alpha", "0,1,2"]) == 0

    def test_out_of_range_x10(self, doc_path):
        assert main(["solve", "--input", doc_path(EX1), "--x10", "2"]) == 2


class TestEnumerateCommand:
    def test_two_rows(self, capsys, doc_path):
        assert main(["enumerate", "--input", doc_path(EX1), "--max", "10"]) == 0
        out = capsys.readouterr().out
        assert "2 of 2 distinct" in out
        assert "truncated" not in out

    def test_truncated_infinite_family(self, capsys, doc_path):
        assert main(["enumerate", "--input", doc_path(EX4), "--max", "5"]) == 0
        out = capsys.readouterr().out
        assert out.count("x10=") == 5
        assert "truncated: infinite family" in out

    def test_no_solutions(self, capsys, doc_path):
        assert main(["enumerate", "--input", doc_path(EX3_ODD), "--format", "json"]) == 1
        report = json.loads(capsys.readouterr().out)
        assert report["rows"] == []

    def test_rows_are_lexicographic(self, capsys, doc_path):
        assert main(["enumerate", "--input", doc_path(EX4), "--max", "12",
                     "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        keys = [(row["x10"], row["alpha"]) for row in report["rows"]]
        assert keys == sorted(keys)
        assert report["truncated"] is True
        assert report["window_rows"] == 4 * 3**7


class TestVerifyCommand:
    def test_pass(self, capsys, doc_path):
        assert main(["verify", "--input", doc_path(EX1), "--y0", "4",
                     "4", "5", "0", "4"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_forward_iteration_explicit(self, doc_path):
        # b = 2 invertible mod 5: iterate x[n+1] = 3*(3x + f) with 2*3 = 1
        path = doc_path({"m": 5, "a": 3, "b": 2, "f": [4, 1, 0], "f_period": 3})
        xs = [2]
        for n in range(5):
            f = [4, 1, 0][n % 3]
            xs.append((3 * (3 * xs[-1] + f)) % 5)
        assert main(["verify", "--input", path, *map(str, xs)]) == 0

    def test_fail_index(self, capsys, doc_path):
        assert main(["verify", "--input", doc_path(EX1), "4", "5", "1"]) == 1
        assert "FAIL at index 1" in capsys.readouterr().out

    def test_start_mismatch(self, capsys, doc_path):
        assert main(["verify", "--input", doc_path(EX1), "--y0", "3", "4", "5"]) == 1
        assert "index 0" in capsys.readouterr().out

    def test_too_short(self, doc_path):
        assert main(["verify", "--input", doc_path(EX1), "4"]) == 2

    def test_beyond_forcing_support(self, doc_path):
        path = doc_path({"m": 6, "a": 2, "b": 3, "f": [1, 2]})
        assert main(["verify", "--input", path, "4", "5", "0", "4"]) == 2


class TestOracleCheckCommand:
    def test_agreement(self, capsys, doc_path):
        assert main(["oracle-check", "--input", doc_path(EX1), "--oracle-n", "5"]) == 0
        out = capsys.readouterr().out
        assert "theoretical count     2" in out
        assert "agreement             yes" in out

    def test_window_count_json(self, capsys, doc_path):
        assert main(["oracle-check", "--input", doc_path(EX3_EVEN), "--oracle-n", "5",
                     "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["truncation"] == 1
        assert report["expected"] == 2 * 2**4
        assert report["observed"] == report["expected"]

    def test_zero_equals_zero(self, capsys, doc_path):
        assert main(["oracle-check", "--input", doc_path(EX3_ODD), "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["expected"] == report["observed"] == 0

    def test_budget_exceeded(self, capsys, doc_path):
        assert main(["oracle-check", "--input", doc_path(EX1), "--budget", "2"]) == 3
        assert "budget" in capsys.readouterr().err


class TestSweepCommand:
    def test_smallest_ring(self, capsys):
        assert main(["sweep", "--m-max", "2", "--trials", "1", "--seed", "0"]) == 0
        assert "verdict: OK" in capsys.readouterr().out

    def test_small_sweep_json(self, capsys):
        assert main(["sweep", "--m-max", "4", "--trials", "2", "--seed", "3",
                     "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["ok"] is True
        assert report["oracle"]["discrepancies"] == []
        assert report["uniqueness"]["cells"] == sum(m * m for m in range(2, 5))


class TestMainPlumbing:
    def test_stdin_document(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(EX1)))
        assert main(["classify"]) == 0
        assert "finite" in capsys.readouterr().out

    def test_missing_file(self, capsys):
        assert main(["classify", "--input", "/nonexistent/problem.json"]) == 2

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["classify", "--input", str(path)]) == 2

    def test_unknown_command_is_usage_error(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_y0_flag_overrides_document(self, capsys, doc_path):
        path = doc_path({**EX1, "y0": 2})
        assert main(["solve", "--input", path, "--y0", "4", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["values"][0] == 4

    def test_byte_determinism(self, capsys, doc_path):
        path = doc_path(EX4)
        argv = ["enumerate", "--input", path, "--max", "7", "--format", "json"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first


def test_sweep_engines_are_deterministic():
    a = run_oracle_sweep(4, 2, 9)
    b = run_oracle_sweep(4, 2, 9)
    assert a == b
    assert a["ok"] and a["cells"] == sum(m * m for m in range(2, 5)) * 2
    c = run_uniqueness_sweep(6, 2, 9)
    assert c["ok"] and c["cells"] == sum(m * m for m in range(2, 7))
