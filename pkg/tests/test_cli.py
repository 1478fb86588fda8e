import io
import json

import numpy as np
import pytest

import meanstream as ms
from meanstream.cli import main


def run_cli(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    def test_gini_golden(self, monkeypatch, capsys):
        code, out, _ = run_cli(["eval", "--family", "gini", "--p", "2", "--q", "1"],
                               "3\n4\n", monkeypatch, capsys)
        assert code == 0
        assert out.strip() == "3.5714285714285716"

    def test_power_integerish(self, monkeypatch, capsys):
        code, out, _ = run_cli(["eval", "--family", "power", "--p", "1"],
                               "5\n", monkeypatch, capsys)
        assert code == 0
        assert out.strip() == "5"

    def test_empty_input(self, monkeypatch, capsys):
        code, _, _ = run_cli(["eval", "--family", "power", "--p", "1"],
                             "", monkeypatch, capsys)
        assert code == 4

    def test_parse_error_reports_line(self, monkeypatch, capsys):
        code, _, err = run_cli(["eval", "--family", "power", "--p", "1"],
                               "1\nbogus\n", monkeypatch, capsys)
        assert code == 2
        assert "line 2" in err

    def test_domain_error(self, monkeypatch, capsys):
        code, _, _ = run_cli(["eval", "--family", "power", "--p", "1"],
                             "1\n-3\n", monkeypatch, capsys)
        assert code == 3

    def test_hash_terminator_and_commas(self, monkeypatch, capsys):
        code, out, _ = run_cli(["eval", "--family", "power", "--p", "1"],
                               "1, 2, 3\n#\n99\n", monkeypatch, capsys)
        assert code == 0
        assert out.strip() == "2"

    def test_csv_column(self, monkeypatch, capsys, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("x,y\n1,3\n2,4\n")
        code, out, _ = run_cli(["eval", "--family", "power", "--p", "1",
                                "--input", str(path), "--column", "y"],
                               "", monkeypatch, capsys)
        assert code == 0
        assert out.strip() == "3.5"

    def test_family_json(self, monkeypatch, capsys):
        code, out, _ = run_cli(
            ["eval", "--family-json", '{"family":"gini","p":2,"q":1}'],
            "3\n4\n", monkeypatch, capsys)
        assert code == 0
        assert out.strip() == "3.5714285714285716"


class TestMerge:
    def _state_file(self, tmp_path, name, values, monkeypatch, capsys):
        path = tmp_path / name
        code, _, _ = run_cli(
            ["eval", "--family", "gini", "--p", "2", "--q", "1",
             "--state-out", str(path)],
            "".join(f"{v}\n" for v in values), monkeypatch, capsys)
        assert code == 0
        return path

    def test_merge_two_shards(self, monkeypatch, capsys, tmp_path):
        s1 = self._state_file(tmp_path, "a.state", [3], monkeypatch, capsys)
        s2 = self._state_file(tmp_path, "b.state", [4], monkeypatch, capsys)
        out_path = tmp_path / "merged.state"
        code = main(["merge", str(s1), str(s2), "--out", str(out_path)])
        capsys.readouterr()
        assert code == 0
        merged = ms.parse_state(out_path.read_bytes())
        assert merged.finalize() == pytest.approx(25 / 7, rel=1e-15)

    def test_merge_single_file_is_identity(self, monkeypatch, capsys, tmp_path):
        s1 = self._state_file(tmp_path, "a.state", [3, 4], monkeypatch, capsys)
        out_path = tmp_path / "same.state"
        assert main(["merge", str(s1), "--out", str(out_path)]) == 0
        capsys.readouterr()
        a, b = ms.parse_state(s1.read_bytes()), ms.parse_state(out_path.read_bytes())
        assert a.reals == b.reals

    def test_mismatch_exit_code(self, monkeypatch, capsys, tmp_path):
        s1 = self._state_file(tmp_path, "a.state", [3], monkeypatch, capsys)
        p2 = tmp_path / "p.state"
        run_cli(["eval", "--family", "power", "--p", "1",
                 "--state-out", str(p2)], "3\n", monkeypatch, capsys)
        assert main(["merge", str(s1), str(p2)]) == 5
        capsys.readouterr()

    def test_corrupt_file_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.state"
        bad.write_bytes(b"{not json")
        assert main(["merge", str(bad)]) == 2
        capsys.readouterr()

    def test_split_merge_matches_single_pass(self, monkeypatch, capsys, tmp_path):
        rng = np.random.default_rng(3)
        values = [float(v) for v in rng.uniform(0.5, 20, size=17)]
        paths = []
        for i, chunk in enumerate((values[:5], values[5:9], values[9:])):
            paths.append(self._state_file(tmp_path, f"c{i}.state", chunk,
                                          monkeypatch, capsys))
        out_path = tmp_path / "merged.state"
        assert main(["merge", *map(str, paths), "--out", str(out_path)]) == 0
        capsys.readouterr()
        merged = ms.parse_state(out_path.read_bytes()).finalize()
        single = ms.evaluate_stream(ms.gini(2, 1), values)
        assert merged == pytest.approx(single, rel=1e-9)


class TestClassify:
    def test_biplanar_golden(self, capsys):
        assert main(["classify", "--family", "biplanar", "--p", "2",
                     "--q", "3", "--c", "3", "--d", "3",
                     "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["type"] == "T5+"
        assert report["exponent_set_size"] == 5

    def test_quasiarithmetic(self, capsys):
        assert main(["classify", "--family", "quasiarithmetic",
                     "--f", "ln", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["type"] == "T1+"

    def test_hamy_upper_bound_flag(self, capsys):
        assert main(["classify", "--family", "hamy", "--r", "3",
                     "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["type"] == "T3+"
        assert report["upper_bound_only"] is True

    def test_median(self, capsys):
        assert main(["classify", "--family", "median", "--kind", "lower",
                     "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["type"] == "no finite type"


class TestVerifyCommand:
    def test_json_lines(self, capsys):
        assert main(["verify", "--seed", "7", "--trials", "20",
                     "--format", "json"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        reports = [json.loads(line) for line in lines]
        assert any(r["property"] == "g23_inequality" for r in reports)
        piecewise = [r for r in reports
                     if r["subject"].startswith("piecewise")
                     and r["property"] == "repetition_invariance"]
        assert piecewise and not piecewise[0]["holds"]


class TestMyhillCommand:
    def test_profile_json(self, capsys):
        assert main(["myhill", "--family", "median", "--kind", "lower",
                     "--alphabet", "0,1,2", "--max-len", "6",
                     "--probe-len", "2"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["counts"][:3] == [3, 6, 10]
        assert "classification" in result["growth"]
