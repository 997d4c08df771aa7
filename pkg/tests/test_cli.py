"""End-to-end command-line tests, run in-process via main(argv)."""

import io
import json

import jsonschema
import pytest

from ucsets.cli import main
from ucsets.formats import load_schema

TRI_TEXT = "0\n1\n0,1\n"
NONUC_TEXT = "0\n1\n"


@pytest.fixture()
def tri_file(tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text(TRI_TEXT)
    return str(p)


@pytest.fixture()
def nonuc_file(tmp_path):
    p = tmp_path / "nonuc.txt"
    p.write_text(NONUC_TEXT)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_text_output(self, capsys, tri_file):
        code, out, err = run(capsys, "analyze", tri_file)
        assert code == 0
        lines = out.splitlines()
        assert "m: 2" in lines
        assert "n: 3" in lines
        assert "union_closed: true" in lines
        assert "separating: true" in lines
        assert "verdict: covered-by-small-m" in lines
        assert err == ""

    def test_json_output_matches_schema(self, capsys, tri_file):
        code, out, _ = run(capsys, "analyze", tri_file, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("analyze"))
        assert doc["m"] == 2 and doc["n"] == 3
        assert doc["union_closed"] is True and doc["separating"] is True
        assert doc["frequencies"] == {"0": 2, "1": 2}
        assert doc["order"] == [0, 1]
        assert doc["frankl_witnesses"] == [0, 1]
        assert doc["verdict"] == "covered-by-small-m"
        assert doc["alarm"] is None

    def test_not_union_closed_reports_no_verdict(self, capsys, nonuc_file):
        code, out, _ = run(capsys, "analyze", nonuc_file, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("analyze"))
        assert doc["union_closed"] is False
        assert doc["verdict"] is None
        assert doc["notes"] == ["verdict requires a union-closed separating family"]

    def test_empty_family_rejected(self, capsys, tmp_path):
        p = tmp_path / "empty.txt"
        p.write_text("# nothing here\n")
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 2
        assert "empty family" in err

    def test_duplicate_lines_warn(self, capsys, tmp_path):
        p = tmp_path / "dup.txt"
        p.write_text("0\n0\n1\n0 1\n")
        code, out, err = run(capsys, "analyze", str(p))
        assert code == 0
        assert "warning: 1 duplicate member line(s) collapsed" in err
        assert "n: 3" in out.splitlines()

    def test_padded_json_input_warns_and_drops(self, capsys, tmp_path):
        p = tmp_path / "padded.json"
        p.write_text('{"universe_size": 4, "members": [[0]]}')
        code, out, err = run(capsys, "analyze", str(p))
        assert code == 0
        assert "unused element ids dropped" in err
        assert "m: 1" in out.splitlines()

    def test_stdin_dash(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(TRI_TEXT))
        code, out, _ = run(capsys, "analyze", "-")
        assert code == 0
        assert "n: 3" in out.splitlines()


class TestClosure:
    def test_text(self, capsys, nonuc_file):
        code, out, _ = run(capsys, "closure", nonuc_file)
        assert code == 0
        assert out == "0\n1\n0,1\n"

    def test_json(self, capsys, nonuc_file):
        code, out, _ = run(capsys, "closure", nonuc_file, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("family"))
        assert doc == {"universe_size": 2, "members": [[0], [1], [0, 1]]}

    def test_closure_is_idempotent_through_cli(self, capsys, tmp_path,
                                               nonuc_file, monkeypatch):
        _, once, _ = run(capsys, "closure", nonuc_file)
        monkeypatch.setattr("sys.stdin", io.StringIO(once))
        _, twice, _ = run(capsys, "closure", "-")
        assert once == twice


class TestQuotient:
    def test_merges_identical_columns(self, capsys, tmp_path):
        p = tmp_path / "q.txt"
        p.write_text("0,1\n0,1,2\n")
        code, out, _ = run(capsys, "quotient", str(p), "--format", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("quotient"))
        assert doc["family"] == {"universe_size": 2, "members": [[0], [0, 1]]}
        assert doc["classes"] == [[0, 1], [2]]

    def test_text_output_with_class_comments(self, capsys, tmp_path):
        p = tmp_path / "q.txt"
        p.write_text("0,1\n0,1,2\n")
        code, out, _ = run(capsys, "quotient", str(p))
        assert code == 0
        assert out == "0\n0,1\n# class 0: 0,1\n# class 1: 2\n"

    def test_round_trips_through_parser(self, capsys, tmp_path):
        p = tmp_path / "q.txt"
        p.write_text("0,1\n0,1,2\n")
        _, out, _ = run(capsys, "quotient", str(p))
        q = tmp_path / "q2.txt"
        q.write_text(out)  # comment lines must be ignored on re-parse
        code, out2, _ = run(capsys, "analyze", str(q))
        assert code == 0
        assert "m: 2" in out2.splitlines()

    def test_requires_union_closed(self, capsys, nonuc_file):
        code, _, err = run(capsys, "quotient", nonuc_file)
        assert code == 2
        assert "run the closure command first" in err


class TestWitness:
    def test_chain_text(self, capsys, tri_file):
        code, out, _ = run(capsys, "witness", tri_file)
        assert code == 0
        lines = out.splitlines()
        assert "order: 0 1" in lines
        assert "X_0 = {0,1}" in lines
        assert any(line.startswith("X_1 = ") for line in lines)
        assert any(line.startswith("M_1 = ") for line in lines)
        assert "empty_set_member: false" in lines

    def test_chain_json_schema(self, capsys, tri_file):
        code, out, _ = run(capsys, "witness", tri_file, "--format", "json")
        assert code == 0
        jsonschema.validate(json.loads(out), load_schema("chain"))

    def test_transversal_json_schema(self, capsys, tri_file):
        code, out, _ = run(capsys, "witness", tri_file,
                           "--which", "transversal", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("transversal"))
        assert doc["k"] == len(doc["u_hat"])

    def test_audit_text_and_json(self, capsys, tri_file):
        code, out, _ = run(capsys, "witness", tri_file, "--which", "audit")
        assert code == 0
        lines = out.splitlines()
        assert "rhs: 4" in lines
        assert lines[-1] == "inequality holds"
        assert all(line.endswith(": ok") for line in lines
                   if line.startswith("bullet "))

        code, out, _ = run(capsys, "witness", tri_file, "--which", "audit",
                           "--format", "json")
        assert code == 0
        jsonschema.validate(json.loads(out), load_schema("audit"))

    def test_requires_union_closed(self, capsys, nonuc_file):
        code, _, err = run(capsys, "witness", nonuc_file)
        assert code == 2
        assert "run the closure command first" in err

    def test_requires_separating(self, capsys, tmp_path):
        p = tmp_path / "glued.txt"
        p.write_text("0,1\n")
        code, _, err = run(capsys, "witness", str(p))
        assert code == 2
        assert "run the quotient command first" in err


class TestBounds:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "bounds", "--m", "13")
        assert code == 0
        lines = out.splitlines()
        assert "k_star: 4" in lines
        assert "min_f: 7.5" in lines
        assert "ieq1_threshold: 41.0" in lines
        assert "closed_form_threshold: 40.3429046181" in lines

    def test_verdict_with_n(self, capsys):
        code, out, _ = run(capsys, "bounds", "--m", "13", "--n", "40")
        assert code == 0
        assert "verdict: covered-by-theorem" in out.splitlines()
        code, out, _ = run(capsys, "bounds", "--m", "13", "--n", "41")
        assert "verdict: not-covered" in out.splitlines()

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "bounds", "--m", "13", "--n", "40",
                           "--format", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("bounds"))
        assert doc["f_values"]["4"] == 7.5

    def test_small_m_rejected(self, capsys):
        code, _, err = run(capsys, "bounds", "--m", "1")
        assert code == 2
        assert "m >= 2" in err


class TestEnumerate:
    def test_text_labels(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--m", "2")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 12
        assert lines[0] == "{}"
        assert all(line.startswith("{") for line in lines)

    def test_ndjson_stream(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--m", "2", "--format", "json")
        assert code == 0
        docs = [json.loads(line) for line in out.splitlines()]
        assert len(docs) == 12
        schema = load_schema("family")
        for doc in docs:
            jsonschema.validate(doc, schema)

    def test_filter_all(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--m", "2", "--filter", "all")
        assert code == 0
        assert len(out.splitlines()) == 14

    def test_capacity_exit(self, capsys):
        code, _, err = run(capsys, "enumerate", "--m", "5")
        assert code == 2
        assert "m <= 4" in err


class TestRandom:
    def test_byte_identical_runs(self, capsys):
        args = ("random", "--m", "16", "--generators", "10", "--seed", "42")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        assert len(out1.splitlines()) == 79

    def test_count_ndjson(self, capsys):
        code, out, _ = run(capsys, "random", "--m", "8", "--count", "3",
                           "--seed", "5", "--format", "json")
        assert code == 0
        docs = [json.loads(line) for line in out.splitlines()]
        assert len(docs) == 3
        assert docs[0] != docs[1]

    def test_count_text_blocks(self, capsys):
        code, out, _ = run(capsys, "random", "--m", "4", "--generators", "3",
                           "--count", "2", "--seed", "1")
        assert code == 0
        assert "\n\n" in out  # blank line between the two family blocks


class TestVerify:
    def test_enumerated_corpus_ok(self, capsys):
        code, out, _ = run(capsys, "verify", "--m", "3")
        assert code == 0
        lines = out.splitlines()
        assert "total_families: 96" in lines
        assert lines[-1] == "ok"

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--m", "2", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("corpus"))
        assert doc["ok"] is True and doc["total_families"] == 12

    def test_rejects_bad_family_file(self, capsys, nonuc_file):
        code, out, _ = run(capsys, "verify", "--input", nonuc_file)
        assert code == 3
        lines = out.splitlines()
        assert any(line.startswith("REJECTED:") for line in lines)
        assert lines[-1] == "FAILURES FOUND"

    def test_single_family_file_ok(self, capsys, tri_file):
        code, out, _ = run(capsys, "verify", "--input", tri_file)
        assert code == 0
        assert "separating_count: 1" in out.splitlines()

    def test_ndjson_pipe_from_enumerate(self, capsys, monkeypatch):
        _, ndjson, _ = run(capsys, "enumerate", "--m", "2", "--format", "json")
        monkeypatch.setattr("sys.stdin", io.StringIO(ndjson))
        code, out, _ = run(capsys, "verify", "--input", "-")
        assert code == 0
        assert "total_families: 12" in out.splitlines()

    def test_random_corpus(self, capsys):
        code, out, _ = run(capsys, "verify", "--random", "--m", "8",
                           "--count", "5", "--seed", "7")
        assert code == 0
        assert "total_families: 5" in out.splitlines()

    def test_needs_source(self, capsys):
        code, _, err = run(capsys, "verify")
        assert code == 2
        assert "--input" in err


class TestErrorPaths:
    def test_parse_error_exit_one(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("0\nx\n")
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 1
        assert "line 2" in err

    def test_missing_file_exit_one(self, capsys, tmp_path):
        code, _, err = run(capsys, "analyze", str(tmp_path / "absent.txt"))
        assert code == 1
        assert "error:" in err

    def test_bad_json_field_exit_one(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"universe_size": 2, "members": [], "junk": 1}')
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 1
        assert "unknown family fields" in err

    def test_usage_error_from_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["enumerate"])  # --m is required
        assert exc.value.code == 2
