import json

import pytest

from algval.cli import (
    CliInputError,
    build_pipeline,
    cross_check,
    load_problem,
    problem_fingerprint,
    run,
)
from algval.flock import FlockReport

from conftest import NONFANO_A, NONFANO_GENERATORS, NONFANO_VARS

MATRIX_DOC = {
    "kind": "matrix",
    "p": 2,
    "rows": 3,
    "cols": 7,
    "entries": [list(r) for r in NONFANO_A],
}

IDEAL_DOC = {
    "kind": "ideal",
    "p": 2,
    "vars": list(NONFANO_VARS),
    "generators": list(NONFANO_GENERATORS),
}


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "nonfano-matrix.json"
    path.write_text(json.dumps(MATRIX_DOC))
    return str(path)


@pytest.fixture
def ideal_file(tmp_path):
    path = tmp_path / "nonfano-ideal.json"
    path.write_text(json.dumps(IDEAL_DOC))
    return str(path)


def run_json(capsys, *argv):
    code = run(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestLoadProblem:
    def test_missing_file(self):
        with pytest.raises(CliInputError):
            load_problem("/nonexistent/problem.json")

    def test_bad_kind(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "graph", "p": 2}')
        with pytest.raises(CliInputError):
            load_problem(str(path))

    def test_ragged_entries(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"kind":"matrix","p":2,"rows":2,"cols":2,"entries":[[1,0],[1]]}'
        )
        with pytest.raises(CliInputError):
            load_problem(str(path))

    def test_duplicate_vars(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"kind":"ideal","p":2,"vars":["x","x"],"generators":[]}'
        )
        with pytest.raises(CliInputError):
            load_problem(str(path))

    def test_fingerprint_stable(self, matrix_file):
        problem = load_problem(matrix_file)
        assert problem_fingerprint(problem) == problem_fingerprint(problem)


class TestValuationCommand:
    def test_matrix_route_reports_special_basis(self, capsys, matrix_file):
        code, doc = run_json(capsys, "valuation", matrix_file)
        assert code == 0
        assert doc["n"] == 7 and doc["rank"] == 3 and doc["p"] == 2
        assert len(doc["bases"]) == 29
        assert {"set": [4, 5, 6], "value": 1} in doc["bases"]
        assert all(
            item["value"] == 0
            for item in doc["bases"]
            if item["set"] != [4, 5, 6]
        )

    def test_ideal_route_matches_matrix_route(self, capsys, matrix_file, ideal_file):
        _, from_matrix = run_json(capsys, "valuation", matrix_file)
        _, from_ideal = run_json(capsys, "valuation", ideal_file)
        for key in ("n", "rank", "bases", "circuits", "cocircuits"):
            assert from_matrix[key] == from_ideal[key]

    def test_infinity_serialized_as_string(self, capsys, matrix_file):
        _, doc = run_json(capsys, "valuation", matrix_file)
        entries = {e for c in doc["circuits"] for e in c["entries"]}
        assert "inf" in entries
        assert None not in entries

    def test_byte_identical_reruns(self, capsys, matrix_file):
        run(["valuation", matrix_file, "--format", "json"])
        first = capsys.readouterr().out
        run(["valuation", matrix_file, "--format", "json"])
        second = capsys.readouterr().out
        assert first == second

    def test_seed_flag_immaterial(self, capsys, ideal_file):
        _, lex = run_json(capsys, "valuation", ideal_file, "--seed-basis", "lex")
        _, given = run_json(capsys, "valuation", ideal_file, "--seed-basis", "given")
        assert lex == given

    def test_text_format_mentions_special_basis(self, capsys, matrix_file):
        assert run(["valuation", matrix_file]) == 0
        out = capsys.readouterr().out
        assert "{4,5,6}  1" in out


class TestSectionCommands:
    def test_circuits_keys(self, capsys, matrix_file):
        code, doc = run_json(capsys, "circuits", matrix_file)
        assert code == 0
        assert set(doc) == {"input_sha256", "n", "p", "circuits"}
        assert len(doc["circuits"]) == 17

    def test_bases_keys(self, capsys, matrix_file):
        code, doc = run_json(capsys, "bases", matrix_file)
        assert code == 0
        assert set(doc) == {"input_sha256", "n", "rank", "p", "bases"}

    def test_cocircuits_supports(self, capsys, matrix_file):
        code, doc = run_json(capsys, "cocircuits", matrix_file)
        assert code == 0
        supports = {
            tuple(i + 1 for i, e in enumerate(c["entries"]) if e != "inf")
            for c in doc["cocircuits"]
        }
        assert (1, 2, 5, 6) in supports  # complement of the plane {3,4,7}


class TestMinorCommand:
    def test_delete_seven(self, capsys, matrix_file):
        code, doc = run_json(capsys, "minor", matrix_file, "--delete", "7")
        assert code == 0
        assert doc["n"] == 6
        assert doc["elements"] == [1, 2, 3, 4, 5, 6]
        assert {"set": [4, 5, 6], "value": 1} in doc["bases"]

    def test_contract_one(self, capsys, matrix_file):
        code, doc = run_json(capsys, "minor", matrix_file, "--contract", "1")
        assert code == 0
        assert doc["rank"] == 2
        assert doc["elements"] == [2, 3, 4, 5, 6, 7]
        assert all(item["value"] == 0 for item in doc["bases"])

    def test_overlap_rejected(self, capsys, matrix_file):
        assert run(["minor", matrix_file, "--delete", "1", "--contract", "1"]) == 1

    def test_out_of_range_rejected(self, capsys, matrix_file):
        assert run(["minor", matrix_file, "--delete", "9"]) == 1


class TestFlockCommand:
    def test_worked_direction(self, capsys, matrix_file):
        code, doc = run_json(
            capsys, "flock", matrix_file, "--alpha", "-1,-1,-1,0,0,0,-1"
        )
        assert code == 0
        assert doc["g"] == -1
        assert [4, 5, 6] in doc["bases"]
        assert [3, 5, 6] in doc["bases"]
        heavy = {1, 2, 3, 7}
        assert all(len(heavy & set(b)) < 2 for b in doc["bases"])

    def test_zero_direction_is_fano(self, capsys, matrix_file):
        code, doc = run_json(capsys, "flock", matrix_file, "--alpha", "0,0,0,0,0,0,0")
        assert code == 0
        assert doc["g"] == 0
        assert len(doc["bases"]) == 28
        assert [4, 5, 6] not in doc["bases"]

    def test_wrong_length(self, capsys, matrix_file):
        assert run(["flock", matrix_file, "--alpha", "1,2"]) == 1


class TestVerifyCommand:
    def test_matrix_input_passes(self, capsys, matrix_file):
        code, doc = run_json(capsys, "verify", matrix_file, "--box", "1")
        assert code == 0
        assert doc["ok"] is True
        names = [s["name"] for s in doc["suites"]]
        assert names == [
            "circuit-axioms",
            "exchange-identity",
            "duality",
            "orthogonality",
            "flock-axioms",
        ]
        assert all(not s["violations"] for s in doc["suites"])

    def test_ideal_input_passes(self, capsys, ideal_file):
        code, doc = run_json(capsys, "verify", ideal_file, "--box", "1")
        assert code == 0
        assert doc["ok"] is True

    def test_failure_exits_two(self, capsys, matrix_file, monkeypatch):
        import algval.cli as cli_module

        def broken(valuation, radius=None, alphas=None):
            return FlockReport(directions=1, checked=1, violations=["forced"])

        monkeypatch.setattr(cli_module, "check_flock_axioms", broken)
        assert run(["verify", matrix_file, "--box", "1"]) == 2


class TestCrossCheckCommand:
    def test_nonfano_agrees(self, capsys, matrix_file):
        code, doc = run_json(capsys, "cross-check", matrix_file)
        assert code == 0
        assert doc["agree"] is True
        assert doc["valuations_match"] is True
        assert doc["circuits_match"] is True

    def test_rejects_ideal_input(self, capsys, ideal_file):
        assert run(["cross-check", ideal_file]) == 1

    def test_identity_matrix(self, capsys, tmp_path):
        path = tmp_path / "id.json"
        path.write_text(
            '{"kind":"matrix","p":2,"rows":2,"cols":2,"entries":[[1,0],[0,1]]}'
        )
        code, doc = run_json(capsys, "cross-check", str(path))
        assert code == 0
        assert doc["agree"] is True


class TestExitCodes:
    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0

    def test_input_error(self, capsys):
        assert run(["valuation", "/does/not/exist.json"]) == 1

    def test_unit_ideal_is_internal_inconsistency(self, capsys, tmp_path):
        path = tmp_path / "unit.json"
        path.write_text(
            '{"kind":"ideal","p":2,"vars":["x1","x2"],"generators":["1"]}'
        )
        assert run(["valuation", str(path)]) == 3

    def test_bad_generator_text(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"kind":"ideal","p":2,"vars":["x1"],"generators":["x1 + y"]}'
        )
        assert run(["valuation", str(path)]) == 1

    def test_composite_characteristic(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"kind":"matrix","p":4,"rows":1,"cols":1,"entries":[[1]]}'
        )
        assert run(["valuation", str(path)]) == 1


class TestCache:
    def test_ideal_route_cache_reuse(self, capsys, ideal_file, tmp_path):
        cache = tmp_path / "cache"
        run(["valuation", ideal_file, "--format", "json", "--cache", str(cache)])
        first = capsys.readouterr().out
        files = sorted(p.name for p in cache.iterdir())
        assert files
        run(["valuation", ideal_file, "--format", "json", "--cache", str(cache)])
        second = capsys.readouterr().out
        assert first == second
        assert sorted(p.name for p in cache.iterdir()) == files


class TestPipelineHelpers:
    def test_build_pipeline_matrix(self, matrix_file):
        pipe = build_pipeline(load_problem(matrix_file))
        assert pipe.valuation.matroid.rank == 3
        assert len(pipe.vcircuits) == 17

    def test_cross_check_requires_matrix(self, ideal_file):
        with pytest.raises(CliInputError):
            cross_check(load_problem(ideal_file))
