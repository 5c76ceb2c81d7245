import json

import pytest

from cyclic_lattices.api.inputs import builtin_lattice, emit_document, load_lattice, parse_document
from cyclic_lattices.core.exceptions import ParseError
from cyclic_lattices.main import EXIT_INVARIANT, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, main


def _structured(capsys, *argv):
    code = main(["--format", "structured", *argv])
    assert code == EXIT_OK
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def lattice_file(tmp_path):
    """Write a lattice document and return its path"""
    def write(document):
        path = tmp_path / "lattice.json"
        path.write_text(document if isinstance(document, str) else json.dumps(document))
        return str(path)
    return write


class TestDocuments:
    def test_round_trip(self):
        for spec in ("regular:4", "augmentation:6", "permutation:6:1,2,3", "sign:2", "random:4:5"):
            m = builtin_lattice(spec, seed=3)
            assert parse_document(emit_document(m)).to_lattice() == m

    def test_round_trip_cyclotomic(self):
        from cyclic_lattices.lattice.constructors import zeta_twist
        m = zeta_twist(5, over_cyclotomic=True)
        assert parse_document(emit_document(m)).to_lattice() == m

    def test_ragged_matrix(self):
        document = {
            "base_ring": {"kind": "Z"},
            "group": {"type": "cyclic", "order": 2},
            "rank": 2,
            "sigma": [[0, 1], [1]],
        }
        with pytest.raises(ParseError):
            parse_document(json.dumps(document))

    @pytest.mark.parametrize("sigma", [[[1.7]], [["-1"]], [[True]], [[1.0]]])
    def test_non_integer_entries(self, sigma):
        """Test floats, strings and booleans in an action matrix are rejected, not coerced"""
        document = {
            "base_ring": {"kind": "Z"},
            "group": {"type": "cyclic", "order": 2},
            "rank": 1,
            "sigma": sigma,
        }
        with pytest.raises(ParseError):
            parse_document(json.dumps(document))

    def test_non_integer_rank(self):
        document = {
            "base_ring": {"kind": "Z"},
            "group": {"type": "cyclic", "order": 1},
            "rank": "1",
            "sigma": [[1]],
        }
        with pytest.raises(ParseError):
            parse_document(json.dumps(document))

    def test_unknown_version(self):
        document = {
            "format_version": 9,
            "base_ring": {"kind": "Z"},
            "group": {"order": 1},
            "rank": 1,
            "sigma": [[1]],
        }
        with pytest.raises(ParseError):
            parse_document(json.dumps(document))

    def test_bad_builtins(self):
        for spec in ("bogus:3", "regular", "regular:x", "permutation:6:4", "sign:3", "regular:0"):
            with pytest.raises(ParseError):
                builtin_lattice(spec)

    def test_needs_one_source(self):
        with pytest.raises(ParseError):
            load_lattice()
        with pytest.raises(ParseError):
            load_lattice("lattice.json", "regular:2")

    def test_random_digest_includes_seed(self):
        _, first = load_lattice(builtin="random:4:3", seed=1)
        _, second = load_lattice(builtin="random:4:3", seed=2)
        assert first != second


class TestCommands:
    def test_cohomology_of_augmentation(self, capsys):
        """Test H^1(C_4, I) = [4] at the full group"""
        report = _structured(capsys, "cohomology", "--builtin", "augmentation:4")
        assert report["command"] == "cohomology"
        entry = report["results"]["subgroups"][0]
        assert entry["subgroup_order"] == 4
        assert entry["one"]["invariants"]["torsion"] == [4]

    def test_cohomology_of_regular_file(self, capsys, lattice_file):
        path = lattice_file(emit_document(builtin_lattice("regular:6")))
        report = _structured(capsys, "cohomology", path, "--all")
        entries = report["results"]["subgroups"]
        assert [entry["subgroup_order"] for entry in entries] == [1, 2, 3, 6]
        for entry in entries:
            assert entry["minus_one"]["invariants"]["torsion"] == []
            assert entry["zero"]["invariants"]["torsion"] == []
            assert entry["one"]["invariants"]["torsion"] == []

    def test_cohomology_subgroup(self, capsys):
        report = _structured(capsys, "cohomology", "--builtin", "augmentation:4", "--subgroup", "2")
        assert report["results"]["subgroups"][0]["one"]["invariants"]["torsion"] == [2]

    def test_classify_permutation(self, capsys):
        report = _structured(capsys, "classify", "--builtin", "permutation:6:1,3")
        classification = report["results"]["classification"]
        assert classification["is_flabby"] and classification["is_coflabby"]
        assert "permutation_profile" not in report["results"]

    def test_classify_zeta_twist(self, capsys):
        """Test the witness H^-1(C_3) = [3] and the failed permutation profile"""
        results = _structured(capsys, "classify", "--builtin", "zeta-twist:3")["results"]
        witness = results["classification"]["flabby_witness"]
        assert witness["subgroup_order"] == 3
        assert witness["group"]["invariants"]["torsion"] == [3]
        assert results["permutation_profile"]["recognized"] is False

    def test_classify_regular_profile(self, capsys):
        results = _structured(capsys, "classify", "--builtin", "regular:3")["results"]
        assert results["permutation_profile"] == {"recognized": True, "a": 0, "c": 1, "reason": None}

    def test_resolve(self, capsys):
        resolution = _structured(capsys, "resolve", "--builtin", "augmentation:3")["results"]["resolution"]
        assert all(resolution["exactness"].values())
        assert resolution["flabby_classification"]["is_flabby"]
        assert resolution["permutation"]["rank"] == sum(resolution["orbit_sizes"])

    def test_decompose(self, capsys):
        decomposition = _structured(capsys, "decompose", "--builtin", "regular:6")["results"]["decomposition"]
        assert [c["rank"] for c in decomposition["components"]] == [1, 1, 1, 1]
        assert decomposition["rank_identity"] and decomposition["mobius_identity"]
        assert decomposition["omega_injective"]

    def test_dedekind(self, capsys):
        maximality = _structured(capsys, "dedekind", "--n", "12")["results"]["maximality"]
        assert maximality["holds"]
        assert [check["prime"] for check in maximality["checks"]] == [2, 3]

    def test_example(self, capsys):
        example = _structured(capsys, "example-4-3", "--p", "3")["results"]["example"]
        assert example["verdict"] == "not_invertible"
        assert example["minus_one_m"]["zeta_blocks"] == [1]

    def test_text_format(self, capsys):
        assert main(["cohomology", "--builtin", "trivial:3"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("command: cohomology")
        assert "results:" in out


class TestExitCodes:
    def test_malformed_file(self, lattice_file):
        assert main(["cohomology", lattice_file("{not json")]) == EXIT_PARSE

    def test_missing_file(self, tmp_path):
        assert main(["classify", str(tmp_path / "missing.json")]) == EXIT_PARSE

    def test_bad_builtin(self):
        assert main(["resolve", "--builtin", "regular:x"]) == EXIT_PARSE

    def test_fractional_entry(self, lattice_file):
        path = lattice_file({
            "base_ring": {"kind": "Z"},
            "group": {"type": "cyclic", "order": 2},
            "rank": 1,
            "sigma": [[1.7]],
        })
        assert main(["classify", path]) == EXIT_PARSE

    def test_invariant_violation(self, lattice_file):
        """Test a sigma of the wrong order is rejected after parsing"""
        path = lattice_file({
            "base_ring": {"kind": "Z"},
            "group": {"type": "cyclic", "order": 2},
            "rank": 1,
            "sigma": [[2]],
        })
        assert main(["classify", path]) == EXIT_INVARIANT

    def test_bad_subgroup(self):
        assert main(["cohomology", "--builtin", "regular:4", "--subgroup", "3"]) == EXIT_INVARIANT

    def test_zero_subgroup(self):
        """Test a subgroup of order 0 is rejected instead of meaning the whole group"""
        assert main(["cohomology", "--builtin", "regular:4", "--subgroup", "0"]) == EXIT_INVARIANT
        assert main(["cohomology", "--builtin", "regular:4", "--subgroup", "-2"]) == EXIT_INVARIANT

    def test_bad_n(self):
        assert main(["dedekind", "--n", "0"]) == EXIT_PARSE

    def test_unsupported_prime(self):
        assert main(["example-4-3", "--p", "11"]) == EXIT_UNSUPPORTED
        assert main(["example-4-3", "--p", "2"]) == EXIT_UNSUPPORTED


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["cohomology", "--builtin", "random:6:5", "--seed", "4", "--all"],
        ["resolve", "--builtin", "random:4:3", "--seed", "9"],
        ["decompose", "--builtin", "permutation:12:2,3,4"],
    ])
    def test_identical_results(self, capsys, argv):
        """Test repeated runs give byte-identical results sections"""
        first = _structured(capsys, *argv)
        second = _structured(capsys, *argv)
        assert json.dumps(first["results"], sort_keys=True) == json.dumps(second["results"], sort_keys=True)
        assert first["input_digest"] == second["input_digest"]
