import json
from pathlib import Path

import pytest

from cvk.io import dumps, load_input, parse_document, polytope_to_dict, system_to_dict
from utils.errors import BadLabel, ParseError, ValidationError

FIXTURE_DIR = Path(__file__).parents[1] / "fixtures"


@pytest.mark.unit
class TestLoadInput:
    def test_fixture_polytope(self):
        loaded = load_input("fixture:triangle-237")
        assert loaded.system is None
        assert loaded.require_polytope().n_facets == 3

    def test_fixture_system_keeps_peripherals(self):
        loaded = load_input("fixture:prism-system")
        assert loaded.polytope is None
        assert loaded.peripherals == ("1", "3", "5")
        with pytest.raises(ParseError):
            loaded.require_polytope()

    def test_diagram(self):
        loaded = load_input("diagram:B~2")
        assert loaded.system is not None
        assert loaded.polytope.n_facets == 3

    def test_unknown_fixture(self):
        with pytest.raises(ValidationError):
            load_input("fixture:nope")

    def test_file(self):
        loaded = load_input(str(FIXTURE_DIR / "triangle-237.json"))
        assert loaded.name == "triangle-237"
        assert loaded.polytope.names == ("1", "2", "3")

    def test_prism_file(self):
        loaded = load_input(str(FIXTURE_DIR / "prism.json"))
        assert loaded.peripherals == ("1", "3", "5")
        assert loaded.system.rank == 5

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError) as exc:
            load_input(str(tmp_path / "absent.json"))
        assert exc.value.exit_code == 2

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"schema": "cvk/1",', encoding="utf-8")
        with pytest.raises(ParseError) as exc:
            load_input(str(path))
        assert "line" in exc.value.locus


@pytest.mark.unit
class TestParseDocument:
    def test_wrong_schema(self):
        with pytest.raises(ParseError, match="schema"):
            parse_document({"schema": "cvk/0"}, "x")

    def test_unknown_kind(self):
        with pytest.raises(ParseError) as exc:
            parse_document({"kind": "banana"}, "x")
        assert exc.value.locus == {"kind": "banana"}

    def test_not_an_object(self):
        with pytest.raises(ParseError):
            parse_document([1, 2], "x")

    def test_missing_field(self):
        with pytest.raises(ParseError) as exc:
            parse_document({"kind": "coxeter-system", "generators": ["a"]}, "x")
        assert exc.value.locus == {"field": "labels"}

    def test_bad_label(self):
        doc = {"kind": "coxeter-system", "generators": ["a", "b"], "labels": [[1, 1], [1, 1]]}
        with pytest.raises(BadLabel):
            parse_document(doc, "x")

    def test_bare_system(self):
        doc = {"generators": ["a", "b", "c"], "labels": [[1, 2, 3], [2, 1, 7], [3, 7, 1]]}
        loaded = parse_document(doc, "bare")
        assert loaded.polytope is None
        assert loaded.system.label("b", "c") == 7

    def test_bare_tits_simplex(self):
        doc = {"coxeter": {"generators": ["a", "b", "c"], "labels": [[1, 2, 3], [2, 1, "inf"], [3, "inf", 1]]}}
        loaded = parse_document(doc, "tits")
        assert loaded.system.generators == ("a", "b", "c")
        assert loaded.polytope.names == ("a", "b", "c")
        assert loaded.polytope.dim == 2

    def test_bare_polytope(self, t237):
        doc = polytope_to_dict(t237)
        del doc["schema"], doc["kind"]
        assert parse_document(doc, "bare").polytope.n_facets == 3

    @pytest.mark.parametrize("dim", ["two", None, 1.5, True])
    def test_bad_dim(self, t237, dim):
        doc = polytope_to_dict(t237) | {"dim": dim}
        with pytest.raises(ParseError) as exc:
            parse_document(doc, "x")
        assert exc.value.locus == {"field": "dim"}

    def test_bare_tits_simplex_missing_system(self):
        with pytest.raises(ParseError):
            parse_document({"coxeter": [1, 2]}, "x")

    def test_cartan_kind(self):
        doc = {"kind": "cartan", "matrix": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]}
        assert parse_document(doc, "a2-tilde").polytope.n_facets == 3

    def test_polytope_dict_reloads(self, t237):
        reloaded = parse_document(json.loads(dumps(polytope_to_dict(t237))), "copy").polytope
        assert reloaded.names == t237.names
        assert reloaded.dim == 2

    def test_system_dict_reloads(self):
        loaded = load_input("fixture:prism-system")
        doc = system_to_dict(loaded.system, loaded.peripherals)
        again = parse_document(doc, "prism")
        assert again.peripherals == ("1", "3", "5")
        assert again.system.label("4", "5") == loaded.system.label("4", "5")
