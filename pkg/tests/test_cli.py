import json

import pytest

from main import main
from utils.errors import FacetsCollide


def _stdout_json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


@pytest.mark.integration
class TestCommands:
    def test_fixtures(self, capsys):
        assert main(["fixtures"]) == 0
        names = [f["name"] for f in _stdout_json(capsys)["fixtures"]]
        assert "triangle-237" in names
        assert "prism-system" in names

    def test_classify(self, capsys):
        assert main(["classify", "--input", "fixture:triangle-237"]) == 0
        report = _stdout_json(capsys)
        assert report["kind"] == "classification-report"
        assert report["action"]["cocompact"]["verdict"] == "true"

    def test_classify_system(self, capsys):
        assert main(["classify", "-i", "fixture:prism-system"]) == 0
        assert _stdout_json(capsys)["relative_hyperbolicity"]["verdict"] is False

    def test_classify_bare_system_file(self, capsys, tmp_path):
        path = tmp_path / "t237.json"
        path.write_text(
            json.dumps({"coxeter": {"generators": ["1", "2", "3"], "labels": [[1, 2, 3], [2, 1, 7], [3, 7, 1]]}}),
            encoding="utf-8",
        )
        assert main(["classify", "-i", str(path)]) == 0
        assert _stdout_json(capsys)["polytope_class"]["verdict"] == "loxodromic"

    def test_bad_dim_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            json.dumps({"dim": "two", "facets": [{"alpha": [1, 0], "v": [2, 0]}]}), encoding="utf-8"
        )
        assert main(["classify", "-i", str(path)]) == 2
        assert _stdout_json(capsys)["locus"] == {"field": "dim"}

    def test_truncate(self, capsys, tmp_path):
        out = tmp_path / "pentagon.json"
        assert main(["truncate", "-i", "fixture:quadrilateral-lox", "--out", str(out)]) == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert len(payload["facets"]) == 5
        assert len(payload["new_facets"]) == 1

    def test_tile_svg(self, capsys, tmp_path):
        out = tmp_path / "tiles.svg"
        args = ["tile", "-i", "fixture:triangle-237", "--depth", "3", "--format", "svg", "--out", str(out)]
        assert main(args) == 0
        assert out.read_text(encoding="utf-8").lstrip().startswith("<svg")
        stats = _stdout_json(capsys)
        assert stats["oracle_match"] is True
        assert stats["written"] == str(out)

    def test_limit_set_csv(self, capsys):
        assert main(["limit-set", "-i", "fixture:triangle-237", "--n-words", "30"]) == 0
        header = capsys.readouterr().out.splitlines()[0]
        assert header.startswith("x0,x1,x2")


@pytest.mark.unit
class TestExitCodes:
    def test_missing_file(self, capsys, tmp_path):
        assert main(["classify", "-i", str(tmp_path / "nope.json")]) == 2
        assert _stdout_json(capsys)["error"] == "ParseError"

    def test_truncate_needs_polytope(self, capsys):
        assert main(["truncate", "-i", "fixture:prism-system"]) == 2

    def test_depth_over_cap(self, capsys):
        assert main(["tile", "-i", "fixture:triangle-237", "--depth", "20"]) == 2
        assert _stdout_json(capsys)["error"] == "ConfigError"

    def test_precondition_refusal(self, capsys):
        assert main(["limit-set", "-i", "fixture:A3", "--n-words", "10"]) == 3
        assert _stdout_json(capsys)["error"] == "NoProximalFound"

    def test_integrity_abort(self, capsys, mocker):
        mocker.patch("main.truncate_all", side_effect=FacetsCollide("x"))
        assert main(["truncate", "-i", "fixture:quadrilateral-lox"]) == 4
        assert _stdout_json(capsys)["kind"] == "error"

    def test_input_required(self):
        with pytest.raises(SystemExit):
            main(["classify"])
