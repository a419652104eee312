"""CLI dispatch, exit codes, and output formats."""

import json

import pytest

from kinarow.cli import main
from tests.test_board import load_fixture


@pytest.fixture
def board_file(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def fixture_path(name: str) -> str:
    from importlib import resources

    return str(resources.files("kinarow") / "fixtures" / name)


class TestSolve:
    def test_draw_output(self, capsys):
        assert main(["solve", "--board", fixture_path("fig1.board")]) == 0
        out = capsys.readouterr().out
        assert out.startswith("Draw\n")
        assert "nodes_examined:" in out

    def test_setmatch_single_node(self, capsys):
        code = main(
            ["solve", "--board", fixture_path("empty4x4.board"), "--method", "setmatch"]
        )
        assert code == 0
        assert "nodes_examined: 1\n" in capsys.readouterr().out

    def test_missing_file_is_usage_error(self, capsys):
        assert main(["solve", "--board", "no/such/file.board"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_garbage_board_is_usage_error(self, board_file, capsys):
        path = board_file("garbage.txt", "not a board at all\n")
        assert main(["solve", "--board", path]) == 2

    def test_bad_method_rejected_by_argparse(self):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--board", "x", "--method", "psychic"])
        assert exc.value.code == 2


class TestProve:
    def test_emits_json_certificate(self, capsys):
        assert main(["prove", "--board", fixture_path("fig1.board")]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert [ms["template_name"] for ms in obj["matching_sets"]] == ["Triangle"]
        assert obj["residual_pairing"] == []

    def test_pretty_rendering(self, capsys):
        assert main(["prove", "--board", fixture_path("fig1.board"), "--pretty"]) == 0
        out = capsys.readouterr().out
        assert "Triangle:" in out
        assert "groups:" in out

    def test_unprovable_position_exits_1(self, board_file, capsys):
        # Black threatens two groups at once; no draw certificate exists
        path = board_file("open.board", "4 4 4 B\n....\nO...\nOO..\nXXX.\n")
        assert main(["prove", "--board", path]) == 1
        assert "NotFound" in capsys.readouterr().err


class TestVerifyCert:
    def test_valid_certificate(self, capsys):
        assert main(["verify-cert", "--cert", fixture_path("fig1.cert")]) == 0
        assert capsys.readouterr().out == "Valid\n"

    def test_tampered_certificate_exits_1(self, board_file, capsys):
        obj = json.loads(load_fixture("fig1.cert"))
        obj["matching_sets"][0]["coverings"] = obj["matching_sets"][0]["coverings"][:1]
        path = board_file("bad.cert", json.dumps(obj))
        assert main(["verify-cert", "--cert", path]) == 1
        assert "Invalid" in capsys.readouterr().out

    def test_malformed_json_is_usage_error(self, board_file):
        path = board_file("broken.cert", "{]")
        assert main(["verify-cert", "--cert", path]) == 2


class TestDetect:
    def test_lists_embeddings(self, capsys):
        code = main(
            ["detect", "--board", fixture_path("fig5.board"), "--templates", "BiTriangle"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.count("BiTriangle:") >= 1
        assert "total:" in out

    def test_unknown_template_is_usage_error(self, capsys):
        code = main(
            ["detect", "--board", fixture_path("fig5.board"), "--templates", "Blob"]
        )
        assert code == 2


class TestRender:
    def test_board_with_live_groups(self, capsys):
        assert main(["render", "--board", fixture_path("fig1.board")]) == 0
        out = capsys.readouterr().out
        assert "to move: B" in out
        assert out.count("live:") == 3


class TestDeterminism:
    def test_prove_output_is_byte_identical(self, capsys):
        main(["prove", "--board", fixture_path("fig9c.board")])
        first = capsys.readouterr().out
        main(["prove", "--board", fixture_path("fig9c.board")])
        assert capsys.readouterr().out == first
