import io
import json
import os
import subprocess
import sys

import pytest

from mbrg.cli import build_parser, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_values_example():
    code, text = run("values", "--g", "path:4", "--h", "path:2")
    doc = json.loads(text)
    assert code == 0
    assert doc["outcome"] == "R" and doc["r_mb"] == 4 and doc["r_mb_prime"] == 4
    assert "wall_ms" not in doc["stats"]


def test_values_timing_is_integer():
    code, text = run("values", "--g", "path:2", "--h", "path:2", "--timing", "--no-lines")
    assert isinstance(json.loads(text)["stats"]["wall_ms"], int)


def test_dim_example():
    assert run("dim", "--graph", "cycle:5") == (0, "2\n")


def test_lc_and_check_set():
    assert run("lc", "--graph", "path:4") == (0, "2\n")
    assert run("check-set", "--graph", "path:5", "--set", "0,1", "--property", "locating") \
        == (0, "false\n")


def test_gen_and_product_round_trip(tmp_path):
    code, text = run("product", "--g", "path:2", "--h", "path:2", "--output", "graph6")
    assert code == 0 and text.strip() == "C~"
    path = tmp_path / "k4.g6"
    path.write_text(text)
    assert run("dim", "--graph", f"file:{path}") == (0, "3\n")


def test_solve_and_best_move():
    code, text = run("solve", "--graph", "complete:4", "--first", "spoiler")
    assert json.loads(text) == {"first": "spoiler", "moves": 2, "winner": "spoiler"}
    code, text = run("best-move", "--graph", "complete:4", "--to-move", "spoiler")
    assert json.loads(text)["move"] == 0


def test_best_move_terminal_is_usage_error():
    code, _ = run("best-move", "--graph", "path:4", "--resolver", "0", "--to-move", "spoiler")
    assert code == 2


def test_verify_strategy_and_play():
    code, text = run("verify-strategy", "--name", "p5_layer_spoiler", "--g", "path:2",
                     "--h", "path:5", "--opponent-first")
    assert code == 0 and json.loads(text)["wins_always"] is True
    code, text = run("play", "--g", "path:2", "--h", "path:5", "--spoiler", "p5_layer_spoiler")
    doc = json.loads(text)
    assert doc["winner"] == "spoiler" and doc["spoiler_moves"] == 3


def test_failed_verification_exit_code():
    code, text = run("verify-strategy", "--name", "p6_layer_spoiler", "--g", "path:2",
                     "--h", "path:6", "--opponent-first")
    assert code == 1 and json.loads(text)["counterexample"]


def test_verify_table():
    code, text = run("verify", "--checks", "even-block-transversals", "--format", "table")
    assert code == 0 and text.rstrip().endswith("suite PASS")


def test_explore():
    code, text = run("explore", "--g", "path:2", "--h", "path:3")
    assert code == 0 and json.loads(text)[0]["label"] == "COMPUTED"


@pytest.mark.parametrize("argv", [
    ("dim",),
    ("dim", "--graph", "cycle:2"),
    ("dim", "--graph", "blob:3"),
    ("verify-strategy", "--name", "nope", "--g", "path:2", "--h", "path:4"),
    ("verify-strategy", "--name", "odd_path_resolver", "--g", "star:3", "--h", "path:7"),
    ("solve", "--graph", "path:3", "--node-cap", "0"),
    ("frobnicate",),
])
def test_usage_errors(argv, capsys):
    assert main(list(argv), out=io.StringIO()) == 2


def test_resource_limit_exit_code():
    code, _ = run("solve", "--graph", "product:path:3∘path:4", "--node-cap", "10")
    assert code == 3


def test_node_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MBRG_NODE_CAP", "10")
    assert run("solve", "--graph", "product:path:3∘path:4")[0] == 3


def test_csv_output():
    code, text = run("values", "--g", "path:4", "--h", "path:2", "--format", "csv", "--no-lines")
    header, row = text.strip().splitlines()
    assert header.split(",")[1] == "outcome" and ",R,4,4," in row


def test_every_subcommand_has_help():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.__class__.__name__ == "_SubParsersAction")
    names = {c.dest for c in sub._choices_actions}
    assert names == {"gen", "dim", "lc", "twins", "check-set", "pairing", "product", "solve",
                     "values", "best-move", "verify-strategy", "play", "verify", "explore"}
    assert all(c.help for c in sub._choices_actions)


def test_output_is_byte_identical():
    argv = [sys.executable, "-m", "mbrg.cli", "values", "--g", "path:2", "--h", "cycle:4"]
    env = dict(os.environ, PYTHONHASHSEED="random")
    a = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    b = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    assert a == b and a
