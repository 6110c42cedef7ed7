import io
import json
from fractions import Fraction

import pytest

from pizzarace.cli import main
from pizzarace.model import Player, make_cycle_instance
from pizzarace.play import PlaySession, repl


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="inst.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve(capsys, write):
    code, out, _ = run(capsys, "solve", write({"type": "cycle", "sizes": ["5", "3", "1"]}))
    assert code == 0
    res = json.loads(out)
    assert (res["alice_total"], res["alice_share"], res["best_first_pieces"]) == ("5", "5/9", [0])
    assert res["pv"][0] == {"t": "0", "player": "A", "event": "pick", "piece": 0}


def test_solve_rational_sizes(capsys, write):
    code, out, _ = run(capsys, "solve", write({"type": "cycle", "sizes": ["5/2", "3/2", "1/2"]}))
    assert code == 0
    assert json.loads(out)["alice_total"] == "5/2"


def test_tie_exit_code(capsys, write):
    path = write({"type": "cycle", "sizes": ["1", "1", "1"]})
    code, _, err = run(capsys, "solve", path)
    assert code == 2
    assert "event" in json.loads(err)
    code, out, _ = run(capsys, "solve", path, "--tie-policy", "alice-first")
    assert code == 0 and json.loads(out)["alice_total"] == "2"


@pytest.mark.parametrize("obj", [
    {"type": "cycle", "sizes": ["5", "0", "1"]},
    {"type": "cycle", "sizes": ["5", "1.5"]},
    {"type": "cycle", "sizes": []},
    {"type": "graph", "weights": ["1", "2"], "edges": []},
    {"type": "graph", "weights": ["1", "2"], "edges": [[0, 0]]},
])
def test_invalid_instances(capsys, write, obj):
    assert run(capsys, "solve", write(obj))[0] == 1


def test_missing_file_and_bad_json(capsys, tmp_path):
    assert run(capsys, "solve", str(tmp_path / "nope.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "solve", str(bad))[0] == 1


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["search"])
    assert info.value.code == 1
    capsys.readouterr()


def test_graph(capsys, write):
    path = write({"type": "graph", "weights": ["1", "100", "1"], "edges": [[0, 1], [1, 2]]})
    code, out, _ = run(capsys, "graph", path)
    assert code == 0 and json.loads(out)["alice_total"] == "2"
    star = write({"type": "graph", "weights": ["10", "1", "2", "3"], "edges": [[0, 1], [0, 2], [0, 3]]}, "s.json")
    code, out, _ = run(capsys, "solve", star, "--tie-policy", "error")
    assert json.loads(out)["alice_total"] == "11"
    code, out, _ = run(capsys, "graph", write({"type": "cycle", "sizes": ["5", "3", "1"]}, "c.json"))
    assert json.loads(out)["alice_total"] == "5"


def test_relations(capsys, write):
    path = write({"type": "cycle", "sizes": ["5", "3", "1"]})
    code, out, _ = run(capsys, "relations", path)
    res = json.loads(out)
    assert code == 0
    assert res["labels"] == ["SIM", "PREC", "SIM"]
    assert res["witness"] == 0 and res["exceeds_alpha"] is True
    assert run(capsys, "relations", path, "--alpha", "1/2")[0] == 0
    assert run(capsys, "relations", path, "--alpha", "0")[0] == 1
    assert run(capsys, "relations", path, "--alpha", "0.4")[0] == 1


def test_insert(capsys, write, tmp_path):
    out_path = tmp_path / "new.json"
    path = write({"type": "cycle", "sizes": ["5", "3", "1"]})
    code, out, _ = run(capsys, "insert", path, "--gap", "1", "--check", "--out", str(out_path))
    res = json.loads(out)
    assert code == 0
    assert res["instance"]["sizes"] == ["5", "3", "1/2", "1"]
    assert res["check"]["bound_holds"] is True
    assert json.loads(out_path.read_text())["sizes"] == ["5", "3", "1/2", "1"]
    assert run(capsys, "insert", path, "--gap", "1", "--epsilon", "1")[0] == 1
    assert run(capsys, "insert", path, "--gap", "7")[0] == 1


def test_verify_file(capsys, write):
    code, out, _ = run(capsys, "verify", write({"type": "cycle", "sizes": ["5", "3", "1"]}), "--insertion")
    res = json.loads(out)
    assert code == 0
    assert res["checked"] == 1
    assert all(v in (True, None) for k, v in res["checks"].items() if k not in ("generic", "alice_total"))


def test_verify_random_and_figure(capsys, tmp_path):
    fig = tmp_path / "shares.png"
    code, out, _ = run(capsys, "verify", "--random", "6", "40", "3", "--max-size", "50", "--figure", str(fig))
    res = json.loads(out)
    assert code == 0
    assert res["checked"] + res["ties_skipped"] == 40
    assert not any(res["failures"].values())
    assert fig.stat().st_size > 0


def test_verify_needs_input(capsys):
    assert run(capsys, "verify")[0] == 1


def test_search_and_report(capsys, tmp_path):
    results = tmp_path / "results.jsonl"
    for n in (3, 4):
        code, out, _ = run(capsys, "search", "--n", str(n), "--total", "12", "--out", str(results))
        assert code == 0
    assert len(results.read_text().splitlines()) == 2
    rec = json.loads(out)
    assert Fraction(rec["min_share"]) >= Fraction(2, 5)
    fig = tmp_path / "minima.png"
    code, out, _ = run(capsys, "report", str(results), "--figure", str(fig))
    assert code == 0 and set(json.loads(out)) == {"3", "4"}
    assert fig.stat().st_size > 0
    assert run(capsys, "search", "--n", "3", "--magnitude", "abc")[0] == 1


def test_play_command(capsys, write, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("pick 0\n"))
    code, out, err = run(capsys, "play", write({"type": "cycle", "sizes": ["5", "3", "1"]}))
    assert code == 0
    assert "final: Alice 5 (5/9)" in err
    assert json.loads(out)[0]["piece"] == 0


PIZZA = make_cycle_instance([5, 3, 1])


def test_play_session_optimal_game():
    s = PlaySession(PIZZA)
    assert s.hint() == (0, 5)
    s.pick(0)
    assert s.finished
    assert s.summary() == "final: Alice 5 (5/9)  Bob 4 (4/9)"


def test_play_session_rejects_illegal_moves():
    s = PlaySession(PIZZA)
    before = (s.state, list(s.history))
    assert s.handle("pick 99").startswith("error")
    assert s.handle("pick x") == "usage: pick <id>"
    assert (s.state, s.history) == before
    assert "hint: pick 0 (value 5)" == s.handle("hint")


def test_play_session_undo_and_replay():
    inst = make_cycle_instance([4, 3, 2, 7, 1])
    s = PlaySession(inst)
    assert not s.undo()
    s.pick(1)
    assert s.history == [1, 0] and not s.finished
    snapshot = s.state
    s.pick(s.hint()[0])
    assert s.undo()
    assert (s.history, s.state) == ([1, 0], snapshot)
    assert s.undo() and s.history == []
    # replaying the history from scratch reproduces the live state
    fresh = PlaySession(inst)
    fresh._rebuild(s.history)
    assert fresh.state == s.state


def test_play_as_bob():
    s = PlaySession(PIZZA, Player.BOB)
    assert s.history == [0]  # the engine opens optimally for Alice
    s.pick(1)
    assert not s.finished  # Bob finishes first and decides again
    s.pick(2)
    assert s.finished
    assert s.state.consumed == (5, 4)


def test_repl_transcript():
    out = io.StringIO()
    done = repl(PlaySession(PIZZA), io.StringIO("help\nhint\npick 0\n"), out)
    text = out.getvalue()
    assert done
    assert "opponent's hand is empty" in text
    assert "hint: pick 0" in text
    assert "final:" in text
    assert not repl(PlaySession(PIZZA), io.StringIO("quit\n"), io.StringIO())
