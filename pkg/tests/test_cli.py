import json

import pytest

from graphgroups.cli import main
from graphgroups.graph import family, parse_graph


@pytest.fixture
def gfile(tmp_path):
    def make(kind, n):
        p = tmp_path / f"{kind}{n}.txt"
        p.write_text(family(kind, n).to_text())
        return str(p)

    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


class TestCdim:
    def test_text(self, capsys, gfile):
        assert run(capsys, "cdim", gfile("semibraid", 4))[:2] == (0, "cdim = 4\n")
        assert run(capsys, "cdim", gfile("complete", 5))[1] == "cdim = 0\n"
        assert run(capsys, "cdim", gfile("empty", 4))[1] == "cdim = 2\n"

    def test_json(self, capsys, gfile):
        env = run_json(capsys, "cdim", gfile("semibraid", 4))
        assert env["command"] == "cdim" and env["warnings"] == []
        assert len(env["input_digest"]) == 64
        assert env["result"] == {
            "vertices": ["x1", "x2", "x3", "x4"],
            "edges": [["x1", "x3"], ["x1", "x4"], ["x2", "x4"]],
            "cdim": 4,
            "center": [],
        }

    def test_deterministic(self, capsys, gfile):
        f = gfile("semibraid", 6)
        for cmd in (["cdim", f], ["chain", f], ["lattice", f], ["delta", f, "--vertex", "x5"]):
            first = run(capsys, *cmd, "--json")[1]
            assert run(capsys, *cmd, "--json")[1] == first

    def test_dot_input(self, capsys, tmp_path):
        p = tmp_path / "g.dot"
        p.write_text("graph { a -- b; c }")
        assert run(capsys, "cdim", str(p), "--format", "dot")[1] == "cdim = 2\n"

    def test_stdin(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("vertices: a b c\na b\n"))
        assert run(capsys, "cdim", "-")[:2] == (0, "cdim = 2\n")


class TestExitCodes:
    def test_parse(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("edge a a\n")
        code, _, err = run(capsys, "cdim", str(p))
        assert code == 2 and "error" in err

    def test_capacity(self, capsys, tmp_path):
        p = tmp_path / "big.txt"
        p.write_text("vertices: " + " ".join(f"v{i}" for i in range(65)))
        assert run(capsys, "cdim", str(p))[0] == 3

    def test_io(self, capsys, tmp_path):
        assert run(capsys, "cdim", str(tmp_path / "missing.txt"))[0] == 4
        f = tmp_path / "g.txt"
        f.write_text("a b")
        assert run(capsys, "lattice", str(f), "--dot", str(tmp_path / "no" / "such" / "dir.dot"))[0] == 4

    def test_bad_word_and_vertex(self, capsys, gfile):
        f = gfile("semibraid", 4)
        assert run(capsys, "word", "normalize", f, "x9")[0] == 2
        assert run(capsys, "word", "equal", f, "x1")[0] == 2
        assert run(capsys, "delta", f, "--vertex", "x9")[0] == 2
        assert run(capsys, "word", "root", f, "1")[0] == 2


class TestChainLattice:
    def test_chain(self, capsys, gfile):
        r = run_json(capsys, "chain", gfile("semibraid", 4))["result"]
        assert r["cdim"] == 4 and len(r["chain"]) == 5
        g = family("semibraid", 4)
        for i, s in enumerate(r["chain"]):
            from graphgroups.graph import orthogonal

            assert orthogonal(g, g.set(r["witness"][:i])).names() == s
        assert run_json(capsys, "chain", gfile("complete", 3))["result"]["witness"] == []
        assert len(run_json(capsys, "chain", gfile("empty", 2))["result"]["witness"]) == 2

    def test_lattice(self, capsys, gfile, tmp_path):
        r = run_json(capsys, "lattice", gfile("complete", 3))["result"]
        assert len(r["nodes"]) == 1 and r["covers"] == []
        r = run_json(capsys, "lattice", gfile("empty", 2))["result"]
        assert len(r["nodes"]) == 4 and len(r["covers"]) == 4
        assert len(run_json(capsys, "lattice", gfile("semibraid", 4))["result"]["nodes"]) == 9
        out = tmp_path / "l.dot"
        code, text, _ = run(capsys, "lattice", gfile("empty", 2), "--dot", str(out))
        assert code == 0 and out.read_text().count("->") == 4 and "4 nodes" in text
        code, text, _ = run(capsys, "lattice", gfile("empty", 2))
        assert text.startswith("digraph")


class TestDelta:
    def test_semibraid(self, capsys, gfile):
        r = run_json(capsys, "delta", gfile("semibraid", 6), "--vertex", "x5")["result"]
        assert r["delta"] == 2 and r["theorem_clause"] == "clause1" and r["corollary_hits"] == ["1a"]

    def test_explain(self, capsys, gfile):
        code, out, _ = run(capsys, "delta", gfile("semibraid", 6), "--vertex", "x5", "--explain")
        assert code == 0 and out.startswith("delta = 2 (clause1)") and "clause1: (x1, x3, x4, x2)" in out

    def test_zero(self, capsys, gfile):
        assert run_json(capsys, "delta", gfile("complete", 4), "--vertex", "x1")["result"]["delta"] == 0
        assert run_json(capsys, "delta", gfile("empty", 3), "--vertex", "x1")["result"]["delta"] == 0

    def test_rule_warning(self, capsys, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("vertices: a b c d\nedge a b\nedge a c\n")
        env = run_json(capsys, "delta", str(p), "--vertex", "b")
        assert env["result"]["delta"] == 2 and env["warnings"]


class TestWord:
    def test_examples(self, capsys, gfile, tmp_path):
        f = gfile("semibraid", 4)
        assert run(capsys, "word", "normalize", f, "x3 x1")[1] == "x1 x3\n"
        k2 = tmp_path / "k2.txt"
        k2.write_text("a b\n")
        assert run(capsys, "word", "equal", str(k2), "a b", "b a")[1] == "true\n"
        r = run_json(capsys, "word", "centralizer", f, "x1 x2")["result"]
        assert r["roots"] == ["x1 x2"] and r["abelianizing_set"] == ["x4"] and r["conjugator"] == "1"

    def test_other_ops(self, capsys, gfile):
        f = gfile("semibraid", 4)
        r = run_json(capsys, "word", "root", f, "x1 x3 x1 x3")["result"]
        assert r == {"root": "x1 x3", "exponent": 2}
        r = run_json(capsys, "word", "blocks", f, "x1 x3")["result"]
        assert r == {"conjugator": "1", "blocks": ["x1", "x3"]}
        env = run_json(capsys, "word", "cyclic", f, "x2 x1 x2^-1")
        assert env["command"] == "word cyclic"
        assert env["result"]["conjugator"] == "x2^-1" and env["result"]["cyclically_minimal"] == "x1"


class TestScanFamily:
    @pytest.mark.parametrize("check", ["forbidden-dims", "delta-bound", "oracle", "joinf2"])
    def test_scan(self, capsys, check):
        r = run_json(capsys, "scan", "--max-n", "4", "--check", check)["result"]
        assert r["counterexample_count"] == 0 and r["graphs"] == 1 + 2 + 8 + 64
        assert "1" not in r["histogram"] and "3" not in r["histogram"]

    def test_scan_sampled_seed_echo(self, capsys):
        r = run_json(capsys, "scan", "--max-n", "7", "--check", "forbidden-dims", "--samples", "5", "--seed", "3")
        assert r["result"]["seed"] == 3 and r["result"]["sampled_sizes"] == [7]

    @pytest.mark.parametrize("kind,n,edges", [("semibraid", 6, 10), ("complete", 4, 6), ("empty", 3, 0)])
    def test_family(self, capsys, tmp_path, kind, n, edges):
        out = tmp_path / "g.txt"
        assert run(capsys, "family", kind, str(n), "--out", str(out))[0] == 0
        g = parse_graph(out.read_text())
        assert g == family(kind, n) and len(g.edges()) == edges

    def test_family_stdout(self, capsys):
        code, out, _ = run(capsys, "family", "complete", "2")
        assert code == 0 and parse_graph(out) == family("complete", 2)
