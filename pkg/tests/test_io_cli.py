import io
import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from negsssp import Graph, LoadError, ParseError, ResultRecord, emit_dimacs, parse_dimacs, sssp, verify_record
from negsssp.cli import main, tree_dot
from negsssp.generate import gen_random

T2 = "c small\np sp 3 3\na 1 2 2\na 2 3 -1\na 1 3 5\n"


class TestDimacs:
    def test_minimal(self):
        g = parse_dimacs("p sp 2 1\na 1 2 -3")
        assert g.n == 2 and list(g.edges()) == [(0, 1, -3)]

    def test_bad_id_reports_line(self):
        with pytest.raises(ParseError) as exc:
            parse_dimacs("p sp 2 1\na 1 3 4\n")
        assert exc.value.line == 2

    def test_empty_body(self):
        g = parse_dimacs("p sp 1 0")
        assert g.n == 1 and g.m == 0

    @pytest.mark.parametrize("text,line", [
        ("a 1 2 3\np sp 2 1", 1),
        ("p sp 2 1\np sp 2 1", 2),
        ("p max 2 1", 1),
        ("p sp 2 1\na 1 x 3", 2),
        ("p sp 2 1\nq 1 2", 2),
        ("p sp 2 1\na 1 2", 2),
    ])
    def test_malformed(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_dimacs(text)
        assert exc.value.line == line

    def test_arc_count_must_match(self):
        with pytest.raises(ParseError):
            parse_dimacs("p sp 2 2\na 1 2 3\n")

    def test_missing_problem_line(self):
        with pytest.raises(ParseError):
            parse_dimacs("c nothing\n")

    def test_overflow_is_a_load_error(self):
        with pytest.raises(LoadError):
            parse_dimacs(f"p sp 2 1\na 1 2 {2**70}\n")
        with pytest.raises(LoadError):
            parse_dimacs(f"p sp 3000 1\na 1 2 {2**40}\n")

    @given(st.integers(1, 8), st.data())
    def test_round_trip(self, n, data):
        edge = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(-10**6, 10**6))
        edges = data.draw(st.lists(edge, max_size=20))
        g = Graph.from_edges(n, edges)
        h = parse_dimacs(emit_dimacs(g, comment="two\nlines"))
        assert h.n == g.n and list(h.edges()) == list(g.edges())


class TestRecord:
    def test_tree_round_trip(self):
        g = parse_dimacs(T2)
        rec = ResultRecord.from_outcome(g, sssp(g, 0), seed=1, ops=10, attempts=3)
        assert rec.dist == [0, 2, 1] and rec.parent == [0, 1, 2] and rec.source == 1
        again = ResultRecord.from_json(rec.to_json())
        assert again == rec and again.to_json() == rec.to_json()

    def test_unreachable_is_null(self):
        g = Graph.from_edges(2, [])
        rec = ResultRecord.from_outcome(g, sssp(g, 0), 0, 0, 0)
        assert json.loads(rec.to_json())["dist"] == [0, None]

    def test_cycle_round_trip_with_timings(self):
        g = Graph.from_edges(2, [(0, 1, -3), (1, 0, 1)])
        rec = ResultRecord.from_outcome(g, sssp(g, 0), 2, 5, 1, timings={"scaling": 0.5})
        back = ResultRecord.from_json(rec.to_json())
        assert back == rec and back.kind == "cycle" and back.cycle_weight == -2

    @pytest.mark.parametrize("text", ["{", "{}", '{"kind":"x","seed":0,"ops":0,"attempts":0}'])
    def test_malformed(self, text):
        with pytest.raises(LoadError):
            ResultRecord.from_json(text)

    def test_verify_accepts_real_results(self):
        for mode in ("any", "planted-negative-cycle"):
            g = gen_random(20, 60, seed=1, mode=mode)
            rec = ResultRecord.from_outcome(g, sssp(g, 0), 0, 0, 0)
            assert verify_record(g, rec)[0]

    def test_verify_rejects_sign_flip(self):
        g = Graph.from_edges(2, [(0, 1, -3), (1, 0, 1)])
        rec = ResultRecord.from_outcome(g, sssp(g, 0), 0, 0, 0)
        rec.cycle[0][3] = -rec.cycle[0][3]
        assert not verify_record(g, rec)[0]

    def test_verify_rejects_wrong_distance(self):
        g = parse_dimacs(T2)
        rec = ResultRecord.from_outcome(g, sssp(g, 0), 0, 0, 0)
        rec.dist[2] = 3
        assert not verify_record(g, rec)[0]

    def test_verify_rejects_shape_mismatch(self):
        g = parse_dimacs(T2)
        rec = ResultRecord.from_outcome(g, sssp(g, 0), 0, 0, 0)
        rec.dist.append(0)
        assert not verify_record(g, rec)[0]


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


class TestCli:
    def test_solve_tree(self, files, capsys):
        assert main(["solve", "--input", files("t2.gr", T2), "--oracle-check"]) == 0
        rec = json.loads(capsys.readouterr().out)
        assert rec["dist"] == [0, 2, 1] and rec["oracle"] == "agree"
        assert "timings" not in rec

    def test_solve_cycle(self, files, capsys):
        g = gen_random(15, 40, seed=2, mode="planted-negative-cycle")
        path = files("c.gr", emit_dimacs(g))
        assert main(["solve", "--input", path, "--oracle-check"]) == 1
        rec = ResultRecord.from_json(capsys.readouterr().out)
        assert rec.kind == "cycle" and verify_record(g, rec)[0]

    def test_solve_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr(sys, "stdin", io.StringIO(T2))
        assert main(["solve", "--source", "2"]) == 0
        assert json.loads(capsys.readouterr().out)["dist"] == [None, 0, -1]

    def test_seed_from_environment(self, files, monkeypatch, capsys):
        monkeypatch.setenv("NEGSSSP_SEED", "41")
        main(["solve", "--input", files("t2.gr", T2)])
        assert json.loads(capsys.readouterr().out)["seed"] == 41

    def test_timings_flag(self, files, capsys):
        main(["solve", "--input", files("t2.gr", T2), "--timings"])
        assert "scaling" in json.loads(capsys.readouterr().out)["timings"]

    @pytest.mark.parametrize("text,args", [
        ("p sp 2 1\na 1 3 4\n", []),
        (T2, ["--source", "9"]),
    ])
    def test_input_errors_exit_2(self, files, capsys, text, args):
        assert main(["solve", "--input", files("bad.gr", text)] + args) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_file_exit_2(self, capsys):
        assert main(["solve", "--input", "/nonexistent/x.gr"]) == 2

    def test_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--source", "x"])
        assert exc.value.code == 2

    def test_gen_then_verify(self, files, tmp_path, capsys):
        assert main(["gen", "--n", "12", "--m", "30", "--seed", "3", "--mode", "planted-negative-cycle"]) == 0
        inst = files("g.gr", capsys.readouterr().out)
        assert main(["solve", "--input", inst]) == 1
        res = files("r.json", capsys.readouterr().out)
        assert main(["verify", "--input", inst, "--result", res]) == 0
        assert capsys.readouterr().out.startswith("pass")
        body = json.loads((tmp_path / "r.json").read_text())
        body["cycle"][0][3] *= -1
        bad = files("bad.json", json.dumps(body))
        assert main(["verify", "--input", inst, "--result", bad]) == 1
        assert capsys.readouterr().out.startswith("fail")

    def test_gen_infeasible(self, capsys):
        assert main(["gen", "--n", "2", "--m", "1", "--mode", "planted-negative-cycle"]) == 2

    def test_bench(self, capsys):
        assert main(["bench", "--sizes", "32", "64", "--trials", "2"]) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert len(rows) == 3 and rows[1].split()[0] == "32"

    def test_decomp_stats(self, files, tmp_path, capsys):
        g = gen_random(40, 160, 0, 10, seed=1)
        path = files("d.gr", emit_dimacs(g))
        dot = str(tmp_path / "t.dot")
        assert main(["decomp-stats", "--input", path, "--d", "20", "--trials", "3", "--dot", dot]) == 0
        out = capsys.readouterr().out
        assert "mean=" in out and "retries" in out
        assert open(dot).read().startswith("digraph")

    def test_tree_dot_collapses_singleton_chains(self):
        text = tree_dot(Graph.from_edges(3, [(0, 1, -1), (1, 2, 1)]))
        assert "chain" in text and text.count("->") >= 2

    def test_module_entry_point(self, files):
        path = files("t2.gr", T2)
        run = subprocess.run([sys.executable, "-m", "negsssp", "solve", "--input", path],
                             capture_output=True, text=True)
        assert run.returncode == 0
        assert json.loads(run.stdout)["dist"] == [0, 2, 1]

    def test_repeat_runs_are_byte_identical(self, files):
        g = gen_random(40, 160, seed=9)
        path = files("x.gr", emit_dimacs(g))
        outs = [subprocess.run([sys.executable, "-m", "negsssp", "solve", "--input", path, "--seed", "4"],
                               capture_output=True).stdout for _ in range(2)]
        assert outs[0] == outs[1] and outs[0]
