import itertools
import json
from fractions import Fraction as F

import pytest

from polychrome.cli import main
from polychrome.coloring import Coloring
from polychrome.experiment import ExperimentReport, run_experiment
from polychrome.generate import (KINDS, UnknownKindError, generate, optimal_two_color_threshold,
                                 search_p2_lower_bound)
from polychrome.geometry import Point, Triangle, parse_scalar
from polychrome.io import (Instance, dump_coloring, dump_points, dump_trace, load_coloring,
                           load_points, load_trace)
from polychrome.ranges import PointSet, enumerate_ranges
from polychrome.verify import Violation, witness_extract

from test_ranges import oracle_bitsets

# found by search_p2_lower_bound(16, 2000, seed=0) and shrunk
P2_WITNESS = """\
19/32 5/32
3/64 27/64
21/64 1/4
29/64 7/64
1/64 23/32
31/64 33/64
7/32 21/32
13/32 31/64
13/64 1/2
"""


def test_grid_layout():
    inst = generate("grid", 9)
    step = F(1, 4)
    assert list(inst.points) == [Point(i * step, j * step) for j in range(3) for i in range(3)]
    assert all(p.x + p.y <= 1 for p in inst.points)


def test_diagonal_layout():
    inst = generate("collinear-diagonal", 5)
    assert {p.x + p.y for p in inst.points} == {1}
    assert len(set(inst.points)) == 5


def test_staircase_is_antichain():
    pts = list(generate("staircase-adversarial", 30, seed=4).points)
    for p, q in itertools.permutations(pts, 2):
        assert not p.dominates(q)


@pytest.mark.parametrize("kind", KINDS)
def test_generators_deterministic(kind):
    a = dump_points(generate(kind, 25, seed=7))
    b = dump_points(generate(kind, 25, seed=7))
    assert a == b
    pts = list(generate(kind, 25, seed=7).points)
    assert len(pts) == 25 and len(set(pts)) == 25
    assert all(p.x >= 0 and p.y >= 0 and p.x + p.y <= 1 for p in pts)


def test_unknown_kind():
    with pytest.raises(UnknownKindError):
        generate("spiral", 3)


def test_point_file_round_trip():
    inst = generate("uniform-random", 12, seed=3)
    inst.triangle = Triangle(Point(F(-1, 3), 0), Point(2, F(1, 7)), Point(0, 5))
    text = dump_points(inst)
    back = load_points(text)
    assert back == inst
    assert dump_points(back) == text


def test_point_file_comments_and_integers():
    inst = load_points("# a comment\n\n1 2\n -3/6  4 # trailing\n")
    assert list(inst.points) == [Point(1, 2), Point(F(-1, 2), 4)]
    assert inst.triangle == Triangle.unit()
    with pytest.raises(ValueError):
        load_points("1 2 3\n")
    with pytest.raises(ValueError):
        load_points("0.5 1\n")


def test_coloring_round_trip():
    col = Coloring(3, [0, 2, 1, 1])
    assert load_coloring(dump_coloring(col)) == col
    assert json.loads(dump_coloring(col)) == {"k": 3, "colors": [0, 2, 1, 1]}


def test_trace_round_trip():
    pts = PointSet([Point(0, 0), Point(3, 0), Point(0, 3), Point(1, 1), Point(2, 2),
                    Point(4, 1), Point(1, 4), Point(3, 3)])
    phi = Coloring(2, [0, 0, 0, 1, 0, 0, 0, 0])
    phi2 = Coloring(4, [0, 1, 0, 2, 1, 0, 1, 0])
    from polychrome.geometry import Homothet
    trace = witness_extract(pts, phi, phi2, Violation(Homothet(0, 0, 6), 3, 8), 2, 2)
    text = dump_trace(trace)
    assert load_trace(text) == trace


def test_search_small_sizes_cannot_force_four():
    for n in (1, 2):
        assert search_p2_lower_bound(n, budget=20).threshold <= 3


def test_every_pair_in_a_two_point_range_gives_threshold_two():
    inst = generate("collinear-diagonal", 2)
    assert optimal_two_color_threshold(inst.points)[0] >= 2


def _brute_optimum(pts):
    ranges = oracle_bitsets(pts)
    n = len(pts)
    best = n + 1
    for col in range(1 << (n - 1)):
        worst = max(r.bit_count() for r in ranges if r & col in (0, r))
        best = min(best, worst + 1)
    return best


def test_p2_witness_has_threshold_four():
    pts = list(load_points(P2_WITNESS).points)
    assert optimal_two_color_threshold(PointSet(pts))[0] == 4
    assert _brute_optimum(pts) == 4


def test_search_finds_threshold_four():
    res = search_p2_lower_bound(12, budget=2000, seed=0)
    assert res.found and res.threshold == 4
    assert _brute_optimum(list(res.instance.points)) == 4


def test_experiment_empty_and_k1():
    assert run_experiment({}).rows == []
    rep = run_experiment({"generators": ["grid", "uniform-random"], "sizes": [10], "ks": [1],
                          "strategies": ["exact"], "seeds": [0, 1]})
    assert [r.empirical for r in rep.rows] == [1, 1, 1, 1]


def test_experiment_rows_sound_and_parallel():
    cfg = {"generators": ["uniform-random"], "sizes": [60], "ks": [2, 4],
           "strategies": ["exact", "greedy-sweep"], "seeds": list(range(4))}
    serial = run_experiment(cfg)
    parallel = run_experiment(cfg, jobs=3)
    assert serial.to_csv() == parallel.to_csv()
    for row in serial.rows:
        assert not row.error
        assert row.sound
        assert row.empirical <= row.base_threshold ** 2 * row.parent_threshold
    assert ExperimentReport.from_csv(serial.to_csv(timing=True)).to_csv() == serial.to_csv()


def test_experiment_records_row_errors():
    rep = run_experiment({"generators": ["nope"], "sizes": [5], "ks": [2], "seeds": [0]})
    assert rep.rows[0].error.startswith("UnknownKindError")


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(*args):
    return main([str(a) for a in args])


def test_cli_pipeline(workdir, capsys):
    assert run("gen", "--kind", "uniform-random", "--n", 30, "--seed", 5, "--out", "p.txt") == 0
    assert run("color", "--input", "p.txt", "--k", 2, "--out", "c.json") == 0
    col = load_coloring((workdir / "c.json").read_text())
    assert col.k == 2 and len(col) == 30
    capsys.readouterr()
    assert run("empirical", "--input", "p.txt", "--coloring", "c.json") == 0
    t = int(capsys.readouterr().out)
    assert run("verify", "--input", "p.txt", "--coloring", "c.json", "--threshold", t) == 0
    assert run("verify", "--input", "p.txt", "--coloring", "c.json", "--threshold", t - 1) == 1
    out = json.loads(capsys.readouterr().out.split("\n", 1)[1])
    assert out["size"] == t - 1 and len(out["homothet"]["world"]) == 3
    assert run("enumerate", "--input", "p.txt", "--out", "r.csv") == 0
    assert (workdir / "r.csv").read_text().startswith("a,b,s,size,members\n")
    assert run("render", "--input", "p.txt", "--coloring", "c.json", "--out", "f.svg") == 0
    svg = (workdir / "f.svg").read_text()
    assert svg.startswith("<svg") and "highlighted homothet" in svg


def test_cli_extract_witness(workdir, capsys):
    (workdir / "p.txt").write_text(
        "0 0\n3 0\n0 3\n1 1\n2 2\n4 1\n1 4\n3 3\n")
    (workdir / "phi.json").write_text(dump_coloring(Coloring(2, [0, 0, 0, 1, 0, 0, 0, 0])))
    (workdir / "phi2.json").write_text(dump_coloring(Coloring(4, [0, 1, 0, 2, 1, 0, 1, 0])))
    code = run("extract-witness", "--input", "p.txt", "--coloring", "phi.json",
               "--refined", "phi2.json", "--threshold", 2, "--c", 2, "--out", "w.json")
    assert code == 1
    trace = load_trace((workdir / "w.json").read_text())
    assert trace.derived.level == "parent"
    doc = json.loads((workdir / "w.json").read_text())
    assert "world" in doc["violating"] and "world" in doc["derived"]["homothet"]


def test_cli_exit_codes(workdir, capsys):
    (workdir / "bad.txt").write_text("1 2 3\n")
    assert run("enumerate", "--input", "bad.txt") == 2
    (workdir / "p.txt").write_text("0 0\n1 1\n")
    assert run("color", "--input", "p.txt", "--k", 2, "--triangle", "0,0 1,1 2,2") == 2
    with pytest.raises(SystemExit) as info:
        run("color", "--input", "p.txt", "--k", 2, "--strategy", "magic")
    assert info.value.code == 2


def test_cli_determinism(workdir):
    for name in ("a", "b"):
        run("gen", "--kind", "staircase-adversarial", "--n", 25, "--seed", 2, "--out", f"{name}.txt")
        run("color", "--input", f"{name}.txt", "--k", 4, "--seed", 3, "--out", f"{name}.json")
        run("enumerate", "--input", f"{name}.txt", "--out", f"{name}.csv")
        (workdir / f"{name}.cfg").write_text(json.dumps({"sizes": [12], "ks": [2], "seeds": [0, 1]}))
        run("experiment", "--config", f"{name}.cfg", "--out", f"{name}.rep")
    for ext in ("txt", "json", "csv", "rep"):
        assert (workdir / f"a.{ext}").read_bytes() == (workdir / f"b.{ext}").read_bytes()


def test_cli_search(workdir, capsys):
    assert run("search-p2", "--n-max", 12, "--budget", 2000, "--out", "w.txt") == 0
    assert "threshold 4" in capsys.readouterr().out
    inst = load_points((workdir / "w.txt").read_text())
    assert inst.metadata["optimal_threshold"] == "4"
    assert optimal_two_color_threshold(inst.points)[0] == 4
