import json

from latpoly import cli, formats as F, geometry as G, dotgraph as D, plan as PL
from latpoly.render import render_svg


def write_square(tmp_path):
    path = tmp_path / "square.poly"
    path.write_text(json.dumps({"ver0": [[0, 0], [1, 1]], "ver1": [[1, 0], [0, 1]]}))
    return str(path)


def test_validate_and_area(tmp_path, capsys):
    path = write_square(tmp_path)
    assert cli.main(["validate", path]) == 0
    assert cli.main(["area", path]) == 0
    out = capsys.readouterr().out
    assert "signed 1, absolute 1" in out


def test_validate_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.poly"
    bad.write_text(json.dumps({"ver0": [[0, 0], [1, 1]], "ver1": [[0, 1], [2, 0]]}))
    assert cli.main(["validate", str(bad)]) == 2


def test_associate_roundtrip(tmp_path):
    path = write_square(tmp_path)
    out = tmp_path / "square.graph"
    assert cli.main(["associate", path, "-o", str(out)]) == 0
    g = F.load(str(out))
    assert isinstance(g, D.DottedGraph)
    p = F.load(path)
    assert D.equivalent_mod_E_I(g, D.associate(p))


def test_reduce_square(tmp_path, capsys):
    path = write_square(tmp_path)
    trace_out = tmp_path / "trace.json"
    rdir = tmp_path / "steps"
    assert cli.main(["reduce", path, "--trace", str(trace_out),
                     "--render-dir", str(rdir)]) == 0
    out = capsys.readouterr().out
    assert "terminal: empty" in out
    assert "I II" in out
    trace = json.loads(trace_out.read_text())
    assert [t["kind"] for t in trace] == ["I", "II"]
    assert sorted(f.name for f in rdir.iterdir()) == \
        ["step000.svg", "step001.svg", "step002.svg"]


def test_plan_square(tmp_path, capsys):
    path = write_square(tmp_path)
    plan_out = tmp_path / "plan.json"
    assert cli.main(["plan", path, "-o", str(plan_out)]) == 0
    err = capsys.readouterr().err
    assert "1-step plan, cost 1, verdict MINIMAL" in err
    plan = F.load_plan(str(plan_out))
    assert plan.cost_abs == 1


def test_oracle_and_verify(tmp_path, capsys):
    path = write_square(tmp_path)
    assert cli.main(["oracle", path]) == 0
    out = capsys.readouterr().out
    assert "minimal cost 1" in out
    plan_out = tmp_path / "plan.json"
    cli.main(["plan", path, "-o", str(plan_out)])
    capsys.readouterr()
    assert cli.main(["verify", path, "--plan", str(plan_out)]) == 0
    out = capsys.readouterr().out
    assert "MINIMAL" in out


def test_verify_flags_detour(tmp_path, capsys):
    path = write_square(tmp_path)
    plan = PL.TransformPlan((
        PL.normal_step(G.P(0, 0), G.P(1, 1)),
        PL.normal_step(G.P(1, 0), G.P(0, 1)),
        PL.normal_step(G.P(0, 0), G.P(1, 1)),
    ))
    plan_path = tmp_path / "detour.json"
    plan_path.write_text(F.dumps(F.plan_to_obj(plan)))
    assert cli.main(["verify", path, "--plan", str(plan_path)]) == 3


def test_oracle_corpus_report(tmp_path, capsys):
    report = tmp_path / "report.csv"
    assert cli.main(["oracle", "--corpus", "--max-points", "2",
                     "--max-coord", "2", "--report", str(report)]) == 0
    lines = report.read_text().strip().splitlines()
    assert lines[0].startswith("ver0,ver1,empties")
    assert len(lines) > 1


def test_render_byte_stable(tmp_path):
    path = write_square(tmp_path)
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    assert cli.main(["render", path, "-o", str(out1)]) == 0
    assert cli.main(["render", path, "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert b"<svg" in out1.read_bytes()


def test_render_matches_golden(tmp_path):
    p = G.validate_polytope([(0, 0), (1, 1)], [(1, 0), (0, 1)])
    svg = render_svg(p)
    import pathlib
    golden = pathlib.Path(__file__).parent / "golden" / "square.svg"
    assert svg == golden.read_text()


def test_render_math_axes_differs(tmp_path):
    p = G.validate_polytope([(0, 2), (3, 1)], [(0, 1), (3, 2)])
    assert render_svg(p) != render_svg(p, math_axes=True)


def test_emitted_files_reparse(tmp_path):
    p = G.validate_polytope([(0, 0), (1, 1), (2, 2)], [(0, 1), (1, 2), (2, 0)])
    pp = tmp_path / "p.json"
    pp.write_text(F.dumps(F.polytope_to_obj(p)))
    assert F.load(str(pp)) == p
    g = D.associate(p)
    gp = tmp_path / "g.json"
    gp.write_text(F.dumps(F.graph_to_obj(g)))
    assert F.load(str(gp)) == g


def test_plan_without_emptying_reduction(tmp_path, capsys):
    # a polytope whose boundary graph is good-reduced but nonempty
    curves = [[(0, 0), (24, 0), (24, 16), (0, 16)],
              [(4, 4), (4, 12), (10, 12), (10, 4)],
              [(14, 4), (14, 12), (20, 12), (20, 4)]]
    dots = [(0, 0), (24, 0), (4, 4), (4, 12), (14, 4), (14, 12)]
    g = D.DottedGraph.build(curves, dots)
    p = D.realize(g)
    path = tmp_path / "stuck.poly"
    path.write_text(F.dumps(F.polytope_to_obj(p)))
    assert cli.main(["plan", str(path)]) == 3
    out = capsys.readouterr().out
    assert "NO-PLAN" in out
