import pytest

from latpoly import errors, geometry as G, dotgraph as D, reduce as R


def square_graph():
    return D.associate(G.validate_polytope([(0, 0), (1, 1)], [(1, 0), (0, 1)]))


def circle_graph(dots=2):
    pts = [(0, 0), (4, 0), (4, 4), (0, 4)]
    return D.DottedGraph.build([pts], pts[:dots])


def figure_eight(upper_dots=1, lower_dots=1):
    curve = [(0, 0), (2, 0), (2, 2), (1, 2), (1, -1), (0, -1)]
    dots = [(2, 2), (2, 0)][:upper_dots] + [(0, -1), (1, -1)][:lower_dots]
    return D.DottedGraph.build([curve], dots)


def nested(orients, dots=1, size=18):
    curves, dot_pts = [], []
    for i, ccw in enumerate(orients):
        k = 3 * i
        pts = [(k, k), (size - k, k), (size - k, size - k), (k, size - k)]
        if not ccw:
            pts = [pts[0]] + pts[:0:-1]
        curves.append(pts)
        dot_pts += pts[:dots]
    return D.DottedGraph.build(curves, dot_pts)


def stuck_graph(dots=1):
    """A counterclockwise circle holding two clockwise circles side by side:
    labels block every deletion, the clockwise pair is not concentric, and
    single dots block every merge of interest from being good."""
    big = [(0, 0), (24, 0), (24, 16), (0, 16)]
    cw1 = [(4, 4), (4, 12), (10, 12), (10, 4)]
    cw2 = [(14, 4), (14, 12), (20, 12), (20, 4)]
    dot_pts = [big[0], cw1[0], cw2[0]]
    if dots >= 2:
        dot_pts += [big[1], cw1[1], cw2[1]]
    return D.DottedGraph.build([big, cw1, cw2], dot_pts)


# ------------------------------------------------------------- measure ---

def test_measure():
    assert R.measure(square_graph()) == (2, 0, 1)
    assert R.measure(D.empty_graph()) == (0, 0, 0)
    assert R.measure(figure_eight()) == (2, 1, 0)


# --------------------------------------------------------- good_reduce ---

def test_good_reduce_square():
    trace = R.good_reduce(square_graph())
    assert trace.kinds() == ["I", "II"]
    assert trace.terminal.is_empty()


def test_good_reduce_rho():
    trace = R.good_reduce(figure_eight(1, 1))
    assert trace.kinds()[0] == "III"
    assert trace.terminal.is_empty()


def test_good_reduce_already_reduced():
    g = stuck_graph()
    trace = R.good_reduce(g)
    assert trace.kinds() == []
    assert trace.terminal == g
    assert R.is_good_reduced(g)


def test_good_reduce_concentric_pair_is_IVa2():
    trace = R.good_reduce(nested((True, False)))
    assert trace.kinds() == ["IVa2", "II"]
    assert trace.terminal.is_empty()


def test_good_reduce_trace_measures_decrease():
    for g in (square_graph(), figure_eight(2, 2), nested((True, True)),
              nested((True, False))):
        trace = R.good_reduce(g)
        ms = [R.measure(x) for x in trace.graphs()]
        for i, step in enumerate(trace.steps):
            before, after = ms[i], ms[i + 1]
            if step.kind == "I":
                assert after[0] < before[0] and after[1] == before[1]
            elif step.kind == "III":
                assert after[1] < before[1] and after[0] <= before[0]
            elif step.kind == "II":
                assert after[2] == before[2] - 1
        # each IVa pair decreases (dots, crossings) lexicographically
        for i, step in enumerate(trace.steps):
            if step.kind in ("IVa1", "IVa2"):
                b = ms[i]
                a = ms[i + 2]
                assert (a[0], a[1]) < (b[0], b[1])


# ---------------------------------------------------- reduce_all_dotted ---

def test_reduce_all_dotted_two_circles():
    g = D.DottedGraph.build(
        [[(0, 0), (4, 0), (4, 4), (0, 4)], [(8, 0), (12, 0), (12, 4), (8, 4)]],
        [(0, 0), (8, 0)])
    trace = R.reduce_all_dotted(g)
    assert trace.kinds() == ["II", "II"]
    assert trace.terminal.is_empty()


def test_reduce_all_dotted_concentric_opposite():
    trace = R.reduce_all_dotted(nested((True, False)))
    assert trace.terminal.is_empty()
    assert "IV" in [k[:2] for k in trace.kinds()]


def test_reduce_all_dotted_figure_eight():
    g = figure_eight(1, 1)
    trace = R.reduce_all_dotted(g)
    assert trace.terminal.is_empty()
    stage1 = R.stage1_terminal(trace)
    an = D.analyze(stage1)
    assert not an.crossings
    assert len(an.circles) == len(stage1.curves)
    assert all(a.dots for a in an.arcs)


def test_reduce_all_dotted_requires_dots():
    g = circle_graph(dots=0)
    with pytest.raises(errors.UndottedArc):
        R.reduce_all_dotted(g)


def test_reduce_all_dotted_blocked_circles_resolve():
    # labels 0/+1/0/0: nothing is deletable at first; merges must unblock
    trace = R.reduce_all_dotted(stuck_graph(dots=2))
    assert trace.terminal.is_empty()


def test_good_order_violations_are_unrepresentable():
    # a trace whose surgery is not followed by its loop deletion is rejected
    g = figure_eight(2, 1)
    from latpoly import deform as DF
    move = [m for m in DF.enumerate_moves(g, allowed={"IV"})
            if set(m.site) == {(2, 2), (2, 0)}][0]
    kind, (dIV, dIII) = DF.try_good_IV(g, move)
    assert kind == "IVa1"
    with pytest.raises(AssertionError):
        R.ReductionTrace(g, (dIV,))          # pair left dangling
    R.ReductionTrace(g, (dIV, dIII))         # good order is accepted


def test_bad_curve_input_rejected():
    with pytest.raises(errors.InvalidGraph):
        D.DottedGraph.build([[(0, 0), (4, 0), (0, 0), (0, 4)]])


# ------------------------------------------------------------- explore ---

def test_enumerate_square_single_terminal():
    forms = R.enumerate_reductions(square_graph())
    assert forms == {D.canonical_form(D.empty_graph())}


def test_enumerate_reduced_input():
    # opposite nested circles, one dot in total: no deformation applies
    curves = [[(0, 0), (12, 0), (12, 12), (0, 12)],
              [(3, 3), (3, 9), (9, 9), (9, 3)]]
    g = D.DottedGraph.build(curves, [(0, 0)])
    forms = R.enumerate_reductions(g)
    assert forms == {D.canonical_form(g)}


def test_explore_reports_condition_A():
    rep = R.explore_reductions(square_graph(), check_A=True)
    assert rep.condition_A_ok
    assert rep.terminals == {D.canonical_form(D.empty_graph())}


def test_explore_confluence_on_fixtures():
    for g in (circle_graph(3), nested((True, False)), figure_eight(1, 1),
              figure_eight(2, 2)):
        rep = R.explore_reductions(g, check_A=True)
        if rep.condition_A_ok:
            assert len(rep.terminals) == 1
