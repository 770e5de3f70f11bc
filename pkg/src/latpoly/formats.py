"""File formats: polytopes, dotted graphs, plans and traces as JSON
documents.  Emitted files are deterministic; labels are always recomputed
on load, never read."""
from __future__ import annotations

import json

from . import errors
from . import geometry as G
from .geometry import GridPoint, LatticePolytope, Rect
from . import dotgraph as DG
from .dotgraph import DottedGraph
from . import plan as PL


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def polytope_to_obj(p: LatticePolytope) -> dict:
    return {"ver0": [[q.x, q.y] for q in sorted(p.ver0.points)],
            "ver1": [[q.x, q.y] for q in sorted(p.ver1.points)]}


def obj_to_polytope(obj) -> LatticePolytope:
    try:
        return G.validate_polytope(obj["ver0"], obj["ver1"])
    except (KeyError, TypeError, ValueError) as e:
        raise errors.ParseError(f"bad polytope document: {e}") from e


def graph_to_obj(g: DottedGraph) -> dict:
    curves = [[list(p) for p in curve] for curve in g.curves]
    dots = []
    for d in sorted(g.dots):
        ci, si, off = _locate_dot(g, d)
        dots.append({"curve": ci, "segment": si, "offset": off})
    return {"curves": curves, "dots": dots}


def _locate_dot(g: DottedGraph, d):
    for ci, curve in enumerate(g.curves):
        n = len(curve)
        for si in range(n):
            seg = (curve[si], curve[(si + 1) % n])
            if DG._on_segment(d, seg) and d != seg[1]:
                off = abs(d[0] - seg[0][0]) + abs(d[1] - seg[0][1])
                return ci, si, off
    raise errors.ParseError(f"dot {d} not on any curve")


def obj_to_graph(obj) -> DottedGraph:
    try:
        curves = [[tuple(int(c) for c in p) for p in curve]
                  for curve in obj["curves"]]
        dots = []
        for rec in obj.get("dots", []):
            curve = curves[rec["curve"]]
            n = len(curve)
            a = curve[rec["segment"]]
            b = curve[(rec["segment"] + 1) % n]
            dx = (b[0] > a[0]) - (b[0] < a[0])
            dy = (b[1] > a[1]) - (b[1] < a[1])
            off = int(rec["offset"])
            dots.append((a[0] + dx * off, a[1] + dy * off))
        return DottedGraph.build(curves, dots)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise errors.ParseError(f"bad dotted-graph document: {e}") from e


def plan_to_obj(plan: PL.TransformPlan) -> list:
    out = []
    for s in plan.steps:
        rec = {"v": [s.rect.v.x, s.rect.v.y], "w": [s.rect.w.x, s.rect.w.y]}
        if s.mode != "normal":
            rec["mode"] = s.mode
        out.append(rec)
    return out


def obj_to_plan(obj) -> PL.TransformPlan:
    try:
        steps = []
        for rec in obj:
            rect = Rect(GridPoint(*rec["v"]), GridPoint(*rec["w"]))
            steps.append(PL.PlanStep(rect, rec.get("mode", "normal")))
        return PL.TransformPlan(tuple(steps))
    except (KeyError, TypeError, ValueError) as e:
        raise errors.ParseError(f"bad plan document: {e}") from e


def trace_to_obj(trace) -> list:
    out = []
    for s in trace.steps:
        out.append({"kind": s.kind, "site": _site_obj(s.site),
                    "epsilon": s.epsilon, "i": s.magnitude})
    return out


def _site_obj(site):
    if isinstance(site, tuple):
        return [_site_obj(x) for x in site]
    return site


def load(path: str):
    """Sniff and load a polytope or a dotted graph."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise errors.ParseError(f"cannot read {path}: {e}") from e
    if isinstance(obj, dict) and "ver0" in obj:
        return obj_to_polytope(obj)
    if isinstance(obj, dict) and "curves" in obj:
        return obj_to_graph(obj)
    raise errors.ParseError(f"{path} is neither a polytope nor a dotted graph")


def load_plan(path: str) -> PL.TransformPlan:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise errors.ParseError(f"cannot read {path}: {e}") from e
    return obj_to_plan(obj)
