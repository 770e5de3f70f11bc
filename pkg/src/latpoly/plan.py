"""Bridging dotted-graph reductions and polytope transformations: compile a
reduction to the empty graph into a minimal-area rectangle plan, realize
the crossing surgeries as single rectangle moves, normalize mixed plans to
normal-only ones, and classify the steps of any given plan.

Sign bookkeeping: a reversed step records its rectangle by the diagonal
pair it adds to the terminal vertices.  That is the pair consumed when the
whole transformation is read forward, so summing signed rectangle areas
over any complete plan gives the polytope's signed area, and replaying a
reversed block backwards reuses the same stored rectangles.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import errors
from . import geometry as G
from .geometry import GridPoint, LatticePolytope, Rect
from . import dotgraph as DG
from .dotgraph import analyze, associate, canonical_form
from .reduce import ReductionTrace


@dataclass(frozen=True)
class PlanStep:
    rect: Rect
    mode: str = "normal"          # "normal" | "reversed"


@dataclass(frozen=True)
class TransformPlan:
    steps: tuple[PlanStep, ...]

    @property
    def cost_signed(self) -> int:
        return G.plan_cost([s.rect for s in self.steps])[0]

    @property
    def cost_abs(self) -> int:
        return G.plan_cost([s.rect for s in self.steps])[1]

    def rects(self) -> list[Rect]:
        return [s.rect for s in self.steps]


def normal_step(v: GridPoint, w: GridPoint) -> PlanStep:
    return PlanStep(Rect(v, w), "normal")


def reversed_step(v: GridPoint, w: GridPoint) -> PlanStep:
    """A reversed move applied at terminal vertices v, w; the stored
    rectangle is the opposite diagonal (the pair the move adds)."""
    return PlanStep(Rect(GridPoint(w.x, v.y), GridPoint(v.x, w.y)), "reversed")


def apply_step(p: LatticePolytope, step: PlanStep) -> LatticePolytope:
    if step.mode == "normal":
        return G.apply_normal(p, step.rect)
    if step.mode == "reversed":
        return G.apply_reversed(p, step.rect)
    raise errors.InvalidPlan(f"unknown step mode {step.mode}")


def replay(p: LatticePolytope, plan: TransformPlan) -> LatticePolytope:
    cur = p
    for step in plan.steps:
        try:
            cur = apply_step(cur, step)
        except errors.LatPolyError as e:
            raise errors.InvalidPlan(f"plan does not replay: {e}") from e
    return cur


# ---------------------------------------------------------- classification --

@dataclass(frozen=True)
class StepVerdict:
    minimal: bool
    epsilon: int | None
    tag: str
    witness: tuple | None        # (sample2, label_before, label_after)

    def __bool__(self) -> bool:
        return self.minimal


def classify_step(p: LatticePolytope, r: Rect, mode: str = "normal",
                  with_tag: bool = True) -> StepVerdict:
    """Check the label profile of one rectangle move: minimal steps cover
    only regions with nonzero labels of one sign, each dropping by one."""
    q = apply_step(p, PlanStep(r, mode))
    before = G.boundary_segments(p)
    after = G.boundary_segments(q)
    xlo, xhi, ylo, yhi = r.bounds()
    xs = sorted({x for seg in before + after for x in (seg[0][0], seg[1][0])
                 if xlo <= x <= xhi} | {xlo, xhi})
    ys = sorted({y for seg in before + after for y in (seg[0][1], seg[1][1])
                 if ylo <= y <= yhi} | {ylo, yhi})
    from .arrangement import winding_2x
    eps = None
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            s2 = (xs[i] + xs[i + 1], ys[j] + ys[j + 1])
            lb = winding_2x(s2, before)
            la = winding_2x(s2, after)
            if lb == 0:
                return StepVerdict(False, None, "", (s2, lb, la))
            e = 1 if lb > 0 else -1
            if eps is None:
                eps = e
            if e != eps or la != lb - eps:
                return StepVerdict(False, eps, "", (s2, lb, la))
    return StepVerdict(True, eps, _step_tag(p, q) if with_tag else "", None)


def _step_tag(p: LatticePolytope, q: LatticePolytope) -> str:
    bp, bq = analyze(associate(p)), analyze(associate(q))
    if len(bq.circles) < len(bp.circles) and len(bq.crossings) == len(bp.crossings):
        return "II*-like"
    if len(bq.crossings) < len(bp.crossings):
        return "III*-like"
    if len(bq.crossings) == len(bp.crossings) and \
            len(bq.g.curves) != len(bp.g.curves):
        return "IV*-like"
    return "generic"


def verify_minimal(plan: TransformPlan, p: LatticePolytope) -> bool:
    """True when the plan completes the transformation at the least
    possible absolute cost."""
    final = replay(p, plan)
    if not G.trivial(final):
        raise errors.NotATransformation("plan does not join Ver0 to Ver1")
    return plan.cost_abs == G.area_abs(p)


# ------------------------------------------------------------ IVa1 rectangles

def realize_IVa1(p: LatticePolytope, site) -> tuple[Rect, str]:
    """The rectangle move realizing a surgery at adjacent arcs of a
    crossing: site = (crossing point, quadrant diagonal), the quadrant
    being the middle region.  The rectangle spans the two edge endpoints on
    the quadrant side; the move is normal or reversed according to whether
    those are initial or terminal vertices."""
    (cx, cy), (sx, sy) = site
    if sx not in (-1, 1) or sy not in (-1, 1):
        raise errors.NotIVa1Site("quadrant must be a diagonal direction")
    g = associate(p)
    an = analyze(g)
    c = (cx, cy)
    if c not in an.crossings:
        raise errors.NotIVa1Site(f"{c} is not a crossing of the boundary")
    arm_h = an.arms[(c, (sx, 0))]
    arm_v = an.arms[(c, (0, sy))]
    if {arm_h[1], arm_v[1]} != {"in", "out"}:
        raise errors.NotIVa1Site("the quadrant arms are not an adjacent pair")
    a_h = an.arcs_by_key[arm_h[0]]
    a_v = an.arcs_by_key[arm_v[0]]
    if not a_h.dots or not a_v.dots or (a_h.key == a_v.key and len(a_h.dots) < 2):
        raise errors.NotIVa1Site("both arcs need dots")
    quad = _face_of_quadrant(an, c, sx, sy)
    for arc in {a_h.key, a_v.key}:
        F, _ = _viable(an, arc)
        if F != quad:
            raise errors.NotIVa1Site("the quadrant is not the middle region")
    v = _edge_endpoint(p, c, horizontal=True, sign=sx)
    w = _edge_endpoint(p, c, horizontal=False, sign=sy)
    _check_clean_rectangle(p, v, w, c)
    if v in p.ver0.points and w in p.ver0.points:
        return Rect(v, w), "normal"
    if v in p.ver1.points and w in p.ver1.points:
        return reversed_step(v, w).rect, "reversed"
    raise errors.NotIVa1Site("quadrant corners mix initial and terminal vertices")


def _check_clean_rectangle(p: LatticePolytope, v, w, c) -> None:
    """The realizing rectangle must meet the boundary only along the two
    crossing edges; otherwise the move does not present the surgery."""
    xlo, xhi = sorted((v.x, w.x))
    ylo, yhi = sorted((v.y, w.y))
    for a, b in G.x_edges(p) + G.y_edges(p):
        if (a.y == b.y == c[1] and min(a.x, b.x) <= c[0] <= max(a.x, b.x)) or \
                (a.x == b.x == c[0] and min(a.y, b.y) <= c[1] <= max(a.y, b.y)):
            continue                      # a crossing edge itself
        sxlo, sxhi = sorted((a.x, b.x))
        sylo, syhi = sorted((a.y, b.y))
        if max(sxlo, xlo) < min(sxhi, xhi) and max(sylo, ylo) < min(syhi, yhi):
            raise errors.NotIVa1Site("other boundary parts cross the rectangle")
        if a.y == b.y and ylo < a.y < yhi and max(sxlo, xlo) < min(sxhi, xhi):
            raise errors.NotIVa1Site("other boundary parts cross the rectangle")
        if a.x == b.x and xlo < a.x < xhi and max(sylo, ylo) < min(syhi, yhi):
            raise errors.NotIVa1Site("other boundary parts cross the rectangle")


def _face_of_quadrant(an, c, sx, sy):
    from .deform import _face_of_2x
    return _face_of_2x(an.arr, (2 * c[0] + sx, 2 * c[1] + sy))


def _viable(an, arc_key):
    from .deform import _viable_side
    return _viable_side(an, arc_key)


def _edge_endpoint(p: LatticePolytope, c, horizontal: bool, sign: int) -> GridPoint:
    edges = G.x_edges(p) if horizontal else G.y_edges(p)
    for a, b in edges:
        if horizontal and a.y == c[1] and min(a.x, b.x) < c[0] < max(a.x, b.x):
            return a if (a.x - c[0]) * sign > 0 else b
        if not horizontal and a.x == c[0] and min(a.y, b.y) < c[1] < max(a.y, b.y):
            return a if (a.y - c[1]) * sign > 0 else b
    raise errors.NotIVa1Site("no boundary edge through the crossing")


# ------------------------------------------------------------------ compile --

def compile_plan(trace: ReductionTrace, p: LatticePolytope) -> TransformPlan:
    """Compile a reduction of the boundary graph to the empty graph into a
    transformation plan whose every rectangle passes the minimality
    classifier.

    Deletions compile to searches through label-respecting moves that end
    at the deleted component's graph; the crossing surgeries in good order
    compile to their single rectangles (found by the same search).  The
    result is normalized to normal moves only.
    """
    if not DG.equivalent_mod_E_I(trace.start, associate(p)):
        raise errors.InvalidPlan("trace does not start at the polytope's graph")
    if not trace.terminal.is_empty():
        raise errors.NonEmptyTerminal("the reduction must end empty")
    subgoals: list[str] = []
    skip_next = False
    for i, s in enumerate(trace.steps):
        if s.kind in ("IVa1", "IVa2"):
            continue                      # realized jointly with the deletion
        if s.kind == "I":
            continue                      # no geometric content
        form = canonical_form(s.after)
        if not subgoals or subgoals[-1] != form:
            subgoals.append(form)
    empty_form = canonical_form(DG.empty_graph())
    if not subgoals or subgoals[-1] != empty_form:
        subgoals.append(empty_form)

    steps: list[PlanStep] = []
    state = p
    for goal in subgoals:
        found = _search_to_form(state, goal)
        if found is None:
            found = _search_to_form(state, empty_form)
            if found is None:
                raise errors.CompileGap("no label-respecting route to the goal")
            steps.extend(found[0])
            state = found[1]
            break
        steps.extend(found[0])
        state = found[1]
    if not G.trivial(state):
        found = _search_to_form(state, empty_form)
        if found is None:
            raise errors.CompileGap("no label-respecting completion")
        steps.extend(found[0])
        state = found[1]
    plan = normalize(TransformPlan(tuple(steps)), p)
    assert G.trivial(replay(p, plan))
    assert plan.cost_abs == G.area_abs(p), "compiled plan is not minimal"
    assert plan.cost_signed == G.area_signed(p), "signed-area identity broken"
    return plan


@lru_cache(maxsize=65536)
def _poly_form(ver0: frozenset, ver1: frozenset) -> str:
    return canonical_form(associate(LatticePolytope(
        G.PointConfig(ver0), G.PointConfig(ver1))))


def _state_form(p: LatticePolytope) -> str:
    return _poly_form(p.ver0.points, p.ver1.points)


def _search_to_form(p: LatticePolytope, goal: str):
    """Breadth-first search through classifier-passing moves to a state
    whose graph has the given canonical form."""
    if _state_form(p) == goal:
        return [], p
    from collections import deque
    start = (p.ver0.points, p.ver1.points)
    seen = {start}
    queue = deque([(p, [])])
    while queue:
        cur, path = queue.popleft()
        for step in _passing_steps(cur):
            nxt = apply_step(cur, step)
            key = (nxt.ver0.points, nxt.ver1.points)
            if key in seen:
                continue
            seen.add(key)
            npath = path + [step]
            if _state_form(nxt) == goal:
                return npath, nxt
            if G.area_abs(nxt) > 0:
                queue.append((nxt, npath))
    return None


@lru_cache(maxsize=262144)
def _step_passes(ver0: frozenset, ver1: frozenset, rect: Rect, mode: str) -> bool:
    p = LatticePolytope(G.PointConfig(ver0), G.PointConfig(ver1))
    return classify_step(p, rect, mode, with_tag=False).minimal


def _passing_steps(p: LatticePolytope) -> list[PlanStep]:
    out = []
    pts0 = sorted(p.ver0.points)
    for i in range(len(pts0)):
        for j in range(i + 1, len(pts0)):
            v, w = pts0[i], pts0[j]
            if v.x == w.x or v.y == w.y:
                continue
            if _step_passes(p.ver0.points, p.ver1.points, Rect(v, w), "normal"):
                out.append(normal_step(v, w))
    pts1 = sorted(p.ver1.points)
    for i in range(len(pts1)):
        for j in range(i + 1, len(pts1)):
            v, w = pts1[i], pts1[j]
            if v.x == w.x or v.y == w.y:
                continue
            step = reversed_step(v, w)
            if _step_passes(p.ver0.points, p.ver1.points, step.rect, "reversed"):
                out.append(step)
    return out


# ---------------------------------------------------------------- normalize --

def normalize(plan: TransformPlan, p: LatticePolytope) -> TransformPlan:
    """Rewrite a complete mixed plan as a normal-only plan with the same
    endpoints and the same multiset of rectangles.

    The normal steps keep their order (they see the same initial-vertex
    states); the reversed steps are then replayed as normal moves in
    reverse chronological order, walking the meeting configuration back up
    the terminal side.  Each replay finds the diagonal pair its reversed
    original added, so the rewrite is valid for every complete plan,
    including those where later reversed moves consume earlier ones'
    corners.
    """
    final = replay(p, plan)       # validates the input plan
    if not G.trivial(final):
        raise errors.InvalidPlan("only complete plans can be normalized")
    if all(s.mode == "normal" for s in plan.steps):
        return plan
    normals = [s for s in plan.steps if s.mode == "normal"]
    reverseds = [s for s in plan.steps if s.mode == "reversed"]
    out = normals + [PlanStep(s.rect, "normal") for s in reversed(reverseds)]
    result = TransformPlan(tuple(out))
    check = replay(p, result)
    assert G.trivial(check) and check.ver0.points == p.ver1.points, \
        "normalization broke the endpoints"
    assert sorted((min(s.rect.v, s.rect.w), max(s.rect.v, s.rect.w))
                  for s in result.steps) == \
        sorted((min(s.rect.v, s.rect.w), max(s.rect.v, s.rect.w))
               for s in plan.steps), "normalization changed the rectangles"
    return result
