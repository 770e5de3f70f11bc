"""Deformations of dotted graphs: applicability predicates and exact
application of dot merging (I), circle deletion (II), loop deletion (III),
band surgery between dotted arcs (IV) with its two good subcases, the arc
isotopy move, starred variants, and the all-cores agreement check.

Surgery runs at a working scale of 16 after coordinate compression, which
leaves integer corridors for the band; results are compressed back, so
coordinates stay small forever.  Every applied move returns a freshly
validated graph with globally recomputed labels.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, field

from . import errors
from .arrangement import Pt, winding_2x
from . import dotgraph as DG
from .dotgraph import DottedGraph, ComponentCert, analyze, canonical_form

SCALE = 16

KINDS = ("I", "II", "III", "IV")

_KIND_RANK = {"I": 0, "II": 1, "III": 2, "IV": 3, "IVa1": 3, "IVa2": 3, "E": 4}


@dataclass(frozen=True)
class Move:
    """An applicable deformation site on a specific graph."""
    kind: str
    site: tuple
    epsilon: int | None
    magnitude: int

    def sort_key(self):
        return (_KIND_RANK.get(self.kind, 9), repr(self.site))


@dataclass(frozen=True)
class Core:
    """The embedded band core of a surgery: a rectilinear path between the
    two dots whose interior avoids the graph."""
    path: tuple[Pt, ...]

    def __post_init__(self):
        for i in range(len(self.path) - 1):
            DG._direction(self.path[i], self.path[i + 1])
        if len(set(self.path)) != len(self.path):
            raise errors.InvalidGraph("core path self-intersects")


@dataclass(frozen=True)
class Deformation:
    """One applied move with before/after snapshots."""
    kind: str
    site: tuple
    epsilon: int | None
    magnitude: int
    before: DottedGraph
    after: DottedGraph
    meta: tuple = field(default=(), compare=False)

    def meta_dict(self) -> dict:
        return dict(self.meta)


# ------------------------------------------------------------ helpers ---

def _rot_left(d: Pt) -> Pt:
    return (-d[1], d[0])


def _rot_right(d: Pt) -> Pt:
    return (d[1], -d[0])


def _viable_side(an, arc_key):
    """The unique side of an arc where a band may attach: the face whose
    label magnitude dominates.  Returns (face, epsilon)."""
    lf, rf = an.left_face[arc_key], an.right_face[arc_key]
    L, R = an.label(lf), an.label(rf)
    assert L == R + 1, "left label must exceed right label by one"
    return (lf, 1) if L >= 1 else (rf, -1)


def _arc_of_dot(an, dot: Pt):
    for a in an.arcs:
        if dot in a.dots:
            return a
    raise errors.MissingDot(f"{dot} is not a dot of the graph")


def _component_sign_ok(an, cert: ComponentCert) -> bool:
    eps = cert.orientation
    return all(eps * an.label(f) >= 1 for f in cert.disk_faces)


# ------------------------------------------------------------- apply I --

def apply_I(g: DottedGraph, arc) -> DottedGraph:
    """Collapse the dots of one arc to its first dot."""
    an = analyze(g)
    a = an.arcs_by_key[arc.key if hasattr(arc, "key") else arc]
    if len(a.dots) < 2:
        raise errors.TooFewDots("deformation needs at least two dots on the arc")
    keep = a.dots[0]
    dots = (g.dots - set(a.dots)) | {keep}
    return DottedGraph(g.curves, frozenset(dots))


# ------------------------------------------------------------ apply II --

def apply_II(g: DottedGraph, cert: ComponentCert) -> DottedGraph:
    """Delete a circle component; labels inside its disk drop by epsilon."""
    if cert.kind != "circle":
        raise errors.NotALoop("apply_II needs a circle certificate")
    an = analyze(g)
    if not _component_sign_ok(an, cert):
        raise errors.LabelMismatch(
            "every region of the disk must carry the sign of the circle")
    curves = tuple(c for i, c in enumerate(g.curves) if i != cert.curve)
    dots = frozenset(d for d in g.dots
                     if an._dot_position(cert.curve, d) is None)
    return DottedGraph.build(curves, dots)


# ----------------------------------------------------------- apply III --

def apply_III(g: DottedGraph, cert: ComponentCert) -> DottedGraph:
    """Delete a loop component, smoothing the apex into a corner; the fused
    arc keeps one dot exactly when the loop was dotted."""
    if cert.kind != "loop":
        raise errors.NotALoop("apply_III needs a loop certificate")
    an = analyze(g)
    if not _component_sign_ok(an, cert):
        raise errors.LabelMismatch(
            "every region of the disk must carry the sign of the loop")
    c = cert.apex
    loop_arcs = [an.arcs_by_key[k] for k in cert.arcs]
    loop_dots = set()
    for a in loop_arcs:
        loop_dots.update(a.dots)
    tail_out = None
    first_out = loop_arcs[0].start_dir
    for d in DG.CCW_DIRS:
        arm = an.arms.get((c, d))
        if arm and arm[1] == "out" and d != first_out:
            tail_out = d
    assert tail_out is not None
    tail = _chain_from(an, c, tail_out)
    pts = [c]
    for a in tail:
        pts.extend(a.path[1:])
    new_curve = tuple(pts[:-1])   # the walk closes back at c
    curves = tuple(cc for i, cc in enumerate(g.curves) if i != cert.curve) + (new_curve,)
    dots = set(g.dots) - loop_dots
    if loop_dots:
        dots.add(c)
    return DottedGraph.build(curves, dots)


def _chain_from(an, c: Pt, out_dir: Pt):
    """Arc chain leaving c along out_dir until the walk first returns to c."""
    arm = an.arms.get((c, out_dir))
    assert arm is not None and arm[1] == "out"
    chain = [an.arcs_by_key[arm[0]]]
    while chain[-1].end != c:
        nxt = an.arms[(chain[-1].end, chain[-1].end_dir)]
        assert nxt[1] == "out"
        chain.append(an.arcs_by_key[nxt[0]])
        assert len(chain) <= len(an.arcs) + 1
    return chain


# ------------------------------------------------------------ apply IV --

def apply_IV(g: DottedGraph, p1: Pt, p2: Pt, core=None) -> DottedGraph:
    """Band surgery between two dots across their shared middle region.

    With ``core=None`` the canonical core is used: the shortest cell route
    through the middle region, ties broken lexicographically.  An explicit
    core polyline is matched by its homotopy class around the region's
    obstacles and re-routed at working scale (dot slides along arcs are
    free moves).
    """
    return _surgery(g, p1, p2, core=core).after


def _surgery(g: DottedGraph, p1: Pt, p2: Pt, core=None, hug_crossing=None) -> Deformation:
    if isinstance(core, Core):
        core = core.path
    an = analyze(g)
    if p1 not in g.dots or p2 not in g.dots:
        raise errors.MissingDot("deformation IV needs two dots")
    if p1 == p2:
        raise errors.MissingDot("the two dots must be distinct")
    a1, a2 = _arc_of_dot(an, p1), _arc_of_dot(an, p2)
    F = _middle_region(an, a1, a2, core)
    eps = 1 if an.label(F) > 0 else -1
    mag = abs(an.label(F))

    extra = []
    if core is not None:
        core = tuple(tuple(p) for p in core)
        for q in core:
            extra.append(q)
    fx, fy = _joint_maps(g, extra)
    gxs, gys = DG.coordinate_values(g)
    gs = DG.transform_coords(g, {x: fx[x] for x in gxs}, {y: fy[y] for y in gys})

    def up(p: Pt) -> Pt:
        return (fx[p[0]], fy[p[1]])

    q1_0, q2_0 = up(p1), up(p2)
    hug_c = up(hug_crossing) if hug_crossing is not None else None
    ans0 = analyze(gs)
    Fs_pre = _middle_region(ans0, _arc_of_dot(ans0, q1_0),
                            _arc_of_dot(ans0, q2_0), None)
    gs, q1, q2 = _slide_pair(gs, q1_0, q2_0, hug_c, F=Fs_pre,
                             stay_near=core is not None)
    ans = analyze(gs)
    b1, b2 = _arc_of_dot(ans, q1), _arc_of_dot(ans, q2)
    Fs = _middle_region(ans, b1, b2, None)
    d1 = _dir_at(b1, q1)
    d2 = _dir_at(b2, q2)
    n1 = _normal_into(ans, b1, d1, Fs)
    n2 = _normal_into(ans, b2, d2, Fs)
    if hug_c is not None:
        core_s = _hug_core(q1, n1, q2, n2, hug_c)
    elif core is not None:
        core_up = tuple(up(p) for p in core)
        core_s = _core_matching(gs, ans, Fs, core_up, q1_0, q1, n1, q2_0, q2, n2)
    else:
        core_s = _canonical_core(ans, Fs, q1, n1, q2, n2)
    raw, nd1, nd2 = _cut_and_join(gs, q1, d1, q2, d2, core_s)
    out, gx, gy = DG.renormalize(raw)

    def down(p: Pt):
        return (gx[p[0]], gy[p[1]])

    meta = (("new_dots", (down(nd1), down(nd2))),
            ("apex", down(hug_c) if hug_c is not None else None))
    return Deformation("IV", (p1, p2, core), eps, mag, g, out, meta)


def _joint_maps(g: DottedGraph, extra_points):
    """Scaled compression maps covering the graph coordinates plus any
    off-grid core coordinates (placed strictly inside their gaps)."""
    xs, ys = DG.coordinate_values(g)
    fx = {x: SCALE * i for i, x in enumerate(xs)}
    fy = {y: SCALE * i for i, y in enumerate(ys)}
    _extend_monotone(fx, xs, sorted({p[0] for p in extra_points} - set(xs)))
    _extend_monotone(fy, ys, sorted({p[1] for p in extra_points} - set(ys)))
    return fx, fy


def _extend_monotone(f: dict, base: list[int], extras: list[int]) -> None:
    groups: dict[int, list[int]] = {}
    for v in extras:
        i = bisect_right(base, v)
        assert 0 < i < len(base), "core coordinate outside the graph range"
        groups.setdefault(i - 1, []).append(v)
    for lo, vals in groups.items():
        vals.sort()
        k = len(vals)
        assert k < SCALE, "too many off-grid core coordinates in one gap"
        for j, v in enumerate(vals, start=1):
            f[v] = f[base[lo]] + (SCALE * j) // (k + 1)


def _middle_region(an, a1, a2, core):
    if core is not None:
        if len(core) < 2:
            raise errors.NoCommonFace("core needs at least one segment")
        for p in core[1:-1]:
            if an.arr.on_any_segment(p):
                raise errors.RoutingFailure("core interior touches the graph")
        k = max(range(len(core) - 1),
                key=lambda i: abs(core[i][0] - core[i + 1][0]) +
                abs(core[i][1] - core[i + 1][1]))
        probe2 = (core[k][0] + core[k + 1][0], core[k][1] + core[k + 1][1])
        F = _face_of_2x(an.arr, probe2)
        sides1 = (an.left_face[a1.key], an.right_face[a1.key])
        sides2 = (an.left_face[a2.key], an.right_face[a2.key])
        if F not in sides1 or F not in sides2:
            raise errors.NoCommonFace("core does not run beside both arcs")
        if an.label(F) == 0:
            raise errors.ZeroLabel("middle region label is zero")
        for a in (a1, a2):
            if (F == an.left_face[a.key]) != (an.label(F) >= 1):
                raise errors.OrientationClash(
                    "arcs do not admit the induced orientations")
        return F
    F1, _ = _viable_side(an, a1.key)
    F2, _ = _viable_side(an, a2.key)
    if F1 != F2:
        raise errors.NoCommonFace("dots have no shared middle region")
    return F1


def _dir_at(arc, q: Pt) -> Pt:
    """Travel direction of an arc at an interior point of one of its pieces."""
    pts = arc.path
    n = len(pts)
    rng = range(n) if arc.closed else range(n - 1)
    for i in rng:
        a, b = pts[i], pts[(i + 1) % n]
        if DG._on_segment(q, (a, b)) and q != a and q != b:
            return DG._direction(a, b)
    raise errors.RoutingFailure(f"dot {q} is not interior to an arc piece")


def _normal_into(an, arc, d: Pt, F) -> Pt:
    if an.left_face[arc.key] == F:
        return _rot_left(d)
    if an.right_face[arc.key] == F:
        return _rot_right(d)
    raise errors.NoCommonFace("face not beside the arc")


# dot sliding ---------------------------------------------------------------

def _slide_pair(gs, q1, q2, hug_c, F=None, stay_near=False):
    """Slide both surgery dots to canonical arc positions.  When the middle
    region is known, the second dot lands beside a different quarter-cell
    than the first so that band routes around it stay enumerable.  With
    ``stay_near`` the dots move as little as possible (the drag of an
    explicit core's endpoints must not wind around obstacles)."""
    gs, q1n = _slide_one(gs, q1, taken={q2}, near=hug_c, stay_near=stay_near)
    distinct = None
    if F is not None and hug_c is None:
        an = analyze(gs)
        arc1 = _arc_of_dot(an, q1n)
        d1 = _dir_at(arc1, q1n)
        distinct = _quarter_beside(an.arr, q1n, _normal_into(an, arc1, d1, F))
    gs, q2n = _slide_one(gs, q2, taken={q1n}, near=hug_c,
                         distinct_quarter=distinct, F=F, stay_near=stay_near)
    return gs, q1n, q2n


def _slide_candidates(arc) -> list[Pt]:
    out = []
    pts = arc.path
    n = len(pts)
    pieces = sorted(
        ((pts[i], pts[(i + 1) % n])
         for i in (range(n) if arc.closed else range(n - 1))),
        key=lambda s: -(abs(s[1][0] - s[0][0]) + abs(s[1][1] - s[0][1])))
    for p, r in pieces:
        length = abs(r[0] - p[0]) + abs(r[1] - p[1])
        d = DG._direction(p, r)
        for off in (length // 2, length // 4, 3 * length // 4,
                    length // 2 - 4, length // 2 + 4, 4, length - 4):
            if 4 <= off <= length - 4:
                cand = (p[0] + d[0] * off, p[1] + d[1] * off)
                if cand not in out:
                    out.append(cand)
    return out


def _slide_one(gs, q, taken, near=None, distinct_quarter=None, F=None,
               stay_near=False):
    an = analyze(gs)
    arc = _arc_of_dot(an, q)
    corners = set()
    for curve in gs.curves:
        corners.update(curve)
    if near is not None:
        candidates = _near_crossing_positions(arc, near)
    elif stay_near:
        candidates = sorted(_slide_candidates(arc),
                            key=lambda c: abs(c[0] - q[0]) + abs(c[1] - q[1]))
        if q not in corners:
            candidates.insert(0, q)     # mid-piece dots need no slide at all
    else:
        candidates = _slide_candidates(arc)
        if distinct_quarter is not None:
            def quarter(cand):
                d = _dir_at(arc, cand)
                return _quarter_beside(an.arr, cand,
                                       _normal_into(an, arc, d, F))
            preferred = [c for c in candidates if quarter(c) != distinct_quarter]
            candidates = preferred + [c for c in candidates if c not in preferred]
    blocked = set(gs.dots) | set(taken) | set(an.crossings) | corners
    blocked.discard(q)
    for cand in candidates:
        if cand not in blocked:
            dots = (gs.dots - {q}) | {cand}
            return DottedGraph(gs.curves, frozenset(dots)), cand
    raise errors.RoutingFailure("no free canonical position for a surgery dot")


def _near_crossing_positions(arc, c: Pt) -> list[Pt]:
    """Points on the arc eight units from its end(s) at crossing c."""
    out = []
    pts = arc.path
    if pts[0] == c:
        d = DG._direction(pts[0], pts[1])
        out.append((c[0] + 8 * d[0], c[1] + 8 * d[1]))
    if pts[-1] == c:
        d = DG._direction(pts[-1], pts[-2])
        out.append((c[0] + 8 * d[0], c[1] + 8 * d[1]))
    if not out:
        raise errors.NotIVa1Site(f"arc does not end at crossing {c}")
    return out


# core construction ----------------------------------------------------------

def _cell_beside(arr, q: Pt, n: Pt):
    qx, qy = q
    if n[0] == 0:   # q on a horizontal piece, step vertically
        col = (arr.xs.index(qx) + 1 if qx in arr._line_set_x()
               else bisect_right(arr.xs, qx))
        row = arr.ys.index(qy) + (1 if n[1] > 0 else 0)
    else:
        row = (arr.ys.index(qy) + 1 if qy in arr._line_set_y()
               else bisect_right(arr.ys, qy))
        col = arr.xs.index(qx) + (1 if n[0] > 0 else 0)
    return (col, row)


def _cell_center(arr, cell) -> Pt:
    xlo, xhi, ylo, yhi = arr.cell_bounds(cell)
    assert None not in (xlo, xhi, ylo, yhi), "route entered an unbounded cell"
    return ((xlo + xhi) // 2, (ylo + yhi) // 2)


def _cell_neighbors(arr, cell, cells):
    c, r = cell
    out = []
    for nb in ((c - 1, r), (c + 1, r), (c, r - 1), (c, r + 1)):
        if nb in cells and arr.cells_adjacent(cell, nb):
            out.append(nb)
    return out


def _cell_path(arr, F_cells, c1, c2):
    """Deterministic shortest path in the cell graph of a face."""
    dist = {c2: 0}
    dq = deque([c2])
    while dq:
        cur = dq.popleft()
        for nb in _cell_neighbors(arr, cur, F_cells):
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                dq.append(nb)
    if c1 not in dist:
        raise errors.RoutingFailure("face cells are disconnected")
    path = [c1]
    while path[-1] != c2:
        best = min(nb for nb in _cell_neighbors(arr, path[-1], F_cells)
                   if dist.get(nb, -1) == dist[path[-1]] - 1)
        path.append(best)
    return path


def _border_midpoint(arr, a, b) -> Pt:
    (c1, r1), (c2, r2) = a, b
    if r1 == r2:
        x = arr.xs[min(c1, c2)]
        ylo, yhi = arr.ys[r1 - 1], arr.ys[r1]
        return (x, (ylo + yhi) // 2)
    y = arr.ys[min(r1, r2)]
    xlo, xhi = arr.xs[c1 - 1], arr.xs[c1]
    return ((xlo + xhi) // 2, y)


def _route_through_cells(arr, cells_path, q1, n1, q2, n2) -> tuple[Pt, ...]:
    """Realize an embedded rectilinear polyline q1 -> q2 whose interior runs
    through the given cells (centers and border midpoints)."""
    entries = [(q1, n1)]
    for i in range(len(cells_path) - 1):
        m = _border_midpoint(arr, cells_path[i], cells_path[i + 1])
        a, b = cells_path[i], cells_path[i + 1]
        norm = (1, 0) if a[0] != b[0] else (0, 1)
        entries.append((m, norm))
    entries.append((q2, n2))
    pts: list[Pt] = [q1]
    for i, cell in enumerate(cells_path):
        (a, na), (b, nb) = entries[i], entries[i + 1]
        cx, cy = _cell_center(arr, cell)
        ia = (cx, a[1]) if na[0] != 0 else (a[0], cy)
        ib = (cx, b[1]) if nb[0] != 0 else (b[0], cy)
        for p in (ia, (cx, cy), ib, b):
            if p != pts[-1]:
                pts.append(p)
    out = _clean_polyline(pts)
    if len(set(out)) != len(out):
        raise errors.RoutingFailure("core route self-intersects")
    return out


def _clean_polyline(pts) -> tuple[Pt, ...]:
    out: list[Pt] = []
    for p in pts:
        if out and p == out[-1]:
            continue
        out.append(p)
    i = 1
    while i + 1 < len(out):
        a, b, c = out[i - 1], out[i], out[i + 1]
        if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
            out.pop(i)
            if i > 1:
                i -= 1
        else:
            i += 1
    return tuple(out)


def _canonical_core(an, F, q1, n1, q2, n2) -> tuple[Pt, ...]:
    arr = an.arr
    cells = set(arr.faces[F].cells)
    c1 = _cell_beside(arr, q1, n1)
    c2 = _cell_beside(arr, q2, n2)
    path = _cell_path(arr, cells, c1, c2)
    return _route_through_cells(arr, path, q1, n1, q2, n2)


def _hug_core(q1, n1, q2, n2, c: Pt) -> tuple[Pt, ...]:
    """Core hugging the two crossing arms at distance two."""
    hug = (q1, c, q2)
    off = _offset_polyline(hug, (2 * n1[0], 2 * n1[1]), 2)
    return _clean_polyline([q1] + list(off) + [q2])


def _offset_polyline(path, u0: Pt, dist: int) -> tuple[Pt, ...]:
    dirs = [DG._direction(path[i], path[i + 1]) for i in range(len(path) - 1)]
    s = dirs[0][0] * u0[1] - dirs[0][1] * u0[0]
    us = []
    for d in dirs:
        u = _rot_left(d) if s > 0 else _rot_right(d)
        us.append((u[0] * dist, u[1] * dist))
    pts = [(path[0][0] + us[0][0], path[0][1] + us[0][1])]
    for i in range(1, len(path) - 1):
        pts.append((path[i][0] + us[i - 1][0] + us[i][0],
                    path[i][1] + us[i - 1][1] + us[i][1]))
    pts.append((path[-1][0] + us[-1][0], path[-1][1] + us[-1][1]))
    return _clean_polyline(pts)


# surgery --------------------------------------------------------------------

def _path_between(curve: tuple[Pt, ...], qa: Pt, qb: Pt) -> list[Pt]:
    """Points from qa to qb along the oriented curve; qa == qb walks the
    whole way around."""
    n = len(curve)
    seg_start = []
    run = 0
    for i in range(n):
        seg_start.append(run)
        a, b = curve[i], curve[(i + 1) % n]
        run += abs(b[0] - a[0]) + abs(b[1] - a[1])

    def scalar(p: Pt) -> int:
        for i in range(n):
            a, b = curve[i], curve[(i + 1) % n]
            if DG._on_segment(p, (a, b)) and p != b:
                return seg_start[i] + abs(p[0] - a[0]) + abs(p[1] - a[1])
        raise errors.RoutingFailure(f"{p} not on curve")

    sa, sb = scalar(qa), scalar(qb)
    span = (sb - sa) % run or run
    mids = []
    for i in range(n):
        rel = (seg_start[i] - sa) % run
        if 0 < rel < span:
            mids.append((rel, curve[i]))
    mids.sort()
    return [qa] + [p for _, p in mids] + [qb]


def _shorter_path_between(curve, qa: Pt, qb: Pt) -> list[Pt]:
    """The shorter walk along the curve (forward on ties); used as the
    canonical drag of a core endpoint to its slid position."""
    if qa == qb:
        return [qa]
    fwd = _path_between(curve, qa, qb)
    bwd = _path_between(curve, qb, qa)

    def length(path):
        return sum(abs(path[i + 1][0] - path[i][0]) +
                   abs(path[i + 1][1] - path[i][1])
                   for i in range(len(path) - 1))

    if length(bwd) < length(fwd):
        return list(reversed(bwd))
    return fwd


def _cut_and_join(gs, q1, d1, q2, d2, core):
    ci1 = _curve_of_point(gs, q1)
    ci2 = _curve_of_point(gs, q2)
    off_minus = _offset_polyline(core, (-d1[0], -d1[1]), 1)
    off_plus = _offset_polyline(core, d1, 1)
    t1m = (q1[0] - d1[0], q1[1] - d1[1])
    t1p = (q1[0] + d1[0], q1[1] + d1[1])
    t2m = (q2[0] - d2[0], q2[1] - d2[1])
    t2p = (q2[0] + d2[0], q2[1] + d2[1])
    if off_minus[0] != t1m or off_plus[0] != t1p:
        raise errors.RoutingFailure("band sides do not meet the first cut")
    if off_minus[-1] != t2p or off_plus[-1] != t2m:
        raise errors.OrientationClash(
            "arcs do not admit the induced orientations along this core")
    if ci1 == ci2:
        curve = gs.curves[ci1]
        piece1 = _path_between(curve, q1, q2)
        piece2 = _path_between(curve, q2, q1)
        c1 = _trim(piece2, d2, d1) + list(off_minus[1:-1])
        c2 = _trim(piece1, d1, d2) + list(reversed(off_plus))[1:-1]
        curves = [c for i, c in enumerate(gs.curves) if i != ci1] + \
            [tuple(c1), tuple(c2)]
    else:
        curve1, curve2 = gs.curves[ci1], gs.curves[ci2]
        whole1 = _path_between(curve1, q1, q1)
        whole2 = _path_between(curve2, q2, q2)
        merged = (_trim(whole1, d1, d1) + list(off_minus[1:]) +
                  _trim(whole2, d2, d2)[1:] + list(reversed(off_plus))[1:-1])
        curves = [c for i, c in enumerate(gs.curves)
                  if i not in (ci1, ci2)] + [tuple(merged)]
    dots = (set(gs.dots) - {q1, q2}) | {t1m, t2m}
    out = DottedGraph.build(curves, dots)
    return out, t1m, t2m


def _trim(piece: list[Pt], d_start: Pt, d_end: Pt) -> list[Pt]:
    out = list(piece)
    out[0] = (out[0][0] + d_start[0], out[0][1] + d_start[1])
    out[-1] = (out[-1][0] - d_end[0], out[-1][1] - d_end[1])
    return out


def _curve_of_point(g: DottedGraph, q: Pt) -> int:
    for ci, curve in enumerate(g.curves):
        n = len(curve)
        for i in range(n):
            if DG._on_segment(q, (curve[i], curve[(i + 1) % n])):
                return ci
    raise errors.RoutingFailure(f"{q} not on any curve")


# homotopy classes of cores ----------------------------------------------------

def _graph_components(an):
    n = len(an.g.curves)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (hc, _), (vc, _) in an.crossings.values():
        pa, pb = find(hc), find(vc)
        if pa != pb:
            parent[pb] = pa
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _face_of_2x(arr, p2: Pt) -> int:
    from bisect import bisect_left
    col = bisect_left([2 * x for x in arr.xs], p2[0]) if arr.xs else 0
    row = bisect_left([2 * y for y in arr.ys], p2[1]) if arr.ys else 0
    return arr.face_of_cell((col, row))


def _hole_samples(an, F) -> list[Pt]:
    """One doubled-grid sample inside each graph component enclosed by F.

    Samples carry odd doubled coordinates so they never meet grid lines or
    route vertices."""
    samples = []
    for curves in _graph_components(an):
        segs = []
        for ci in curves:
            segs.extend(DG.curve_segments(an.g.curves[ci]))
        hsegs = [s for s in segs if s[0][1] == s[1][1]]
        top = max(hsegs, key=lambda s: (s[0][1], min(s[0][0], s[1][0])))
        sx2 = top[0][0] + top[1][0]
        if sx2 % 2 == 0:
            sx2 += 1            # stays interior: even sums need length >= 2
        ty = top[0][1]
        above = (sx2, 2 * ty + 1)
        if _face_of_2x(an.arr, above) == F:
            samples.append((sx2, 2 * ty - 1))
    return samples


def _polyline_winding_2x(sample2: Pt, pts) -> int:
    segs = []
    m = len(pts)
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        if a != b:
            segs.append((a, b))
    return winding_2x(sample2, segs)


def _rect_closed(pts) -> list[Pt]:
    """Close a waypoint cycle into an axis-parallel polyline, inserting an
    elbow wherever consecutive waypoints are diagonal."""
    out: list[Pt] = []
    m = len(pts)
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        out.append(a)
        if a[0] != b[0] and a[1] != b[1]:
            out.append((a[0], b[1]))
    return out


# quarter-cell routing: embedded cores may pass one arrangement cell twice,
# so homotopy classes are enumerated on cells split in four

def _quarter_center(arr, node) -> Pt:
    c, r, qx, qy = node
    xlo, xhi, ylo, yhi = arr.cell_bounds((c, r))
    w, h = xhi - xlo, yhi - ylo
    return (xlo + w // 4 + qx * (w // 2), ylo + h // 4 + qy * (h // 2))


def _quarter_neighbors(arr, F_cells, node):
    c, r, qx, qy = node
    out = []
    if qx == 0:
        out.append((c, r, 1, qy))
        if (c - 1, r) in F_cells and arr.cells_adjacent((c, r), (c - 1, r)):
            out.append((c - 1, r, 1, qy))
    else:
        out.append((c, r, 0, qy))
        if (c + 1, r) in F_cells and arr.cells_adjacent((c, r), (c + 1, r)):
            out.append((c + 1, r, 0, qy))
    if qy == 0:
        out.append((c, r, qx, 1))
        if (c, r - 1) in F_cells and arr.cells_adjacent((c, r), (c, r - 1)):
            out.append((c, r - 1, qx, 1))
    else:
        out.append((c, r, qx, 0))
        if (c, r + 1) in F_cells and arr.cells_adjacent((c, r), (c, r + 1)):
            out.append((c, r + 1, qx, 0))
    return out


def _quarter_beside(arr, q: Pt, n: Pt):
    cell = _cell_beside(arr, q, n)
    xlo, xhi, ylo, yhi = arr.cell_bounds(cell)
    cx, cy = (xlo + xhi) // 2, (ylo + yhi) // 2
    if n[0] == 0:
        qx = 0 if q[0] <= cx else 1
        qy = 0 if n[1] > 0 else 1
    else:
        qy = 0 if q[1] <= cy else 1
        qx = 0 if n[0] > 0 else 1
    return (cell[0], cell[1], qx, qy)


def _route_through_quarters(arr, nodes, q1, n1, q2, n2) -> tuple[Pt, ...]:
    centers = [_quarter_center(arr, nd) for nd in nodes]
    first, last = centers[0], centers[-1]
    proj1 = (q1[0], first[1]) if n1[0] == 0 else (first[0], q1[1])
    proj2 = (q2[0], last[1]) if n2[0] == 0 else (last[0], q2[1])
    pts = [q1, proj1] + centers + [proj2, q2]
    out = _clean_polyline(pts)
    if len(set(out)) != len(out):
        raise errors.RoutingFailure("core route self-intersects")
    return out


def _ray_deltas(a: Pt, b: Pt, rays) -> tuple[int, ...]:
    """Signed crossings of the step a->b with upward rays from the holes."""
    out = [0] * len(rays)
    if a[1] == b[1] and a[0] != b[0]:
        y2 = 2 * a[1]
        lo2, hi2 = sorted((2 * a[0], 2 * b[0]))
        for i, (rx2, ry2) in enumerate(rays):
            if y2 > ry2 and lo2 < rx2 < hi2:
                out[i] = 1 if b[0] > a[0] else -1
    return tuple(out)


def _enumerate_core_classes(arr, F_cells, q1, n1, q2, n2, holes,
                            cap=20000, wind_bound=1):
    """One realized core per winding signature around the face's holes.

    Reachable crossing vectors are found on the product of the quarter-cell
    graph with the bounded winding lattice; each is then realized by a
    simple route found under reachability pruning.  Windings beyond the
    bound are outside the enumeration; an exhausted budget raises."""
    base = _route_through_cells(
        arr, _cell_path(arr, F_cells, _cell_beside(arr, q1, n1),
                        _cell_beside(arr, q2, n2)), q1, n1, q2, n2)
    if not holes:
        return {(): base}
    rays = list(holes)          # odd coordinates: no ties with route points
    nd1 = _quarter_beside(arr, q1, n1)
    nd2 = _quarter_beside(arr, q2, n2)
    zero = tuple(0 for _ in rays)

    centers = {}
    adjacency = {}

    def neighbors(node):
        if node not in adjacency:
            adjacency[node] = _quarter_neighbors(arr, F_cells, node)
            centers[node] = _quarter_center(arr, node)
        return adjacency[node]

    centers[nd1] = _quarter_center(arr, nd1)
    # forward closure of the product graph
    from collections import deque
    start = (nd1, zero)
    forward = {start: []}
    dq = deque([start])
    budget = cap
    while dq:
        budget -= 1
        if budget <= 0:
            raise errors.BudgetExceeded("core class enumeration budget hit")
        node, vec = dq.popleft()
        for nb in neighbors(node):
            d = _ray_deltas(centers[node], _quarter_center(arr, nb), rays)
            nvec = tuple(v + x for v, x in zip(vec, d))
            if any(abs(v) > wind_bound for v in nvec):
                continue
            state = (nb, nvec)
            forward.setdefault(state, []).append((node, vec))
            if len(forward[state]) == 1:
                dq.append(state)

    targets = sorted(vec for node, vec in forward if node == nd2)
    found: dict[tuple, tuple[Pt, ...]] = {}

    def signature(nodes):
        pts = ([base[0]] + [_quarter_center(arr, nd) for nd in nodes] +
               [base[-1]] + list(reversed(base)))
        loop = _rect_closed(pts)
        return tuple(_polyline_winding_2x(h, loop) for h in holes)

    for tvec in targets:
        # distance to the target over the product graph, by backward closure
        dist = {(nd2, tvec): 0}
        dq = deque([(nd2, tvec)])
        while dq:
            state = dq.popleft()
            for prev in forward.get(state, ()):
                if prev not in dist:
                    dist[prev] = dist[state] + 1
                    dq.append(prev)
        if start not in dist:
            continue
        result = [None]

        def dfs(path, visited, vec, maxlen, budget_dfs):
            if result[0] is not None or budget_dfs[0] <= 0:
                budget_dfs[0] -= 1
                return
            budget_dfs[0] -= 1
            if path[-1] == nd2 and vec == tvec:
                result[0] = list(path)
                return
            ranked = []
            for nb in neighbors(path[-1]):
                if nb in visited:
                    continue
                d = _ray_deltas(centers[path[-1]], _quarter_center(arr, nb), rays)
                nvec = tuple(v + x for v, x in zip(vec, d))
                nd = dist.get((nb, nvec))
                if nd is None or len(path) + nd > maxlen:
                    continue
                ranked.append((nd, nb, nvec))
            ranked.sort()
            for _, nb, nvec in ranked:
                visited.add(nb)
                path.append(nb)
                dfs(path, visited, nvec, maxlen, budget_dfs)
                path.pop()
                visited.remove(nb)
                if result[0] is not None:
                    return

        # near-geodesic representatives only: bounded iterative deepening;
        # vectors without a short simple route are outside the enumeration
        for extra in (0, 4, 12):
            dfs([nd1], {nd1}, zero, dist[start] + extra, [min(3000, cap)])
            if result[0] is not None:
                break
        if result[0] is None:
            continue
        sig = signature(result[0])
        if sig not in found:
            try:
                found[sig] = _route_through_quarters(arr, result[0],
                                                     q1, n1, q2, n2)
            except errors.RoutingFailure:
                pass
    found[zero] = base
    return found


def _core_matching(gs, ans, Fs, core_up, q1_0, q1, n1, q2_0, q2, n2):
    """Route a core in the homotopy class of an explicitly given core.

    The given core's endpoints are transported along their arcs to the
    canonical slid positions (a free move, with the forward walk along the
    curve as the canonical drag); the class is measured against the
    canonical core by winding numbers around the middle region's obstacles.
    """
    arr = ans.arr
    holes = _hole_samples(ans, Fs)
    cells = set(arr.faces[Fs].cells)
    base = _route_through_cells(
        arr, _cell_path(arr, cells, _cell_beside(arr, q1, n1),
                        _cell_beside(arr, q2, n2)), q1, n1, q2, n2)
    if not holes:
        return base
    conn1 = _shorter_path_between(gs.curves[_curve_of_point(gs, q1)], q1, q1_0)
    conn2 = _shorter_path_between(gs.curves[_curve_of_point(gs, q2)], q2_0, q2)
    loop = _rect_closed(list(conn1) + list(core_up)[1:] + list(conn2)[1:] +
                        list(reversed(base))[1:-1])
    want = tuple(_polyline_winding_2x(h, loop) for h in holes)
    classes = _enumerate_core_classes(arr, cells, q1, n1, q2, n2, holes)
    if want not in classes:
        raise errors.RoutingFailure("no embedded core in the requested class")
    return classes[want]


# ------------------------------------------------------------- epsilon ---

def slide_dot(g: DottedGraph, dot: Pt, target: Pt) -> DottedGraph:
    """Move a dot along its own arc (changes nothing up to isotopy)."""
    an = analyze(g)
    arc = _arc_of_dot(an, dot)
    target = tuple(target)
    pts = arc.path
    n = len(pts)
    rng = range(n) if arc.closed else range(n - 1)
    on_arc = any(DG._on_segment(target, (pts[i], pts[(i + 1) % n])) for i in rng)
    if not on_arc:
        raise errors.LabelMismatch("dot slide must stay on its arc")
    if target in an.crossings or (target in g.dots and target != dot):
        raise errors.LabelMismatch("slide target is occupied")
    return DottedGraph(g.curves, frozenset((g.dots - {dot}) | {target}))


def apply_E(g: DottedGraph, a: Pt, b: Pt, new_path, moved_dots=()) -> DottedGraph:
    """Re-embed the part of a curve between points a and b along a new
    rectilinear path, carrying the dots of the moved part to the given
    positions.

    The swept zone may pass over other strands only when every swept region
    carries a nonzero label of one sign; the move must not create a loop
    component.
    """
    a, b = tuple(a), tuple(b)
    new_path = [tuple(p) for p in new_path]
    if a == b:
        raise errors.LabelMismatch("a and b must be distinct curve points")
    if new_path[0] != a or new_path[-1] != b:
        raise errors.LabelMismatch("replacement path must run from a to b")
    ci = _curve_of_point(g, a)
    if _curve_of_point(g, b) != ci:
        raise errors.LabelMismatch("a and b must lie on one curve")
    an = analyze(g)
    if a in an.crossings or b in an.crossings:
        raise errors.LabelMismatch("cut points must avoid crossings")
    curve = g.curves[ci]
    old_piece = _path_between(curve, a, b)
    rest = _path_between(curve, b, a)
    new_curve = tuple(rest + new_path[1:-1])
    old_dots = [d for d in g.dots if _on_piece(d, old_piece) and d not in (a, b)]
    if len(moved_dots) != len(old_dots):
        raise errors.LabelMismatch(
            f"move carries {len(old_dots)} dots; {len(moved_dots)} targets given")
    dots = (set(g.dots) - set(old_dots)) | {tuple(d) for d in moved_dots}
    curves = tuple(c for i, c in enumerate(g.curves) if i != ci) + (new_curve,)
    out = DottedGraph.build(curves, dots)
    _check_sweep_labels(g, old_piece, new_path)
    if len(analyze(out).loops) > len(an.loops):
        raise errors.CreatesLoop("isotopy would create a loop component")
    return out


def _on_piece(p: Pt, piece) -> bool:
    return any(DG._on_segment(p, (piece[i], piece[i + 1]))
               for i in range(len(piece) - 1))


def _check_sweep_labels(g, old_piece, new_path):
    cycle = list(old_piece) + list(reversed(new_path))[1:-1]
    m = len(cycle)
    cyc_segs = [(cycle[i], cycle[(i + 1) % m]) for i in range(m)]
    cyc_segs = [s for s in cyc_segs if s[0] != s[1]]
    g_segs = [seg for _, _, seg in DG.all_segments(g)]
    touched = False
    for seg in g_segs:
        if _seg_inside_piece(seg, old_piece):
            continue
        m2 = (seg[0][0] + seg[1][0], seg[0][1] + seg[1][1])
        if winding_2x(m2, cyc_segs) != 0 or _seg_hits_cycle(seg, cyc_segs):
            touched = True
            break
    if not touched:
        return
    from .arrangement import Arrangement
    combined = list(g_segs)
    for i in range(len(new_path) - 1):
        combined.append((new_path[i], new_path[i + 1]))
    arr = Arrangement([s for s in combined if s[0] != s[1]], face_winding=False)
    labels = []
    for f in arr.faces:
        if winding_2x(f.sample2, cyc_segs) != 0:
            labels.append(winding_2x(f.sample2, g_segs))
    if labels and (0 in labels or (min(labels) < 0 < max(labels))):
        raise errors.LabelMismatch(
            "swept regions must carry nonzero labels of one sign")


def _seg_inside_piece(seg, piece) -> bool:
    return any(DG._on_segment(seg[0], (piece[i], piece[i + 1])) and
               DG._on_segment(seg[1], (piece[i], piece[i + 1]))
               for i in range(len(piece) - 1))


def _seg_hits_cycle(seg, cyc_segs) -> bool:
    v1 = seg[0][0] == seg[1][0]
    for c in cyc_segs:
        v2 = c[0][0] == c[1][0]
        if v1 == v2:
            continue
        hs, vs = (c, seg) if v1 else (seg, c)
        p = (vs[0][0], hs[0][1])
        if DG._interior(p, hs) and DG._interior(p, vs):
            return True
    return False


# -------------------------------------------------------------- starred --

def applicable_star(g: DottedGraph, kind: str, site) -> bool:
    """Weakened applicability: every region inside the disk or middle region
    carries a nonzero total label of one sign, and the overlapping closures
    do not swallow the site (the minimal magnitude shows up adjacent to the
    component)."""
    an = analyze(g)
    if kind == "I":
        a = an.arcs_by_key[site.key if hasattr(site, "key") else site]
        return len(a.dots) >= 2
    if kind in ("II", "III"):
        cert = site
        labels = [an.label(f) for f in cert.disk_faces]
        if 0 in labels or (min(labels) < 0 < max(labels)):
            return False
        adjacent = set()
        for k in cert.arcs:
            adjacent.add(an.left_face[k])
            adjacent.add(an.right_face[k])
        adjacent &= set(cert.disk_faces)
        least = min(abs(x) for x in labels)
        return any(abs(an.label(f)) == least for f in adjacent)
    if kind == "IV":
        p1, p2 = site
        try:
            a1, a2 = _arc_of_dot(an, p1), _arc_of_dot(an, p2)
            _middle_region(an, a1, a2, None)
            return True
        except errors.LatPolyError:
            return False
    raise ValueError(f"unknown starred kind {kind}")


# ------------------------------------------------------------ condition A

def check_condition_A(g: DottedGraph, p1: Pt, p2: Pt, cap: int = 4000) -> bool:
    """True when all cores between the two dots give the same result up to
    local moves and dot merging (compared by canonical form).  Raises
    BudgetExceeded past the enumeration cap."""
    an = analyze(g)
    a1, a2 = _arc_of_dot(an, p1), _arc_of_dot(an, p2)
    F = _middle_region(an, a1, a2, None)
    if not _hole_samples(an, F):
        return True
    rn, fx, fy = DG.renormalize(g)
    gs = DG.scaled(rn, SCALE)

    def up(p):
        return (SCALE * fx[p[0]], SCALE * fy[p[1]])

    u1, u2 = up(p1), up(p2)
    ans0 = analyze(gs)
    Fs_pre = _middle_region(ans0, _arc_of_dot(ans0, u1),
                            _arc_of_dot(ans0, u2), None)
    gs, q1, q2 = _slide_pair(gs, u1, u2, None, F=Fs_pre)
    ans = analyze(gs)
    b1, b2 = _arc_of_dot(ans, q1), _arc_of_dot(ans, q2)
    Fs = _middle_region(ans, b1, b2, None)
    d1, d2 = _dir_at(b1, q1), _dir_at(b2, q2)
    n1 = _normal_into(ans, b1, d1, Fs)
    n2 = _normal_into(ans, b2, d2, Fs)
    holes = _hole_samples(ans, Fs)
    arr = ans.arr
    cells = set(arr.faces[Fs].cells)
    classes = _enumerate_core_classes(arr, cells, q1, n1, q2, n2, holes, cap=cap)
    forms = set()
    for core in classes.values():
        raw, _, _ = _cut_and_join(gs, q1, d1, q2, d2, core)
        forms.add(canonical_form(DG.normalized(raw)))
        if len(forms) > 1:
            return False
    return True


def check_condition_A_everywhere(g: DottedGraph, cap: int = 4000) -> bool:
    """Condition (A) over every dot pair where a surgery applies."""
    for move in enumerate_moves(g, allowed=frozenset({"IV"})):
        p1, p2 = move.site
        if not check_condition_A(g, p1, p2, cap=cap):
            return False
    return True


# ------------------------------------------------------------ enumerate --

def enumerate_moves(g: DottedGraph, allowed=frozenset(KINDS)) -> list[Move]:
    """Every applicable move of an allowed kind, deterministically ordered;
    surgeries carry one site per dot pair (the canonical core)."""
    an = analyze(g)
    moves: list[Move] = []
    if "I" in allowed:
        for a in an.arcs:
            if len(a.dots) >= 2:
                moves.append(Move("I", a.key, None, 0))
    if "II" in allowed:
        for cert in an.circles:
            if _component_sign_ok(an, cert):
                moves.append(Move("II", cert, cert.orientation,
                                  abs(cert.disk_label)))
    if "III" in allowed:
        for cert in an.loops:
            if _component_sign_ok(an, cert):
                moves.append(Move("III", cert, cert.orientation,
                                  abs(cert.disk_label)))
    if "IV" in allowed:
        dots = sorted(g.dots)
        for i in range(len(dots)):
            for j in range(i + 1, len(dots)):
                p1, p2 = dots[i], dots[j]
                try:
                    a1, a2 = _arc_of_dot(an, p1), _arc_of_dot(an, p2)
                    F = _middle_region(an, a1, a2, None)
                except errors.LatPolyError:
                    continue
                eps = 1 if an.label(F) > 0 else -1
                moves.append(Move("IV", (p1, p2), eps, abs(an.label(F))))
    moves.sort(key=Move.sort_key)
    return moves


def apply_move(g: DottedGraph, move: Move) -> Deformation:
    if move.kind == "I":
        after = apply_I(g, move.site)
        site = move.site
    elif move.kind == "II":
        after = apply_II(g, move.site)
        site = (move.site.kind, move.site.boundary)
    elif move.kind == "III":
        after = apply_III(g, move.site)
        site = (move.site.kind, move.site.boundary)
    elif move.kind == "IV":
        return _surgery(g, move.site[0], move.site[1])
    else:
        raise ValueError(f"cannot apply kind {move.kind}")
    return Deformation(move.kind, site, move.epsilon, move.magnitude, g, after)


# ------------------------------------------------------------- classify --

def classify_IVa(g: DottedGraph, move: Move) -> str | None:
    """'a1', 'a2', or None for an enumerated surgery move."""
    out = try_good_IV(g, move)
    if out is None:
        return None
    return "a1" if out[0] == "IVa1" else "a2"


def try_good_IV(g: DottedGraph, move: Move):
    """Attempt the good interpretations of a surgery move.

    Returns ('IVa1'|'IVa2', (surgery deformation, deletion deformation))
    with the deletion that good order demands, or None."""
    assert move.kind == "IV"
    p1, p2 = move.site
    an = analyze(g)
    a1, a2 = _arc_of_dot(an, p1), _arc_of_dot(an, p2)
    F = _middle_region(an, a1, a2, None)
    # (a1): arcs adjacent at a crossing whose near quadrant is the region
    for c in sorted(an.crossings):
        for d_in in DG.CCW_DIRS:
            arm_in = an.arms.get((c, d_in))
            if arm_in is None or arm_in[1] != "in" or \
                    arm_in[0] not in (a1.key, a2.key):
                continue
            for d_out in DG.CCW_DIRS:
                if d_in[0] != 0 and d_out[0] != 0:
                    continue
                if d_in[1] != 0 and d_out[1] != 0:
                    continue
                arm_out = an.arms.get((c, d_out))
                if arm_out is None or arm_out[1] != "out":
                    continue
                if {arm_in[0], arm_out[0]} != {a1.key, a2.key}:
                    continue
                quad2 = (2 * c[0] + d_in[0] + d_out[0],
                         2 * c[1] + d_in[1] + d_out[1])
                if _face_of_2x(an.arr, quad2) != F:
                    continue
                try:
                    dIV = _surgery(g, p1, p2, hug_crossing=c)
                except errors.LatPolyError:
                    continue
                apex = dIV.meta_dict()["apex"]
                an2 = analyze(dIV.after)
                for cert in an2.loops:
                    if cert.apex == apex and _component_sign_ok(an2, cert):
                        after2 = apply_III(dIV.after, cert)
                        dIII = Deformation("III", (cert.kind, cert.boundary),
                                           cert.orientation,
                                           abs(cert.disk_label),
                                           dIV.after, after2)
                        dIV1 = Deformation("IVa1", dIV.site, dIV.epsilon,
                                           dIV.magnitude, dIV.before,
                                           dIV.after, dIV.meta)
                        return ("IVa1", (dIV1, dIII))
    # (a2): concentric circle components merging into a deletable circle
    cert1 = _circle_cert_of_arc(an, a1.key)
    cert2 = _circle_cert_of_arc(an, a2.key)
    if cert1 is not None and cert2 is not None and cert1 != cert2:
        s1 = (2 * cert1.boundary[0][0] + 1, 2 * cert1.boundary[0][1] + 1)
        s2 = (2 * cert2.boundary[0][0] + 1, 2 * cert2.boundary[0][1] + 1)
        nested = (_polyline_winding_2x(s2, list(cert1.boundary)) != 0 or
                  _polyline_winding_2x(s1, list(cert2.boundary)) != 0)
        if nested:
            try:
                dIV = _surgery(g, p1, p2)
            except errors.LatPolyError:
                return None
            nd1 = dIV.meta_dict()["new_dots"][0]
            ci = _curve_of_point(dIV.after, nd1)
            an2 = analyze(dIV.after)
            for cert in an2.circles:
                if cert.curve == ci and _component_sign_ok(an2, cert):
                    after2 = apply_II(dIV.after, cert)
                    dII = Deformation("II", (cert.kind, cert.boundary),
                                      cert.orientation, abs(cert.disk_label),
                                      dIV.after, after2)
                    dIV2 = Deformation("IVa2", dIV.site, dIV.epsilon,
                                       dIV.magnitude, dIV.before, dIV.after,
                                       dIV.meta)
                    return ("IVa2", (dIV2, dII))
    return None


def _circle_cert_of_arc(an, arc_key):
    for cert in an.circles:
        if arc_key in cert.arcs:
            return cert
    return None
