"""Dotted graphs: oriented closed rectilinear curves with dots and labeled
regions, their association with lattice polytopes, component recognition,
equivalence and realization.

A graph is stored geometrically (corner polylines on the integer grid,
dots as exact points); crossings, arcs, faces and labels are derived.
Graphs are compared up to ambient isotopy and dot multiplicity through a
canonical encoding of the labeled combinatorial map.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import errors
from . import geometry as G
from .arrangement import Arrangement, Pt, Seg, winding_2x

E, N, W, S = (1, 0), (0, 1), (-1, 0), (0, -1)
CCW_DIRS = (E, N, W, S)


def _direction(a: Pt, b: Pt) -> Pt:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx and dy:
        raise errors.InvalidGraph(f"non-axis step {a}->{b}")
    if not dx and not dy:
        raise errors.InvalidGraph(f"zero step at {a}")
    return ((dx > 0) - (dx < 0), (dy > 0) - (dy < 0))


def _merge_collinear(pts: list[Pt]) -> list[Pt]:
    out = [p for i, p in enumerate(pts) if p != pts[i - 1]] if pts else []
    changed = True
    while changed and len(out) > 2:
        changed = False
        n = len(out)
        for i in range(n):
            a, b, c = out[(i - 1) % n], out[i], out[(i + 1) % n]
            if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
                out.pop(i)
                changed = True
                break
    return out


@dataclass(frozen=True)
class DottedGraph:
    curves: tuple[tuple[Pt, ...], ...]
    dots: frozenset[Pt]

    @staticmethod
    def build(curves, dots=()) -> "DottedGraph":
        normed = []
        for raw in curves:
            pts = [(int(p[0]), int(p[1])) for p in raw]
            if pts and pts[0] == pts[-1]:
                pts = pts[:-1]
            pts = _merge_collinear(pts)
            if len(pts) < 4:
                raise errors.InvalidGraph(f"closed rectilinear curve needs >= 4 corners: {pts}")
            k = pts.index(min(pts))
            pts = pts[k:] + pts[:k]
            normed.append(tuple(pts))
        g = DottedGraph(tuple(sorted(normed)),
                        frozenset((int(d[0]), int(d[1])) for d in dots))
        _validate(g)
        return g

    def is_empty(self) -> bool:
        return not self.curves


def empty_graph() -> DottedGraph:
    return DottedGraph((), frozenset())


def curve_segments(curve: tuple[Pt, ...]) -> list[Seg]:
    n = len(curve)
    return [(curve[i], curve[(i + 1) % n]) for i in range(n)]


def all_segments(g: DottedGraph) -> list[tuple[int, int, Seg]]:
    """(curve index, segment index, segment) for every directed segment."""
    out = []
    for ci, curve in enumerate(g.curves):
        for si, seg in enumerate(curve_segments(curve)):
            out.append((ci, si, seg))
    return out


def _on_segment(p: Pt, seg: Seg) -> bool:
    (x1, y1), (x2, y2) = seg
    if x1 == x2:
        return p[0] == x1 and min(y1, y2) <= p[1] <= max(y1, y2)
    return p[1] == y1 and min(x1, x2) <= p[0] <= max(x1, x2)


def _interior(p: Pt, seg: Seg) -> bool:
    return _on_segment(p, seg) and p != seg[0] and p != seg[1]


def _validate(g: DottedGraph) -> None:
    corners: set[Pt] = set()
    for curve in g.curves:
        n = len(curve)
        for i in range(n):
            _direction(curve[i], curve[(i + 1) % n])   # axis-parallel, nonzero
        for p in curve:
            if p in corners:
                raise errors.InvalidGraph(f"coincident corners at {p}")
            corners.add(p)
        for i in range(n):
            din = _direction(curve[(i - 1) % n], curve[i])
            dout = _direction(curve[i], curve[(i + 1) % n])
            if din[0] != 0 and dout[0] != 0 or din[1] != 0 and dout[1] != 0:
                raise errors.InvalidGraph(f"collinear corner survived at {curve[i]}")

    segs = all_segments(g)
    # same-line overlap and T-junctions
    for i in range(len(segs)):
        ci, si, s1 = segs[i]
        for j in range(i + 1, len(segs)):
            cj, sj, s2 = segs[j]
            a1 = s1[0][0] == s1[1][0]
            a2 = s2[0][0] == s2[1][0]
            if a1 == a2:
                # parallel: forbid interval overlap on the same line
                if a1:
                    if s1[0][0] == s2[0][0]:
                        lo1, hi1 = sorted((s1[0][1], s1[1][1]))
                        lo2, hi2 = sorted((s2[0][1], s2[1][1]))
                        if max(lo1, lo2) < min(hi1, hi2):
                            raise errors.InvalidGraph(f"collinear overlap at x={s1[0][0]}")
                else:
                    if s1[0][1] == s2[0][1]:
                        lo1, hi1 = sorted((s1[0][0], s1[1][0]))
                        lo2, hi2 = sorted((s2[0][0], s2[1][0]))
                        if max(lo1, lo2) < min(hi1, hi2):
                            raise errors.InvalidGraph(f"collinear overlap at y={s1[0][1]}")
            else:
                for p in (s2[0], s2[1]):
                    if _interior(p, s1):
                        raise errors.InvalidGraph(f"T-junction: corner {p} inside a segment")
                for p in (s1[0], s1[1]):
                    if _interior(p, s2):
                        raise errors.InvalidGraph(f"T-junction: corner {p} inside a segment")

    crossings = _crossing_points(g)
    for d in g.dots:
        if d in crossings:
            raise errors.DotOnCrossing(f"dot at crossing {d}")
        if not any(_on_segment(d, seg) for _, _, seg in segs):
            raise errors.InvalidGraph(f"dot {d} not on any curve")


def _crossing_points(g: DottedGraph) -> dict[Pt, tuple]:
    """point -> ((curve,seg) of horizontal strand, (curve,seg) of vertical)."""
    segs = all_segments(g)
    found: dict[Pt, tuple] = {}
    for i in range(len(segs)):
        ci, si, s1 = segs[i]
        v1 = s1[0][0] == s1[1][0]
        for j in range(i + 1, len(segs)):
            cj, sj, s2 = segs[j]
            v2 = s2[0][0] == s2[1][0]
            if v1 == v2:
                continue
            hs, vs = ((cj, sj, s2), (ci, si, s1)) if v1 else ((ci, si, s1), (cj, sj, s2))
            hseg, vseg = hs[2], vs[2]
            p = (vseg[0][0], hseg[0][1])
            if _interior(p, hseg) and _interior(p, vseg):
                if p in found:
                    raise errors.InvalidGraph(f"triple point at {p}")
                found[p] = ((hs[0], hs[1]), (vs[0], vs[1]))
    return found


# ----------------------------------------------------------------- arcs --

@dataclass(frozen=True)
class Arc:
    curve: int
    path: tuple[Pt, ...]        # open arcs: crossing -> crossing; closed: corner cycle
    closed: bool
    dots: tuple[Pt, ...]

    @property
    def key(self):
        return (self.curve, self.path, self.closed)

    @property
    def start(self) -> Pt:
        return self.path[0]

    @property
    def end(self) -> Pt:
        return self.path[-1]

    @property
    def start_dir(self) -> Pt:
        return _direction(self.path[0], self.path[1])

    @property
    def end_dir(self) -> Pt:
        return _direction(self.path[-2], self.path[-1])


@dataclass(frozen=True)
class ComponentCert:
    kind: str                    # "circle" | "loop"
    curve: int
    arcs: tuple
    boundary: tuple[Pt, ...]     # embedded closed polyline (apex corner included)
    disk_faces: frozenset[int]
    apex: Pt | None
    orientation: int             # winding of the boundary around its disk
    disk_label: int
    outside_label: int


class GraphAnalysis:
    """Everything derived from a dotted graph, computed once."""

    def __init__(self, g: DottedGraph):
        self.g = g
        self.crossings = _crossing_points(g)
        segs = [seg for _, _, seg in all_segments(g)]
        self.arr = Arrangement(segs)
        self.arcs = self._build_arcs()
        self.arcs_by_key = {a.key: a for a in self.arcs}
        self._sides()
        self._arm_map()
        self.circles, self.loops = self._components()

    # labels ---------------------------------------------------------

    def label(self, fid: int) -> int:
        return self.arr.faces[fid].omega

    def face_of_point(self, p: Pt) -> int:
        return self.arr.face_of_point(p)

    # arcs -----------------------------------------------------------

    def _build_arcs(self) -> list[Arc]:
        g = self.g
        arcs: list[Arc] = []
        cross_on: dict[tuple[int, int], list[Pt]] = {}
        for p, ((hc, hi), (vc, vi)) in self.crossings.items():
            cross_on.setdefault((hc, hi), []).append(p)
            cross_on.setdefault((vc, vi), []).append(p)
        for ci, curve in enumerate(g.curves):
            n = len(curve)
            seg_start = [0] * n          # scalar start offset of each segment
            run = 0
            for si in range(n):
                seg_start[si] = run
                a, b = curve[si], curve[(si + 1) % n]
                run += abs(b[0] - a[0]) + abs(b[1] - a[1])
            perimeter = run

            def scalar(si: int, p: Pt) -> int:
                a = curve[si]
                return seg_start[si] + abs(p[0] - a[0]) + abs(p[1] - a[1])

            cuts: list[tuple[int, Pt]] = []
            for si in range(n):
                for p in cross_on.get((ci, si), ()):
                    cuts.append((scalar(si, p), p))
            dots_here: list[tuple[int, Pt]] = []
            for d in g.dots:
                pos = self._dot_position(ci, d)
                if pos is not None:
                    dots_here.append((scalar(*pos), d))
            dots_here.sort()
            if not cuts:
                arcs.append(Arc(ci, curve, True, tuple(d for _, d in dots_here)))
                continue
            cuts.sort()
            corner_at = sorted((seg_start[j], j) for j in range(n))
            m = len(cuts)
            for k in range(m):
                sa, ap = cuts[k]
                sb, bp = cuts[(k + 1) % m]
                span = (sb - sa) % perimeter or perimeter
                mids = []
                for off, j in corner_at:
                    rel = (off - sa) % perimeter
                    if 0 < rel < span:
                        mids.append((rel, curve[j]))
                mids.sort()
                path = [ap] + [pt for _, pt in mids] + [bp]
                arc_dots = sorted(((sd - sa) % perimeter, d) for sd, d in dots_here
                                  if ((sd - sa) % perimeter) < span)
                arcs.append(Arc(ci, tuple(path), False,
                                tuple(d for _, d in arc_dots)))
        return arcs

    def _dot_position(self, ci: int, d: Pt):
        curve = self.g.curves[ci]
        n = len(curve)
        for si in range(n):
            seg = (curve[si], curve[(si + 1) % n])
            if _on_segment(d, seg) and d != seg[1]:
                return (si, d)
        return None

    # side faces -------------------------------------------------------

    def _sides(self) -> None:
        self.left_face: dict = {}
        self.right_face: dict = {}
        arr = self.arr
        for a in self.arcs:
            p0, p1 = a.path[0], a.path[1]
            d = _direction(p0, p1)
            if d[0]:   # horizontal first piece
                row = arr.ys.index(p0[1])
                col = arr.xs.index(p0[0]) + (1 if d[0] > 0 else 0)
                north = arr.face_of_cell((col, row + 1))
                south = arr.face_of_cell((col, row))
                left, right = (north, south) if d[0] > 0 else (south, north)
            else:
                col = arr.xs.index(p0[0])
                row = arr.ys.index(p0[1]) + (1 if d[1] > 0 else 0)
                west = arr.face_of_cell((col, row))
                east = arr.face_of_cell((col + 1, row))
                left, right = (west, east) if d[1] > 0 else (east, west)
            self.left_face[a.key] = left
            self.right_face[a.key] = right

    # arms and darts ----------------------------------------------------

    def _arm_map(self) -> None:
        """(crossing, outward direction) -> (arc key, 'out'|'in')."""
        arms: dict[tuple[Pt, Pt], tuple] = {}
        for a in self.arcs:
            if a.closed:
                continue
            arms[(a.start, a.start_dir)] = (a.key, "out")
            d = a.end_dir
            arms[(a.end, (-d[0], -d[1]))] = (a.key, "in")
        self.arms = arms
        for c in self.crossings:
            for d in CCW_DIRS:
                assert (c, d) in arms, f"missing arm {d} at crossing {c}"

    # components --------------------------------------------------------

    def _components(self):
        self_crossing = {hc for (hc, _), (vc, _) in self.crossings.values() if hc == vc}
        circles = []
        for ci, curve in enumerate(self.g.curves):
            if ci in self_crossing:
                continue
            arcs = tuple(a.key for a in self.arcs if a.curve == ci)
            cert = self._certify(kind="circle", curve=ci, arcs=arcs,
                                 boundary=curve, apex=None)
            if cert is not None:
                circles.append(cert)
        loops = []
        for c, ((hc, hi), (vc, vi)) in sorted(self.crossings.items()):
            if hc != vc:
                continue
            for out_dir in self._passage_dirs(c):
                chain = self._excursion(c, out_dir)
                if chain is None:
                    continue
                boundary = self._chain_boundary(chain)
                cert = self._certify(kind="loop", curve=hc,
                                     arcs=tuple(a.key for a in chain),
                                     boundary=boundary, apex=c)
                if cert is not None:
                    loops.append(cert)
        circles.sort(key=lambda c: (c.curve,))
        loops.sort(key=lambda c: (c.apex, c.boundary))
        return circles, loops

    def _passage_dirs(self, c: Pt) -> list[Pt]:
        (hc, hi), (vc, vi) = self.crossings[c]
        hseg = curve_segments(self.g.curves[hc])[hi]
        vseg = curve_segments(self.g.curves[vc])[vi]
        return [_direction(*hseg), _direction(*vseg)]

    def _excursion(self, c: Pt, out_dir: Pt):
        """Arcs from leaving c along out_dir until first return to c, or None
        if the walk returns on its own passage or revisits a crossing."""
        first = self.arms.get((c, out_dir))
        if first is None or first[1] != "out":
            return None
        chain = [self.arcs_by_key[first[0]]]
        seen_cross: set[Pt] = set()
        while chain[-1].end != c:
            q = chain[-1].end
            if q in seen_cross:
                return None
            seen_cross.add(q)
            nxt = self.arms.get((q, chain[-1].end_dir))
            if nxt is None or nxt[1] != "out":
                return None
            chain.append(self.arcs_by_key[nxt[0]])
            if len(chain) > len(self.arcs):
                return None
        # must return on the other passage (perpendicular arrival)
        if chain[-1].end_dir[0] != 0 and out_dir[0] != 0:
            return None
        if chain[-1].end_dir[1] != 0 and out_dir[1] != 0:
            return None
        return chain

    def _chain_boundary(self, chain) -> tuple[Pt, ...]:
        pts: list[Pt] = []
        for a in chain:
            pts.extend(a.path[:-1])
        return tuple(pts)

    def _certify(self, kind, curve, arcs, boundary, apex):
        segs = curve_segments(boundary)
        try:
            for i in range(len(boundary)):
                _direction(boundary[i], boundary[(i + 1) % len(boundary)])
        except errors.InvalidGraph:
            return None
        # embedded?
        if len(set(boundary)) != len(boundary):
            return None
        if kind == "loop":
            # the loop's own arms at the apex, and the disk-side quadrant check
            first = self.arcs_by_key[arcs[0]]
            last = self.arcs_by_key[arcs[-1]]
            out_dir = first.start_dir
            ed = last.end_dir
            in_dir = (-ed[0], -ed[1])
            quad = (2 * apex[0] + out_dir[0] + in_dir[0],
                    2 * apex[1] + out_dir[1] + in_dir[1])
            if winding_2x(quad, segs) == 0:
                return None
            for d in CCW_DIRS:
                if d in (out_dir, in_dir):
                    continue
                t = (2 * apex[0] + d[0], 2 * apex[1] + d[1])
                if winding_2x(t, segs) != 0:
                    return None
        disk = frozenset(f.index for f in self.arr.faces
                         if winding_2x(f.sample2, segs) != 0)
        if not disk:
            return None
        first = self.arcs_by_key[arcs[0]]
        lf, rf = self.left_face[first.key], self.right_face[first.key]
        sample = self.arr.faces[next(iter(disk))].sample2
        orientation = winding_2x(sample, segs)
        assert orientation in (-1, 1)
        if lf in disk and rf not in disk:
            disk_label, outside_label = self.label(lf), self.label(rf)
        elif rf in disk and lf not in disk:
            disk_label, outside_label = self.label(rf), self.label(lf)
        else:
            # ambiguous adjacency cannot happen for embedded boundaries
            return None
        return ComponentCert(kind, curve, arcs, boundary, disk, apex,
                             orientation, disk_label, outside_label)


@lru_cache(maxsize=4096)
def analyze(g: DottedGraph) -> GraphAnalysis:
    return GraphAnalysis(g)


# ------------------------------------------------------------ operations

def associate(p: G.LatticePolytope) -> DottedGraph:
    """The dotted graph of a polytope: boundary curves dotted at the
    non-isolated initial vertices."""
    iso = G.isolated_vertices(p)
    curves = [tuple((q.x, q.y) for q in cyc) for cyc in G.boundary_cycles(p)]
    dots = [(q.x, q.y) for q in sorted(p.ver0.points - iso)]
    return DottedGraph.build(curves, dots)


def find_components(g: DottedGraph) -> list[ComponentCert]:
    an = analyze(g)
    return list(an.circles) + list(an.loops)


def is_admissible_sufficient(g: DottedGraph) -> bool:
    """True when every arc carries at least two dots (sufficient only)."""
    return all(len(a.dots) >= 2 for a in analyze(g).arcs)


# ------------------------------------------------- canonical form / E+I --

def equivalent_mod_E_I(g1: DottedGraph, g2: DottedGraph) -> bool:
    """Equality of labeled combinatorial maps with dot counts collapsed to
    flags: invariant under ambient isotopy and deformation I."""
    return canonical_form(g1) == canonical_form(g2)


@lru_cache(maxsize=16384)
def canonical_form(g: DottedGraph) -> str:
    an = analyze(g)
    nodes: list = []
    color: dict = {}

    def add(key, col):
        nodes.append(key)
        color[key] = col

    for f in an.arr.faces:
        add(("F", f.index), ("F", f.omega, f.unbounded))
    for a in an.arcs:
        add(("A", a.key), ("A", bool(a.dots), a.closed))
    for c in sorted(an.crossings):
        add(("C", c), ("C",))
        for d in CCW_DIRS:
            add(("D", c, d), ("D",))

    edges: list[tuple[str, tuple, tuple]] = []
    for c in sorted(an.crossings):
        for i, d in enumerate(CCW_DIRS):
            nd = CCW_DIRS[(i + 1) % 4]
            edges.append(("r", ("D", c, d), ("D", c, nd)))
            edges.append(("c", ("D", c, d), ("C", c)))
            arc_key, role = an.arms[(c, d)]
            edges.append(("t" if role == "out" else "h",
                          ("A", arc_key), ("D", c, d)))
    for a in an.arcs:
        edges.append(("l", ("A", a.key), ("F", an.left_face[a.key])))
        edges.append(("g", ("A", a.key), ("F", an.right_face[a.key])))

    idx = {k: i for i, k in enumerate(nodes)}
    n = len(nodes)
    adj: list[list[tuple[str, str, int]]] = [[] for _ in range(n)]
    for et, a, b in edges:
        adj[idx[a]].append((et, "o", idx[b]))
        adj[idx[b]].append((et, "i", idx[a]))
    init = [color[k] for k in nodes]

    def refine(cols: list[int]) -> list[int]:
        while True:
            keys = [(cols[v], tuple(sorted((et, d, cols[u]) for et, d, u in adj[v])))
                    for v in range(n)]
            ranking = {k: r for r, k in enumerate(sorted(set(keys)))}
            new = [ranking[k] for k in keys]
            if new == cols:
                return cols
            cols = new

    def compress(vals: list) -> list[int]:
        ranking = {k: r for r, k in enumerate(sorted(set(vals)))}
        return [ranking[v] for v in vals]

    def encode(cols: list[int]) -> str:
        order = sorted(range(n), key=lambda v: cols[v])
        pos = {v: i for i, v in enumerate(order)}
        parts = [repr(init[v]) for v in order]
        es = sorted((et, pos[idx[a]], pos[idx[b]]) for et, a, b in edges)
        return "|".join(parts) + "#" + ";".join(f"{t}{x},{y}" for t, x, y in es)

    def canon(cols: list[int]) -> str:
        cols = refine(cols)
        groups: dict[int, list[int]] = {}
        for v in range(n):
            groups.setdefault(cols[v], []).append(v)
        multi = [c for c, vs in groups.items() if len(vs) > 1]
        if not multi:
            return encode(cols)
        target = min(multi)
        best = None
        for v in groups[target]:
            trial = list(cols)
            trial[v] = n + 1
            enc = canon(compress(trial))
            if best is None or enc < best:
                best = enc
        return best

    return canon(compress([repr(c) for c in init]))


# ----------------------------------------------------- coordinate maps --

def transform_coords(g: DottedGraph, fx, fy) -> DottedGraph:
    curves = [tuple((fx[x], fy[y]) for x, y in c) for c in g.curves]
    dots = [(fx[x], fy[y]) for x, y in g.dots]
    return DottedGraph.build(curves, dots)


def coordinate_values(g: DottedGraph) -> tuple[list[int], list[int]]:
    xs, ys = set(), set()
    for c in g.curves:
        for x, y in c:
            xs.add(x)
            ys.add(y)
    for x, y in g.dots:
        xs.add(x)
        ys.add(y)
    return sorted(xs), sorted(ys)


def renormalize(g: DottedGraph) -> tuple[DottedGraph, dict, dict]:
    """Compress coordinates to 0..k preserving order (an ambient isotopy)."""
    xs, ys = coordinate_values(g)
    fx = {x: i for i, x in enumerate(xs)}
    fy = {y: i for i, y in enumerate(ys)}
    return transform_coords(g, fx, fy), fx, fy


def scaled(g: DottedGraph, k: int) -> DottedGraph:
    xs, ys = coordinate_values(g)
    return transform_coords(g, {x: k * x for x in xs}, {y: k * y for y in ys})


def normalized(g: DottedGraph) -> DottedGraph:
    return renormalize(g)[0]


# ------------------------------------------------------------- realize --

REALIZE_SCALE = 16


def realize(g: DottedGraph) -> G.LatticePolytope:
    """Construct a lattice polytope whose associated dotted graph is
    equivalent (mod isotopy and dot merging) to ``g``.

    Keeps the given embedding: crossings stay put on a coarse grid, arcs are
    re-dotted at their vertical-to-horizontal corners (padding staircase
    jogs until every arc has at least two), and finally every segment is
    jittered onto its own coordinate line so the distinctness condition
    holds.
    """
    if g.is_empty():
        return G.validate_polytope([], [])
    an = analyze(g)
    for a in an.arcs:
        if len(a.dots) < 2:
            raise errors.UndottedArc(f"arc with fewer than two dots: {a.path[:2]}...")

    work = scaled(renormalize(g)[0], REALIZE_SCALE)
    work = _pad_jogs(work)
    work = _jitter_lines(work)

    ver0: list[Pt] = []
    ver1: list[Pt] = []
    for curve in work.curves:
        n = len(curve)
        for i in range(n):
            din = _direction(curve[(i - 1) % n], curve[i])
            dout = _direction(curve[i], curve[(i + 1) % n])
            if din[0] == 0 and dout[1] == 0:      # vertical in, horizontal out
                ver0.append(curve[i])
            else:
                ver1.append(curve[i])
    p = G.validate_polytope(ver0, ver1)
    realized = {tuple(sorted((s[0], s[1]))) for s in
                (seg for _, _, seg in all_segments(work))}
    derived = {tuple(sorted(((a.x, a.y), (b.x, b.y))))
               for a, b in G.x_edges(p) + G.y_edges(p)}
    if realized != derived:
        raise errors.RoutingFailure("realized boundary does not match the derived edges")
    return p


def _pad_jogs(g: DottedGraph) -> DottedGraph:
    """Insert staircase jogs so every arc owns >= 2 vertical->horizontal
    corners (these become the initial vertices)."""
    an = analyze(g)
    inserts: dict[tuple[int, int], list[tuple[int, list[Pt]]]] = {}
    for a in an.arcs:
        need = 2 - _count_vh_on_arc(a)
        if need <= 0:
            continue
        p, q = _longest_arc_piece(a)
        ci = a.curve
        curve = g.curves[ci]
        n = len(curve)
        si = next(i for i in range(n)
                  if _on_segment(p, (curve[i], curve[(i + 1) % n]))
                  and _on_segment(q, (curve[i], curve[(i + 1) % n])))
        pts = _jog_points(p, q, need)
        a0 = curve[si]
        off = abs(pts[0][0] - a0[0]) + abs(pts[0][1] - a0[1])
        inserts.setdefault((ci, si), []).append((off, pts))
    curves = []
    for ci, curve in enumerate(g.curves):
        n = len(curve)
        out: list[Pt] = []
        for i in range(n):
            out.append(curve[i])
            for _, pts in sorted(inserts.get((ci, i), [])):
                out.extend(pts)
        curves.append(tuple(out))
    return DottedGraph.build(curves, ())


def _count_vh_on_arc(a: Arc) -> int:
    n = len(a.path)
    cnt = 0
    for i in range(n):
        if not a.closed and (i == 0 or i == n - 1):
            continue
        din = _direction(a.path[(i - 1) % n], a.path[i])
        dout = _direction(a.path[i], a.path[(i + 1) % n])
        if din[0] == 0 and dout[1] == 0:
            cnt += 1
    return cnt


def _longest_arc_piece(a: Arc) -> Seg:
    best = None
    best_len = -1
    pts = a.path
    n = len(pts)
    rng = range(n) if a.closed else range(n - 1)
    for i in rng:
        p, q = pts[i], pts[(i + 1) % n]
        ln = abs(p[0] - q[0]) + abs(p[1] - q[1])
        if ln > best_len:
            best, best_len = (p, q), ln
    return best


def _jog_points(p: Pt, q: Pt, need: int) -> list[Pt]:
    """Staircase corner points replacing the middle of the straight run
    p->q; adds ``need`` corners of each turning type.  The bulge is two
    units wide, safe at the working scale."""
    d = _direction(p, q)
    nx, ny = (-d[1], d[0])     # bulge side (left of travel)
    length = abs(q[0] - p[0]) + abs(q[1] - p[1])
    jogs = (need + 1) // 2
    span = 4 * jogs
    assert length >= span + 8, "arc piece too short for jog insertion"
    start_off = (length - span) // 2
    pts: list[Pt] = []
    cx, cy = p[0] + d[0] * start_off, p[1] + d[1] * start_off
    for _ in range(jogs):
        pts.append((cx, cy))
        pts.append((cx + nx * 2, cy + ny * 2))
        pts.append((cx + nx * 2 + d[0] * 2, cy + ny * 2 + d[1] * 2))
        pts.append((cx + d[0] * 2, cy + d[1] * 2))
        cx, cy = cx + d[0] * 4, cy + d[1] * 4
    return pts


def _jitter_lines(g: DottedGraph) -> DottedGraph:
    """Move every segment onto its own coordinate line, preserving the
    arrangement combinatorics (offsets are far below the line gaps)."""
    v_groups: dict[int, list[tuple[int, int, int]]] = {}
    h_groups: dict[int, list[tuple[int, int, int]]] = {}
    seg_line: dict[tuple[int, int], tuple[str, int]] = {}
    for ci, si, ((x1, y1), (x2, y2)) in all_segments(g):
        if x1 == x2:
            v_groups.setdefault(x1, []).append((min(y1, y2), ci, si))
        else:
            h_groups.setdefault(y1, []).append((min(x1, x2), ci, si))
    mult = max([len(v) for v in v_groups.values()] +
               [len(h) for h in h_groups.values()] + [1])
    k = 4 * mult + 8
    for x, items in v_groups.items():
        for off, (_, ci, si) in enumerate(sorted(items)):
            seg_line[(ci, si)] = ("v", k * x + off)
    for y, items in h_groups.items():
        for off, (_, ci, si) in enumerate(sorted(items)):
            seg_line[(ci, si)] = ("h", k * y + off)
    curves = []
    for ci, curve in enumerate(g.curves):
        n = len(curve)
        pts = []
        for i in range(n):
            prev_axis, prev_line = seg_line[(ci, (i - 1) % n)]
            cur_axis, cur_line = seg_line[(ci, i)]
            assert prev_axis != cur_axis
            if cur_axis == "v":
                pts.append((cur_line, prev_line))
            else:
                pts.append((prev_line, cur_line))
        curves.append(tuple(pts))
    return DottedGraph.build(curves, ())
