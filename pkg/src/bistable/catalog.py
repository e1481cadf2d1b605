"""Deterministic builders for the full catalog of example systems.

Every builder is a pure function of its parameters with fixed indexing
(row-major grids, faces enumerated in construction order), so serialized
output is byte-stable. Vertex display coordinates ride along in labels
and are never consumed by the math.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .cells import CellComplex
from .gf2 import BitVector
from .systems import CouplingSystem


@dataclass(frozen=True)
class SystemSpec:
    kind: str
    params: dict = field(default_factory=dict)


def _round2(pos: Sequence[tuple[float, float]]) -> list[list[float]]:
    return [[round(x, 4), round(y, 4)] for x, y in pos]


def _circle_layout(n: int, radius: float = 1.0) -> list[tuple[float, float]]:
    return [
        (radius * math.cos(2 * math.pi * i / n - math.pi / 2),
         radius * math.sin(2 * math.pi * i / n - math.pi / 2))
        for i in range(n)
    ]


def _face_centroids(x: CellComplex, vpos: Sequence[Sequence[float]]) -> list[tuple[float, float]]:
    out = []
    for f in range(x.n_faces):
        verts = x.face_vertex_walk(f)
        out.append(
            (sum(vpos[v][0] for v in verts) / len(verts),
             sum(vpos[v][1] for v in verts) / len(verts))
        )
    return out


def _tutte_layout(x: CellComplex, outer_face: int = 0, iterations: int = 400) -> tuple[list[tuple[float, float]], list[tuple[float, float]]]:
    """Planar-style layout: outer face pinned to a circle, rest relaxed.

    Iterative neighbor averaging; deterministic. The outer face's glyph is
    pushed outside the disc since its centroid is meaningless.
    """
    outer = x.face_vertex_walk(outer_face)
    pos = [[0.0, 0.0] for _ in range(x.n_vertices)]
    ring = _circle_layout(len(outer))
    fixed = set()
    for v, p in zip(outer, ring):
        pos[v] = [p[0], p[1]]
        fixed.add(v)
    adj: list[list[int]] = [[] for _ in range(x.n_vertices)]
    for u, v in x.edges:
        adj[u].append(v)
        adj[v].append(u)
    for _ in range(iterations):
        for v in range(x.n_vertices):
            if v in fixed or not adj[v]:
                continue
            pos[v][0] = sum(pos[u][0] for u in adj[v]) / len(adj[v])
            pos[v][1] = sum(pos[u][1] for u in adj[v]) / len(adj[v])
    fpos = _face_centroids(x, pos)
    fpos[outer_face] = (1.35, 1.35)
    return [(p[0], p[1]) for p in pos], fpos


def _labels(kind: str, x: CellComplex, vpos, fpos=None, outer=None) -> dict:
    labels = {"name": kind, "vertex_pos": _round2(vpos)}
    if x.n_faces:
        labels["face_pos"] = _round2(fpos if fpos is not None else _face_centroids(x, vpos))
    if outer is not None:
        labels["outer_face"] = outer
    return labels


def _complex_from_vertex_faces(n_vertices: int, face_walks: Sequence[Sequence[int]], labels=None) -> CellComplex:
    """Complex from faces given as vertex cycles; edges deduped by endpoint pair."""
    edge_index: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int]] = []
    faces = []
    for walk in face_walks:
        face = []
        for i, u in enumerate(walk):
            v = walk[(i + 1) % len(walk)]
            key = (min(u, v), max(u, v))
            if key not in edge_index:
                edge_index[key] = len(edges)
                edges.append(key)
            face.append(edge_index[key])
        faces.append(tuple(face))
    return CellComplex.build(n_vertices, edges, faces, labels)


def _ring_complex(n: int, kind: str) -> CellComplex:
    edges = [(i, (i + 1) % n) for i in range(n)]
    return CellComplex.build(n, edges, labels=_labels(kind, CellComplex.build(n, edges), _circle_layout(n)))


def _all_ones(x: CellComplex) -> BitVector:
    return BitVector(x.n_edges, (1 << x.n_edges) - 1 if x.n_edges else 0)


def gear_ring(n: int = 5) -> CouplingSystem:
    """n meshing gears in a ring: opposition on every contact."""
    if n < 3:
        raise ValueError("gear_ring needs n >= 3")
    x = _ring_complex(n, "gear_ring")
    return CouplingSystem(x, tuple(range(n)), _all_ones(x))


def mobius_ring(n: int = 5, twist_edges: Sequence[int] | None = None) -> CouplingSystem:
    """Gear ring whose axis frame flips across the given edges."""
    if n < 3:
        raise ValueError("mobius_ring needs n >= 3")
    x = _ring_complex(n, "mobius_ring")
    twist = [n - 1] if twist_edges is None else [int(e) for e in twist_edges]
    if any(not 0 <= e < n for e in twist):
        raise ValueError("twist edge out of range")
    return CouplingSystem(
        x, tuple(range(n)), _all_ones(x), BitVector.from_support(n, set(twist))
    )


def spinning_necker_ring(n: int = 6) -> CouplingSystem:
    """Agreement ring of spinning elements with one axis half-turn."""
    if n < 3:
        raise ValueError("spinning_necker_ring needs n >= 3")
    x = _ring_complex(n, "spinning_necker_ring")
    return CouplingSystem(
        x, tuple(range(n)), BitVector.zeros(n), BitVector.from_support(n, [n - 1])
    )


def necker_path(n: int = 4, pin: tuple[int, int] = (0, 1)) -> CouplingSystem:
    """Chain of n agreement edges with both endpoints pinned."""
    if n < 1:
        raise ValueError("necker_path needs n >= 1")
    a, b = int(pin[0]) & 1, int(pin[1]) & 1
    edges = [(i, i + 1) for i in range(n)]
    vpos = [(float(i), 0.0) for i in range(n + 1)]
    x = CellComplex.build(n + 1, edges, labels={"name": "necker_path", "vertex_pos": _round2(vpos)})
    return CouplingSystem(x, tuple(range(n)), BitVector.zeros(n), None, {0: a, n: b})


def _grid_complex(w: int, h: int, kind: str) -> CellComplex:
    """h rows x w cols of vertices, unit square faces; row-major ids."""
    if w < 2 or h < 2:
        raise ValueError("grid needs w, h >= 2")

    def vid(i, j):
        return i * w + j

    edges = []
    eidx = {}
    for i in range(h):
        for j in range(w - 1):
            eidx[("h", i, j)] = len(edges)
            edges.append((vid(i, j), vid(i, j + 1)))
    for i in range(h - 1):
        for j in range(w):
            eidx[("v", i, j)] = len(edges)
            edges.append((vid(i, j), vid(i + 1, j)))
    faces = [
        (eidx[("h", i, j)], eidx[("v", i, j + 1)], eidx[("h", i + 1, j)], eidx[("v", i, j)])
        for i in range(h - 1)
        for j in range(w - 1)
    ]
    vpos = [(float(j), float(-i)) for i in range(h) for j in range(w)]
    x = CellComplex.build(h * w, edges, faces)
    return CellComplex.build(h * w, edges, faces, _labels(kind, x, vpos))


def necker_grid(w: int = 4, h: int = 4, pins: Mapping[int, int] | None = None) -> CouplingSystem:
    """Agreement-coupled grid field with arbitrary pinned vertices."""
    x = _grid_complex(w, h, "necker_grid")
    pins = {int(v): int(b) & 1 for v, b in (pins or {}).items()}
    if any(not 0 <= v < w * h for v in pins):
        raise ValueError("pin out of range")
    return CouplingSystem(x, tuple(range(x.n_edges)), BitVector.zeros(x.n_edges), None, pins)


def disc_grid(w: int = 4, h: int = 4) -> CouplingSystem:
    """Plain grid disc; the boundary-mode game board."""
    x = _grid_complex(w, h, "disc_grid")
    return CouplingSystem(x, tuple(range(x.n_edges)), BitVector.zeros(x.n_edges))


def gear_torus(n: int = 3, m: int = 3) -> CouplingSystem:
    """n x m gear mesh on the torus; every grid contact opposes."""
    if n < 2 or m < 2:
        raise ValueError("gear_torus needs n, m >= 2")
    v_count = n * m

    def vid(i, j):
        return (i % n) * m + (j % m)

    edges = []
    for i in range(n):
        for j in range(m):
            edges.append((vid(i, j), vid(i, j + 1)))  # horizontal: index i*m+j
    for i in range(n):
        for j in range(m):
            edges.append((vid(i, j), vid(i + 1, j)))  # vertical: v_count + i*m+j

    def h(i, j):
        return (i % n) * m + (j % m)

    def v(i, j):
        return v_count + (i % n) * m + (j % m)

    faces = [
        (h(i, j), v(i, j + 1), h(i + 1, j), v(i, j))
        for i in range(n)
        for j in range(m)
    ]
    vpos = [(float(j), float(-i)) for i in range(n) for j in range(m)]
    x = CellComplex.build(v_count, edges, faces)
    x = CellComplex.build(v_count, edges, faces, _labels("gear_torus", x, vpos))
    return CouplingSystem(x, tuple(range(x.n_edges)), _all_ones(x))


def lozenge_patch(w: int = 6, h: int = 4, pins: Mapping[int, int] | None = None) -> CouplingSystem:
    """Hexagonal-lattice constraint patch (brick representation), all opposition.

    Vertices sit on an h x w grid; vertical rungs exist where i+j is even,
    so every cycle is even and the graph is bipartite by (i+j) parity.
    """
    if w < 3 or h < 2:
        raise ValueError("lozenge_patch needs w >= 3, h >= 2")

    def vid(i, j):
        return i * w + j

    edges = []
    eidx = {}
    for i in range(h):
        for j in range(w - 1):
            eidx[("h", i, j)] = len(edges)
            edges.append((vid(i, j), vid(i, j + 1)))
    for i in range(h - 1):
        for j in range(w):
            if (i + j) % 2 == 0:
                eidx[("v", i, j)] = len(edges)
                edges.append((vid(i, j), vid(i + 1, j)))
    faces = []
    for i in range(h - 1):
        for j in range(w - 2):
            if (i + j) % 2 == 0:
                faces.append(
                    (
                        eidx[("h", i, j)],
                        eidx[("h", i, j + 1)],
                        eidx[("v", i, j + 2)],
                        eidx[("h", i + 1, j + 1)],
                        eidx[("h", i + 1, j)],
                        eidx[("v", i, j)],
                    )
                )
    vpos = [(float(j), float(-i)) for i in range(h) for j in range(w)]
    x = CellComplex.build(h * w, edges, faces)
    x = CellComplex.build(h * w, edges, faces, _labels("lozenge_patch", x, vpos))
    pins = {int(v): int(b) & 1 for v, b in (pins or {}).items()}
    if any(not 0 <= v < w * h for v in pins):
        raise ValueError("pin out of range")
    return CouplingSystem(x, tuple(range(x.n_edges)), _all_ones(x), None, pins)


def p3_rosette() -> CouplingSystem:
    """Five opposition-linked corners around a disc; spokes are free."""
    ring = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, 5) for i in range(5)]
    edges = ring + spokes
    faces = [(i, 5 + (i + 1) % 5, 5 + i) for i in range(5)]
    vpos = _circle_layout(5) + [(0.0, 0.0)]
    x = CellComplex.build(6, edges, faces)
    x = CellComplex.build(6, edges, faces, _labels("p3_rosette", x, vpos))
    return CouplingSystem(x, tuple(range(5)), BitVector.from_support(10, range(5)))


def heptagonal_patch(radius: int = 1) -> CouplingSystem:
    """Combinatorial heptagonal {7,3} patch grown layer by layer, all opposition."""
    if radius < 1:
        raise ValueError("heptagonal_patch needs radius >= 1")
    faces: list[list[int]] = [list(range(7))]
    face_count = {v: 1 for v in range(7)}
    boundary = list(range(7))
    layer_of = {v: 0 for v in range(7)}
    next_vertex = 7
    for layer in range(1, radius + 1):
        n = len(boundary)
        cuts = [i for i, v in enumerate(boundary) if face_count[v] == 1]
        if not cuts:
            raise AssertionError("no attachment cut points on the boundary")
        paths = []
        for idx, s in enumerate(cuts):
            t = cuts[(idx + 1) % len(cuts)]
            run = []
            i = s
            while True:
                run.append(boundary[i % n])
                if i % n == t % n and run[:-1]:
                    break
                i += 1
            paths.append(run)
        spoke_vertex = {}
        for s in cuts:
            spoke_vertex[boundary[s]] = next_vertex
            next_vertex += 1
        new_boundary = []
        for run in paths:
            t_edges = len(run) - 1
            if t_edges not in (1, 2):
                raise AssertionError(f"unexpected attachment path length {t_edges}")
            fresh = [next_vertex + i for i in range(4 - t_edges)]
            next_vertex += len(fresh)
            u, v = run[0], run[-1]
            walk = run + [spoke_vertex[v]] + list(reversed(fresh)) + [spoke_vertex[u]]
            faces.append(walk)
            for w in run:
                face_count[w] = face_count.get(w, 0) + 1
            for w in (spoke_vertex[u], spoke_vertex[v]):
                face_count[w] = face_count.get(w, 0) + 1
            for w in fresh:
                face_count[w] = 1
            new_boundary.extend([spoke_vertex[u]] + list(fresh))
        for w in new_boundary:
            layer_of[w] = layer
        boundary = new_boundary
    vpos = [(0.0, 0.0)] * next_vertex
    by_layer: dict[int, list[int]] = {}
    for v, l in layer_of.items():
        by_layer.setdefault(l, []).append(v)
    for l, members in by_layer.items():
        ring = _circle_layout(len(members), radius=1.0 + 1.6 * l)
        for v, p in zip(sorted(members), ring):
            vpos[v] = p
    x = _complex_from_vertex_faces(next_vertex, faces)
    x = CellComplex.build(
        x.n_vertices, x.edges, x.faces, _labels("heptagonal_patch", x, vpos)
    )
    return CouplingSystem(x, tuple(range(x.n_edges)), _all_ones(x))


def _icosahedron_faces() -> tuple[int, list[tuple[int, int, int]]]:
    up = [1, 2, 3, 4, 5]
    lo = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        faces.append((0, up[i], up[(i + 1) % 5]))
    for i in range(5):
        faces.append((up[i], up[(i + 1) % 5], lo[i]))
        faces.append((up[(i + 1) % 5], lo[i], lo[(i + 1) % 5]))
    for i in range(5):
        faces.append((11, lo[i], lo[(i + 1) % 5]))
    return 12, faces


def tetrahedron() -> CouplingSystem:
    """Minimal closed triangulated sphere; the small game board."""
    x = _complex_from_vertex_faces(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    vpos, fpos = _tutte_layout(x, outer_face=0)
    x = CellComplex.build(4, x.edges, x.faces, _labels("tetrahedron", x, vpos, fpos, outer=0))
    return CouplingSystem(x, tuple(range(x.n_edges)), BitVector.zeros(x.n_edges))


def icosahedron() -> CouplingSystem:
    """Twenty-face triangulated sphere; the large game board."""
    n, faces = _icosahedron_faces()
    x = _complex_from_vertex_faces(n, faces)
    vpos, fpos = _tutte_layout(x, outer_face=0)
    x = CellComplex.build(n, x.edges, x.faces, _labels("icosahedron", x, vpos, fpos, outer=0))
    return CouplingSystem(x, tuple(range(x.n_edges)), BitVector.zeros(x.n_edges))


def dodecahedral_sphere() -> CouplingSystem:
    """Sphere cellulation with 12 pentagons: the rhombic-triacontahedron
    constraint graph (20 corners, 30 diagonals), all opposition."""
    n_ico, tri = _icosahedron_faces()
    containing: dict[int, list[int]] = {v: [] for v in range(n_ico)}
    for fi, f in enumerate(tri):
        for v in f:
            containing[v].append(fi)

    def share_edge_at(f1: int, f2: int, v: int) -> bool:
        common = set(tri[f1]) & set(tri[f2])
        return v in common and len(common) == 2

    pent_faces = []
    for v in range(n_ico):
        star = containing[v]
        walk = [min(star)]
        while len(walk) < len(star):
            cur = walk[-1]
            nxt = [
                f for f in star
                if f not in walk and share_edge_at(cur, f, v)
            ]
            walk.append(min(nxt))
        pent_faces.append(tuple(walk))
    x = _complex_from_vertex_faces(len(tri), pent_faces)
    vpos, fpos = _tutte_layout(x, outer_face=0)
    x = CellComplex.build(
        x.n_vertices, x.edges, x.faces, _labels("dodecahedral_sphere", x, vpos, fpos, outer=0)
    )
    return CouplingSystem(x, tuple(range(x.n_edges)), _all_ones(x))


def truncated_icosahedral_sphere() -> CouplingSystem:
    """Soccer-ball sphere (12 pentagons, 20 hexagons): the
    rhombic-enneacontahedron constraint graph, all opposition."""
    n_ico, tri = _icosahedron_faces()
    edge_list = sorted({(min(a, b), max(a, b)) for f in tri for a, b in zip(f, (f[1], f[2], f[0]))})
    eid = {e: i for i, e in enumerate(edge_list)}
    flag = {}
    for v in range(n_ico):
        for (a, b), i in eid.items():
            if v in (a, b):
                flag[(v, i)] = len(flag)
    faces = []
    # pentagon at each vertex: cyclically order incident edges via shared faces
    edges_at: dict[int, list[int]] = {v: [] for v in range(n_ico)}
    for (a, b), i in eid.items():
        edges_at[a].append(i)
        edges_at[b].append(i)
    for v in range(n_ico):
        incident = edges_at[v]
        walk = [min(incident)]
        while len(walk) < len(incident):
            cur = walk[-1]
            cur_pair = edge_list[cur]
            nxt = []
            for i in incident:
                if i in walk:
                    continue
                other = edge_list[i]
                # consecutive around v iff some triangle contains v and both edges
                joint = (set(cur_pair) | set(other)) - {v}
                if len(joint) == 2 and tuple(sorted(joint | {v})) in {tuple(sorted(f)) for f in tri}:
                    nxt.append(i)
            walk.append(min(nxt))
        faces.append(tuple(flag[(v, i)] for i in walk))
    # hexagon per triangle, alternating corner and long edges
    for f in tri:
        a, b, c = sorted(f)
        eab, ebc, eac = eid[(a, b)], eid[(b, c)], eid[(a, c)]
        faces.append(
            (
                flag[(a, eab)], flag[(a, eac)],
                flag[(c, eac)], flag[(c, ebc)],
                flag[(b, ebc)], flag[(b, eab)],
            )
        )
    x = _complex_from_vertex_faces(len(flag), faces)
    vpos, fpos = _tutte_layout(x, outer_face=0)
    x = CellComplex.build(
        x.n_vertices, x.edges, x.faces,
        _labels("truncated_icosahedral_sphere", x, vpos, fpos, outer=0),
    )
    return CouplingSystem(x, tuple(range(x.n_edges)), _all_ones(x))


def gear_corner(k: int = 3) -> CouplingSystem:
    """Three k x k quarter-plane gear meshes glued along bevels at a corner.

    Every mesh contact opposes; the corner carries one triangular 2-cell
    whose odd boundary focuses the curvature.
    """
    if k < 1:
        raise ValueError("gear_corner needs k >= 1")

    def vid(t, i, j):
        return t * k * k + i * k + j

    walks = []
    for t in range(3):
        for i in range(k - 1):
            for j in range(k - 1):
                walks.append(
                    (vid(t, i, j), vid(t, i, j + 1), vid(t, i + 1, j + 1), vid(t, i + 1, j))
                )
    for t in range(3):
        u = (t + 1) % 3
        for i in range(k - 1):
            walks.append(
                (vid(t, 0, i), vid(u, i, 0), vid(u, i + 1, 0), vid(t, 0, i + 1))
            )
    walks.append((vid(0, 0, 0), vid(1, 0, 0), vid(2, 0, 0)))
    x = _complex_from_vertex_faces(3 * k * k, walks)
    vpos = []
    for t in range(3):
        ang = -math.pi / 2 + 2 * math.pi * t / 3
        ex = (math.cos(ang), math.sin(ang))
        ang2 = -math.pi / 2 + 2 * math.pi * ((t + 1) % 3) / 3
        ey = (math.cos(ang2), math.sin(ang2))
        for i in range(k):
            for j in range(k):
                s, r = 0.35 + i, 0.35 + j
                vpos.append((s * ex[0] + r * ey[0], s * ex[1] + r * ey[1]))
    x = CellComplex.build(x.n_vertices, x.edges, x.faces, _labels("gear_corner", x, vpos))
    return CouplingSystem(x, tuple(range(x.n_edges)), _all_ones(x))


def rp2_minimal() -> CouplingSystem:
    """Minimal closed non-orientable triangulation: 6 vertices on K6."""
    faces = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
    ]
    x = _complex_from_vertex_faces(6, faces)
    vpos = [(0.0, 0.0)] + _circle_layout(5)
    x = CellComplex.build(6, x.edges, x.faces, _labels("rp2_minimal", x, vpos))
    return CouplingSystem(x, tuple(range(x.n_edges)), _all_ones(x))


_BUILDERS: dict[str, Callable[..., CouplingSystem]] = {
    "gear_ring": gear_ring,
    "gear_torus": gear_torus,
    "mobius_ring": mobius_ring,
    "spinning_necker_ring": spinning_necker_ring,
    "necker_path": necker_path,
    "necker_grid": necker_grid,
    "lozenge_patch": lozenge_patch,
    "p3_rosette": p3_rosette,
    "heptagonal_patch": heptagonal_patch,
    "dodecahedral_sphere": dodecahedral_sphere,
    "truncated_icosahedral_sphere": truncated_icosahedral_sphere,
    "gear_corner": gear_corner,
    "rp2_minimal": rp2_minimal,
    "icosahedron": icosahedron,
    "tetrahedron": tetrahedron,
    "disc_grid": disc_grid,
}


def kinds() -> list[str]:
    return sorted(_BUILDERS)


def build_system(spec: SystemSpec) -> CouplingSystem:
    """Build and validate the system named by the spec."""
    if spec.kind not in _BUILDERS:
        raise ValueError(f"unknown system kind {spec.kind!r}; known: {', '.join(kinds())}")
    try:
        sys = _BUILDERS[spec.kind](**spec.params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {spec.kind}: {exc}") from exc
    problems = sys.complex.validate()
    if problems:
        raise AssertionError(f"builder {spec.kind} produced an invalid complex: {problems}")
    return sys
