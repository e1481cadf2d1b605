"""Combinatorial 2-dimensional cell complexes.

A complex stores edges as vertex pairs and faces as closed edge-walks
(cyclic sequences of edge indices, each index traversed once). Walks, not
vertex lists, so that cellulations with parallel edges (small torus grids,
bevel quads) stay representable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import BitMatrix, BitVector


@dataclass(frozen=True, eq=False)
class CellComplex:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...] = ()
    labels: dict = field(default_factory=dict)

    @classmethod
    def build(cls, n_vertices, edges, faces=(), labels=None) -> CellComplex:
        return cls(
            n_vertices,
            tuple((int(u), int(v)) for u, v in edges),
            tuple(tuple(int(e) for e in f) for f in faces),
            dict(labels) if labels else {},
        )

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def n_cells(self, k: int) -> int:
        if k == 0:
            return self.n_vertices
        if k == 1:
            return len(self.edges)
        if k == 2:
            return len(self.faces)
        raise ValueError(f"no {k}-cells in a 2-complex")

    def face_vertex_walk(self, f: int) -> list[int]:
        """Vertex sequence w0..w_{k-1} with walk edge i joining w_i, w_{i+1}.

        Traverses the first edge in its stored orientation; raises if the
        edge sequence is not a closed walk.
        """
        walk = self.faces[f]
        if not walk:
            raise ValueError(f"face {f} is empty")
        for start in self.edges[walk[0]]:
            verts = [start]
            cur = start
            ok = True
            for e in walk:
                u, v = self.edges[e]
                if cur == u:
                    cur = v
                elif cur == v:
                    cur = u
                else:
                    ok = False
                    break
                verts.append(cur)
            if ok and cur == verts[0]:
                return verts[:-1]
        raise ValueError(f"face {f} is not a closed edge-walk")

    def face_boundary_chain(self, f: int) -> BitVector:
        """Mod-2 edge chain of a face (edges traversed an odd number of times)."""
        bits = 0
        for e in self.faces[f]:
            bits ^= 1 << e
        return BitVector(len(self.edges), bits)

    def boundary_matrix(self, k: int) -> BitMatrix:
        """d1: vertices x edges incidence; d2: edges x faces, traversals mod 2."""
        if k == 1:
            rows = [0] * self.n_vertices
            for j, (u, v) in enumerate(self.edges):
                rows[u] ^= 1 << j
                rows[v] ^= 1 << j
            return BitMatrix(tuple(rows), len(self.edges))
        if k == 2:
            rows = [0] * len(self.edges)
            for j in range(len(self.faces)):
                for e in self.face_boundary_chain(j).support():
                    rows[e] |= 1 << j
            return BitMatrix(tuple(rows), len(self.faces))
        raise ValueError("k must be 1 or 2")

    def coboundary_matrix(self, k: int) -> BitMatrix:
        """delta^k as a matrix ((k+1)-cells x k-cells); transpose of boundary."""
        if k == 0:
            return self.boundary_matrix(1).transpose()
        if k == 1:
            return self.boundary_matrix(2).transpose()
        if k == 2:
            return BitMatrix.zeros(0, len(self.faces))
        raise ValueError("k must be 0, 1 or 2")

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.faces)

    def edge_face_count(self) -> list[int]:
        """Number of faces whose walk traverses each edge (with multiplicity)."""
        count = [0] * len(self.edges)
        for f in self.faces:
            for e in f:
                count[e] += 1
        return count

    def boundary_edges(self) -> list[int]:
        """Edges traversed by exactly one face walk."""
        return [e for e, c in enumerate(self.edge_face_count()) if c == 1]

    def vertex_components(self, edge_subset=None) -> list[int]:
        """Component id per vertex under the given edges (default: all)."""
        parent = list(range(self.n_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        edge_iter = range(len(self.edges)) if edge_subset is None else edge_subset
        for e in edge_iter:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        roots = {}
        comp = []
        for v in range(self.n_vertices):
            r = find(v)
            comp.append(roots.setdefault(r, len(roots)))
        return comp

    def validate(self) -> list[str]:
        """All structural invariants; returns violations instead of raising."""
        problems: list[str] = []
        for j, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                problems.append(f"edge {j} endpoint out of range")
            elif u == v:
                problems.append(f"edge {j} is a loop")
        if problems:
            return problems
        for f, walk in enumerate(self.faces):
            if len(walk) == 0:
                problems.append(f"face {f} is empty")
                continue
            if any(not 0 <= e < len(self.edges) for e in walk):
                problems.append(f"face {f} references a missing edge")
                continue
            if len(set(walk)) != len(walk):
                problems.append(f"face {f} repeats an edge")
            try:
                self.face_vertex_walk(f)
            except ValueError:
                problems.append(f"face {f}: open face walk")
        if problems:
            return problems
        d1 = self.boundary_matrix(1)
        for f in range(len(self.faces)):
            if d1.matvec(self.face_boundary_chain(f)):
                problems.append(f"face {f}: boundary of boundary nonzero")
        return problems

    def require_valid(self) -> CellComplex:
        problems = self.validate()
        if problems:
            raise ValueError("invalid complex: " + "; ".join(problems))
        return self


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """Closed subcomplex given by cell masks over a parent complex."""

    parent: CellComplex
    vertices: frozenset[int]
    edge_set: frozenset[int]
    face_set: frozenset[int]

    @classmethod
    def closed(cls, parent: CellComplex, vertices=(), edges=(), faces=()) -> Subcomplex:
        """Close the given cells downward (add boundaries) and wrap."""
        fs = frozenset(int(f) for f in faces)
        es = set(int(e) for e in edges)
        for f in fs:
            es.update(parent.faces[f])
        vs = set(int(v) for v in vertices)
        for e in es:
            u, v = parent.edges[e]
            vs.update((u, v))
        return cls(parent, frozenset(vs), frozenset(es), fs)

    def __post_init__(self) -> None:
        for f in self.face_set:
            if any(e not in self.edge_set for e in self.parent.faces[f]):
                raise ValueError(f"subcomplex not closed: face {f} missing edges")
        for e in self.edge_set:
            u, v = self.parent.edges[e]
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"subcomplex not closed: edge {e} missing endpoints")

    def cells(self, k: int) -> frozenset[int]:
        return (self.vertices, self.edge_set, self.face_set)[k]

    def extract(self) -> tuple[CellComplex, dict[int, int], dict[int, int], dict[int, int]]:
        """Standalone complex plus old->new index maps per degree."""
        vmap = {v: i for i, v in enumerate(sorted(self.vertices))}
        emap = {e: i for i, e in enumerate(sorted(self.edge_set))}
        fmap = {f: i for i, f in enumerate(sorted(self.face_set))}
        edges = [
            (vmap[self.parent.edges[e][0]], vmap[self.parent.edges[e][1]])
            for e in sorted(self.edge_set)
        ]
        faces = [
            tuple(emap[e] for e in self.parent.faces[f]) for f in sorted(self.face_set)
        ]
        return CellComplex.build(len(vmap), edges, faces), vmap, emap, fmap


@dataclass(frozen=True, eq=False)
class DeltaComplex:
    """Triangulated complex with a global vertex order.

    Triangles are ordered vertex triples (v0 < v1 < v2) carrying explicit
    edge indices; distinct parallel edges may share endpoints (fan diagonals
    from different faces are separate cells).
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]
    triangle_edges: tuple[tuple[int, int, int], ...]  # (e01, e12, e02) per triangle
    pullback1: BitMatrix  # refined 1-cochain from original 1-cochain
    pullback2: BitMatrix  # refined 2-cochain from original 2-cochain

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def n_cells(self, k: int) -> int:
        return (self.n_vertices, len(self.edges), len(self.triangles))[k]

    def coboundary_matrix(self, k: int) -> BitMatrix:
        if k == 0:
            rows = [(1 << a) | (1 << b) for a, b in self.edges]
            return BitMatrix(tuple(rows), self.n_vertices)
        if k == 1:
            rows = []
            for e01, e12, e02 in self.triangle_edges:
                bits = 0
                for e in (e01, e12, e02):
                    bits ^= 1 << e
                rows.append(bits)
            return BitMatrix(tuple(rows), len(self.edges))
        if k == 2:
            return BitMatrix.zeros(0, len(self.triangles))
        raise ValueError("k must be 0, 1 or 2")

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.triangles)

    def is_closed_surface(self) -> bool:
        count = [0] * len(self.edges)
        for e01, e12, e02 in self.triangle_edges:
            for e in (e01, e12, e02):
                count[e] += 1
        return bool(count) and all(c == 2 for c in count)

    def pullback(self, cochain: BitVector, k: int) -> BitVector:
        if k == 0:
            return cochain
        if k == 1:
            return self.pullback1.matvec(cochain)
        if k == 2:
            return self.pullback2.matvec(cochain)
        raise ValueError("k must be 0, 1 or 2")


def triangulate(x: CellComplex) -> DeltaComplex:
    """Fan-triangulate every face from its lowest-indexed vertex.

    No new vertices; each n-gon contributes n-3 diagonal edges and n-2
    triangles. A 1-cochain pulls back by copying edge values and giving a
    diagonal (pivot, w) the XOR of the original cochain along the face walk
    from the pivot to w; a 2-cochain pulls back onto the final fan triangle.
    Both choices make pullback commute with the coboundary.
    """
    edges: list[tuple[int, int]] = [(min(u, v), max(u, v)) for u, v in x.edges]
    pull1_rows: list[int] = [1 << j for j in range(len(x.edges))]
    triangles: list[tuple[int, int, int]] = []
    triangle_edges: list[tuple[int, int, int]] = []
    pull2_rows: list[int] = []

    for f, walk in enumerate(x.faces):
        verts = x.face_vertex_walk(f)
        n = len(verts)
        if n < 3:
            raise ValueError(f"face {f} has fewer than 3 edges")
        if len(set(verts)) != n:
            raise ValueError(f"face {f}: non-simple face; pre-subdivide")
        pos = verts.index(min(verts))
        verts = verts[pos:] + verts[:pos]
        wedges = list(walk[pos:] + walk[:pos])  # wedges[i] joins verts[i], verts[i+1]
        pivot = verts[0]

        # diagonal (pivot, verts[i]) for i = 2..n-2, valued along the walk
        diag: dict[int, int] = {}
        acc = 0
        for i in range(1, n - 1):
            acc ^= 1 << wedges[i - 1]
            if i >= 2:
                diag[i] = len(edges)
                a, b = pivot, verts[i]
                edges.append((min(a, b), max(a, b)))
                pull1_rows.append(acc)

        def side_edge(i: int) -> int:
            if i == 1:
                return wedges[0]
            if i == n - 1:
                return wedges[n - 1]
            return diag[i]

        for i in range(1, n - 1):
            a, b, c = pivot, verts[i], verts[i + 1]
            e_ab = side_edge(i)  # (pivot, verts[i])
            e_bc = wedges[i]  # (verts[i], verts[i+1])
            e_ac = side_edge(i + 1)  # (pivot, verts[i+1])
            if b < c:
                tri = (a, b, c)
                tes = (e_ab, e_bc, e_ac)
            else:
                tri = (a, c, b)
                tes = (e_ac, e_bc, e_ab)
            triangles.append(tri)
            triangle_edges.append(tes)
            pull2_rows.append(1 << f if i == n - 2 else 0)

    return DeltaComplex(
        x.n_vertices,
        tuple(edges),
        tuple(triangles),
        tuple(triangle_edges),
        BitMatrix(tuple(pull1_rows), len(x.edges)),
        BitMatrix(tuple(pull2_rows), max(len(x.faces), 0)),
    )
