"""Coupling systems on constraint graphs.

A coupling assigns agree/oppose bits to constraint edges of an ambient
complex; solving, holonomy, hierarchy classification, curvature extension
and defect mobility all live here. Everything is immutable and pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cells import CellComplex, Subcomplex
from .cohomology import RelativeClass, cohomology, connecting, relative_cohomology
from .gf2 import BitVector

AMBIGUITY = "Ambiguity"
CONFLICT = "Conflict"
IMPOSSIBILITY = "Impossibility"
CURVATURE = "Curvature"
INACCESSIBILITY = "Inaccessibility"


@dataclass(frozen=True, eq=False)
class CouplingSystem:
    """Constraint graph G inside an ambient complex, with coupling bits.

    coupling and twist are full edge-length vectors supported on the
    constraint edges; 0 demands agreement across an edge, 1 opposition.
    Pinned vertices carry externally forced states.
    """

    complex: CellComplex
    constraint_edges: tuple[int, ...]
    coupling: BitVector
    twist: BitVector | None = None
    pinned: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n_edges = self.complex.n_edges
        edge_set = set(self.constraint_edges)
        if any(not 0 <= e < n_edges for e in edge_set):
            raise ValueError("constraint edge out of range")
        if self.coupling.length != n_edges:
            raise ValueError("coupling must have one bit per ambient edge")
        if any(e not in edge_set for e in self.coupling.support()):
            raise ValueError("coupling supported outside the constraint graph")
        if self.twist is not None:
            if self.twist.length != n_edges:
                raise ValueError("twist must have one bit per ambient edge")
            if any(e not in edge_set for e in self.twist.support()):
                raise ValueError("twist supported outside the constraint graph")
        for v, b in self.pinned.items():
            if not 0 <= v < self.complex.n_vertices:
                raise ValueError(f"pinned vertex {v} out of range")
            if b not in (0, 1):
                raise ValueError("pinned values are bits")

    @classmethod
    def make(
        cls,
        complex: CellComplex,
        constraint_edges: Iterable[int],
        coupling: Sequence[int] | Mapping[int, int] | BitVector,
        twist: Sequence[int] | Mapping[int, int] | BitVector | None = None,
        pinned: Mapping[int, int] | None = None,
    ) -> CouplingSystem:
        """Build from per-constraint-edge bits (aligned with sorted edges)."""
        edges = tuple(sorted(set(int(e) for e in constraint_edges)))

        def as_full(values) -> BitVector:
            if isinstance(values, BitVector):
                return values
            if isinstance(values, Mapping):
                return BitVector.from_support(
                    complex.n_edges, [e for e, b in values.items() if b & 1]
                )
            vals = list(values)
            if len(vals) != len(edges):
                raise ValueError("one bit per constraint edge expected")
            return BitVector.from_support(
                complex.n_edges, [e for e, b in zip(edges, vals) if b & 1]
            )

        return cls(
            complex,
            edges,
            as_full(coupling),
            as_full(twist) if twist is not None else None,
            dict((int(v), int(b) & 1) for v, b in (pinned or {}).items()),
        )

    def effective_coupling(self) -> BitVector:
        """Coupling XOR twist; the class that governs solvability."""
        if self.twist is None:
            return self.coupling
        return self.coupling + self.twist

    def free_edges(self) -> list[int]:
        g = set(self.constraint_edges)
        return [e for e in range(self.complex.n_edges) if e not in g]

    def constraint_graph(self) -> CellComplex:
        """The constraint graph as a standalone 1-complex (ambient vertices)."""
        return CellComplex.build(
            self.complex.n_vertices,
            [self.complex.edges[e] for e in self.constraint_edges],
        )

    def graph_coupling(self) -> BitVector:
        """Effective coupling reindexed over the constraint graph's edges."""
        return self.effective_coupling().restrict(self.constraint_edges)


def _check_walk(x: CellComplex, walk: Sequence[int], allowed: set[int]) -> list[int]:
    """Vertex sequence of a closed edge-walk inside the allowed edge set."""
    if not walk:
        raise ValueError("empty walk")
    for e in walk:
        if e not in allowed:
            raise ValueError(f"edge {e} leaves the constraint graph")
    for start in x.edges[walk[0]]:
        verts = [start]
        cur = start
        ok = True
        for e in walk:
            u, v = x.edges[e]
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
    raise ValueError("walk is not closed")


def edge_walk_from_vertices(sys: CouplingSystem, vertices: Sequence[int]) -> list[int]:
    """Closed edge-walk through consecutive vertices (lowest edge index wins)."""
    n = len(vertices)
    if n < 2:
        raise ValueError("need at least two vertices")
    g = set(sys.constraint_edges)
    walk = []
    for i in range(n):
        u, v = vertices[i], vertices[(i + 1) % n]
        candidates = [
            e for e in sys.constraint_edges if set(sys.complex.edges[e]) == {u, v}
        ]
        if not candidates:
            raise ValueError(f"no constraint edge joins {u} and {v}")
        walk.append(candidates[0])
    _check_walk(sys.complex, walk, g)
    return walk


def holonomy(sys: CouplingSystem, cycle: Sequence[int]) -> int:
    """XOR of the effective coupling around a closed edge-walk in G."""
    _check_walk(sys.complex, cycle, set(sys.constraint_edges))
    c = sys.effective_coupling()
    out = 0
    for e in cycle:
        out ^= c[e]
    return out


def twist_decompose(sys: CouplingSystem, cycle: Sequence[int]) -> tuple[int, int, int]:
    """(flat holonomy, twist class, total) around a cycle; total = flat ^ twist."""
    _check_walk(sys.complex, cycle, set(sys.constraint_edges))
    flat = 0
    tw = 0
    for e in cycle:
        flat ^= sys.coupling[e]
        if sys.twist is not None:
            tw ^= sys.twist[e]
    return flat, tw, flat ^ tw


@dataclass(frozen=True, eq=False)
class SectionSet:
    """All solutions of the constraint system: base + span(flips)."""

    base: BitVector
    flips: tuple[BitVector, ...]

    @property
    def count(self) -> int:
        return 1 << len(self.flips)

    def sections(self) -> list[BitVector]:
        out = [self.base]
        for f in self.flips:
            out += [s + f for s in out]
        return out

    def contains(self, x: BitVector) -> bool:
        diff = x + self.base
        # reduce against flips (disjoint component supports)
        for f in self.flips:
            if diff.bits & f.bits:
                diff = diff + f
        return not diff


@dataclass(frozen=True, eq=False)
class Infeasibility:
    """Why no section exists: an odd cycle, or clashing pinned transport."""

    kind: str  # "odd_cycle" | "pin_clash"
    cycle: tuple[int, ...] = ()
    path: tuple[int, ...] = ()
    pinned_pair: tuple[int, int] | None = None


class _Transport:
    """BFS transport of states across the constraint graph."""

    def __init__(self, sys: CouplingSystem):
        x = sys.complex
        c = sys.effective_coupling()
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(x.n_vertices)}
        for e in sys.constraint_edges:
            u, v = x.edges[e]
            adj[u].append((v, e))
            adj[v].append((u, e))
        self.adj = {v: sorted(pairs) for v, pairs in adj.items()}
        self.pot = [0] * x.n_vertices
        self.comp = [-1] * x.n_vertices
        self.parent: dict[int, tuple[int, int]] = {}
        self.roots: list[int] = []
        self.non_tree: list[int] = []
        seen = [False] * x.n_vertices
        for root in range(x.n_vertices):
            if seen[root]:
                continue
            cid = len(self.roots)
            self.roots.append(root)
            seen[root] = True
            self.comp[root] = cid
            queue = [root]
            while queue:
                u = queue.pop(0)
                for v, e in self.adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        self.comp[v] = cid
                        self.pot[v] = self.pot[u] ^ c[e]
                        self.parent[v] = (u, e)
                        queue.append(v)
        tree = {e for _, e in self.parent.values()}
        self.tree = tree
        self.non_tree = [e for e in sorted(set(sys.constraint_edges)) if e not in tree]
        self.sys = sys
        self.c = c

    def tree_path_to_root(self, v: int) -> list[tuple[int, int]]:
        """[(vertex, edge-to-parent), ...] from v up to its root."""
        out = []
        while v in self.parent:
            u, e = self.parent[v]
            out.append((v, e))
            v = u
        return out

    def fundamental_cycle(self, e: int) -> list[int]:
        """Closed edge-walk: tree path joining the endpoints of e, plus e."""
        u, v = self.sys.complex.edges[e]
        pu = self.tree_path_to_root(u)
        pv = self.tree_path_to_root(v)
        # strip the shared tail (path near the root)
        while pu and pv and pu[-1] == pv[-1]:
            pu.pop()
            pv.pop()
        walk = [edge for _, edge in reversed(pu)] + [e] + [edge for _, edge in pv]
        return walk

    def shortest_path(self, src: int, dst: int) -> list[int]:
        """Shortest edge path in G, deterministic BFS order."""
        prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
        queue = [src]
        while queue:
            u = queue.pop(0)
            if u == dst:
                break
            for v, e in self.adj[u]:
                if v not in prev:
                    prev[v] = (u, e)
                    queue.append(v)
        path = []
        v = dst
        while v != src:
            u, e = prev[v]
            path.append(e)
            v = u
        return list(reversed(path))


def solve_sections(sys: CouplingSystem) -> SectionSet | Infeasibility:
    """All global sections, or a certificate of infeasibility.

    A state x solves the system when x(u) ^ x(v) equals the effective
    coupling on every constraint edge and x matches every pinned value.
    Infeasibility is certified by an odd-holonomy cycle, or by a path
    between two pinned vertices whose transported values clash.
    """
    t = _Transport(sys)
    for e in t.non_tree:
        u, v = sys.complex.edges[e]
        if t.pot[u] ^ t.pot[v] ^ t.c[e]:
            return Infeasibility("odd_cycle", cycle=tuple(t.fundamental_cycle(e)))
    n_comp = len(t.roots)
    comp_pin: list[tuple[int, int] | None] = [None] * n_comp
    for v in sorted(sys.pinned):
        b = sys.pinned[v]
        cid = t.comp[v]
        want = t.pot[v] ^ b
        if comp_pin[cid] is None:
            comp_pin[cid] = (v, want)
        elif comp_pin[cid][1] != want:
            first = comp_pin[cid][0]
            return Infeasibility(
                "pin_clash",
                path=tuple(t.shortest_path(first, v)),
                pinned_pair=(first, v),
            )
    base_bits = 0
    flips = []
    for cid in range(n_comp):
        members = [v for v in range(sys.complex.n_vertices) if t.comp[v] == cid]
        pin = comp_pin[cid]
        shift = pin[1] if pin is not None else 0
        for v in members:
            if t.pot[v] ^ shift:
                base_bits |= 1 << v
        if pin is None:
            flips.append(BitVector.from_support(sys.complex.n_vertices, members))
    return SectionSet(BitVector(sys.complex.n_vertices, base_bits), tuple(flips))


@dataclass(frozen=True, eq=False)
class Classification:
    """Verdict in the five-level obstruction hierarchy, with its witness."""

    level: str
    witness: tuple[int, ...] | None
    groups: dict[str, int]
    sections: int | None = None
    relative: RelativeClass | None = None
    detail: str = ""


def classify(sys: CouplingSystem, region: Iterable[int] | None = None) -> Classification:
    """Place a system in the hierarchy.

    Absolute verdicts: an odd-holonomy cycle gives Impossibility; clashing
    pinned data on a solvable graph gives Conflict (with the promoted
    relative class); otherwise Ambiguity with the section count. When a
    face region with constrained boundary is supplied and its boundary
    holonomy is odd, the verdict refines to Curvature for that region.
    Inaccessibility belongs to the degree-shifted flux model and is never
    returned here.
    """
    if region is not None:
        region = sorted(set(int(f) for f in region))
        ext = extend_coupling(sys, "zero")
        total = total_curvature(ext, region)
        if total:
            frustrated = [f for f in region if ext.curvature[f]]
            d_sub = Subcomplex.closed(sys.complex, faces=region)
            disc, _, emap, fmap = d_sub.extract()
            chain = BitVector.zeros(disc.n_edges)
            for f in region:
                chain = chain + disc.face_boundary_chain(fmap[f])
            boundary = Subcomplex.closed(disc, edges=chain.support())
            rel = relative_cohomology(disc, boundary, 2)
            mu_local = BitVector.from_support(
                disc.n_faces, [fmap[f] for f in frustrated]
            )
            return Classification(
                CURVATURE,
                witness=tuple(frustrated),
                groups={"H2(D,dD)": rel.dimension},
                relative=RelativeClass(2, mu_local, rel.coordinates(mu_local)),
                detail=f"boundary holonomy 1 forces {len(frustrated)} frustrated face(s)",
            )

    result = solve_sections(sys)
    graph = sys.constraint_graph()
    h1 = cohomology(graph, 1)
    h0 = cohomology(graph, 0)
    groups = {"H0(G)": h0.dimension, "H1(G)": h1.dimension}
    if isinstance(result, Infeasibility):
        if result.kind == "odd_cycle":
            class_coords = h1.coordinates(sys.graph_coupling())
            if not class_coords:
                raise AssertionError("odd cycle found but coupling class is zero")
            detail = f"witness cycle of length {len(result.cycle)}"
            clash = _pin_clash_under_transport(sys)
            if clash is not None:
                detail += f"; pinned vertices {clash[0]} and {clash[1]} also clash"
            return Classification(
                IMPOSSIBILITY,
                witness=result.cycle,
                groups=groups,
                detail=detail,
            )
        rel = _conflict_class(sys)
        u, v = result.pinned_pair
        return Classification(
            CONFLICT,
            witness=result.path,
            groups={**groups, "H1(G,A)": _conflict_group_dim(sys)},
            relative=rel,
            detail=f"pinned vertices {u} and {v} clash along a path of length {len(result.path)}",
        )
    return Classification(
        AMBIGUITY,
        witness=None,
        groups=groups,
        sections=result.count,
        detail=f"{result.count} global section(s)",
    )


def _pin_clash_under_transport(sys: CouplingSystem) -> tuple[int, int] | None:
    """Pinned pair inconsistent under tree transport, ignoring odd cycles."""
    if not sys.pinned:
        return None
    t = _Transport(sys)
    first: dict[int, tuple[int, int]] = {}
    for v in sorted(sys.pinned):
        cid = t.comp[v]
        want = t.pot[v] ^ sys.pinned[v]
        if cid not in first:
            first[cid] = (v, want)
        elif first[cid][1] != want:
            return (first[cid][0], v)
    return None


def _pinned_subcomplex(graph: CellComplex, sys: CouplingSystem) -> Subcomplex:
    return Subcomplex.closed(graph, vertices=sorted(sys.pinned))


def _conflict_group_dim(sys: CouplingSystem) -> int:
    graph = sys.constraint_graph()
    return relative_cohomology(graph, _pinned_subcomplex(graph, sys), 1).dimension


def _conflict_class(sys: CouplingSystem) -> RelativeClass:
    """Relative degree-1 class promoted from incompatible pinned data.

    Gauges the (solvable) coupling away, then pushes the adjusted boundary
    data through the connecting map of the pair (G, pinned vertices).
    """
    unpinned = CouplingSystem(
        sys.complex, sys.constraint_edges, sys.coupling, sys.twist, {}
    )
    base = solve_sections(unpinned)
    if not isinstance(base, SectionSet):
        raise ValueError("conflict class undefined: coupling itself is obstructed")
    graph = sys.constraint_graph()
    a = _pinned_subcomplex(graph, sys)
    data = BitVector.from_support(
        graph.n_vertices,
        [v for v, b in sys.pinned.items() if b ^ base.base[v]],
    )
    return connecting(graph, a, 0, data)


@dataclass(frozen=True, eq=False)
class ExtendedCoupling:
    """Coupling filled in on free edges, with its curvature 2-cochain."""

    system: CouplingSystem
    extension: BitVector  # full edge-length, agrees with coupling on G
    curvature: BitVector  # per-face coboundary of the extension

    def frustrated_faces(self) -> list[int]:
        return self.curvature.support()


def extend_coupling(
    sys: CouplingSystem,
    values: str | Mapping[int, int] | int = "zero",
) -> ExtendedCoupling:
    """Fill free edges: "zero", an explicit {edge: bit} map, or an int seed."""
    free = sys.free_edges()
    ext = sys.effective_coupling()
    if values == "zero":
        fill: dict[int, int] = {}
    elif isinstance(values, Mapping):
        g = set(sys.constraint_edges)
        for e in values:
            if e in g:
                raise ValueError(f"assignment touches constraint edge {e}")
            if e not in set(free):
                raise ValueError(f"edge {e} out of range")
        fill = {int(e): int(b) & 1 for e, b in values.items()}
    elif isinstance(values, int) and not isinstance(values, bool):
        rng = random.Random(values)
        fill = {e: rng.getrandbits(1) for e in free}
    else:
        raise ValueError("values must be 'zero', a mapping, or an int seed")
    ext = ext + BitVector.from_support(
        sys.complex.n_edges, [e for e, b in fill.items() if b]
    )
    mu = sys.complex.coboundary_matrix(1).matvec(ext)
    return ExtendedCoupling(sys, ext, mu)


def total_curvature(ext: ExtendedCoupling, faces: Iterable[int]) -> int:
    """Parity of curvature over a region whose boundary lies in G.

    Equals the coupling holonomy around the region's boundary (discrete
    Stokes); rejects regions whose mod-2 boundary contains free edges.
    """
    x = ext.system.complex
    region = sorted(set(int(f) for f in faces))
    boundary = BitVector.zeros(x.n_edges)
    for f in region:
        boundary = boundary + x.face_boundary_chain(f)
    g = set(ext.system.constraint_edges)
    offenders = [e for e in boundary.support() if e not in g]
    if offenders:
        raise ValueError(f"region boundary leaves the constraint graph on edges {offenders}")
    total = 0
    for f in region:
        total ^= ext.curvature[f]
    boundary_sum = 0
    c = ext.system.effective_coupling()
    for e in boundary.support():
        boundary_sum ^= c[e]
    if total != boundary_sum:
        raise AssertionError("Stokes identity violated")
    return total


def move_defect(ext: ExtendedCoupling, free_edge: int) -> ExtendedCoupling:
    """Toggle the extension on a free edge, hopping curvature across it."""
    if free_edge in set(ext.system.constraint_edges):
        raise ValueError(f"edge {free_edge} is constrained; defects cannot cross it")
    if not 0 <= free_edge < ext.system.complex.n_edges:
        raise ValueError("edge out of range")
    new_ext = ext.extension + BitVector.basis(ext.system.complex.n_edges, free_edge)
    mu = ext.system.complex.coboundary_matrix(1).matvec(new_ext)
    return ExtendedCoupling(ext.system, new_ext, mu)


def delete_vertices(sys: CouplingSystem, vertices: Iterable[int]) -> CouplingSystem:
    """Induced system after removing vertices (and incident edges/faces)."""
    gone = set(int(v) for v in vertices)
    x = sys.complex
    vmap = {}
    for v in range(x.n_vertices):
        if v not in gone:
            vmap[v] = len(vmap)
    emap = {}
    edges = []
    for e, (u, v) in enumerate(x.edges):
        if u not in gone and v not in gone:
            emap[e] = len(edges)
            edges.append((vmap[u], vmap[v]))
    faces = []
    for walk in x.faces:
        if all(e in emap for e in walk):
            faces.append(tuple(emap[e] for e in walk))
    sub = CellComplex.build(len(vmap), edges, faces)
    kept_constraints = [e for e in sys.constraint_edges if e in emap]
    coupling = BitVector.from_support(
        len(edges), [emap[e] for e in kept_constraints if sys.coupling[e]]
    )
    twist = None
    if sys.twist is not None:
        twist = BitVector.from_support(
            len(edges), [emap[e] for e in kept_constraints if sys.twist[e]]
        )
    pinned = {vmap[v]: b for v, b in sys.pinned.items() if v not in gone}
    return CouplingSystem(
        sub, tuple(emap[e] for e in kept_constraints), coupling, twist, pinned
    )
