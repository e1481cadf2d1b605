"""Shared brute-force oracles and random system generators."""

from __future__ import annotations

import random

from bistable.cells import CellComplex
from bistable.gf2 import BitVector
from bistable.systems import CouplingSystem


def brute_force_sections(sys: CouplingSystem) -> list[int]:
    """All satisfying assignments by enumerating 2^V states (V <= 16)."""
    x = sys.complex
    assert x.n_vertices <= 16
    c = sys.effective_coupling()
    good = []
    for bits in range(1 << x.n_vertices):
        ok = True
        for e in sys.constraint_edges:
            u, v = x.edges[e]
            if ((bits >> u) ^ (bits >> v)) & 1 != c[e]:
                ok = False
                break
        if ok:
            for v, b in sys.pinned.items():
                if (bits >> v) & 1 != b:
                    ok = False
                    break
        if ok:
            good.append(bits)
    return good


def random_connected_system(
    rng: random.Random,
    max_vertices: int = 12,
    with_twist: bool = False,
    with_pins: bool = False,
) -> CouplingSystem:
    """Random connected constraint graph with random coupling bits."""
    n = rng.randint(2, max_vertices)
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    for _ in range(rng.randint(0, n)):
        u, v = rng.sample(range(n), 2)
        if (u, v) not in edges and (v, u) not in edges:
            edges.append((u, v))
    x = CellComplex.build(n, edges)
    m = len(edges)
    coupling = BitVector(m, rng.getrandbits(m))
    twist = BitVector(m, rng.getrandbits(m)) if with_twist and rng.random() < 0.5 else None
    pinned = {}
    if with_pins and rng.random() < 0.5:
        for v in rng.sample(range(n), rng.randint(1, min(3, n))):
            pinned[v] = rng.getrandbits(1)
    return CouplingSystem(x, tuple(range(m)), coupling, twist, pinned)


def random_cycle_walk(sys: CouplingSystem, rng: random.Random, length: int = 8) -> list[int] | None:
    """A random closed edge-walk in the constraint graph, or None."""
    x = sys.complex
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in sys.constraint_edges:
        u, v = x.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    if not adj:
        return None
    start = rng.choice(sorted(adj))
    # random walk, then close it by returning along the same edges
    walk = []
    cur = start
    for _ in range(rng.randint(1, length)):
        nxt, e = rng.choice(adj[cur])
        walk.append(e)
        cur = nxt
    back = []
    pos = start
    trail = []
    pos = start
    for e in walk:
        u, v = x.edges[e]
        pos = v if pos == u else u
        trail.append((pos, e))
    for pos, e in reversed(trail):
        back.append(e)
    return walk + back


def cube_complex() -> CellComplex:
    """Closed quadrangulated sphere with 6 faces (square prism)."""
    faces_by_vertices = [
        (0, 1, 2, 3),
        (4, 5, 6, 7),
        (0, 1, 5, 4),
        (1, 2, 6, 5),
        (2, 3, 7, 6),
        (3, 0, 4, 7),
    ]
    edge_index: dict[tuple[int, int], int] = {}
    edges = []
    faces = []
    for walk in faces_by_vertices:
        face = []
        for i, u in enumerate(walk):
            v = walk[(i + 1) % len(walk)]
            key = (min(u, v), max(u, v))
            if key not in edge_index:
                edge_index[key] = len(edges)
                edges.append(key)
            face.append(edge_index[key])
        faces.append(tuple(face))
    return CellComplex.build(8, edges, faces)
