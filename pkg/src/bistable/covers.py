"""Double covers of constraint graphs, monodromy, and sliding apertures.

A coupling presents a two-sheeted cover: straight lifted edges where it
demands agreement, crossed where it demands opposition. Monodromy of loops
equals coupling holonomy; sliding-window transport makes it visible, and
disjoint window pairs carry the hidden configuration-space torsor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cells import CellComplex
from .cohomology import CohomologyBasis, cohomology
from .gf2 import BitVector
from .systems import CouplingSystem, SectionSet, _check_walk


@dataclass(frozen=True, eq=False)
class DoubleCover:
    """Total space of the cover presented by a coupling (sheet-major ids).

    Lifted vertex s*V + v is sheet s over base vertex v; constraint edge e
    lifts to edges 2i and 2i+1 (i = position of e among constraint edges).
    """

    system: CouplingSystem
    edges: tuple[tuple[int, int], ...]
    base_edge: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return 2 * self.system.complex.n_vertices

    def sheet_of(self, lifted: int) -> int:
        return lifted // self.system.complex.n_vertices

    def base_of(self, lifted: int) -> int:
        return lifted % self.system.complex.n_vertices

    def step(self, lifted: int, base_edge: int) -> int:
        """Follow the lift of a base edge from a lifted endpoint."""
        try:
            i = self.system.constraint_edges.index(base_edge)
        except ValueError:
            raise ValueError(f"edge {base_edge} is not a constraint edge") from None
        for le in (2 * i, 2 * i + 1):
            a, b = self.edges[le]
            if a == lifted:
                return b
            if b == lifted:
                return a
        raise ValueError(f"lifted vertex {lifted} is not over edge {base_edge}")

    def components(self) -> list[int]:
        parent = list(range(self.n_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        roots: dict[int, int] = {}
        return [roots.setdefault(find(v), len(roots)) for v in range(self.n_vertices)]


def build_cover(sys: CouplingSystem) -> DoubleCover:
    """Two copies of every vertex; straight pairs where the coupling is 0,
    crossed pairs where it is 1."""
    if not sys.constraint_edges:
        raise ValueError("constraint graph is empty")
    v_count = sys.complex.n_vertices
    c = sys.effective_coupling()
    lifted = []
    base = []
    for e in sys.constraint_edges:
        u, v = sys.complex.edges[e]
        lifted.append((0 * v_count + u, c[e] * v_count + v))
        lifted.append((1 * v_count + u, (1 ^ c[e]) * v_count + v))
        base += [e, e]
    return DoubleCover(sys, tuple(lifted), tuple(base))


@dataclass(frozen=True, eq=False)
class CoverTriviality:
    trivial: bool
    lifted_components: int
    base_components: int
    sections: SectionSet | None  # all global sections when trivial


def cover_triviality(cover: DoubleCover) -> CoverTriviality:
    """Trivial exactly when every base component lifts to two components.

    Disconnected bases are reported per component: the cover is trivial
    when all components split, and the returned sections then enumerate
    every global section (one independent flip per base component).
    """
    sys = cover.system
    v_count = sys.complex.n_vertices
    base_comp = sys.complex.vertex_components(sys.constraint_edges)
    n_base = max(base_comp) + 1
    lifted_comp = cover.components()
    n_lifted = max(lifted_comp) + 1
    trivial = n_lifted == 2 * n_base
    sections = None
    if trivial:
        base_bits = 0
        flips = []
        for cid in range(n_base):
            members = [v for v in range(v_count) if base_comp[v] == cid]
            anchor_comp = lifted_comp[members[0]]  # component of sheet-0 lift of root
            for v in members:
                if lifted_comp[v] != anchor_comp:
                    base_bits |= 1 << v  # its sheet-0 lift lies elsewhere: section takes sheet 1
            flips.append(BitVector.from_support(v_count, members))
        sections = SectionSet(BitVector(v_count, base_bits), tuple(flips))
    return CoverTriviality(trivial, n_lifted, n_base, sections)


def monodromy(cover: DoubleCover, loop: Sequence[int]) -> int:
    """Sheet reached by lifting a closed base walk from sheet 0."""
    sys = cover.system
    verts = _check_walk(sys.complex, loop, set(sys.constraint_edges))
    lifted = verts[0]  # sheet 0
    for i, e in enumerate(loop):
        lifted = cover.step(lifted, e)
    if cover.base_of(lifted) != verts[0]:
        raise AssertionError("lift did not project back to the basepoint")
    return cover.sheet_of(lifted)


def _ring_order(sys: CouplingSystem) -> tuple[list[int], list[int]]:
    """Cyclic vertex order and aligned edge order of a single-cycle system."""
    x = sys.complex
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in sys.constraint_edges:
        u, v = x.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    if len(adj) != x.n_vertices or len(sys.constraint_edges) != x.n_vertices:
        raise ValueError("base is not a single cycle")
    if any(len(nbrs) != 2 for nbrs in adj.values()):
        raise ValueError("base is not a single cycle")
    order = [min(adj)]
    edges = []
    cur = order[0]
    prev_edge = -1
    while True:
        nxt = min((v, e) for v, e in adj[cur] if e != prev_edge)
        edges.append(nxt[1])
        if nxt[0] == order[0]:
            break
        order.append(nxt[0])
        cur, prev_edge = nxt[0], nxt[1]
    if len(order) != x.n_vertices:
        raise ValueError("base is not a single cycle")
    return order, edges


@dataclass(frozen=True, eq=False)
class Aperture:
    """A contractible window on a ring, displaying one local section.

    order/ring_edges fix the cyclic structure (ring_edges[i] joins order[i]
    and order[i+1]); the window covers order[start .. start+len-1] and
    display holds the shown bit at each window vertex in order.
    """

    system: CouplingSystem
    order: tuple[int, ...]
    ring_edges: tuple[int, ...]
    start: int
    display: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.order)
        k = len(self.display)
        if not 1 <= k < n:
            raise ValueError("window must be nonempty and smaller than the ring")
        c = self.system.effective_coupling()
        for i in range(k - 1):
            e = self.ring_edges[(self.start + i) % n]
            if self.display[i] ^ self.display[i + 1] != c[e]:
                raise ValueError("displayed section violates a window constraint")

    @property
    def window(self) -> tuple[int, ...]:
        n = len(self.order)
        return tuple(self.order[(self.start + i) % n] for i in range(len(self.display)))


def make_aperture(sys: CouplingSystem, start: int = 0, length: int = 1, anchor: int = 0) -> Aperture:
    """Window of the given length whose first vertex displays `anchor`."""
    order, ring_edges = _ring_order(sys)
    n = len(order)
    c = sys.effective_coupling()
    display = [anchor & 1]
    for i in range(length - 1):
        display.append(display[-1] ^ c[ring_edges[(start + i) % n]])
    return Aperture(sys, tuple(order), tuple(ring_edges), start % n, tuple(display))


def slide_aperture(ap: Aperture, direction: int = 1) -> Aperture:
    """Advance the window one vertex; the fresh vertex shows the transported
    value across the edge it entered through, the trailing vertex drops."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    n = len(ap.order)
    k = len(ap.display)
    c = ap.system.effective_coupling()
    if direction == 1:
        lead_edge = ap.ring_edges[(ap.start + k - 1) % n]
        display = ap.display[1:] + (ap.display[-1] ^ c[lead_edge],)
        start = (ap.start + 1) % n
    else:
        start = (ap.start - 1) % n
        lead_edge = ap.ring_edges[start]
        display = (ap.display[0] ^ c[lead_edge],) + ap.display[:-1]
    return Aperture(ap.system, ap.order, ap.ring_edges, start, display)


def circuit_monodromy(sys: CouplingSystem, window_length: int, laps: int = 1) -> tuple[int, list[dict]]:
    """Slide a window `laps` full circuits; returns the flip bit and the
    transport trace (one snapshot per step, for animation export)."""
    ap = make_aperture(sys, 0, window_length)
    n = len(ap.order)
    trace = [{"window": list(ap.window), "display": list(ap.display)}]
    initial = ap.display
    for _ in range(laps * n):
        ap = slide_aperture(ap, 1)
        trace.append({"window": list(ap.window), "display": list(ap.display)})
    flips = {a ^ b for a, b in zip(initial, ap.display)}
    if len(flips) != 1:
        raise AssertionError("window returned in an inconsistent state")
    return flips.pop(), trace


@dataclass(frozen=True, eq=False)
class ConfigTorsor:
    """Disjoint-window-pair configuration graph with its induced cocycle.

    Nodes are unordered pairs of window start positions; moves slide one
    window a single step. An edge is crossed when the move transports the
    display over an opposition constraint XOR when it swaps which window
    is canonically first (the combinatorial shadow of unorderedness).
    """

    n: int
    window: int
    nodes: tuple[tuple[int, int], ...]
    graph: CellComplex
    cocycle: BitVector
    h1: CohomologyBasis
    class_coordinates: BitVector

    def node_id(self, pair: tuple[int, int]) -> int:
        return self.nodes.index((min(pair), max(pair)))


def _windows_disjoint(a: int, b: int, k: int, n: int) -> bool:
    cells_a = {(a + i) % n for i in range(k)}
    cells_b = {(b + i) % n for i in range(k)}
    return not cells_a & cells_b


@dataclass(frozen=True)
class DualApertureConfig:
    """A point of the dual-aperture cover: two disjoint windows plus the
    partition bit saying which window (in canonical start order) displays
    state 0 at its anchor under the opposite-spin rule."""

    n: int
    window: int
    starts: tuple[int, int]
    partition: int

    def __post_init__(self) -> None:
        a, b = self.starts
        if not (0 <= a < b < self.n):
            raise ValueError("starts must be a sorted pair on the ring")
        if not _windows_disjoint(a, b, self.window, self.n):
            raise ValueError("windows overlap")
        if self.partition not in (0, 1):
            raise ValueError("partition is a bit")

    def displays(self) -> tuple[int, int]:
        """Anchor displays of the two windows, always complementary."""
        return (self.partition, self.partition ^ 1)


def transport_config(
    torsor: ConfigTorsor, config: DualApertureConfig, edge: int
) -> DualApertureConfig:
    """Move across a configuration edge, carrying the partition bit."""
    src = torsor.node_id(config.starts)
    u, v = torsor.graph.edges[edge]
    if src == u:
        dst = v
    elif src == v:
        dst = u
    else:
        raise ValueError("edge is not incident to the configuration")
    return DualApertureConfig(
        torsor.n,
        torsor.window,
        torsor.nodes[dst],
        config.partition ^ torsor.cocycle[edge],
    )


def dual_config_torsor(n: int, k: int, coupling: Sequence[int] | None = None) -> ConfigTorsor:
    """Configuration torsor of two disjoint k-windows on an n-ring.

    coupling gives the base ring's bits per ring edge (edge i joins i and
    i+1 mod n); default all-agreement. Requires 2k < n so the windows can
    stay disjoint.
    """
    if 2 * k >= n:
        raise ValueError("need 2k < n for disjoint windows")
    if k < 1:
        raise ValueError("window length must be >= 1")
    base = [0] * n if coupling is None else [int(b) & 1 for b in coupling]
    if len(base) != n:
        raise ValueError("coupling must give one bit per ring edge")

    nodes = [
        (a, b)
        for a in range(n)
        for b in range(a + 1, n)
        if _windows_disjoint(a, b, k, n)
    ]
    node_id = {p: i for i, p in enumerate(nodes)}
    edges: list[tuple[int, int]] = []
    bits: list[int] = []
    seen: set[tuple[int, int]] = set()
    for a, b in nodes:
        src = node_id[(a, b)]
        for mover, fixed in ((a, b), (b, a)):
            for step in (1, -1):
                target = (mover + step) % n
                if not _windows_disjoint(target, fixed, k, n):
                    continue
                pair = (min(target, fixed), max(target, fixed))
                dst = node_id[pair]
                key = (min(src, dst), max(src, dst))
                if key in seen:
                    continue
                seen.add(key)
                crossed_edge = mover % n if step == 1 else target
                transport = base[crossed_edge]
                swap = (mover == min(mover, fixed)) != (target == min(target, fixed))
                edges.append(key)
                bits.append(transport ^ swap)
    graph = CellComplex.build(len(nodes), edges)
    cocycle = BitVector.from_support(len(edges), [i for i, b in enumerate(bits) if b])
    h1 = cohomology(graph, 1)
    return ConfigTorsor(
        n, k, tuple(nodes), graph, cocycle, h1, h1.coordinates(cocycle)
    )


def exchange_loop(torsor: ConfigTorsor) -> list[int]:
    """Closed walk in the configuration graph swapping the two windows.

    Both windows advance forward one step at a time (the rear window waits
    whenever a step would collide) until each occupies the other's start.
    """
    n, k = torsor.n, torsor.window
    a = 0
    b = k + (n - 2 * k) // 2
    start_pair = (min(a, b), max(a, b))
    edge_id = {}
    for i, (u, v) in enumerate(torsor.graph.edges):
        edge_id[(u, v)] = i
        edge_id[(v, u)] = i
    walk = []
    goal_a, goal_b = b, a + n  # b advances past the wrap to a's start
    pos_a, pos_b = a, b
    guard = 0
    while (pos_a, pos_b) != (goal_a, goal_b):
        guard += 1
        if guard > 4 * n:
            raise AssertionError("exchange loop failed to close")
        moved = False
        for which in ("b", "a"):
            if which == "b" and pos_b < goal_b:
                target = pos_b + 1
                if _windows_disjoint(target % n, pos_a % n, k, n):
                    src = node_id_of(torsor, pos_a, pos_b)
                    dst = node_id_of(torsor, pos_a, target)
                    walk.append(edge_id[(src, dst)])
                    pos_b = target
                    moved = True
                    break
            if which == "a" and pos_a < goal_a:
                target = pos_a + 1
                if _windows_disjoint(target % n, pos_b % n, k, n):
                    src = node_id_of(torsor, pos_a, pos_b)
                    dst = node_id_of(torsor, target, pos_b)
                    walk.append(edge_id[(src, dst)])
                    pos_a = target
                    moved = True
                    break
        if not moved:
            raise AssertionError("exchange loop stuck")
    return walk


def node_id_of(torsor: ConfigTorsor, a: int, b: int) -> int:
    a, b = a % torsor.n, b % torsor.n
    return torsor.node_id((min(a, b), max(a, b)))


def config_walk_monodromy(torsor: ConfigTorsor, walk: Sequence[int]) -> int:
    """XOR of the induced cocycle along a closed walk of config-graph edges."""
    out = 0
    for e in walk:
        out ^= torsor.cocycle[e]
    return out
