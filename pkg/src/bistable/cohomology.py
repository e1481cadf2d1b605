"""Absolute and relative cohomology over GF(2), connecting map, cup product.

Relative cochains are full-length vectors constrained to vanish on the
subcomplex (mask projection), so every map stays a plain matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .cells import CellComplex, DeltaComplex, Subcomplex
from .gf2 import BitMatrix, BitVector, kernel_basis, quotient_basis


@dataclass(frozen=True, eq=False)
class CohomologyBasis:
    degree: int
    dimension: int
    representatives: tuple[BitVector, ...]
    coordinates: Callable[[BitVector], BitVector]


@dataclass(frozen=True, eq=False)
class RelativeClass:
    degree: int
    representative: BitVector  # full-length cochain vanishing on the subcomplex
    coordinates: BitVector


def cohomology(x: CellComplex | DeltaComplex, k: int) -> CohomologyBasis:
    """Basis of H^k with representatives and an additive coordinate map."""
    delta_k = x.coboundary_matrix(k)
    cocycles = kernel_basis(delta_k)
    if k == 0:
        coboundaries: list[BitVector] = []
    else:
        lower = x.coboundary_matrix(k - 1)
        coboundaries = [lower.matvec(BitVector.basis(lower.cols, j)) for j in range(lower.cols)]
    q = quotient_basis(cocycles, coboundaries, length=x.n_cells(k))
    return CohomologyBasis(k, q.dimension, q.representatives, q.coordinates)


def _restricted_kernel(matrix: BitMatrix, free_cols: Sequence[int]) -> list[BitVector]:
    """Kernel vectors supported on free_cols, embedded at full length."""
    rows = []
    for r in matrix.rows:
        bits = 0
        for jj, j in enumerate(free_cols):
            if (r >> j) & 1:
                bits |= 1 << jj
        rows.append(bits)
    small = BitMatrix(tuple(rows), len(free_cols))
    out = []
    for v in kernel_basis(small):
        out.append(BitVector.from_support(matrix.cols, [free_cols[i] for i in v.support()]))
    return out


def relative_cohomology(x: CellComplex, a: Subcomplex, k: int) -> CohomologyBasis:
    """H^k(X, A): cohomology of cochains vanishing on the closed subcomplex A."""
    if a.parent is not x:
        raise ValueError("subcomplex belongs to a different complex")
    free_k = [i for i in range(x.n_cells(k)) if i not in a.cells(k)]
    cocycles = _restricted_kernel(x.coboundary_matrix(k), free_k)
    coboundaries: list[BitVector] = []
    if k > 0:
        lower = x.coboundary_matrix(k - 1)
        for j in range(x.n_cells(k - 1)):
            if j not in a.cells(k - 1):
                coboundaries.append(lower.matvec(BitVector.basis(lower.cols, j)))
    q = quotient_basis(cocycles, coboundaries, length=x.n_cells(k))
    return CohomologyBasis(k, q.dimension, q.representatives, q.coordinates)


def is_cocycle_on(a: Subcomplex, cochain: BitVector, k: int) -> bool:
    """Supported on A's k-cells and closed with respect to A's (k+1)-cells."""
    if any(i not in a.cells(k) for i in cochain.support()):
        return False
    if k >= 2:
        return True
    delta = a.parent.coboundary_matrix(k)
    image = delta.matvec(cochain)
    return all(i not in a.cells(k + 1) for i in image.support())


def connecting(x: CellComplex, a: Subcomplex, k: int, class_on_a: BitVector) -> RelativeClass:
    """Promote a k-cocycle on A to its degree-(k+1) relative class.

    Extends by zero off A and applies the coboundary; the resulting class
    does not depend on the choice of extension, and vanishes exactly when
    the input extends to a cocycle on all of X.
    """
    if class_on_a.length != x.n_cells(k):
        raise ValueError("cochain length does not match the complex")
    if not is_cocycle_on(a, class_on_a, k):
        raise ValueError("input is not a cocycle on the subcomplex")
    rep = x.coboundary_matrix(k).matvec(class_on_a)
    coords = relative_cohomology(x, a, k + 1).coordinates(rep)
    return RelativeClass(k + 1, rep, coords)


def cup_product(t: DeltaComplex, alpha: BitVector, beta: BitVector) -> tuple[BitVector, int]:
    """Cup product of two 1-cocycles with its fundamental-class pairing.

    The representative assigns alpha(v0 v1) * beta(v1 v2) to each ordered
    triangle; the pairing sums this over all triangles mod 2 and only
    depends on the cohomology classes. Requires a closed surface (every
    edge in exactly two triangles).
    """
    if not t.is_closed_surface():
        raise ValueError("fundamental class undefined: not a closed surface")
    d1 = t.coboundary_matrix(1)
    for name, z in (("alpha", alpha), ("beta", beta)):
        if z.length != t.n_edges:
            raise ValueError(f"{name} has wrong length")
        if d1.matvec(z):
            raise ValueError(f"{name} is not a cocycle")
    bits = 0
    pairing = 0
    for i, (e01, e12, _e02) in enumerate(t.triangle_edges):
        if alpha[e01] & beta[e12]:
            bits |= 1 << i
            pairing ^= 1
    return BitVector(len(t.triangles), bits), pairing


def spanning_forest(x: CellComplex, edge_subset: Iterable[int]) -> list[int]:
    """BFS spanning forest of the given edges, lowest-index roots first."""
    edges = sorted(edge_subset)
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in edges:
        u, v = x.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    seen: set[int] = set()
    forest: list[int] = []
    for root in sorted(adj):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v, e in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    forest.append(e)
                    queue.append(v)
    return sorted(forest)


def seam(system, spanning_tree: Iterable[int]) -> list[int]:
    """Support of the coupling after gauge-fixing it to zero on the tree.

    Transports vertex labels along the tree so every tree edge agrees; the
    surviving edges form a cocycle representative of the coupling class,
    empty exactly when the class vanishes. Disconnected constraint graphs
    are handled per component (pass a spanning forest).
    """
    x: CellComplex = system.complex
    g_edges = sorted(system.constraint_edges)
    g_set = set(g_edges)
    tree = sorted(set(int(e) for e in spanning_tree))
    if any(e not in g_set for e in tree):
        raise ValueError("tree edge outside the constraint graph")
    comp_g = x.vertex_components(g_edges)
    comp_t = x.vertex_components(tree)
    g_vertices = {v for e in g_edges for v in x.edges[e]}
    part_g = {}
    for v in g_vertices:
        part_g.setdefault(comp_g[v], set()).add(v)
    for group in part_g.values():
        if len({comp_t[v] for v in group}) != 1:
            raise ValueError("edges do not span every component of the constraint graph")
    if len(tree) != sum(len(group) - 1 for group in part_g.values()):
        raise ValueError("edge set is not a spanning forest (cycle present)")

    coupling = system.effective_coupling()
    # transport from the lowest vertex of each tree component
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in tree:
        u, v = x.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    gauge = {}
    for root in sorted(g_vertices):
        if root in gauge:
            continue
        gauge[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v, e in adj.get(u, []):
                if v not in gauge:
                    gauge[v] = gauge[u] ^ coupling[e]
                    stack.append(v)
    out = []
    for e in g_edges:
        u, v = x.edges[e]
        if coupling[e] ^ gauge[u] ^ gauge[v]:
            out.append(e)
    return out
