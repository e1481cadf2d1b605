"""Degree-shifted model: edge potentials against prescribed face flux.

States live on edges, constraints on faces; an edge toggle flips the flux
on the incident faces, so the reachable fluxes from a start form a coset
and the class in (relative) degree-2 cohomology is the conserved sector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cells import CellComplex, Subcomplex
from .cohomology import cohomology, relative_cohomology
from .gf2 import BitMatrix, BitVector, solve_affine


@dataclass(frozen=True, eq=False)
class FluxState:
    complex: CellComplex
    mu: BitVector  # one bit per face

    def __post_init__(self) -> None:
        if self.mu.length != self.complex.n_faces:
            raise ValueError("flux must assign one bit per face")


@dataclass(frozen=True, eq=False)
class PotentialResult:
    potential: BitVector | None
    obstruction: BitVector | None  # degree-2 class coordinates when unsolvable

    @property
    def solvable(self) -> bool:
        return self.potential is not None


def _delta1(x: CellComplex) -> BitMatrix:
    return x.coboundary_matrix(1)


def find_potential(x: CellComplex, mu: BitVector | FluxState) -> PotentialResult:
    """Edge cochain A with dA = mu, or the class obstructing one."""
    if isinstance(mu, FluxState):
        mu = mu.mu
    res = solve_affine(_delta1(x), mu)
    if res.solvable:
        return PotentialResult(res.solution, None)
    return PotentialResult(None, sector(x, mu))


def sector(x: CellComplex, mu: BitVector | FluxState) -> BitVector:
    """Degree-2 class coordinates of the flux; on a connected closed
    surface this is the single total-parity bit."""
    if isinstance(mu, FluxState):
        mu = mu.mu
    return cohomology(x, 2).coordinates(mu)


def relative_sector(x: CellComplex, mu: BitVector) -> BitVector:
    """Class of the flux relative to the frozen boundary."""
    boundary = Subcomplex.closed(x, edges=x.boundary_edges())
    return relative_cohomology(x, boundary, 2).coordinates(mu)


@dataclass(frozen=True, eq=False)
class Reachability:
    moves: tuple[int, ...] | None
    invariant: BitVector  # separating class of the difference (zero iff reachable)

    @property
    def reachable(self) -> bool:
        return self.moves is not None


def reachable(
    x: CellComplex,
    mu_from: BitVector,
    mu_to: BitVector,
    boundary_mode: str = "free",
) -> Reachability:
    """Toggle sequence carrying one flux to the other, or the invariant
    separating them.

    Free mode solves over all edges (sectors compared in absolute degree-2
    cohomology); frozen mode forbids boundary edges, moving the invariant
    to the class relative to the boundary.
    """
    if mu_from.length != x.n_faces or mu_to.length != x.n_faces:
        raise ValueError("flux length must match face count")
    if boundary_mode not in ("free", "frozen"):
        raise ValueError("boundary_mode is 'free' or 'frozen'")
    diff = mu_from + mu_to
    d1 = _delta1(x)
    if boundary_mode == "free":
        res = solve_affine(d1, diff)
        if res.solvable:
            return Reachability(tuple(res.solution.support()), sector(x, diff))
        return Reachability(None, sector(x, diff))
    frozen = set(x.boundary_edges())
    interior = [e for e in range(x.n_edges) if e not in frozen]
    rows = []
    for r in d1.rows:
        bits = 0
        for jj, j in enumerate(interior):
            if (r >> j) & 1:
                bits |= 1 << jj
        rows.append(bits)
    res = solve_affine(BitMatrix(tuple(rows), len(interior)), diff)
    if res.solvable:
        return Reachability(
            tuple(interior[i] for i in res.solution.support()),
            relative_sector(x, diff),
        )
    return Reachability(None, relative_sector(x, diff))


@dataclass(frozen=True, eq=False)
class GameSession:
    """Replayable game state: flux = start + d(potential), potential = sum
    of toggled edges. Frozen mode refuses boundary edges."""

    complex: CellComplex
    boundary_mode: str
    start: BitVector
    target: BitVector
    potential: BitVector
    moves: tuple[int, ...] = ()
    board: str = ""

    def __post_init__(self) -> None:
        if self.boundary_mode not in ("free", "frozen"):
            raise ValueError("boundary_mode is 'free' or 'frozen'")
        for v in (self.start, self.target):
            if v.length != self.complex.n_faces:
                raise ValueError("flux length must match face count")
        if self.potential.length != self.complex.n_edges:
            raise ValueError("potential length must match edge count")
        replayed = BitVector.zeros(self.complex.n_edges)
        for e in self.moves:
            replayed = replayed + BitVector.basis(self.complex.n_edges, e)
        if replayed != self.potential:
            raise ValueError("potential does not replay from the move log")

    @property
    def flux(self) -> BitVector:
        return self.start + _delta1(self.complex).matvec(self.potential)

    @property
    def won(self) -> bool:
        return self.flux == self.target

    def toggleable_edges(self) -> list[int]:
        if self.boundary_mode == "free":
            return list(range(self.complex.n_edges))
        frozen = set(self.complex.boundary_edges())
        return [e for e in range(self.complex.n_edges) if e not in frozen]


def new_session(
    x: CellComplex,
    boundary_mode: str = "free",
    start: Sequence[int] | BitVector | None = None,
    target: Sequence[int] | BitVector | None = None,
    board: str = "",
) -> GameSession:
    def as_flux(v) -> BitVector:
        if v is None:
            return BitVector.zeros(x.n_faces)
        if isinstance(v, BitVector):
            return v
        return BitVector.from_bits(int(b) & 1 for b in v)

    return GameSession(
        x, boundary_mode, as_flux(start), as_flux(target),
        BitVector.zeros(x.n_edges), (), board,
    )


def toggle(session: GameSession, edge: int) -> GameSession:
    """Flip the potential on an edge; the incident faces flip with it."""
    if not 0 <= edge < session.complex.n_edges:
        raise ValueError(f"edge {edge} out of range")
    if session.boundary_mode == "frozen" and edge in set(session.complex.boundary_edges()):
        raise ValueError(
            f"edge {edge} lies on the frozen boundary; the class relative to "
            "the boundary is conserved, so boundary toggles are disallowed"
        )
    return GameSession(
        session.complex,
        session.boundary_mode,
        session.start,
        session.target,
        session.potential + BitVector.basis(session.complex.n_edges, edge),
        session.moves + (edge,),
        session.board,
    )


def reset(session: GameSession) -> GameSession:
    return GameSession(
        session.complex, session.boundary_mode, session.start, session.target,
        BitVector.zeros(session.complex.n_edges), (), session.board,
    )


def session_solvable(session: GameSession) -> Reachability:
    """Can the current flux still reach the target under the session rules?"""
    return reachable(session.complex, session.flux, session.target, session.boundary_mode)


def session_sector(session: GameSession) -> BitVector:
    if session.boundary_mode == "frozen" and session.complex.boundary_edges():
        return relative_sector(session.complex, session.flux)
    return sector(session.complex, session.flux)
