"""Exact linear algebra over GF(2) with int-bitset rows.

Vectors and matrices are immutable values; every operation is pure and
deterministic (pivot = lowest-index nonzero column), so solver output is
stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class BitVector:
    """A vector over GF(2); addition is coordinatewise XOR."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside declared length")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> BitVector:
        bits = 0
        n = 0
        for v in values:
            if v & 1:
                bits |= 1 << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVector:
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    @classmethod
    def basis(cls, length: int, i: int) -> BitVector:
        return cls.from_support(length, [i])

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __add__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def dot(self, other: BitVector) -> int:
        """Parity of the coordinatewise product."""
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def restrict(self, indices: Sequence[int]) -> BitVector:
        """Project onto the given coordinates, in the given order."""
        return BitVector.from_bits((self.bits >> i) & 1 for i in indices)


@dataclass(frozen=True)
class BitMatrix:
    """Row-major matrix over GF(2); row i is the int bitset rows[i]."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        for r in self.rows:
            if r < 0 or r >> self.cols:
                raise ValueError("row bits outside declared column count")

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> BitMatrix:
        return cls(tuple(0 for _ in range(n_rows)), n_cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int] | BitVector], cols: int | None = None) -> BitMatrix:
        packed: list[int] = []
        width = cols
        for row in rows:
            if isinstance(row, BitVector):
                bits, n = row.bits, row.length
            else:
                bits = 0
                for j, v in enumerate(row):
                    if v & 1:
                        bits |= 1 << j
                n = len(row)
            if width is None:
                width = n
            elif width != n:
                raise ValueError("ragged rows")
            packed.append(bits)
        if width is None:
            raise ValueError("cannot infer column count from empty input")
        return cls(tuple(packed), width)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def transpose(self) -> BitMatrix:
        cols = []
        for j in range(self.cols):
            bits = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    bits |= 1 << i
            cols.append(bits)
        return BitMatrix(tuple(cols), len(self.rows))

    def matvec(self, v: BitVector) -> BitVector:
        if v.length != self.cols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return BitVector(len(self.rows), bits)

    def vecmat(self, y: BitVector) -> BitVector:
        """Row combination y^T M."""
        if y.length != len(self.rows):
            raise ValueError("dimension mismatch")
        bits = 0
        for i in range(len(self.rows)):
            if (y.bits >> i) & 1:
                bits ^= self.rows[i]
        return BitVector(self.cols, bits)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.rows]


def _gauss_jordan(rows: Sequence[int], n_cols: int) -> tuple[list[int], list[int], list[int]]:
    """Full reduction with row-op tracking.

    Returns (work, trans, pivot_cols) where work = T @ input for the
    recorded transform T (trans[i] = bitset of input rows combined into
    work row i), and pivot row k has its pivot in pivot_cols[k].
    """
    work = list(rows)
    trans = [1 << i for i in range(len(rows))]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = None
        for rr in range(r, len(work)):
            if (work[rr] >> c) & 1:
                pivot = rr
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        trans[r], trans[pivot] = trans[pivot], trans[r]
        for rr in range(len(work)):
            if rr != r and (work[rr] >> c) & 1:
                work[rr] ^= work[r]
                trans[rr] ^= trans[r]
        pivot_cols.append(c)
        r += 1
        if r == len(work):
            break
    return work, trans, pivot_cols


def rank(m: BitMatrix) -> int:
    """GF(2) rank."""
    _, _, pivots = _gauss_jordan(m.rows, m.cols)
    return len(pivots)


@dataclass(frozen=True)
class AffineSolution:
    """Outcome of solving M x = b over GF(2).

    Either `solution` is set (with `kernel` a basis of ker M, so the full
    solution set is solution + span(kernel)), or `certificate` is a row
    combination y with y^T M = 0 and y^T b = 1 witnessing infeasibility.
    """

    solution: BitVector | None
    kernel: tuple[BitVector, ...]
    certificate: BitVector | None

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def solve_affine(m: BitMatrix, b: BitVector) -> AffineSolution:
    """Solve M x = b; deterministic particular solution (free vars = 0)."""
    if b.length != m.n_rows:
        raise ValueError(f"rhs length {b.length} != row count {m.n_rows}")
    work, trans, pivot_cols = _gauss_jordan(m.rows, m.cols)
    rhs = [(b.bits >> i) & 1 for i in range(m.n_rows)]
    red_b = [0] * len(work)
    for i in range(len(work)):
        t = trans[i]
        acc = 0
        while t:
            low = t & -t
            acc ^= rhs[low.bit_length() - 1]
            t ^= low
        red_b[i] = acc
    for i in range(len(work)):
        if work[i] == 0 and red_b[i]:
            return AffineSolution(None, (), BitVector(m.n_rows, trans[i]))
    x = 0
    for k, c in enumerate(pivot_cols):
        if red_b[k]:
            x |= 1 << c
    return AffineSolution(BitVector(m.cols, x), tuple(_kernel_from_rref(work, pivot_cols, m.cols)), None)


def _kernel_from_rref(work: Sequence[int], pivot_cols: list[int], n_cols: int) -> list[BitVector]:
    pivot_set = set(pivot_cols)
    basis = []
    for f in range(n_cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for k, c in enumerate(pivot_cols):
            if (work[k] >> f) & 1:
                v |= 1 << c
        basis.append(BitVector(n_cols, v))
    return basis


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of {v : M v = 0}; size = cols - rank."""
    work, _, pivot_cols = _gauss_jordan(m.rows, m.cols)
    return _kernel_from_rref(work, pivot_cols, m.cols)


@dataclass(frozen=True)
class QuotientBasis:
    """Basis of span(Z)/span(B) with an additive coordinate map."""

    representatives: tuple[BitVector, ...]
    coordinates: Callable[[BitVector], BitVector]

    @property
    def dimension(self) -> int:
        return len(self.representatives)


def quotient_basis(z_vectors: Sequence[BitVector], b_vectors: Sequence[BitVector], length: int | None = None) -> QuotientBasis:
    """Representatives of span(Z)/span(B), plus coordinates of any v in span(Z).

    Representatives are the z_i that enlarge span(B + earlier reps), in input
    order. The coordinate map is linear: coords(u + v) = coords(u) ^ coords(v).
    Rejects when span(B) is not contained in span(Z).
    """
    if length is None:
        if z_vectors:
            length = z_vectors[0].length
        elif b_vectors:
            length = b_vectors[0].length
        else:
            raise ValueError("cannot infer vector length")
    for v in list(z_vectors) + list(b_vectors):
        if v.length != length:
            raise ValueError("mixed vector lengths")

    # echelon basis of span(B); reps then extend it greedily
    def reduce_against(bits: int, echelon: list[tuple[int, int]]) -> int:
        for piv, row in echelon:
            if (bits >> piv) & 1:
                bits ^= row
        return bits

    def lowest_set(bits: int) -> int:
        return (bits & -bits).bit_length() - 1

    b_echelon: list[tuple[int, int]] = []
    for v in b_vectors:
        r = reduce_against(v.bits, b_echelon)
        if r:
            b_echelon.append((lowest_set(r), r))
            b_echelon.sort()
    z_echelon: list[tuple[int, int]] = list(b_echelon)
    z_only_rank = 0
    for v in z_vectors:
        r = reduce_against(v.bits, z_echelon)
        if r:
            z_echelon.append((lowest_set(r), r))
            z_echelon.sort()
            z_only_rank += 1
    if len(b_echelon) + z_only_rank != len(z_echelon):
        raise AssertionError("echelon bookkeeping broke")
    # B must lie inside span(Z)
    span_z: list[tuple[int, int]] = []
    for v in z_vectors:
        r = reduce_against(v.bits, span_z)
        if r:
            span_z.append((lowest_set(r), r))
            span_z.sort()
    for v in b_vectors:
        if reduce_against(v.bits, span_z):
            raise ValueError("B is not contained in span(Z)")

    reps: list[BitVector] = []
    # tagged echelon rows: (pivot, row_bits, coord_bits); B rows carry zero tags
    tagged: list[tuple[int, int, int]] = [(p, r, 0) for p, r in b_echelon]

    def reduce_tagged(bits: int) -> tuple[int, int]:
        tag = 0
        for piv, row, t in tagged:
            if (bits >> piv) & 1:
                bits ^= row
                tag ^= t
        return bits, tag

    for v in z_vectors:
        r, tag = reduce_tagged(v.bits)
        if r:
            d = len(reps)
            reps.append(v)
            tagged.append((lowest_set(r), r, tag ^ (1 << d)))
            tagged.sort(key=lambda e: e[0])

    dim = len(reps)

    def coordinates(v: BitVector) -> BitVector:
        if v.length != length:
            raise ValueError("length mismatch")
        r, tag = reduce_tagged(v.bits)
        if r:
            raise ValueError("vector outside span(Z) + span(B)")
        return BitVector(dim, tag)

    return QuotientBasis(tuple(reps), coordinates)
