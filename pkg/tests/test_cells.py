"""Cell complexes: validation, boundary operators, triangulation."""

from __future__ import annotations

import random

import pytest

from bistable.catalog import SystemSpec, build_system
from bistable.cells import CellComplex, Subcomplex, triangulate
from bistable.cohomology import cohomology
from bistable.gf2 import BitVector


def torus_complex(n: int, m: int) -> CellComplex:
    return build_system(SystemSpec("gear_torus", {"n": n, "m": m})).complex


class TestValidate:
    def test_single_triangle(self):
        x = CellComplex.build(3, [(0, 1), (1, 2), (2, 0)], [(0, 1, 2)])
        assert x.validate() == []

    def test_open_face_walk(self):
        x = CellComplex.build(3, [(0, 1), (1, 2)], [(0, 1)])
        assert any("open face walk" in p for p in x.validate())

    def test_torus_boundary_squared(self):
        x = torus_complex(3, 3)
        assert x.validate() == []
        d1, d2 = x.boundary_matrix(1), x.boundary_matrix(2)
        for f in range(x.n_faces):
            col = d2.matvec(BitVector.basis(x.n_faces, f))
            assert not d1.matvec(col)

    def test_loop_rejected(self):
        x = CellComplex.build(2, [(0, 0)])
        assert any("loop" in p for p in x.validate())

    def test_repeated_edge_in_face(self):
        x = CellComplex.build(2, [(0, 1), (0, 1)], [(0, 0)])
        assert any("repeats an edge" in p for p in x.validate())


class TestBoundaryMatrix:
    def test_single_edge_column(self):
        x = CellComplex.build(3, [(0, 2)])
        d1 = x.boundary_matrix(1)
        assert d1.matvec(BitVector.basis(1, 0)).support() == [0, 2]

    def test_square_face_column(self):
        x = CellComplex.build(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [(0, 1, 2, 3)])
        d2 = x.boundary_matrix(2)
        assert d2.matvec(BitVector.basis(1, 0)).weight() == 4

    def test_icosahedron_dd_zero(self):
        x = build_system(SystemSpec("icosahedron")).complex
        d1, d2 = x.boundary_matrix(1), x.boundary_matrix(2)
        for f in range(x.n_faces):
            assert not d1.matvec(d2.matvec(BitVector.basis(x.n_faces, f)))

    def test_k_out_of_range(self):
        x = CellComplex.build(2, [(0, 1)])
        with pytest.raises(ValueError):
            x.boundary_matrix(3)


class TestEuler:
    def test_icosahedron(self):
        assert build_system(SystemSpec("icosahedron")).complex.euler_characteristic() == 2

    def test_torus(self):
        assert torus_complex(3, 4).euler_characteristic() == 0
        assert torus_complex(2, 2).euler_characteristic() == 0

    def test_dodecahedral_sphere(self):
        x = build_system(SystemSpec("dodecahedral_sphere")).complex
        assert (x.n_vertices, x.n_edges, x.n_faces) == (20, 30, 12)
        assert x.euler_characteristic() == 2


class TestTriangulate:
    def test_triangle_unchanged(self):
        x = CellComplex.build(3, [(0, 1), (1, 2), (2, 0)], [(0, 1, 2)])
        t = triangulate(x)
        assert t.n_triangles == 1
        assert t.n_edges == 3
        c = BitVector.from_bits([1, 0, 1])
        assert t.pullback(c, 1) == c

    def test_square_face(self):
        x = CellComplex.build(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [(0, 1, 2, 3)])
        t = triangulate(x)
        assert t.n_triangles == 2
        assert t.n_edges == 5

    def test_torus_counts(self):
        t = triangulate(torus_complex(3, 3))
        assert (t.n_edges, t.n_triangles) == (27, 18)
        assert t.euler_characteristic() == 0
        assert t.is_closed_surface()

    def test_rejects_nonsimple_face(self):
        # pinched hexagon walk revisits vertex 0
        x = CellComplex.build(
            5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
            [(0, 1, 2, 3, 4, 5)],
        )
        with pytest.raises(ValueError, match="non-simple"):
            triangulate(x)

    def test_pullback_commutes_with_coboundary(self):
        rng = random.Random(2)
        for kind, params in (("gear_torus", {"n": 3, "m": 3}), ("p3_rosette", {}), ("dodecahedral_sphere", {})):
            x = build_system(SystemSpec(kind, params)).complex
            t = triangulate(x)
            d1x = x.coboundary_matrix(1)
            d1t = t.coboundary_matrix(1)
            for _ in range(25):
                c = BitVector(x.n_edges, rng.getrandbits(x.n_edges))
                assert t.pullback(d1x.matvec(c), 2) == d1t.matvec(t.pullback(c, 1))

    def test_pullback_preserves_h1_classes(self):
        x = torus_complex(3, 3)
        t = triangulate(x)
        h1x = cohomology(x, 1)
        h1t = cohomology(t, 1)
        assert h1x.dimension == h1t.dimension == 2
        # induced map on classes is injective (hence iso): coords of pulled
        # representatives span the full space
        images = [h1t.coordinates(t.pullback(rep, 1)) for rep in h1x.representatives]
        assert images[0] != images[1]
        assert images[0].bits and images[1].bits
        # cohomologous inputs stay cohomologous
        d0 = x.coboundary_matrix(0)
        shifted = h1x.representatives[0] + d0.matvec(BitVector.from_support(x.n_vertices, [3]))
        assert h1t.coordinates(t.pullback(shifted, 1)) == images[0]


class TestSubcomplex:
    def test_closure_enforced(self):
        x = CellComplex.build(3, [(0, 1), (1, 2), (2, 0)], [(0, 1, 2)])
        with pytest.raises(ValueError, match="not closed"):
            Subcomplex(x, frozenset({0}), frozenset({0}), frozenset())

    def test_closed_builder_and_extract(self):
        x = torus_complex(3, 3)
        sub = Subcomplex.closed(x, faces=[0, 1])
        assert 0 in sub.face_set and 1 in sub.face_set
        for f in sub.face_set:
            assert set(x.faces[f]) <= sub.edge_set
        piece, vmap, emap, fmap = sub.extract()
        assert piece.validate() == []
        assert piece.n_faces == 2

    def test_boundary_edges(self):
        disc = build_system(SystemSpec("disc_grid", {"w": 3, "h": 3})).complex
        assert len(disc.boundary_edges()) == 8
