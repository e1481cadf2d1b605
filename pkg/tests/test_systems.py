"""Coupling systems: holonomy, solving, classification, curvature."""

from __future__ import annotations

import random

import pytest

from bistable.catalog import SystemSpec, build_system
from bistable.cells import CellComplex
from bistable.cohomology import cohomology
from bistable.gf2 import BitVector
from bistable.systems import (
    AMBIGUITY,
    CONFLICT,
    CURVATURE,
    IMPOSSIBILITY,
    CouplingSystem,
    Infeasibility,
    SectionSet,
    classify,
    delete_vertices,
    edge_walk_from_vertices,
    extend_coupling,
    holonomy,
    move_defect,
    solve_sections,
    total_curvature,
    twist_decompose,
)
from conftest import brute_force_sections, random_connected_system


def ring(kind: str, n: int, **kw) -> CouplingSystem:
    return build_system(SystemSpec(kind, {"n": n, **kw}))


class TestHolonomy:
    def test_gear_rings(self):
        assert holonomy(ring("gear_ring", 5), list(range(5))) == 1
        assert holonomy(ring("gear_ring", 6), list(range(6))) == 0

    def test_mobius_cancels(self):
        assert holonomy(ring("mobius_ring", 5), list(range(5))) == 0

    def test_rejects_open_walk(self):
        with pytest.raises(ValueError, match="not closed"):
            holonomy(ring("gear_ring", 5), [0, 1])

    def test_rejects_free_edges(self):
        sys = build_system(SystemSpec("p3_rosette"))
        with pytest.raises(ValueError, match="leaves the constraint graph"):
            holonomy(sys, [0, 5, 6])

    def test_vertex_walk_helper(self):
        sys = ring("gear_ring", 5)
        assert edge_walk_from_vertices(sys, [0, 1, 2, 3, 4]) == [0, 1, 2, 3, 4]


class TestSolveSections:
    def test_even_ring_two_sections(self):
        result = solve_sections(ring("gear_ring", 6))
        assert isinstance(result, SectionSet)
        assert result.count == 2
        states = {s.bits for s in result.sections()}
        assert states == {0b101010, 0b010101}

    def test_necker_pinned_infeasible(self):
        sys = build_system(SystemSpec("necker_path", {"n": 4, "pin": (0, 1)}))
        result = solve_sections(sys)
        assert isinstance(result, Infeasibility)
        assert result.kind == "pin_clash"
        assert result.pinned_pair == (0, 4)
        assert len(result.path) == 4

    def test_rosette_pentagon_certificate(self):
        result = solve_sections(build_system(SystemSpec("p3_rosette")))
        assert isinstance(result, Infeasibility)
        assert result.kind == "odd_cycle"
        assert len(result.cycle) == 5

    def test_matches_brute_force(self):
        rng = random.Random(1234)
        for _ in range(200):
            sys = random_connected_system(rng, max_vertices=12, with_twist=True, with_pins=True)
            oracle = brute_force_sections(sys)
            result = solve_sections(sys)
            if isinstance(result, Infeasibility):
                assert oracle == []
                if result.kind == "odd_cycle":
                    assert holonomy(sys, list(result.cycle)) == 1
            else:
                got = {s.bits for s in result.sections()}
                assert got == set(oracle)

    def test_odd_cycle_beats_pins(self):
        # both defects present: the absolute verdict wins, the clash is noted
        sys = ring("gear_ring", 5)
        # adjacent opposition-coupled gears pinned to the same spin
        pinned = CouplingSystem(sys.complex, sys.constraint_edges, sys.coupling, None, {0: 0, 1: 0})
        result = solve_sections(pinned)
        assert isinstance(result, Infeasibility)
        assert result.kind == "odd_cycle"
        verdict = classify(pinned)
        assert verdict.level == IMPOSSIBILITY
        assert "also clash" in verdict.detail


class TestClassify:
    def test_unpinned_grid_ambiguity(self):
        verdict = classify(build_system(SystemSpec("necker_grid", {"w": 3, "h": 3})))
        assert verdict.level == AMBIGUITY
        assert verdict.sections == 2

    def test_grid_opposite_pinned_regions_conflict(self):
        # two disjoint pinned patches forced to opposite states
        pins = {0: 0, 1: 0, 14: 1, 15: 1}
        verdict = classify(build_system(SystemSpec("necker_grid", {"w": 4, "h": 4, "pins": pins})))
        assert verdict.level == CONFLICT
        assert verdict.relative.coordinates.bits != 0

    def test_lozenge_same_class_pins_conflict(self):
        sys = build_system(SystemSpec("lozenge_patch", {"w": 5, "h": 4, "pins": {0: 0, 4: 1}}))
        verdict = classify(sys)
        assert verdict.level == CONFLICT
        assert verdict.relative is not None
        assert verdict.relative.coordinates.bits != 0

    def test_torus_impossibility(self):
        verdict = classify(build_system(SystemSpec("gear_torus", {"n": 3, "m": 3})))
        assert verdict.level == IMPOSSIBILITY
        assert holonomy(build_system(SystemSpec("gear_torus", {"n": 3, "m": 3})), list(verdict.witness)) == 1

    def test_empty_constraint_graph(self):
        x = CellComplex.build(4, [(0, 1), (1, 2), (2, 3)])
        sys = CouplingSystem(x, (), BitVector.zeros(3))
        verdict = classify(sys)
        assert verdict.level == AMBIGUITY
        assert verdict.sections == 16

    def test_impossibility_iff_nonzero_class(self):
        rng = random.Random(77)
        for _ in range(60):
            sys = random_connected_system(rng, max_vertices=10)
            verdict = classify(sys)
            h1 = cohomology(sys.constraint_graph(), 1)
            coords = h1.coordinates(sys.graph_coupling())
            assert (verdict.level == IMPOSSIBILITY) == bool(coords)

    def test_curvature_with_region(self):
        sys = build_system(SystemSpec("p3_rosette"))
        verdict = classify(sys, region=range(5))
        assert verdict.level == CURVATURE
        assert verdict.groups["H2(D,dD)"] == 1
        assert verdict.relative.coordinates.bits != 0

    def test_flat_region_falls_through(self):
        sys = build_system(SystemSpec("gear_torus", {"n": 3, "m": 3}))
        verdict = classify(sys, region=range(9))  # whole torus: total curvature 0
        assert verdict.level == IMPOSSIBILITY


class TestTwist:
    def test_spinning_ring(self):
        for n in (4, 5, 6, 7):
            sys = ring("spinning_necker_ring", n)
            assert twist_decompose(sys, list(range(n))) == (0, 1, 1)
            assert classify(sys).level == IMPOSSIBILITY

    def test_mobius_seven(self):
        assert twist_decompose(ring("mobius_ring", 7), list(range(7))) == (1, 1, 0)

    def test_planar_even_ring(self):
        sys = ring("gear_ring", 4)
        assert twist_decompose(sys, list(range(4))) == (0, 0, 0)

    def test_absent_twist_counts_zero(self):
        sys = ring("gear_ring", 5)
        flat, tw, total = twist_decompose(sys, list(range(5)))
        assert (flat, tw, total) == (1, 0, 1)


class TestExtension:
    def test_full_skeleton_extension_is_identity(self):
        sys = build_system(SystemSpec("gear_torus", {"n": 3, "m": 3}))
        ext = extend_coupling(sys, "zero")
        assert ext.extension == sys.effective_coupling()

    def test_rosette_total_curvature(self):
        sys = build_system(SystemSpec("p3_rosette"))
        ext = extend_coupling(sys, "zero")
        assert total_curvature(ext, range(5)) == 1

    def test_gear_corner_zero_extension_concentrates(self):
        sys = build_system(SystemSpec("gear_corner", {"k": 3}))
        ext = extend_coupling(sys, "zero")
        frustrated = ext.frustrated_faces()
        sizes = [len(sys.complex.faces[f]) for f in frustrated]
        assert sizes == [3]  # exactly the corner triangle
        assert len(frustrated) % 2 == 1

    def test_assignment_touching_constraints_rejected(self):
        sys = build_system(SystemSpec("p3_rosette"))
        with pytest.raises(ValueError, match="constraint edge"):
            extend_coupling(sys, {0: 1})

    def test_seeded_extension_deterministic(self):
        sys = build_system(SystemSpec("p3_rosette"))
        assert extend_coupling(sys, 9).extension == extend_coupling(sys, 9).extension


class TestTotalCurvature:
    def test_heptagon_face(self):
        sys = build_system(SystemSpec("heptagonal_patch", {"radius": 1}))
        ext = extend_coupling(sys, "zero")
        for f in range(sys.complex.n_faces):
            assert total_curvature(ext, [f]) == 1

    def test_closed_surface_vanishes(self):
        for kind in ("dodecahedral_sphere", "truncated_icosahedral_sphere", "rp2_minimal"):
            sys = build_system(SystemSpec(kind))
            ext = extend_coupling(sys, "zero")
            assert total_curvature(ext, range(sys.complex.n_faces)) == 0

    def test_dodecahedral_pentagon(self):
        sys = build_system(SystemSpec("dodecahedral_sphere"))
        ext = extend_coupling(sys, "zero")
        assert total_curvature(ext, [0]) == 1

    def test_rejects_free_boundary(self):
        sys = build_system(SystemSpec("p3_rosette"))
        ext = extend_coupling(sys, "zero")
        with pytest.raises(ValueError, match="leaves the constraint graph"):
            total_curvature(ext, [0])

    def test_stokes_random_regions_and_extensions(self):
        rng = random.Random(404)
        for kind, params in (
            ("heptagonal_patch", {"radius": 1}),
            ("gear_corner", {"k": 3}),
            ("dodecahedral_sphere", {}),
        ):
            sys = build_system(SystemSpec(kind, params))
            x = sys.complex
            c = sys.effective_coupling()
            for _ in range(50):
                ext = extend_coupling(sys, rng.getrandbits(30))
                region = [f for f in range(x.n_faces) if rng.random() < 0.5]
                boundary = BitVector.zeros(x.n_edges)
                for f in region:
                    boundary = boundary + x.face_boundary_chain(f)
                want = 0
                for e in boundary.support():
                    want ^= c[e]
                assert total_curvature(ext, region) == want

    def test_extension_independence(self):
        sys = build_system(SystemSpec("p3_rosette"))
        values = {total_curvature(extend_coupling(sys, seed), range(5)) for seed in range(20)}
        assert values == {1}


class TestMoveDefect:
    def test_involution(self):
        sys = build_system(SystemSpec("p3_rosette"))
        ext = extend_coupling(sys, "zero")
        again = move_defect(move_defect(ext, 7), 7)
        assert again.extension == ext.extension
        assert again.curvature == ext.curvature

    def test_toggle_flips_incident_faces(self):
        sys = build_system(SystemSpec("p3_rosette"))
        ext = extend_coupling(sys, "zero")
        moved = move_defect(ext, 6)
        diff = (ext.curvature + moved.curvature).support()
        incident = [f for f in range(5) if 6 in sys.complex.faces[f]]
        assert diff == incident
        assert len(diff) == 2

    def test_rejects_constraint_edge(self):
        sys = build_system(SystemSpec("p3_rosette"))
        ext = extend_coupling(sys, "zero")
        with pytest.raises(ValueError, match="constrained"):
            move_defect(ext, 0)

    def test_sphere_parity_preserved(self):
        # free edges on a sphere: drop some constraints from the dodecahedron
        base = build_system(SystemSpec("dodecahedral_sphere"))
        g = tuple(e for e in base.constraint_edges if e >= 6)
        coupling = BitVector.from_support(base.complex.n_edges, [e for e in g])
        sys = CouplingSystem(base.complex, g, coupling)
        ext = extend_coupling(sys, "zero")
        parity = ext.curvature.weight() % 2
        rng = random.Random(5)
        free = sys.free_edges()
        for _ in range(40):
            ext = move_defect(ext, rng.choice(free))
            assert ext.curvature.weight() % 2 == parity

    def test_chain_of_toggles_transports_defect(self):
        # grid disc with constraint graph = boundary cycle, odd coupling on it
        x = build_system(SystemSpec("disc_grid", {"w": 4, "h": 4})).complex
        boundary = x.boundary_edges()
        coupling = BitVector.from_support(x.n_edges, boundary[:1])
        sys = CouplingSystem(x, tuple(boundary), coupling)
        ext = extend_coupling(sys, "zero")
        assert total_curvature(ext, range(x.n_faces)) == 1
        start_faces = ext.frustrated_faces()
        # walk the defect across interior edges and recheck the invariant
        interior = [e for e in range(x.n_edges) if e not in set(boundary)]
        for e in interior[:6]:
            ext = move_defect(ext, e)
            assert total_curvature(ext, range(x.n_faces)) == 1
        assert ext.frustrated_faces() != start_faces or len(interior) < 1


class TestSectionStructure:
    def test_connected_unpinned_pair(self):
        rng = random.Random(9)
        seen = 0
        while seen < 40:
            sys = random_connected_system(rng, max_vertices=10)
            result = solve_sections(sys)
            if isinstance(result, Infeasibility):
                continue
            seen += 1
            assert result.count == 2
            a, b = result.sections()
            assert (a + b).bits == (1 << sys.complex.n_vertices) - 1

    def test_delete_vertices(self):
        sys = build_system(SystemSpec("gear_ring", {"n": 6}))
        smaller = delete_vertices(sys, [0])
        assert smaller.complex.n_vertices == 5
        assert classify(smaller).level == AMBIGUITY
