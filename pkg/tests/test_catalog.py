"""Builder catalog: structural invariants per kind."""

from __future__ import annotations

import networkx as nx
import pytest

from bistable.catalog import SystemSpec, build_system, kinds
from bistable.cohomology import cohomology
from bistable.jsonio import dumps, system_to_dict
from bistable.systems import (
    AMBIGUITY,
    IMPOSSIBILITY,
    classify,
    delete_vertices,
    holonomy,
    solve_sections,
    SectionSet,
)


def as_nx(sys) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(sys.complex.n_vertices))
    for e in sys.constraint_edges:
        u, v = sys.complex.edges[e]
        g.add_edge(u, v)
    return g


ALL_SPECS = [
    SystemSpec("gear_ring", {"n": 5}),
    SystemSpec("gear_ring", {"n": 6}),
    SystemSpec("gear_torus", {"n": 2, "m": 2}),
    SystemSpec("gear_torus", {"n": 3, "m": 3}),
    SystemSpec("mobius_ring", {"n": 7}),
    SystemSpec("spinning_necker_ring", {"n": 5}),
    SystemSpec("necker_path", {"n": 4}),
    SystemSpec("necker_grid", {"w": 3, "h": 4}),
    SystemSpec("lozenge_patch", {"w": 6, "h": 4}),
    SystemSpec("p3_rosette"),
    SystemSpec("heptagonal_patch", {"radius": 1}),
    SystemSpec("heptagonal_patch", {"radius": 2}),
    SystemSpec("dodecahedral_sphere"),
    SystemSpec("truncated_icosahedral_sphere"),
    SystemSpec("gear_corner", {"k": 3}),
    SystemSpec("rp2_minimal"),
    SystemSpec("icosahedron"),
    SystemSpec("tetrahedron"),
    SystemSpec("disc_grid", {"w": 4, "h": 3}),
]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.kind}{s.params}")
def test_every_builder_validates(spec):
    sys = build_system(spec)
    assert sys.complex.validate() == []
    assert set(sys.constraint_edges) <= set(range(sys.complex.n_edges))
    for e in sys.coupling.support():
        assert e in set(sys.constraint_edges)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.kind}{s.params}")
def test_builders_deterministic(spec):
    a = dumps(system_to_dict(build_system(spec)))
    b = dumps(system_to_dict(build_system(spec)))
    assert a == b


class TestGearSystems:
    def test_gear_ring_parity(self):
        for n in range(3, 13):
            verdict = classify(build_system(SystemSpec("gear_ring", {"n": n})))
            assert (verdict.level == IMPOSSIBILITY) == (n % 2 == 1)

    def test_gear_torus_parity_verdicts(self):
        for n in (2, 3, 4):
            for m in (2, 3, 4):
                sys = build_system(SystemSpec("gear_torus", {"n": n, "m": m}))
                verdict = classify(sys)
                bipartite = nx.is_bipartite(as_nx(sys))
                assert (verdict.level == AMBIGUITY) == bipartite
                assert bipartite == (n % 2 == 0 and m % 2 == 0)

    def test_gear_torus_brute_force_up_to_four(self):
        from conftest import brute_force_sections

        for n in (2, 3, 4):
            for m in (2, 3, 4):
                sys = build_system(SystemSpec("gear_torus", {"n": n, "m": m}))
                oracle = brute_force_sections(sys)
                result = solve_sections(sys)
                if isinstance(result, SectionSet):
                    assert {s.bits for s in result.sections()} == set(oracle)
                else:
                    assert oracle == []

    def test_gear_corner_counts(self):
        sys = build_system(SystemSpec("gear_corner", {"k": 3}))
        x = sys.complex
        assert x.n_vertices == 27
        assert x.n_edges == 45
        face_sizes = sorted(len(f) for f in x.faces)
        assert face_sizes == [3] + [4] * 18

    def test_gear_corner_survives_corner_deletion(self):
        sys = build_system(SystemSpec("gear_corner", {"k": 3}))
        assert classify(sys).level == IMPOSSIBILITY
        corners = [0, 9, 18]  # the three gears meeting at the corner
        smaller = delete_vertices(sys, corners)
        assert classify(smaller).level == IMPOSSIBILITY
        assert not nx.is_bipartite(as_nx(smaller))


class TestTilings:
    def test_lozenge_bipartite(self):
        sys = build_system(SystemSpec("lozenge_patch", {"w": 7, "h": 5}))
        assert nx.is_bipartite(as_nx(sys))
        assert classify(sys).level == AMBIGUITY

    def test_lozenge_faces_are_hexagons(self):
        sys = build_system(SystemSpec("lozenge_patch", {"w": 6, "h": 4}))
        assert all(len(f) == 6 for f in sys.complex.faces)

    def test_rosette_counts_and_verdict(self):
        sys = build_system(SystemSpec("p3_rosette"))
        assert sys.complex.n_vertices == 6
        assert sys.complex.n_faces == 5
        assert len(sys.constraint_edges) == 5
        assert classify(sys).level == IMPOSSIBILITY

    def test_heptagonal_radius_one(self):
        sys = build_system(SystemSpec("heptagonal_patch", {"radius": 1}))
        x = sys.complex
        assert (x.n_vertices, x.n_edges, x.n_faces) == (35, 42, 8)
        assert x.euler_characteristic() == 1
        assert all(len(f) == 7 for f in x.faces)

    def test_heptagonal_radius_two_growth(self):
        sys = build_system(SystemSpec("heptagonal_patch", {"radius": 2}))
        x = sys.complex
        assert x.euler_characteristic() == 1
        assert all(len(f) == 7 for f in x.faces)
        # interior vertices (the radius-1 patch) all have three faces
        counts = [0] * x.n_vertices
        for f in range(x.n_faces):
            for v in x.face_vertex_walk(f):
                counts[v] += 1
        assert all(counts[v] == 3 for v in range(35))


class TestSpheres:
    def test_dodecahedral(self):
        sys = build_system(SystemSpec("dodecahedral_sphere"))
        x = sys.complex
        assert (x.n_vertices, x.n_edges, x.n_faces) == (20, 30, 12)
        assert all(len(f) == 5 for f in x.faces)
        for f in range(12):
            assert holonomy(sys, list(x.faces[f])) == 1
        assert classify(sys).level == IMPOSSIBILITY

    def test_truncated_icosahedral(self):
        sys = build_system(SystemSpec("truncated_icosahedral_sphere"))
        x = sys.complex
        assert (x.n_vertices, x.n_edges, x.n_faces) == (60, 90, 32)
        sizes = sorted(len(f) for f in x.faces)
        assert sizes == [5] * 12 + [6] * 20
        for f in range(x.n_faces):
            assert holonomy(sys, list(x.faces[f])) == len(x.faces[f]) % 2
        assert classify(sys).level == IMPOSSIBILITY

    def test_rp2_minimal(self):
        sys = build_system(SystemSpec("rp2_minimal"))
        x = sys.complex
        assert (x.n_vertices, x.n_edges, x.n_faces) == (6, 15, 10)
        assert cohomology(x, 1).dimension == 1
        assert cohomology(x, 2).dimension == 1

    def test_platonic_boards(self):
        for kind, faces in (("tetrahedron", 4), ("icosahedron", 20)):
            x = build_system(SystemSpec(kind)).complex
            assert x.euler_characteristic() == 2
            assert x.n_faces == faces
            assert not x.boundary_edges()


class TestParams:
    def test_invalid_params_rejected(self):
        for spec in (
            SystemSpec("gear_ring", {"n": 2}),
            SystemSpec("heptagonal_patch", {"radius": 0}),
            SystemSpec("necker_grid", {"w": 1, "h": 5}),
            SystemSpec("gear_torus", {"n": 1, "m": 3}),
            SystemSpec("mobius_ring", {"n": 5, "twist_edges": [9]}),
            SystemSpec("necker_grid", {"w": 3, "h": 3, "pins": {99: 1}}),
        ):
            with pytest.raises(ValueError):
                build_system(spec)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown system kind"):
            build_system(SystemSpec("klein_bottle"))

    def test_unknown_parameter(self):
        with pytest.raises(ValueError, match="bad parameters"):
            build_system(SystemSpec("gear_ring", {"sides": 5}))

    def test_kind_listing(self):
        assert "gear_ring" in kinds()
        assert len(kinds()) == 16
