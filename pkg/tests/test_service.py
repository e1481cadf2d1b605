"""HTTP game service contract."""

from __future__ import annotations

import threading

import pytest
from fastapi.testclient import TestClient

from bistable.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def make_session(client, **body):
    res = client.post("/session", json=body)
    assert res.status_code == 200
    return res.json()


class TestCatalog:
    def test_boards_listed_with_layout(self, client):
        data = client.get("/complexes").json()
        assert data["schema_version"] == 1
        ids = {b["id"] for b in data["boards"]}
        assert {"tetrahedron", "icosahedron", "disc_grid"} <= ids
        tet = next(b for b in data["boards"] if b["id"] == "tetrahedron")
        assert len(tet["face_vertices"]) == 4
        assert len(tet["layout"]["vertex_pos"]) == 4
        assert len(tet["layout"]["face_pos"]) == 4
        assert tet["boundary_edges"] == []
        disc = next(b for b in data["boards"] if b["id"] == "disc_grid")
        assert disc["boundary_edges"]


class TestSessionLifecycle:
    def test_create_and_fetch(self, client):
        out = make_session(client, board="tetrahedron", mode="free", target=[1, 1, 0, 0])
        sid = out["session_id"]
        state = client.get(f"/session/{sid}").json()
        assert state["schema_version"] == 1
        assert state["faces"] == [0, 0, 0, 0]
        assert state["target"] == [1, 1, 0, 0]
        assert state["moves"] == 0
        assert state["won"] is False
        assert state["sector"] == [0]
        assert len(state["toggleable_edges"]) == 6

    def test_toggle_and_win(self, client):
        out = make_session(client, board="tetrahedron", target=[1, 1, 0, 0])
        sid = out["session_id"]
        solvable = client.get(f"/session/{sid}/solvable").json()
        assert solvable["solvable"] is True
        state = None
        for e in solvable["solution"]:
            state = client.post(f"/session/{sid}/toggle", json={"edge": e}).json()
        assert state["won"] is True

    def test_toggle_flips_exactly_two(self, client):
        out = make_session(client, board="icosahedron")
        sid = out["session_id"]
        before = client.get(f"/session/{sid}").json()["faces"]
        after = client.post(f"/session/{sid}/toggle", json={"edge": 5}).json()["faces"]
        assert sum(a ^ b for a, b in zip(before, after)) == 2

    def test_reset(self, client):
        out = make_session(client, board="tetrahedron")
        sid = out["session_id"]
        client.post(f"/session/{sid}/toggle", json={"edge": 1})
        state = client.post(f"/session/{sid}/reset").json()
        assert state["moves"] == 0
        assert state["faces"] == [0, 0, 0, 0]

    def test_unsolvable_session_reports_invariant(self, client):
        out = make_session(client, board="tetrahedron", target=[1, 0, 0, 0])
        sid = out["session_id"]
        solvable = client.get(f"/session/{sid}/solvable").json()
        assert solvable["solvable"] is False
        assert solvable["invariant"] == [1]
        assert "solution" not in solvable

    def test_scramble_stays_solvable(self, client):
        out = make_session(client, board="icosahedron", scramble_moves=11, seed=4)
        sid = out["session_id"]
        solvable = client.get(f"/session/{sid}/solvable").json()
        assert solvable["solvable"] is True

    def test_frozen_boundary_rejected_with_409(self, client):
        out = make_session(client, board="disc_grid", mode="frozen")
        sid = out["session_id"]
        state = out["state"]
        boundary = [
            e
            for e in range(40)
            if e not in state["toggleable_edges"] and e < 24 + 16
        ]
        res = client.post(f"/session/{sid}/toggle", json={"edge": boundary[0]})
        assert res.status_code == 409
        assert "frozen" in res.json()["detail"]
        after = client.get(f"/session/{sid}").json()
        assert after["moves"] == 0

    def test_complex_id_field(self, client):
        out = make_session(client, complex_id="tetrahedron")
        assert out["state"]["board"] == "tetrahedron"

    def test_inline_complex(self, client):
        complex_json = {
            "vertices": 3,
            "edges": [[0, 1], [1, 2], [2, 0]],
            "faces": [[0, 1, 2]],
        }
        out = make_session(client, complex=complex_json, mode="free")
        assert out["state"]["faces"] == [0]

    def test_errors(self, client):
        assert client.post("/session", json={"board": "mystery"}).status_code == 404
        assert client.get("/session/nope").status_code == 404
        assert (
            client.post("/session", json={"board": "tetrahedron", "mode": "sideways"}).status_code
            == 422
        )
        assert (
            client.post("/session", json={"board": "tetrahedron", "start": [1]}).status_code
            == 422
        )

    def test_concurrent_toggles_serialized(self, client):
        out = make_session(client, board="icosahedron")
        sid = out["session_id"]

        def hammer():
            for _ in range(25):
                client.post(f"/session/{sid}/toggle", json={"edge": 0})

        threads = [threading.Thread(target=hammer) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        state = client.get(f"/session/{sid}").json()
        assert state["moves"] == 100
        assert state["faces"] == [0] * 20  # even number of toggles of one edge
