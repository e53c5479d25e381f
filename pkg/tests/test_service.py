"""HTTP service endpoints: payloads, round-trips, error mapping."""

import pytest
from fastapi.testclient import TestClient

from stablecurves.serialization import (
    chow_from_json,
    form_from_json,
    poly_from_json,
    tree_from_json,
    tree_to_json,
)
from stablecurves.service import app
from stablecurves.configurations import orbit_form
from stablecurves.hilbert import generic_orbit_hilbert
from stablecurves.projline import parse_configuration


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture
def smooth5_json(smooth5):
    return tree_to_json(smooth5)


@pytest.fixture
def bare5_json(bare_two_vertex_23):
    return tree_to_json(bare_two_vertex_23)


class TestBasicEndpoints:
    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}

    def test_cross_ratio(self, client):
        resp = client.post("/cross-ratio", json={"points": ["0", "1", "inf", "2"]})
        assert resp.status_code == 200
        assert resp.json() == {"value": "2"}

    def test_type_of(self, client):
        resp = client.post("/type-of", json={"points": ["0", "0", "1", "inf"]})
        assert resp.json() == {"parts": [[1, 2], [3], [4]]}

    def test_orbit_form_round_trip(self, client):
        resp = client.post("/orbit-form", json={"points": ["0", "1", "inf", "2"]})
        assert resp.status_code == 200
        decoded = form_from_json(resp.json())
        assert decoded == orbit_form(parse_configuration("0,1,inf,2"))

    def test_domain_error_payload(self, client):
        resp = client.post("/cross-ratio", json={"points": ["0", "0", "1", "inf"]})
        assert resp.status_code == 400
        body = resp.json()
        assert body["error"] == "CoincidentPoints"
        assert "detail" in body

    def test_parse_error_code(self, client):
        resp = client.post("/cross-ratio", json={"points": ["zebra", "1", "2", "3"]})
        assert resp.status_code == 400
        assert resp.json()["error"] == "ParseError"


class TestTreeEndpoints:
    def test_stabilize(self, client, smooth5_json, smooth5):
        resp = client.post("/stabilize", json={"tree": smooth5_json, "keep": [1, 2, 3, 4]})
        assert resp.status_code == 200
        from stablecurves.trees import stabilize

        assert tree_from_json(resp.json()["tree"]) == stabilize(smooth5, {1, 2, 3, 4})

    def test_glue_bare_trees(self, client):
        tk = {"markings": [1, 2, "*"], "vertices": [{"id": 0, "marks": {"1": None, "2": None, "*": None}}], "edges": []}
        tl = {"markings": [3, 4, "*"], "vertices": [{"id": 0, "marks": {"3": None, "4": None, "*": None}}], "edges": []}
        resp = client.post("/glue", json={"tree_k": tk, "tree_l": tl})
        assert resp.status_code == 200
        glued = tree_from_json(resp.json()["tree"])
        assert glued.num_vertices == 2
        assert glued.markings == frozenset({1, 2, 3, 4})

    def test_enumerate(self, client):
        resp = client.post("/enumerate-trees", json={"n": 4})
        body = resp.json()
        assert body["count"] == 4
        assert len(body["trees"]) == 4

    def test_enumerate_out_of_range(self, client):
        resp = client.post("/enumerate-trees", json={"n": 12})
        assert resp.status_code == 400
        assert resp.json()["error"] == "OutOfRange"

    def test_hilbert_poly_with_eval(self, client, bare5_json):
        resp = client.post("/hilbert-poly", json={"tree": bare5_json, "eval": [1, 1, 1, 1, 1]})
        body = resp.json()
        assert body["value"] == 26
        assert poly_from_json(body["poly"]) == generic_orbit_hilbert(5)

    def test_chow_class_by_type(self, client):
        resp = client.post("/chow-class", json={"type": "1,2|3|4|5"})
        body = resp.json()
        assert body["grade"] == 3
        assert len(body["terms"]) == 7

    def test_chow_class_by_tree(self, client, bare5_json):
        resp = client.post("/chow-class", json={"tree": bare5_json})
        cls = chow_from_json(resp.json())
        from stablecurves.chow import generic_orbit_class

        assert cls == generic_orbit_class(5)

    def test_chow_requires_exactly_one_input(self, client, bare5_json):
        resp = client.post("/chow-class", json={"type": "1|2|3", "tree": bare5_json})
        assert resp.status_code == 400

    def test_signature(self, client, smooth5_json):
        resp = client.post("/signature", json={"tree": smooth5_json})
        values = resp.json()["values"]
        assert values["1,2,3,4"] == "interior 2"
        assert values["1,2,3,5"] == "interior 3"

    def test_signature_rejects_bare_tree(self, client, bare5_json):
        resp = client.post("/signature", json={"tree": bare5_json})
        assert resp.status_code == 400


class TestVerifyEndpoints:
    def test_operads_small(self, client):
        resp = client.post("/verify/operads", json={"max_n": 4, "seed": 0})
        body = resp.json()
        assert body["violations"] == 0
        assert body["checks"] > 0

    def test_boundary(self, client):
        resp = client.post("/verify/boundary", json={"n": 4, "seed": 1, "samples": 20})
        assert resp.json()["violations"] == 0

    def test_unknown_suite(self, client):
        resp = client.post("/verify/cohomology", json={})
        assert resp.status_code == 400

    def test_determinism(self, client):
        a = client.post("/verify/boundary", json={"n": 4, "seed": 3, "samples": 10}).json()
        b = client.post("/verify/boundary", json={"n": 4, "seed": 3, "samples": 10}).json()
        assert a == b


class TestTreeJsonRoundTrip:
    def test_decorated_round_trip(self, smooth5, two_vertex_23):
        for tree in (smooth5, two_vertex_23):
            assert tree_from_json(tree_to_json(tree)) == tree

    def test_bare_round_trip(self, bare_two_vertex_23):
        assert tree_from_json(tree_to_json(bare_two_vertex_23)) == bare_two_vertex_23

    def test_mixed_positions_rejected(self, smooth5):
        data = tree_to_json(smooth5)
        data["vertices"][0]["marks"]["1"] = None
        from stablecurves.errors import ParseError

        with pytest.raises(ParseError):
            tree_from_json(data)
