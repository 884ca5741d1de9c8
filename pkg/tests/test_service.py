import pytest
from fastapi.testclient import TestClient
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

from catbench.catalog import idem
from catbench.database import Base, get_db
from catbench.main import app
from catbench.serialization import serialize, to_document


@pytest.fixture
def client():
    engine = create_engine("sqlite://", connect_args={"check_same_thread": False}, poolclass=StaticPool)
    Base.metadata.create_all(bind=engine)
    TestingSession = sessionmaker(autocommit=False, autoflush=False, bind=engine)

    def override_get_db():
        db = TestingSession()
        try:
            yield db
        finally:
            db.close()

    app.dependency_overrides[get_db] = override_get_db
    yield TestClient(app)
    app.dependency_overrides.clear()


def _create(client, name, value):
    return client.post("/documents", json={"name": name, "document": to_document(value)})


def test_create_and_read(client):
    response = _create(client, "myidem", idem())
    assert response.status_code == 200
    body = response.json()
    assert body["kind"] == "category"
    assert body["body"] == serialize(idem())
    assert client.get("/documents/myidem").json()["id"] == body["id"]


def test_duplicate_names_are_rejected(client):
    assert _create(client, "myidem", idem()).status_code == 200
    assert _create(client, "myidem", idem()).status_code == 400


def test_invalid_document_is_rejected(client):
    doc = to_document(idem())
    doc["composition"] = []
    response = client.post("/documents", json={"name": "broken", "document": doc})
    assert response.status_code == 422
    assert "composition" in response.json()["detail"]


def test_list_and_delete(client):
    _create(client, "b", idem())
    _create(client, "a", idem())
    assert [d["name"] for d in client.get("/documents").json()] == ["a", "b"]
    assert client.delete("/documents/a").status_code == 200
    assert client.get("/documents/a").status_code == 404
    assert client.delete("/documents/a").status_code == 404


def test_upload_uses_the_file_stem(client, fixtures_dir):
    content = (fixtures_dir / "swap.set").read_bytes()
    response = client.post("/documents/upload", files={"file": ("swap.set", content, "application/json")})
    assert response.status_code == 200
    assert response.json()["name"] == "swap"
    assert response.json()["kind"] == "setfunctor"


def test_upload_rejects_bad_json(client):
    response = client.post("/documents/upload", files={"file": ("bad.cat", b"{", "application/json")})
    assert response.status_code == 422


def test_compute_with_builtin_category(client):
    response = client.post("/compute/coend", json={"documents": {"category": "idem"}})
    assert response.status_code == 200
    body = response.json()
    assert body["text"] == "2 classes: [e], [id]"
    assert body["exit_code"] == 0
    assert body["data"]["size"] == 2


def test_compute_with_stored_document(client):
    _create(client, "mine", idem())
    response = client.post(
        "/compute/split",
        json={"documents": {"category": "mine"}, "options": {"idempotent": "e"}, "expect_some": True},
    )
    assert response.status_code == 200
    assert response.json()["found"] is False
    assert response.json()["exit_code"] == 1


def test_compute_errors(client):
    assert client.post("/compute/coend", json={"documents": {"category": "nothing"}}).status_code == 404
    assert client.post("/compute/no-such-command", json={"documents": {"category": "idem"}}).status_code == 404
    capped = client.post(
        "/compute/karoubi", json={"documents": {"category": "splitidem"}, "cap": 1}
    )
    assert capped.status_code == 413
    assert "SizeExceeded" in capped.json()["detail"]


def test_command_listing(client):
    commands = client.get("/compute").json()
    assert "coend" in commands and "kan-right" in commands
