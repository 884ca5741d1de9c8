import json

import pytest

from catbench.cli import main


def _run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_validate_fixture(capsys, fixtures_dir):
    status, out, _ = _run(capsys, "validate", str(fixtures_dir / "arr.cat"))
    assert status == 0
    assert out == "ok: 2 objects, 3 morphisms\n"


def test_validate_set_functor(capsys, fixtures_dir):
    status, out, _ = _run(capsys, "validate", str(fixtures_dir / "swap.set"))
    assert status == 0
    assert out.startswith("ok: covariant setfunctor on parpair")


def test_coend_of_hom(capsys):
    status, out, _ = _run(capsys, "coend", "--category", "idem")
    assert status == 0
    assert out == "2 classes: [e], [id]\n"


def test_nat_between_representables(capsys):
    status, out, _ = _run(capsys, "nat", "--category", "arr", "--hom", "1", "--hom-functor2", "0")
    assert status == 0
    assert out.splitlines()[0] == "1 transformations (end agrees: yes)"


@pytest.mark.parametrize(
    "argv, status, text",
    [
        (["split", "--category", "idem", "--idempotent", "e"], 1, "e is not split"),
        (["split", "--category", "splitidem", "--idempotent", "e"], 0, "e splits through s: section i, retraction p"),
        (["realize", "--category", "splitidem", "--idempotent", "e"], 0, "realized by s"),
        (["realize", "--category", "idem", "--idempotent", "e"], 1, "not realized"),
        (["cauchy-complete", "--category", "idem"], 1, "not Cauchy complete: e"),
        (["cauchy-complete", "--category", "splitidem"], 0, "Cauchy complete"),
        (["absolute-weight", "--category", "arr", "--hom", "0"], 0, "absolute"),
    ],
)
def test_expect_some(capsys, argv, status, text):
    code, out, _ = _run(capsys, *argv, "--expect-some")
    assert code == status
    assert out == text + "\n"


def test_none_answer_without_expect_some_succeeds(capsys):
    code, out, _ = _run(capsys, "split", "--category", "idem", "--idempotent", "e")
    assert code == 0
    assert out == "e is not split\n"


def test_json_format(capsys):
    code, out, _ = _run(capsys, "karoubi", "--category", "idem", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "karoubi"
    assert payload["found"] is True
    assert payload["data"]["objects"] == ["(x,e)", "(x,id)"]


def test_opposite_prints_a_document(capsys, fixtures_dir):
    code, out, _ = _run(capsys, "opposite", "--category", str(fixtures_dir / "arr.cat"))
    assert code == 0
    assert '"name": "arr^op"' in out


def test_errors_exit_with_two(capsys):
    code, out, err = _run(capsys, "validate", "no-such-document")
    assert code == 2
    assert out == ""
    assert "error: UnresolvedReference" in err


def test_bad_document_exits_with_two(capsys, tmp_path):
    broken = tmp_path / "broken.cat"
    broken.write_text('{"kind": "category", "objects": ["x"]', encoding="utf-8")
    code, _, err = _run(capsys, "validate", str(broken))
    assert code == 2
    assert "DocumentSyntaxError" in err


def test_dot_command(capsys):
    code, out, _ = _run(capsys, "dot", "--category", "arr", "--hom", "0")
    assert code == 0
    assert "shape=point" in out


def test_crosscheck(capsys):
    code, out, _ = _run(capsys, "crosscheck", "--seed", "0", "--count", "2", "--expect-some")
    assert code == 0
    assert out.count("yoneda ok, nat ok, karoubi ok") == 2
