import io
import json

import pytest
from hypothesis import given, settings

from matwaring import codec
from matwaring.cli import run
from matwaring.dispatch import decompose_any
from matwaring.errors import BadInput
from matwaring.matrix import IntMat

from conftest import matrices


def call(*argv, stdin=""):
    out = io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out)
    return code, json.loads(out.getvalue()) if out.getvalue() else None


@settings(max_examples=30)
@given(matrices(3, 10**30))
def test_matrix_roundtrip_keeps_big_integers(M):
    text = codec.dumps(codec.matrix_to_json(M))
    assert codec.matrix_from_json(json.loads(text)) == M


def test_matrix_parsing_errors():
    for bad in ([], [[1, 2], [3]], {"n": 3, "entries": [[1, 2], [3, 4]]}, [[True, 1], [1, 1]], [["x", 1], [1, 1]]):
        with pytest.raises(BadInput):
            codec.matrix_from_json(bad)


def test_decomposition_roundtrip():
    d = decompose_any((1, 3, 5, 7, 11, 13), IntMat.identity(3))
    back = codec.decomposition_from_json(json.loads(codec.dumps(codec.decomposition_to_json(d))))
    assert back == d


def test_decide():
    code, out = call("decide", "--coeffs", "1,1,4")
    assert code == 0 and out["universal"] is False and out["witness_modulus"] == 4
    code, out = call("decide", "--coeffs", "3,6,9,1")
    assert out["universal"] is False and out["prime"] == "3"
    code, out = call("decide", "--coeffs", "[1, 1, 1]")
    assert out["universal"] is True


def test_residue_check():
    code, out = call("residue-check", "--coeffs", "1,1", "--modulus", "4")
    assert code == 0 and out["missed"]["entries"] == [["1", "0"], ["0", "3"]]


def test_decompose_then_verify_pipeline():
    code, out = call("decompose", "--coeffs", "1,3,5,7", "--explain", stdin='[[7,2],[3,-1]]')
    assert code == 0 and out["verified"] is True and "explain" in out
    doc = json.dumps(out)
    code, res = call("verify", stdin=doc)
    assert code == 0 and res["verified"] is True
    out["squares"][0]["matrix"]["entries"][0][0] = str(int(out["squares"][0]["matrix"]["entries"][0][0]) + 1)
    code, res = call("verify", stdin=json.dumps(out))
    assert code == 3 and res["verified"] is False


def test_exit_codes():
    assert call("decompose", "--coeffs", "1,1,4", stdin="[[1,0],[0,1]]")[0] == 3
    assert call("decompose", "--coeffs", "1,0,1,1", stdin="[[1,0],[0,1]]")[0] == 1
    assert call("commutator", stdin="[[1,0],[0,1]]")[0] == 1
    assert call("commutator", "--budget", "0", stdin="[[1,0],[0,-1]]")[0] == 4
    assert call("decompose", "--coeffs", "1,1,1,1", stdin="not json")[0] == 1
    assert call("nonsense")[0] == 1


def test_commutator_command():
    code, out = call("commutator", "--target", "[[1,2],[3,-1]]", "--precondition")
    assert code == 0 and out["verified"] is True


def test_fuzz_output_is_deterministic():
    args = ("fuzz", "--seed", "3", "--trials", "3", "--n", "2-4", "--coeff-bound", "1000")
    o1, o2 = io.StringIO(), io.StringIO()
    assert run(list(args), stdout=o1) == 0 and run(list(args), stdout=o2) == 0
    assert o1.getvalue() == o2.getvalue()


def test_table1_and_selftest():
    code, out = call("table1", "--trials", "2", "--max-n", "5")
    assert code == 0 and [r["required"] for r in out["rows"]] == [4, 6, 6, 8]
    code, out = call("selftest", "--trials", "10")
    assert code == 0 and out["passed"] is True


def test_bad_flags():
    assert call("fuzz", "--trials", "0")[0] == 1
    assert call("fuzz", "--n", "1-3")[0] == 1
