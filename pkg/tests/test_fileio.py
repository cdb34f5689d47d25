"""Canonical JSON interchange: round trips, formatting, rejection."""

from __future__ import annotations

import json

import numpy as np
import pytest

from witness_forge.errors import ParamOutOfRange, ParseError
from witness_forge.fileio import (
    dumps_canonical,
    matrix_file_text,
    parse_matrix_file,
    parse_matrix_obj,
    write_matrix_file,
)
from witness_forge.linalg import ComplexMatrix, ComplexVector
from witness_forge.qstate import DensityMatrix, PureState, isotropic
from witness_forge.witness import Witness, WitnessForm, make_witness


def _sample_objects():
    sq = isotropic(0.2)
    rng = np.random.default_rng(3)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    herm = np.diag([1.0, -2.0]).astype(complex)
    herm[0, 1] = 0.5 + 0.25j
    herm[1, 0] = 0.5 - 0.25j
    return [
        sq,
        PureState(ComplexVector((2, 2), v)),
        ComplexMatrix((2,), herm),
        make_witness(WitnessForm.C_MINUS_SIGMA, sq, 0.3),
    ]


def test_round_trip_is_byte_identical(tmp_path):
    for i, obj in enumerate(_sample_objects()):
        path = tmp_path / f"obj{i}.json"
        write_matrix_file(obj, path)
        text = path.read_text()
        again = matrix_file_text(parse_matrix_file(path))
        assert again == text
        # and stable under a second cycle through a fresh file
        path2 = tmp_path / f"obj{i}b.json"
        write_matrix_file(parse_matrix_file(path), path2)
        assert path2.read_text() == text


def test_parsed_objects_keep_their_content(tmp_path):
    sq = isotropic(0.2)
    p = tmp_path / "sq.json"
    write_matrix_file(sq, p)
    back = parse_matrix_file(p)
    assert isinstance(back, DensityMatrix)
    assert back.dims == (2, 2)
    assert back.normalized
    np.testing.assert_allclose(back.mat.mat, sq.mat.mat, atol=0)

    w = make_witness(WitnessForm.C_MINUS_SIGMA, sq, 0.3)
    pw = tmp_path / "w.json"
    write_matrix_file(w, pw)
    back_w = parse_matrix_file(pw)
    assert isinstance(back_w, Witness)
    assert back_w.form is WitnessForm.C_MINUS_SIGMA
    assert back_w.c == 0.3
    np.testing.assert_allclose(back_w.matrix().mat, w.matrix().mat, atol=0)


def test_boundary_witness_round_trips(tmp_path):
    # a witness built with check="none" at c = lambda_max must survive
    # file round trips without interval re-checking
    i2 = DensityMatrix(ComplexMatrix((2,), np.eye(2) / 2))
    w = make_witness(WitnessForm.C_MINUS_SIGMA, i2, 0.5, check="none")
    p = tmp_path / "boundary.json"
    write_matrix_file(w, p)
    back = parse_matrix_file(p)
    assert back.c == 0.5


def test_canonical_float_formatting():
    assert dumps_canonical(0.1) == "0.10000000000000001"
    assert dumps_canonical(1.0) == "1"
    assert dumps_canonical(0.5) == "0.5"
    assert dumps_canonical({"b": 1, "a": [True, None]}) == '{"a":[true,null],"b":1}'
    assert dumps_canonical(np.float64(0.25)) == "0.25"
    assert dumps_canonical(np.bool_(True)) == "true"
    assert dumps_canonical(np.int64(7)) == "7"
    # parsing the rendered float recovers the value exactly
    for x in (0.1, 1 / 3, 0.30000000000000004, 5e-324, -0.0):
        assert float(dumps_canonical(x)) == x


def test_parse_rejects_structural_problems(tmp_path):
    good = json.loads(matrix_file_text(isotropic(0.2)))

    def reject(mutate):
        doc = json.loads(json.dumps(good))
        mutate(doc)
        with pytest.raises(ParseError):
            parse_matrix_obj(doc)

    reject(lambda d: d.update(version="2"))
    reject(lambda d: d.update(kind="banana"))
    reject(lambda d: d.update(dims=[2, 0]))
    reject(lambda d: d.update(dims="22"))
    reject(lambda d: d["data"].pop())
    reject(lambda d: d["data"][0].__setitem__(0, [1.0]))
    reject(lambda d: d["data"][0].__setitem__(0, "1+2j"))
    reject(lambda d: d.update(normalized="yes"))
    with pytest.raises(ParseError):
        parse_matrix_obj(["not", "an", "object"])


def test_parse_rejects_nonfinite_and_bad_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        parse_matrix_file(bad)
    inf = tmp_path / "inf.json"
    inf.write_text(
        '{"version":"1","kind":"hermitian","dims":[1],"data":[[[Infinity,0]]]}'
    )
    with pytest.raises(ParseError):
        parse_matrix_file(inf)
    with pytest.raises(ParseError):
        parse_matrix_file(tmp_path / "missing.json")


def test_parse_witness_consistency_check(tmp_path):
    w = make_witness(WitnessForm.C_MINUS_SIGMA, isotropic(0.2), 0.3)
    doc = json.loads(matrix_file_text(w))
    doc["data"][0][0] = [9.0, 0.0]  # tamper with the materialized matrix
    with pytest.raises(ParseError):
        parse_matrix_obj(doc)
    doc2 = json.loads(matrix_file_text(w))
    doc2["form"] = "diagonal"
    with pytest.raises(ParseError):
        parse_matrix_obj(doc2)
    doc3 = json.loads(matrix_file_text(w))
    doc3["c"] = True
    with pytest.raises(ParseError):
        parse_matrix_obj(doc3)


def test_semantic_validation_is_not_a_parse_error(tmp_path):
    # structurally fine, semantically not a state: negative eigenvalue
    doc = {
        "version": "1",
        "kind": "density",
        "dims": [2],
        "data": [[[1.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]],
        "normalized": True,
    }
    with pytest.raises(ParamOutOfRange):
        parse_matrix_obj(doc)
