import json

import numpy as np
import pytest

from antilin import jsonio
from antilin.core import RealLinearOp, sample
from antilin.exceptions import AntilinError, DimensionError


def test_scalar_round_trip():
    for z in (0, 1.5, -2j, 3 - 4j):
        assert jsonio.decode_scalar(jsonio.encode_scalar(z)) == z
    assert jsonio.decode_scalar(2) == 2


def test_negative_zero_is_normalized():
    assert json.dumps(jsonio.encode_scalar(complex(-0.0, -0.0))) == "[0.0, 0.0]"


def test_op_round_trip_is_exact():
    op = sample("ginibre", 4, 1) + RealLinearOp.pure_antilinear(sample("symmetric", 4, 2).linear)
    back = jsonio.decode_op(json.loads(jsonio.dumps(jsonio.encode_op(op))))
    assert np.array_equal(back.linear, op.linear) and np.array_equal(back.antilinear, op.antilinear)


def test_matrix_object_reads_as_antilinear():
    op = jsonio.decode_op({"dim": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})
    assert np.array_equal(op.antilinear, np.eye(2)) and not op.linear.any()


def test_conjugation_round_trip():
    k = sample("conjugation", 3, 4)
    back = jsonio.decode_conjugation(json.loads(jsonio.dumps(jsonio.encode_conjugation(k))))
    assert np.array_equal(back.matrix, k.matrix)


@pytest.mark.parametrize("rows, exc", [
    ([], AntilinError),
    ([[[1, 0], [0, 0]]], DimensionError),
    ([[[1, 0, 0]]], AntilinError),
])
def test_bad_matrices(rows, exc):
    with pytest.raises(exc):
        jsonio.decode_matrix(rows)


def test_declared_dim_checked():
    with pytest.raises(DimensionError):
        jsonio.decode_matrix([[[1, 0]]], dim=2)


def test_unknown_object():
    with pytest.raises(AntilinError):
        jsonio.decode_op({"dim": 1})


def test_dumps_is_compact_with_newline():
    assert jsonio.dumps({"a": [1, 2]}) == '{"a":[1,2]}\n'
