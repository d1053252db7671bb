from fractions import Fraction as F

import pytest

from conformal_forge.errors import DimensionMismatchError
from conformal_forge.linalg import EchelonBasis, kernel, row_reduce, solve_linear


def test_row_reduce_drops_dependent_rows():
    assert row_reduce([[F(1), F(2)], [F(2), F(4)]]) == [[1, 2]]
    assert row_reduce([]) == []


def test_solve_linear():
    rows = [[F(1), F(0)], [F(0), F(1)]]
    assert solve_linear(rows, [F(3), F(4)]) == [3, 4]
    assert solve_linear([[F(1), F(0)]], [F(0), F(1)]) is None


def test_kernel_of_dependent_rows():
    basis = kernel([[F(1), F(2)], [F(2), F(4)]], one=F(1))
    assert basis == [[1, F(-1, 2)]]
    assert kernel([[F(1), F(0)], [F(0), F(1)]], one=F(1)) == []


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatchError):
        row_reduce([[F(1), F(2)], [F(1)]])


def test_echelon_basis_membership():
    span = EchelonBasis()
    assert span.add({"a": F(1), "b": F(1)}) is not None
    assert span.add({"a": F(1), "b": F(-1)}) is not None
    assert span.add({"a": F(3), "b": F(7)}) is None
    assert len(span) == 2
    assert span.contains({"b": F(5)})
    assert not span.contains({"c": F(1)})
    assert span.pivots() == ["a", "b"]
    assert span.basis() == [{"a": 1}, {"b": 1}]
