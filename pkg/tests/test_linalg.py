from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matcomonad.base import DimensionError
from matcomonad.linalg import (QQ, Field, Mat, column_basis, extend_to_basis, hstack, inverse, kernel,
                               kron, permutation, random_mat, rank, solve_linear, unvec, vec)

F5 = Field.prime(5)
F2 = Field.prime(2)


def small_mats(field, max_rows=4, max_cols=4):
    entries = st.integers(-4, 4) if field.kind == "rational" else st.integers(0, field.characteristic - 1)

    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_rows))
        c = draw(st.integers(1, max_cols))
        return Mat(field, r, c, [[draw(entries) for _ in range(c)] for _ in range(r)])
    return build()


def test_kernel_of_identity_is_empty():
    k = kernel(Mat.identity(QQ, 2))
    assert k.shape == (2, 0)


def test_kernel_of_zero_is_whole_space():
    k = kernel(Mat.zeros(QQ, 2, 3))
    assert k.shape == (3, 3) and rank(k) == 3


def test_kernel_of_row_of_ones():
    m = Mat(QQ, 1, 2, [[1, 1]])
    k = kernel(m)
    assert k.shape == (2, 1)
    assert (m @ k).is_zero()
    assert k[0, 0] == -k[1, 0] != 0


def test_solve_identity():
    b = Mat(QQ, 2, 1, [[3], [Fraction(1, 7)]])
    assert solve_linear(Mat.identity(QQ, 2), b) == b


def test_solve_inconsistent():
    assert solve_linear(Mat(QQ, 2, 1, [[1], [1]]), Mat(QQ, 2, 1, [[1], [2]])) is None


def test_solve_free_variables_set_to_zero():
    x = solve_linear(Mat(QQ, 1, 2, [[1, 1]]), Mat(QQ, 1, 1, [[2]]))
    assert x == Mat(QQ, 2, 1, [[2], [0]])


def test_kron_identities():
    assert kron(Mat.identity(QQ, 2), Mat.identity(QQ, 3)) == Mat.identity(QQ, 6)
    a = Mat(QQ, 2, 3, [[1, 2, 3], [4, 5, 6]])
    assert kron(a, Mat.identity(QQ, 1)) == a


def test_kron_index_convention():
    a = Mat(QQ, 2, 1, [[1], [0]])
    b = Mat(QQ, 3, 1, [[0], [1], [0]])
    k = kron(a, b)
    assert k[0 * 3 + 1, 0] == 1 and k.sparse() == {(1, 0): 1}


def test_prime_field_arithmetic():
    assert F5(7) == 2
    assert F5.inv(2) == 3
    assert F5.parse("-1") == 4
    with pytest.raises(ValueError):
        Field.prime(4)


def test_rational_parse_is_exact():
    assert QQ.parse("3/7") == Fraction(3, 7)
    assert QQ.format(Fraction(-6, 4)) == "-3/2"


def test_shape_mismatch_raises():
    with pytest.raises(DimensionError):
        Mat.identity(QQ, 2) @ Mat.identity(QQ, 3)


def test_inverse_and_extend():
    m = Mat(QQ, 2, 2, [[1, 2], [3, 4]])
    assert m @ inverse(m) == Mat.identity(QQ, 2)
    v = Mat(QQ, 3, 1, [[1], [1], [0]])
    extra = extend_to_basis(v)
    assert extra.shape == (3, 2) and rank(hstack([v, extra])) == 3


def test_permutation_maps_basis_vectors():
    p = permutation(QQ, [2, 0, 1])
    e0 = Mat.column(QQ, [1, 0, 0])
    assert p @ e0 == Mat.column(QQ, [0, 0, 1])


def test_vec_unvec_round_trip():
    m = Mat(QQ, 2, 3, [[1, 2, 3], [4, 5, 6]])
    assert unvec(vec(m), 2, 3) == m


@settings(max_examples=60, deadline=None)
@given(small_mats(QQ))
def test_kernel_rank_nullity_rational(m):
    k = kernel(m)
    assert (m @ k).is_zero()
    assert k.cols + rank(m) == m.cols
    assert rank(k) == k.cols


@settings(max_examples=60, deadline=None)
@given(small_mats(F5))
def test_kernel_rank_nullity_f5(m):
    k = kernel(m)
    assert (m @ k).is_zero()
    assert k.cols + rank(m) == m.cols


@settings(max_examples=40, deadline=None)
@given(small_mats(F5, 2, 2), small_mats(F5, 2, 2), small_mats(F5, 2, 2), small_mats(F5, 2, 2))
def test_kron_mixed_product(a, b, c, d):
    if a.cols != c.rows or b.cols != d.rows:
        return
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@settings(max_examples=60, deadline=None)
@given(st.integers(-50, 50), st.integers(1, 50))
def test_rational_canonical_form(p, q):
    x = QQ.parse(f"{p}/{q}")
    assert x == Fraction(p, q)
    assert QQ.parse(QQ.format(x)) == x
    assert x.denominator > 0


@settings(max_examples=40, deadline=None)
@given(small_mats(QQ))
def test_column_basis_spans_image(m):
    b = column_basis(m)
    assert b.cols == rank(m)
    assert solve_linear(b, m) is not None


def test_random_mat_is_seeded():
    import random
    assert random_mat(F2, 3, 3, random.Random(4)) == random_mat(F2, 3, 3, random.Random(4))
    assert hstack([Mat.identity(QQ, 2), Mat.zeros(QQ, 2, 1)]).shape == (2, 3)
