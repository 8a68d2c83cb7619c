import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matcomonad.base import AxiomError, DimensionError
from matcomonad.coalgebra import (Coalgebra, check_coalgebra, direct_sum, dual_algebra, require_coalgebra,
                                  trivial_coalgebra, zero_coalgebra)
from matcomonad.corpus import (coalgebra_from_terms, dual_numbers, grouplike_coalgebra, matrix_coalgebra,
                               type_a_coalgebra)
from matcomonad.linalg import QQ, Field, Mat
from oracles import dual_is_associative_unital

G1, G2, A = 0, 1, 2


def a2_broken_right():
    # Delta(a) = g1 (x) a only
    return coalgebra_from_terms(QQ, 3, {G1: {(G1, G1): 1}, G2: {(G2, G2): 1}, A: {(G1, A): 1}},
                                {G1: 1, G2: 1}, "a2_broken")


def test_trivial_ok():
    assert check_coalgebra(trivial_coalgebra(QQ))


def test_a2_ok():
    c = type_a_coalgebra(QQ, 2)
    assert c.comultiply(A) == {(G1, A): 1, (A, G2): 1}
    assert check_coalgebra(c)


def test_a2_broken_counit_right_at_arrow():
    v = check_coalgebra(a2_broken_right())
    assert not v.ok
    assert v.axiom == "counit-right" and v.witness == A
    with pytest.raises(AxiomError):
        require_coalgebra(a2_broken_right())


def test_shape_checked():
    with pytest.raises(DimensionError):
        Coalgebra(QQ, 2, Mat.zeros(QQ, 3, 2), Mat.zeros(QQ, 1, 2))


def _as_matrix(v):
    # e1 = E11, e2 = E22, x = E12
    return [[v[0], v[2]], [0, v[1]]]


def _matmul(p, q):
    return [[sum(p[i][k] * q[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def test_a2_dual_is_upper_triangular_matrices():
    alg = dual_algebra(type_a_coalgebra(QQ, 2))
    for a, b in itertools.product(range(3), repeat=2):
        ea = [int(i == a) for i in range(3)]
        eb = [int(i == b) for i in range(3)]
        prod = [alg.mul[k, a * 3 + b] for k in range(3)]
        assert _as_matrix(prod) == _matmul(_as_matrix(ea), _as_matrix(eb)), (a, b)
    assert _as_matrix(alg.unit.col(0)) == [[1, 0], [0, 1]]


def test_dual_of_trivial_and_grouplike():
    t = dual_algebra(trivial_coalgebra(QQ))
    assert t.dim == 1 and t.mul[0, 0] == 1
    k2 = dual_algebra(grouplike_coalgebra(QQ, 2))
    assert k2.mul.sparse() == {(0, 0): 1, (1, 3): 1}


def test_direct_sums():
    k = trivial_coalgebra(QQ)
    assert direct_sum(k, k).same_as(grouplike_coalgebra(QQ, 2))
    s = direct_sum(type_a_coalgebra(QQ, 2), k)
    assert s.dim == 4 and check_coalgebra(s)
    c = dual_numbers(QQ)
    assert direct_sum(c, zero_coalgebra(QQ)).same_as(c)


@pytest.mark.parametrize("c", [trivial_coalgebra(QQ), grouplike_coalgebra(QQ, 3), type_a_coalgebra(QQ, 4),
                               dual_numbers(QQ), matrix_coalgebra(QQ, 2),
                               matrix_coalgebra(Field.prime(3), 2)], ids=lambda c: c.name)
def test_corpus_coalgebras_have_associative_unital_duals(c):
    assert check_coalgebra(c)
    alg = dual_algebra(c)
    assert alg.is_associative() and alg.is_unital()


def _perturb(c, rng):
    f = c.field
    if rng.random() < 0.5:
        r, k = rng.randrange(c.dim * c.dim), rng.randrange(c.dim)
        delta = c.delta + Mat.from_sparse(f, c.delta.rows, c.dim, {(r, k): f.random_nonzero(rng)})
        return Coalgebra(f, c.dim, delta, c.eps)
    k = rng.randrange(c.dim)
    return Coalgebra(f, c.dim, c.delta, c.eps + Mat.from_sparse(f, 1, c.dim, {(0, k): f.random_nonzero(rng)}))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["a2", "a3", "dn", "mat2", "k3"]))
def test_checker_agrees_with_dual_algebra(seed, which):
    base = {"a2": type_a_coalgebra(QQ, 2), "a3": type_a_coalgebra(QQ, 3), "dn": dual_numbers(QQ),
            "mat2": matrix_coalgebra(QQ, 2), "k3": grouplike_coalgebra(QQ, 3)}[which]
    c = _perturb(base, random.Random(seed))
    assert bool(check_coalgebra(c)) == dual_is_associative_unital(c)
