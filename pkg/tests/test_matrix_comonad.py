import pytest

from matcomonad.base import DimensionError
from matcomonad.coalgebra import check_coalgebra, trivial_coalgebra
from matcomonad.comodule import Bicomodule, regular_bicomodule
from matcomonad.corpus import a3_family, type_a_coalgebra
from matcomonad.linalg import QQ, Mat
from matcomonad.matrix_comonad import (MatrixComonadData, bipartite_data, check_comonad,
                                       check_cotensor_factorization, corners, from_blocks, is_normal,
                                       is_triangular, reassemble, relabel, same_data, total_coalgebra)

K = trivial_coalgebra(QQ)


def k_bicomodule(dim):
    I = Mat.identity(QQ, dim)
    return Bicomodule(K, K, dim, I, I)


def test_n1_is_check_coalgebra():
    a2 = type_a_coalgebra(QQ, 2)
    d = from_blocks(QQ, [a2], {})
    assert bool(check_comonad(d)) == bool(check_coalgebra(a2))
    assert total_coalgebra(d).same_as(a2)


def test_n2_kkk_ok():
    d = bipartite_data(K, K, k_bicomodule(1))
    assert check_comonad(d) and check_cotensor_factorization(d)


def test_perturbed_rho_detected_at_path():
    d = bipartite_data(K, K, k_bicomodule(2))
    bad = d.with_phi((0, 1, 1), d.get_phi(0, 1, 1) + Mat.from_sparse(QQ, 2, 2, {(0, 1): 1}))
    v = check_comonad(bad)
    assert not v.ok
    assert ("coassociativity", (0, 1, 1, 1)) in v.failures


def test_shapes_checked():
    with pytest.raises(DimensionError):
        MatrixComonadData(QQ, 1, ((1,),), {(0, 0, 0): Mat.zeros(QQ, 2, 1)}, (Mat.row(QQ, [1]),))


def test_triangular_and_normal():
    d = bipartite_data(K, K, k_bicomodule(1))
    assert is_triangular(d) and is_normal(d)
    full = from_blocks(QQ, [K, K], {(0, 1): k_bicomodule(1), (1, 0): k_bicomodule(1)})
    assert not is_triangular(full)
    assert not is_normal(bipartite_data(type_a_coalgebra(QQ, 2), K, Bicomodule(
        type_a_coalgebra(QQ, 2), K, 0, Mat.zeros(QQ, 0, 0), Mat.zeros(QQ, 0, 0))))


def test_total_of_kkk_is_a2():
    d = bipartite_data(K, K, regular_bicomodule(K))
    assert total_coalgebra(d).same_as(type_a_coalgebra(QQ, 2))


def test_a3_family_total_is_a3_up_to_relabel():
    d = a3_family(QQ)
    e = total_coalgebra(d)
    assert e.dim == 6 and check_coalgebra(e)
    # blocks 00,11,22,01,02,12 line up with vertices then paths (0,1),(0,2),(1,2)
    assert e.same_as(type_a_coalgebra(QQ, 3))


def test_corners_n2():
    d = bipartite_data(K, K, k_bicomodule(1))
    c = corners(d, 1)
    assert c.lower.n == 1 and c.upper.n == 1 and c.connecting.dim == 1
    assert same_data(reassemble(c), d)


@pytest.mark.parametrize("m", [1, 2])
def test_corners_n3_round_trip(m):
    d = a3_family(QQ)
    c = corners(d, m)
    assert check_comonad(c.lower) and check_comonad(c.upper)
    assert same_data(reassemble(c), d)
    if m == 2:
        assert c.upper.n == 1 and c.upper.diag(0).is_trivial()
        assert c.connecting.dim == 2
    assert relabel(total_coalgebra(d), c.total_permutation()).same_as(c.bipartite().E)
