import random

import pytest

from matcomonad.base import CoalgebraMismatchError
from matcomonad.comodule import (Comodule, check_bicomodule, check_comodule, check_morphism, cotensor,
                                 cotensor_equalizer_map, direct_sum, identity_morphism, image_of_morphism,
                                 is_isomorphism, is_split_epi, kernel_of_morphism, quotient,
                                 regular_bicomodule, regular_comodule, sum_injections, sum_projections,
                                 zero_morphism)
from matcomonad.corpus import random_comodule, type_a_coalgebra
from matcomonad.linalg import QQ, Field, Mat, kernel, rank, solve_linear
from oracles import has_section_brute_force

F2 = Field.prime(2)


def test_regular_comodule_ok(corpus):
    for name, c in corpus.coalgebras.items():
        assert check_comodule(regular_comodule(c)), name


def test_corpus_comodules_and_bicomodules_ok(corpus):
    for name, v in corpus.comodules.items():
        assert check_comodule(v), name
    for name, m in corpus.bicomodules.items():
        assert check_bicomodule(m), name
    for name, f in corpus.morphisms.items():
        assert check_morphism(f), name


def test_zero_morphism_ok(corpus):
    v, w = corpus.comodules["a2_reg"], corpus.comodules["a2_s0"]
    assert check_morphism(zero_morphism(v, w))


def test_single_entry_perturbation_detected():
    v = regular_comodule(type_a_coalgebra(QQ, 2))
    bad = Comodule(v.over, v.dim, v.rho + Mat.from_sparse(QQ, v.rho.rows, v.dim, {(0, 0): 1}))
    verdict = check_comodule(bad)
    assert not verdict.ok and verdict.axiom


def test_cotensor_with_regular_bicomodule_recovers_v(corpus):
    for name, v in corpus.comodules.items():
        cot = cotensor(v, regular_bicomodule(v.over))
        assert cot.dim == v.dim, name


def test_cotensor_of_regular_with_m_has_dim_m(corpus):
    for name, m in corpus.bicomodules.items():
        assert cotensor(regular_comodule(m.left), m).dim == m.dim, name


def test_cotensor_trivial(corpus):
    cot = cotensor(corpus.comodules["triv_reg"], corpus.bicomodules["kkk"])
    assert cot.dim == 1 and cot.comodule.rho == Mat.identity(QQ, 1)


def test_cotensor_equalizer_property(corpus):
    rng = random.Random(3)
    v, m = corpus.comodules["a2_reg"], corpus.bicomodules["a2_bireg"]
    cot = cotensor(v, m)
    eq = cotensor_equalizer_map(v, m)
    assert (eq @ cot.inclusion).is_zero()
    assert rank(cot.inclusion) == cot.dim
    ker = kernel(eq)
    z = ker @ Mat(QQ, ker.cols, 2, [[rng.randint(-3, 3) for _ in range(2)] for _ in range(ker.cols)])
    assert solve_linear(cot.inclusion, z) is not None


def test_cotensor_mismatch_raises(corpus):
    with pytest.raises(CoalgebraMismatchError):
        cotensor(corpus.comodules["dualnum_reg"], corpus.bicomodules["a2_bireg"])


def test_identity_and_projection_split():
    v = regular_comodule(type_a_coalgebra(QQ, 2))
    r = is_split_epi(identity_morphism(v))
    assert r.split and r.section.mat == Mat.identity(QQ, 3)
    s = direct_sum([v, v])
    p = sum_projections([v, v], s)[0]
    r = is_split_epi(p)
    assert r.split and (p.mat @ r.section.mat) == Mat.identity(QQ, 3)
    assert check_morphism(r.section)
    assert (p.mat @ sum_injections([v, v], s)[0].mat) == Mat.identity(QQ, 3)


def test_dual_numbers_quotient_not_split(corpus_f2):
    p = corpus_f2.morphisms["dn_quot"]
    assert not is_split_epi(p).split
    assert not has_section_brute_force(p)


def test_kernel_image():
    v = regular_comodule(type_a_coalgebra(QQ, 2))
    k, _ = kernel_of_morphism(identity_morphism(v))
    assert k.dim == 0
    im, _ = image_of_morphism(zero_morphism(v, v))
    assert im.dim == 0
    # g1 and a span a subcomodule; the quotient is the simple at g2
    s, q = quotient(v, Mat(QQ, 3, 2, [[1, 0], [0, 0], [0, 1]]))
    assert s.dim == 1
    k, _ = kernel_of_morphism(q)
    assert k.dim == 2


def test_random_comodules_valid_and_rebased_iso():
    rng = random.Random(11)
    c = type_a_coalgebra(F2, 2)
    for _ in range(20):
        v = random_comodule(c, rng, 4)
        assert check_comodule(v)
        assert is_isomorphism(identity_morphism(v))
