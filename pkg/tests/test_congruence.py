import pytest

from gisemi.congruence import (
    Congruence,
    all_congruences,
    gamma,
    generate,
    idempotent_pure_check,
    is_minimum_with,
    lambda_rho,
    quotient,
    subdirect_embed,
)
from gisemi.core import Partition, classify, is_isomorphic
from gisemi.errors import NotACongruence, NotGeneralizedInverse, NotOrthodox
from gisemi.core import validate


def test_gamma(rz2, i2, y3, sl2):
    assert gamma(i2).partition.is_equality()
    assert gamma(rz2).partition.is_full()
    assert quotient(rz2, gamma(rz2))[0].order == 1
    Q, proj = quotient(y3, gamma(y3))
    assert str(gamma(y3).partition) == "0 1 | 2"
    assert is_isomorphic(Q, sl2)


def test_gamma_requires_orthodox():
    with pytest.raises(NotOrthodox):
        gamma(validate([[0, 0], [0, 0]]))


def test_lambda_rho(rz2, lz2, i2):
    lam, rho = lambda_rho(rz2)
    assert lam.partition.is_equality() and rho.partition.is_full()
    lam, rho = lambda_rho(lz2)
    assert lam.partition.is_full() and rho.partition.is_equality()
    lam, rho = lambda_rho(i2)
    assert lam.partition.is_equality() and rho.partition.is_equality()


def test_lambda_rho_needs_gi():
    B = validate([[0, 0, 0], [0, 1, 2], [2, 2, 2]])  # a band that is not normal
    assert classify(B).is_band and not classify(B).normal
    with pytest.raises(NotGeneralizedInverse):
        lambda_rho(B)


def test_congruence_validation(sl2):
    with pytest.raises(NotACongruence):
        Congruence(validate([[0, 1, 2], [1, 1, 1], [2, 1, 2]]), Partition.parse("0 1 | 2"))
    assert generate(sl2, [(0, 1)]).partition.is_full()


def test_all_congruences(trivial, sl2, z2):
    assert len(all_congruences(trivial)) == 1
    assert len(all_congruences(sl2)) == 2
    assert len(all_congruences(z2)) == 2


def test_minimality(rz2, y3, i2):
    assert is_minimum_with(rz2, gamma(rz2), "inverse")
    lam, _ = lambda_rho(y3)
    assert is_minimum_with(y3, lam, "right_gi")
    assert is_minimum_with(i2, Congruence(i2, Partition.equality(7)), "inverse")


def test_subdirect(rz2, i2, y3):
    emb = subdirect_embed(i2)
    assert emb.left.order == emb.right.order == 7
    emb = subdirect_embed(rz2)
    assert emb.left.order == 1 and emb.right.order == 2
    emb = subdirect_embed(y3)
    assert len(set(emb.embedding)) == 3


def test_idempotent_pure(y3, i2):
    lam, rho = lambda_rho(y3)
    assert idempotent_pure_check(y3, lam) and idempotent_pure_check(y3, rho)
    assert idempotent_pure_check(i2, lambda_rho(i2)[0])
