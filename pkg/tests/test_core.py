import pytest

from gisemi.core import (
    Partition,
    band_clause_report,
    classify,
    direct_product,
    find_isomorphism,
    green,
    homomorphism_witness,
    inverses_of,
    is_isomorphic,
    local_submonoid,
    natural_order,
    opposite,
    order_compatibility_report,
    validate,
)
from gisemi.errors import NotAssociative, NotClosed, NotRegular


def test_validate_rejects_bad_tables():
    with pytest.raises(NotClosed):
        validate([[0, 2], [0, 1]])
    with pytest.raises(NotClosed):
        validate([[0, 1], [0]])
    # x*y = y+1 mod 3 is not associative
    with pytest.raises(NotAssociative) as info:
        validate([[1, 2, 0], [1, 2, 0], [1, 2, 0]])
    a, b, c = info.value.witness
    assert info.value.name == "NotAssociative"


def test_inverses(rz2):
    assert inverses_of(rz2, 0) == {0, 1}
    for e in rz2.idempotents:
        assert e in inverses_of(rz2, e)


def test_classify_fixtures(rz2, lz2, i2, sl2):
    c = classify(rz2)
    assert c.is_band and c.right_normal and c.right_regular and c.right_generalized_inverse
    assert c.summary() == "band: right normal, right regular; right generalized inverse"
    c = classify(lz2)
    assert c.is_band and c.left_normal and not c.right_normal
    c = classify(i2)
    assert c.inverse and c.generalized_inverse and not c.is_band
    assert classify(sl2).inverse


def test_non_regular():
    null = validate([[0, 0], [0, 0]])
    assert not classify(null).regular
    with pytest.raises(NotRegular):
        natural_order(null)


def test_green(rz2, sl2, z2):
    g = green(rz2)
    assert g.R.is_full() and g.L.is_equality()
    for p in green(sl2).as_dict().values():
        assert p.is_equality()
    for p in green(z2).as_dict().values():
        assert p.is_full()


def test_green_opposite_swaps_sides(y3):
    g, h = green(y3), green(opposite(y3))
    assert g.L == h.R and g.R == h.L and g.D == h.D


def test_natural_order(sl2, rz2):
    assert natural_order(sl2).leq[0][1] and not natural_order(sl2).leq[1][0]
    leq = natural_order(rz2).leq
    assert not leq[0][1] and not leq[1][0]


def test_local_submonoid(rz2, i2, trivial):
    M, emb = local_submonoid(rz2, 0)
    assert M.order == 1 and emb == (0,)
    assert local_submonoid(trivial, 0)[0].order == 1
    ident = 5  # {1:1,2:2}
    assert local_submonoid(i2, ident)[0].order == i2.order


def test_compatibility(sl2, rz2):
    r = order_compatibility_report(sl2)
    assert r.compatible and r.locally_inverse
    assert order_compatibility_report(rz2).compatible


def test_band_clauses(rz2, lz2, y3):
    for B in (rz2, lz2, y3):
        assert all(band_clause_report(B).values())


def test_partition_roundtrip():
    p = Partition.parse("0 2 | 1 | 3 4")
    assert str(p) == "0 2 | 1 | 3 4"
    assert p.num_classes == 3 and p.same(0, 2) and not p.same(0, 1)
    q = Partition.parse("0 1 | 2 | 3 | 4")
    assert str(p.join(q)) == "0 1 2 | 3 4"
    assert p.meet(q).is_equality()
    assert Partition.equality(5) <= p <= Partition.full(5)


def test_isomorphism(rz2, lz2, y3):
    assert not is_isomorphic(rz2, lz2)
    assert is_isomorphic(rz2, opposite(lz2))
    h = find_isomorphism(y3, validate([[0, 1, 0], [0, 1, 0], [0, 1, 2]]))
    assert h is not None and homomorphism_witness(y3, y3, h) is None


def test_direct_product(rz2, sl2):
    P = direct_product(sl2, rz2)
    assert P.order == 4
    assert P.mul(1 * 2 + 0, 0 * 2 + 1) == 0 * 2 + 1
    assert classify(P).right_generalized_inverse
