from gisemi.congruence import gamma, quotient
from gisemi.core import is_isomorphic, opposite
from gisemi.etale import InverseSemigroup, presheaf_of, translation_action
from gisemi.presheaf import presheaf_isomorphism, singleton_presheaf
from gisemi.yamada import (
    build_left_yamada,
    build_right_yamada,
    etale_structure,
    free_roundtrip_check,
    kappa_decompose,
    l_cover_check,
)


def test_y3(sl2, p3, y3):
    Y = build_right_yamada(sl2, p3)
    assert Y.semigroup.table == y3.table
    assert Y.pairs == ((0, 1), (0, 2), (1, 0))


def test_singleton_fibers(i2):
    T = InverseSemigroup.from_semigroup(i2)
    Y = build_right_yamada(T, singleton_presheaf(T.semilattice))
    assert is_isomorphic(Y.semigroup, i2)


def test_larger_fibers(i2):
    T = InverseSemigroup.from_semigroup(i2)
    Y = build_right_yamada(T, presheaf_of(translation_action(T)))
    Q, _ = quotient(Y.semigroup, gamma(Y.semigroup))
    assert Y.semigroup.order > i2.order and is_isomorphic(Q, i2)


def test_left_yamada(sl2, p3, y3):
    Y = build_left_yamada(sl2, p3)
    assert Y.semigroup.order == 3
    assert is_isomorphic(Y.semigroup, opposite(y3))


def test_etale_structure(rz2, y3, i2):
    st = etale_structure(rz2)
    assert st.quotient.order == 1 and st.action.size == 2
    st = etale_structure(y3)
    assert st.quotient.order == 2 and st.action.size == 3
    st = etale_structure(i2)
    assert st.action.act == i2.table


def test_l_cover(y3, rz2, trivial):
    st = etale_structure(y3)
    assert l_cover_check(y3, st.quotient, st.projection)
    assert l_cover_check(y3, y3, (0, 1, 2))
    assert l_cover_check(rz2, trivial, (0, 0))


def test_kappa(y3, p3, rz2):
    dec = kappa_decompose(y3)
    assert dec.T.order == 2
    assert presheaf_isomorphism(dec.presheaf, p3) is not None
    dec = kappa_decompose(rz2)
    assert dec.T.order == 1 and dec.presheaf.fibers == ((0, 1),)


def test_free_roundtrip(sl2, p3, i2):
    assert free_roundtrip_check(sl2, p3).ok
    T = InverseSemigroup.from_semigroup(i2)
    assert free_roundtrip_check(T, singleton_presheaf(T.semilattice)).ok
