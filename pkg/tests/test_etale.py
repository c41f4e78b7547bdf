import pytest

from gisemi.errors import BaseMismatch, E2Violated
from gisemi.etale import (
    InverseSemigroup,
    etale_to_presheaf_action,
    free_etale,
    presheaf_action_to_etale,
    presheaf_of,
    semilattice_action,
    translation_action,
    universal_property_check,
    validate_etale,
)
from gisemi.presheaf import singleton_presheaf


def test_translation(i2, sl2):
    A = translation_action(i2)
    assert A.size == 7 and A.global_support
    P = presheaf_of(translation_action(sl2))
    assert all(len(f) == 1 for f in P.fibers)
    P = presheaf_of(A)
    assert P.base.order == 4


def test_semilattice_action(p3):
    A = semilattice_action(p3)
    assert presheaf_of(A) == p3


def test_e2_violation(sl2):
    with pytest.raises(E2Violated):
        validate_etale(sl2, [1, 1], [[0, 1], [0, 1]])


@pytest.mark.parametrize("name", ["i2", "sl2", "trivial"])
def test_conversion_roundtrip(name, request):
    S = request.getfixturevalue(name)
    A = translation_action(S)
    PA = etale_to_presheaf_action(A)
    B = presheaf_action_to_etale(PA)
    assert B.act == A.act and B.support == A.support
    assert etale_to_presheaf_action(B) == PA


def test_p3_roundtrip(p3):
    A = semilattice_action(p3)
    assert presheaf_action_to_etale(etale_to_presheaf_action(A)).act == A.act


def test_free(sl2, p3, i2, trivial):
    assert free_etale(sl2, p3).action.size == 3
    T = InverseSemigroup.from_semigroup(i2)
    assert free_etale(T, singleton_presheaf(T.semilattice)).action.size == 7
    t = InverseSemigroup.from_semigroup(trivial)
    assert free_etale(t, singleton_presheaf(t.semilattice)).action.size == 1


def test_base_mismatch(i2, p3):
    with pytest.raises(BaseMismatch):
        free_etale(i2, p3)


def test_universal_identity(sl2, p3):
    F = free_etale(sl2, p3)
    res = universal_property_check(sl2, p3, F.action, F.unit)
    assert res.theta == tuple(range(F.action.size))
    assert res.unique and res.mediating_count == 1


def test_universal_restriction(sl2, p3):
    target = semilattice_action(p3)
    res = universal_property_check(sl2, p3, target, (0, 1, 2))
    F = free_etale(sl2, p3)
    # theta(e, a) = a restricted to e
    assert res.theta == tuple(p3.restrict(a, e) for e, a in F.pairs)
    assert res.unique
