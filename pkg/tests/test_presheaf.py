import pytest

from gisemi.core import is_isomorphic, validate
from gisemi.errors import CompositionLawViolated, IdentityLawViolated, MissingRestriction, NotASemilattice, NotRightNormalBand
from gisemi.presheaf import (
    MeetSemilattice,
    band_roundtrip,
    band_to_presheaf,
    morphism_transport,
    order_and_compat,
    presheaf_from_dict,
    presheaf_isomorphism,
    presheaf_roundtrip,
    presheaf_to_dict,
    r_partition_matches_support,
    to_band,
    validate_presheaf,
)

CHAIN3 = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]


def test_p3_valid(p3):
    assert p3.global_support
    assert p3.fibers == ((1, 2), (0,))
    assert p3.restrict(0, 0) == 1


def test_single_point():
    P = validate_presheaf([[0]], [[0]], {})
    assert P.size == 1 and P.global_support


def test_composition_violation():
    with pytest.raises(CompositionLawViolated):
        validate_presheaf(CHAIN3, [[0, 1], [2], [3]], {(2, 1): [2], (1, 0): [0], (2, 0): [1]})


def test_identity_and_missing():
    with pytest.raises(MissingRestriction):
        validate_presheaf([[0, 0], [0, 1]], [[1, 2], [0]], {})
    with pytest.raises(IdentityLawViolated):
        validate_presheaf([[0]], [[0, 1]], {(0, 0): [1, 0]})


def test_bad_base():
    with pytest.raises(NotASemilattice):
        MeetSemilattice(((0, 1), (0, 1)))


def test_to_band(p3, rz2, sl2, sl2_points, y3):
    B = to_band(p3)
    assert B.table == ((0, 1, 2), (1, 1, 2), (1, 1, 2))
    assert is_isomorphic(B, y3)
    assert to_band(validate_presheaf([[0]], [[0, 1]], {})).table == rz2.table
    assert to_band(sl2_points).table == sl2.table


def test_band_to_presheaf(rz2, sl2, p3, y3):
    P = band_to_presheaf(rz2)
    assert P.base.order == 1 and P.fibers == ((0, 1),)
    P = band_to_presheaf(sl2)
    assert all(len(f) == 1 for f in P.fibers)
    assert presheaf_isomorphism(band_to_presheaf(y3), p3) is not None
    with pytest.raises(NotRightNormalBand):
        band_to_presheaf(validate([[0, 0], [1, 1]]))


def test_roundtrips(rz2, p3):
    assert band_roundtrip(rz2).ok
    rt = presheaf_roundtrip(p3)
    assert rt.ok and rt.alpha == (0, 1, 2)
    assert r_partition_matches_support(p3)


def test_morphism_transport(rz2, y3, sl2):
    m = morphism_transport((0, 1), rz2, rz2)
    assert m.alpha == (0, 1)
    m = morphism_transport((0, 0), rz2, validate([[0]]))
    assert m.beta == (0,)
    # Y3 -> SL2 sending each pair to its idempotent first coordinate
    m = morphism_transport((0, 0, 1), y3, sl2)
    assert m.alpha == (0, 0, 1)


def test_order_and_compat(p3):
    oc = order_and_compat(p3)
    x0, y0, y1 = 0, 1, 2
    assert oc.leq[y0][x0] and not oc.leq[x0][y0]
    assert oc.compatible[y1][y1]
    assert not oc.compatible[x0][y1]


def test_json_roundtrip(p3):
    doc = presheaf_to_dict(p3)
    assert doc["restrictions"] == {"1>0": [1]}
    assert presheaf_from_dict(doc) == p3
