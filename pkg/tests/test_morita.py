import pytest

from gisemi.core import is_isomorphic, validate
from gisemi.errors import NotBilinear
from gisemi.morita import (
    balanced_check,
    balanced_witness,
    build_yamada,
    is_normalized,
    lambda_rho_projections,
    morita_product,
    normalize,
    tensor,
    theta_iso_check,
    validate_sset,
    yamada_decompose,
    yamada_tensor,
)
from gisemi.workbench.io import read_yamada_spec
from gisemi.workbench.suites import fixture_path


@pytest.fixture
def y5():
    T, X, Y = read_yamada_spec(fixture_path("yamada5.json"))
    return build_yamada(T, X, Y)


def test_small_builds(sl2, sl2_points, p3, y3):
    Ys = build_yamada(sl2, sl2_points, p3)
    assert Ys.order == 3 and is_isomorphic(Ys.semigroup, y3)
    Ys = build_yamada(sl2, sl2_points, sl2_points)
    assert is_isomorphic(Ys.semigroup, sl2)


def test_order5(y5):
    assert y5.order == 5
    assert y5.triples == ((0, 1, 0), (1, 0, 1), (1, 0, 2), (2, 0, 1), (2, 0, 2))
    pr = lambda_rho_projections(y5)
    assert pr.right.semigroup.order == 3 and pr.left.semigroup.order == 3


def test_trivial_tensor(trivial):
    Q = validate_sset("right", trivial, [[0]])
    P = validate_sset("left", trivial, [[0]])
    assert tensor(Q, P).num_classes == 1
    assert morita_product(Q, P, lambda p, q: 0).semigroup.order == 1


def test_sl2_on_itself(sl2):
    Q = validate_sset("right", sl2, sl2.table)
    P = validate_sset("left", sl2, sl2.table)
    ten = tensor(Q, P)
    # q (x) p ~ qp (x) 1 under the unit, so classes are indexed by qp
    assert ten.num_classes == 2


def test_balanced(y5):
    yt = yamada_tensor(y5)
    tt = y5.T.table
    f = lambda q, p: tt[yt.left.pairs[q][1]][yt.right.pairs[p][0]]
    assert balanced_check(f, yt.Q, yt.P)
    assert balanced_witness(lambda q, p: q, yt.Q, yt.P) is not None
    assert balanced_check(lambda q, p: 0, yt.Q, yt.P)


def test_not_bilinear(y5):
    yt = yamada_tensor(y5)
    with pytest.raises(NotBilinear):
        morita_product(yt.Q, yt.P, lambda p, q: 1)


def test_theta(y5, sl2, sl2_points, p3):
    res = theta_iso_check(y5)
    assert res.yt.tensor.num_classes == 5
    assert sorted(res.theta) == list(range(5))
    assert theta_iso_check(build_yamada(sl2, sl2_points, p3)).yt.morita.semigroup.order == 3


def test_normalize(y5):
    yt = yamada_tensor(y5)
    classes = set()
    for q in range(yt.Q.size):
        for p in range(yt.P.size):
            nq, np_ = normalize(yt, q, p)
            assert is_normalized(yt, nq, np_)
            if is_normalized(yt, q, p):
                assert (nq, np_) == (q, p) or yt.tensor.class_of(q, p) == yt.tensor.class_of(nq, np_)
            classes.add((nq, np_))
    assert len(classes) == yt.tensor.num_classes


def test_decompose(y3, i2, rz2):
    for S in (y3, i2, rz2):
        dec = yamada_decompose(S)
        assert dec.yamada.order == S.order
        theta_iso_check(dec.yamada)
